//! Supports of `M_x` on projective space via abelianization, and the support-based
//! certificates of non-membership and trivial intersection.

use crate::algebra::{Algebra, HomElement};
use crate::cpoly::{gcd, squarefree_part, CPoly};
use crate::error::Result;

/// Image of `f` in the commutative polynomial ring.
pub fn abelianize(alg: &Algebra, f: &HomElement) -> CPoly {
    let n = alg.num_generators();
    let mut p = CPoly::zero(n, alg.field());
    for (w, c) in f.terms() {
        p.add_term(w.content(n), c.clone());
    }
    p
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SupportDescriptor {
    FullSpace,
    EmptySet,
    /// Zero locus of a monic squarefree form.
    Hypersurface(CPoly),
}

pub fn support_of(alg: &Algebra, x: &HomElement) -> Result<SupportDescriptor> {
    x.nonzero()?;
    if x.is_unit() {
        return Ok(SupportDescriptor::EmptySet);
    }
    let ab = abelianize(alg, x);
    if ab.is_zero() {
        return Ok(SupportDescriptor::FullSpace);
    }
    Ok(SupportDescriptor::Hypersurface(squarefree_part(&ab)?))
}

/// `sx ⊆ sy`; hypersurfaces compare by `f_red | g`.
pub fn support_subset(sx: &SupportDescriptor, sy: &SupportDescriptor) -> Result<bool> {
    use SupportDescriptor::*;
    Ok(match (sx, sy) {
        (EmptySet, _) => true,
        (_, FullSpace) => true,
        (FullSpace, _) => false,
        (Hypersurface(_), EmptySet) => false,
        (Hypersurface(f), Hypersurface(g)) => f.divides(g)?,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Certificate {
    Certified(String),
    Unknown,
}

impl Certificate {
    pub fn is_certified(&self) -> bool {
        matches!(self, Certificate::Certified(_))
    }
}

fn describe(s: &SupportDescriptor) -> String {
    match s {
        SupportDescriptor::FullSpace => "all of projective space".into(),
        SupportDescriptor::EmptySet => "empty".into(),
        SupportDescriptor::Hypersurface(f) => format!("Z({f})"),
    }
}

/// `M_x ∉ ⟨M_y⟩` whenever `Supp M_x ⊄ Supp M_y`.
pub fn not_member_by_support(alg: &Algebra, x: &HomElement, y: &HomElement) -> Result<Certificate> {
    let sx = support_of(alg, x)?;
    let sy = support_of(alg, y)?;
    Ok(if support_subset(&sx, &sy)? {
        Certificate::Unknown
    } else {
        Certificate::Certified(format!("support {} is not contained in {}", describe(&sx), describe(&sy)))
    })
}

/// `⟨M_x⟩ ∩ ⟨M_y⟩ = 0` when the supports meet in codimension at least two.
pub fn trivial_intersection_by_support(alg: &Algebra, x: &HomElement, y: &HomElement) -> Result<Certificate> {
    x.nonzero()?;
    y.nonzero()?;
    let (fx, fy) = (abelianize(alg, x), abelianize(alg, y));
    if fx.is_zero() || fy.is_zero() {
        return Ok(Certificate::Unknown);
    }
    let g = gcd(&squarefree_part(&fx)?, &squarefree_part(&fy)?);
    Ok(if g.is_constant() {
        Certificate::Certified(format!("{fx} and {fy} share no common component"))
    } else {
        Certificate::Unknown
    })
}

/// A cone `F_1 → F_0` of free modules with different ranks has full support, which
/// a cyclic `M_y` with `y^{ab} ≠ 0` cannot generate.
pub fn full_support_not_member(alg: &Algebra, rank0: usize, rank1: usize, y: &HomElement) -> Result<Certificate> {
    y.nonzero()?;
    let fy = abelianize(alg, y);
    Ok(if rank0 != rank1 && !fy.is_zero() {
        Certificate::Certified(format!("ranks {rank0} != {rank1} give full support; Supp M_y = Z({fy})"))
    } else {
        Certificate::Unknown
    })
}
