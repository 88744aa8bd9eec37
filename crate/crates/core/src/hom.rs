//! Brute-force graded Hom spaces between cyclic modules `A/xA`, plus the structural
//! criteria they are checked against.

use num_bigint::BigUint;

use crate::algebra::{Algebra, HomElement};
use crate::error::{Error, Result};
use crate::good::{overlaps, PrimeTable};
use crate::linalg::{Echelon, SparseRow};
use crate::scalar::Scalar;
use crate::word::Word;

/// Largest number of basis vectors the oracle will touch in one degree.
const MAX_BASIS: u128 = 1 << 22;

fn index(w: &Word, n: usize) -> usize {
    w.letters().fold(0, |acc, l| acc * n + l)
}

fn pow(n: usize, e: usize) -> Result<usize> {
    let v = (n as u128).checked_pow(e as u32).filter(|&v| v <= MAX_BASIS);
    v.map(|v| v as usize).ok_or(Error::DegreeCap { requested: e, cap: 0 })
}

/// `dim Hom(A/xA, A/yA[i])`: the degree-`i` elements `b` with `b·x ∈ yA`, modulo `(yA)_i`.
pub fn hom_dim(alg: &Algebra, x: &HomElement, y: &HomElement, i: i64) -> Result<usize> {
    x.nonzero()?;
    y.nonzero()?;
    if i < 0 {
        return Ok(0);
    }
    let i = i as usize;
    let (dx, dy) = (x.degree(), y.degree());
    let n = i + dx;
    alg.check_degree(n)?;
    let gens = alg.num_generators();
    let resource = |_| Error::DegreeCap { requested: n, cap: alg.degree_cap() };
    pow(gens, n).map_err(resource)?;
    let left = pow(gens, i).map_err(resource)?;
    let right = if n >= dy { pow(gens, n - dy).map_err(resource)? } else { 0 };
    let block_x = pow(gens, dx).map_err(resource)?;

    let mut ech = Echelon::new();
    for b in 0..left {
        let row: SparseRow = x.terms().map(|(w, c)| (b * block_x + index(w, gens), c.clone())).collect();
        ech.insert(row);
    }
    for v in 0..right {
        let row: SparseRow = y.terms().map(|(w, c)| (index(w, gens) * right + v, c.clone())).collect();
        ech.insert(row);
    }
    let ideal_i = if i >= dy { pow(gens, i - dy).map_err(resource)? } else { 0 };
    Ok(left + right - ech.rank() - ideal_i)
}

/// Dimensions of `Hom(A/xA, A/yA[i])` for `i` in `0..=window`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HomTable {
    pub dims: Vec<usize>,
}

impl HomTable {
    pub fn nonzero(&self) -> bool {
        self.dims.iter().any(|&d| d > 0)
    }
}

pub fn hom_table(alg: &Algebra, x: &HomElement, y: &HomElement, window: usize) -> Result<HomTable> {
    let dims = (0..=window).map(|i| hom_dim(alg, x, y, i as i64)).collect::<Result<_>>()?;
    Ok(HomTable { dims })
}

/// `x = c·a`, `y = b·c` with `l(c) > 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HomOverlap {
    pub c: HomElement,
    pub a: HomElement,
    pub b: HomElement,
}

/// Predicts a nonzero Hom from the longest prefix of `x` that is a suffix of `y`.
pub fn hom_nonzero_predict(alg: &Algebra, x: &HomElement, y: &HomElement) -> Result<Option<HomOverlap>> {
    x.nonzero()?;
    y.nonzero()?;
    let mut table = PrimeTable::new();
    let (ux, ix) = table.factor_ids(alg, x)?;
    let (uy, iy) = table.factor_ids(alg, y)?;
    let Some(&k) = overlaps(&ix, &iy).last() else {
        return Ok(None);
    };
    Ok(Some(HomOverlap {
        c: table.product(alg, &ix[..k]),
        a: table.product(alg, &ix[k..]).scale(&ux),
        b: table.product(alg, &iy[..iy.len() - k]).scale(&uy),
    }))
}

/// `A/xA ↪ A/yA[shift]` exists iff `y = d·x`; returns `(d, deg d)`.
pub fn submodule_embedding(alg: &Algebra, x: &HomElement, y: &HomElement) -> Result<Option<(HomElement, usize)>> {
    Ok(alg.right_divide(x, y)?.map(|d| {
        let s = d.degree();
        (d, s)
    }))
}

/// `A/xA ↠ A/yA` exists iff `x = y·d`; returns `d`.
pub fn quotient_onto(alg: &Algebra, x: &HomElement, y: &HomElement) -> Result<Option<HomElement>> {
    alg.left_divide(y, x)
}

/// `A/xA ≅ A/yA` iff `x = λ·y`.
pub fn iso_test(alg: &Algebra, x: &HomElement, y: &HomElement) -> Result<Option<Scalar>> {
    alg.proportional(x, y)
}

/// `dim (A/xA)_i`.
pub fn hilbert_cyclic(alg: &Algebra, x: &HomElement, i: i64) -> Result<BigUint> {
    x.nonzero()?;
    let d = x.degree() as i64;
    let total = alg.graded_dim(i);
    Ok(if i >= d { total - alg.graded_dim(i - d) } else { total })
}

/// Truncation `τ_{≥d}(A[m])`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TauRank {
    pub rank: BigUint,
    pub shift: i64,
    pub unchanged: bool,
}

pub fn tau_rank(alg: &Algebra, m: i64, d: i64) -> TauRank {
    if d + m >= 0 {
        TauRank { rank: alg.graded_dim(d + m), shift: -d, unchanged: false }
    } else {
        TauRank { rank: BigUint::from(1u32), shift: m, unchanged: true }
    }
}
