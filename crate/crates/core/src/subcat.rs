//! Membership of cyclic modules in thick subcategories generated by cyclic modules,
//! equivalently invertibility in universal localizations.

use std::collections::{BTreeMap, HashMap, VecDeque};

use crate::algebra::{Algebra, HomElement};
use crate::error::{Error, Result};
use crate::expr::format_element;
use crate::good::{check_good, good_closure, CanonicalSet, ClosureTrace, PrimeTable};
use crate::scalar::Scalar;

/// A generator family together with its good closure.
///
/// Closure members are interned once; queries only read.
#[derive(Debug, Clone)]
pub struct SubcategorySpec {
    raw: Vec<HomElement>,
    closure: CanonicalSet,
    trace: ClosureTrace,
    table: PrimeTable,
    trie: Trie,
}

/// Prefix tree over the prime-id sequences of the closure members.
#[derive(Debug, Clone, Default)]
struct Trie {
    children: Vec<HashMap<usize, usize>>,
    terminal: Vec<Option<usize>>,
}

impl Trie {
    fn new() -> Trie {
        Trie { children: vec![HashMap::new()], terminal: vec![None] }
    }

    fn insert(&mut self, seq: &[usize], member: usize) {
        let mut node = 0;
        for &p in seq {
            node = match self.children[node].get(&p) {
                Some(&n) => n,
                None => {
                    let n = self.children.len();
                    self.children.push(HashMap::new());
                    self.terminal.push(None);
                    self.children[node].insert(p, n);
                    n
                }
            };
        }
        self.terminal[node] = Some(member);
    }

    /// `(length, member)` for every member that is a prefix of `seq`.
    fn matches(&self, seq: &[usize]) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        let mut node = 0;
        for (i, p) in seq.iter().enumerate() {
            match self.children[node].get(p) {
                Some(&n) => node = n,
                None => break,
            }
            if let Some(m) = self.terminal[node] {
                out.push((i + 1, m));
            }
        }
        out
    }
}

impl SubcategorySpec {
    pub fn new(alg: &Algebra, raw: &[HomElement]) -> Result<SubcategorySpec> {
        let (closure, trace) = good_closure(alg, raw)?;
        let mut table = PrimeTable::new();
        let mut trie = Trie::new();
        for (i, m) in closure.members().iter().enumerate() {
            let (_, ids) = table.factor_ids(alg, m)?;
            trie.insert(&ids, i);
        }
        Ok(SubcategorySpec { raw: raw.to_vec(), closure, trace, table, trie })
    }

    pub fn raw_generators(&self) -> &[HomElement] {
        &self.raw
    }

    pub fn closure(&self) -> &CanonicalSet {
        &self.closure
    }

    pub fn trace(&self) -> &ClosureTrace {
        &self.trace
    }
}

/// `x = lambda · factors[0] · factors[1] · ...` with every factor a closure member.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MembershipWitness {
    pub lambda: Scalar,
    pub factors: Vec<HomElement>,
}

impl MembershipWitness {
    pub fn reconstruct(&self, alg: &Algebra) -> HomElement {
        crate::factor::product_raw(alg, &self.factors).scale(&self.lambda)
    }

    pub fn verify(&self, alg: &Algebra, x: &HomElement) -> bool {
        self.reconstruct(alg) == *x
    }
}

/// Decides `A/xA ∈ ⟨A/yA⟩_{y ∈ S}`; the witness is re-multiplied before it is returned.
pub fn member(alg: &Algebra, x: &HomElement, spec: &SubcategorySpec) -> Result<Option<MembershipWitness>> {
    x.nonzero()?;
    let pf = alg.factor(x)?;
    let mut ids = Vec::with_capacity(pf.len());
    for p in pf.primes() {
        match spec.table.lookup(p) {
            Some(id) => ids.push(id),
            None => return Ok(None),
        }
    }
    let r = ids.len();
    // dist[j]: fewest members tiling ids[j..]
    let mut dist = vec![usize::MAX; r + 1];
    dist[r] = 0;
    let mut options: Vec<Vec<(usize, usize)>> = vec![Vec::new(); r];
    for j in (0..r).rev() {
        options[j] = spec.trie.matches(&ids[j..]);
        for &(len, _) in &options[j] {
            if dist[j + len] != usize::MAX {
                dist[j] = dist[j].min(dist[j + len] + 1);
            }
        }
    }
    if dist[0] == usize::MAX {
        return Ok(None);
    }
    let members = spec.closure.members();
    let mut factors = Vec::with_capacity(dist[0]);
    let mut j = 0;
    while j < r {
        let (len, m) = options[j]
            .iter()
            .filter(|&&(len, _)| dist[j + len] != usize::MAX && dist[j + len] + 1 == dist[j])
            .min_by_key(|&&(_, m)| m)
            .copied()
            .expect("reachable position has a shortest continuation");
        factors.push(members[m].clone());
        j += len;
    }
    let w = MembershipWitness { lambda: pf.unit().clone(), factors };
    if !w.verify(alg, x) {
        return Err(Error::Verification("membership witness does not reproduce the element".into()));
    }
    Ok(Some(w))
}

/// Invertibility of `x` in the universal localization at the family; same decision as [`member`].
pub fn invertible_in_localization(
    alg: &Algebra,
    x: &HomElement,
    spec: &SubcategorySpec,
) -> Result<Option<MembershipWitness>> {
    member(alg, x, spec)
}

/// Filtration of `A/xA` with quotients `A/y_i A[-s_i]`, `s_i` the partial degree sums.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiltrationWitness {
    pub degree: usize,
    pub pieces: Vec<(HomElement, usize)>,
}

impl FiltrationWitness {
    pub fn from_membership(x: &HomElement, w: &MembershipWitness) -> FiltrationWitness {
        let mut shift = 0;
        let pieces = w
            .factors
            .iter()
            .map(|y| {
                let s = shift;
                shift += y.degree();
                (y.clone(), s)
            })
            .collect();
        FiltrationWitness { degree: x.degree(), pieces }
    }

    /// Checks `Σ t^{s_i} (1 - t^{deg y_i}) = 1 - t^{deg x}` coefficientwise.
    pub fn hilbert_telescopes(&self) -> bool {
        let mut lhs: BTreeMap<usize, i64> = BTreeMap::new();
        for (y, s) in &self.pieces {
            *lhs.entry(*s).or_default() += 1;
            *lhs.entry(s + y.degree()).or_default() -= 1;
        }
        let mut rhs: BTreeMap<usize, i64> = BTreeMap::new();
        *rhs.entry(0).or_default() += 1;
        *rhs.entry(self.degree).or_default() -= 1;
        lhs.retain(|_, v| *v != 0);
        rhs.retain(|_, v| *v != 0);
        lhs == rhs
    }
}

pub fn filtration_witness(alg: &Algebra, x: &HomElement, spec: &SubcategorySpec) -> Result<Option<FiltrationWitness>> {
    x.nonzero_nonunit()?;
    Ok(member(alg, x, spec)?.map(|w| FiltrationWitness::from_membership(x, &w)))
}

/// `⟨S1⟩ ⊆ ⟨S2⟩`, decided memberwise on the closure of `S1`.
pub fn subcategory_leq(alg: &Algebra, s1: &SubcategorySpec, s2: &SubcategorySpec) -> Result<bool> {
    for m in s1.closure.members() {
        if member(alg, m, s2)?.is_none() {
            return Ok(false);
        }
    }
    Ok(true)
}

pub fn subcategory_eq(alg: &Algebra, s1: &SubcategorySpec, s2: &SubcategorySpec) -> Result<bool> {
    Ok(subcategory_leq(alg, s1, s2)? && subcategory_leq(alg, s2, s1)?)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum IntersectionVerdict {
    CertifiedZero,
    Unknown,
}

/// Certifies `⟨S1⟩ ∩ ⟨S2⟩ = 0` when the closures are disjoint with a good union.
pub fn trivial_intersection(alg: &Algebra, s1: &SubcategorySpec, s2: &SubcategorySpec) -> Result<IntersectionVerdict> {
    if !s1.closure.is_disjoint(&s2.closure) {
        return Ok(IntersectionVerdict::Unknown);
    }
    let union = s1.closure.union(&s2.closure);
    Ok(if check_good(alg, &union)?.is_good() {
        IntersectionVerdict::CertifiedZero
    } else {
        IntersectionVerdict::Unknown
    })
}

/// A matrix of homogeneous entries; zero entries may carry any degree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GradedMatrix {
    rows: Vec<Vec<HomElement>>,
}

impl GradedMatrix {
    pub fn new(rows: Vec<Vec<HomElement>>) -> Result<GradedMatrix> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.is_empty() || cols == 0 {
            return Err(Error::IllGraded("empty matrix".into()));
        }
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::IllGraded("rows of different lengths".into()));
        }
        let m = GradedMatrix { rows };
        m.shifts()?;
        Ok(m)
    }

    pub fn from_element(x: &HomElement) -> GradedMatrix {
        GradedMatrix { rows: vec![vec![x.clone()]] }
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows.len(), self.rows[0].len())
    }

    pub fn entry(&self, i: usize, j: usize) -> &HomElement {
        &self.rows[i][j]
    }

    /// Row shifts `d` and column shifts `c` with `deg G_ij = d_i - c_j` on nonzero entries.
    ///
    /// Each connected block of the nonzero pattern is normalized so its first row shift is 0.
    pub fn shifts(&self) -> Result<(Vec<i64>, Vec<i64>)> {
        let (m, n) = self.shape();
        let mut d: Vec<Option<i64>> = vec![None; m];
        let mut c: Vec<Option<i64>> = vec![None; n];
        // nodes 0..m are rows, m..m+n are columns
        for start in 0..m + n {
            let assigned = if start < m { d[start].is_some() } else { c[start - m].is_some() };
            if assigned {
                continue;
            }
            if start < m {
                d[start] = Some(0);
            } else {
                c[start - m] = Some(0);
            }
            let mut queue = VecDeque::from([start]);
            while let Some(node) = queue.pop_front() {
                if node < m {
                    let i = node;
                    let di = d[i].unwrap();
                    for j in 0..n {
                        let g = &self.rows[i][j];
                        if g.is_zero() {
                            continue;
                        }
                        let want = di - g.degree() as i64;
                        match c[j] {
                            None => {
                                c[j] = Some(want);
                                queue.push_back(m + j);
                            }
                            Some(cj) if cj != want => {
                                return Err(Error::IllGraded(format!("entry ({}, {}) has inconsistent degree", i + 1, j + 1)));
                            }
                            _ => {}
                        }
                    }
                } else {
                    let j = node - m;
                    let cj = c[j].unwrap();
                    for i in 0..m {
                        let g = &self.rows[i][j];
                        if g.is_zero() {
                            continue;
                        }
                        let want = cj + g.degree() as i64;
                        match d[i] {
                            None => {
                                d[i] = Some(want);
                                queue.push_back(i);
                            }
                            Some(di) if di != want => {
                                return Err(Error::IllGraded(format!("entry ({}, {}) has inconsistent degree", i + 1, j + 1)));
                            }
                            _ => {}
                        }
                    }
                }
            }
        }
        Ok((d.into_iter().map(Option::unwrap).collect(), c.into_iter().map(Option::unwrap).collect()))
    }
}

/// One summand of a relation: a matrix entry next to an adjoined generator.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RelationTerm {
    /// `G_ik · t_kj`
    EntryThenVar(HomElement, String),
    /// `t_ik · G_kj`
    VarThenEntry(String, HomElement),
}

/// `Σ terms - δ`, where `δ` is 1 on the diagonal of the identity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Relation {
    pub terms: Vec<RelationTerm>,
    pub minus_one: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct LocalizationPresentation {
    pub generators: Vec<(String, i64)>,
    pub relations: Vec<Relation>,
}

fn var_names(g: Option<usize>, rows: usize, cols: usize) -> Vec<Vec<String>> {
    let base = match g {
        Some(g) => format!("t{g}"),
        None => "t".to_string(),
    };
    (0..rows)
        .map(|i| {
            (0..cols)
                .map(|j| {
                    if rows == 1 && cols == 1 {
                        base.clone()
                    } else if rows == 1 {
                        format!("{base}_{}", j + 1)
                    } else if cols == 1 {
                        format!("{base}_{}", i + 1)
                    } else {
                        format!("{base}_{}_{}", i + 1, j + 1)
                    }
                })
                .collect()
        })
        .collect()
}

/// Adjoins an inverse matrix `t` for every `G` with relations `G·t = 1` and `t·G = 1`, entrywise.
pub fn localization_presentation(mats: &[GradedMatrix]) -> Result<LocalizationPresentation> {
    let mut out = LocalizationPresentation::default();
    let numbered = mats.len() > 1;
    for (g, mat) in mats.iter().enumerate() {
        let (m, n) = mat.shape();
        let (d, c) = mat.shifts()?;
        // t is n×m with deg t_ij = c_i - d_j
        let names = var_names(numbered.then_some(g + 1), n, m);
        for i in 0..n {
            for j in 0..m {
                out.generators.push((names[i][j].clone(), c[i] - d[j]));
            }
        }
        // G·t: m×m
        for i in 0..m {
            for j in 0..m {
                let terms = (0..n)
                    .filter(|&k| !mat.rows[i][k].is_zero())
                    .map(|k| RelationTerm::EntryThenVar(mat.rows[i][k].clone(), names[k][j].clone()))
                    .collect();
                out.relations.push(Relation { terms, minus_one: i == j });
            }
        }
        // t·G: n×n
        for i in 0..n {
            for j in 0..n {
                let terms = (0..m)
                    .filter(|&k| !mat.rows[k][j].is_zero())
                    .map(|k| RelationTerm::VarThenEntry(names[i][k].clone(), mat.rows[k][j].clone()))
                    .collect();
                out.relations.push(Relation { terms, minus_one: i == j });
            }
        }
    }
    Ok(out)
}

fn render_entry(alg: &Algebra, e: &HomElement) -> String {
    let plain = matches!(e.as_word(), Some((w, c)) if w.len() == 1 && c.is_one());
    let s = format_element(alg, e);
    if plain {
        s
    } else {
        format!("({s})")
    }
}

impl Relation {
    pub fn render(&self, alg: &Algebra) -> String {
        let sep = if alg.uses_aliases() { "" } else { "*" };
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|t| match t {
                RelationTerm::EntryThenVar(e, v) => format!("{}{sep}{v}", render_entry(alg, e)),
                RelationTerm::VarThenEntry(v, e) => format!("{v}{sep}{}", render_entry(alg, e)),
            })
            .collect();
        let mut s = parts.join("+");
        if self.minus_one {
            s.push_str("-1");
        }
        if s.is_empty() {
            s = "0".into();
        }
        s
    }
}

impl LocalizationPresentation {
    pub fn render_relations(&self, alg: &Algebra) -> Vec<String> {
        self.relations.iter().map(|r| r.render(alg)).collect()
    }
}
