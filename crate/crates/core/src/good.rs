//! Good sets: no member has a nontrivial prefix equal (up to a scalar) to a suffix
//! of a member, except a member overlapping itself completely.
//!
//! Because left divisors of `x` are, up to scalars, exactly the prefix products of
//! its prime factorization, all overlap questions reduce to border problems on
//! sequences of interned monic primes.

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::algebra::{Algebra, HomElement};
use crate::error::{Error, Result};
use crate::factor::product_raw;

/// Interns monic primes so that factorizations become integer sequences.
#[derive(Debug, Default, Clone)]
pub struct PrimeTable {
    ids: HashMap<HomElement, usize>,
    primes: Vec<HomElement>,
}

impl PrimeTable {
    pub fn new() -> PrimeTable {
        PrimeTable::default()
    }

    pub fn intern(&mut self, p: &HomElement) -> usize {
        if let Some(&id) = self.ids.get(p) {
            return id;
        }
        let id = self.primes.len();
        self.ids.insert(p.clone(), id);
        self.primes.push(p.clone());
        id
    }

    pub fn lookup(&self, p: &HomElement) -> Option<usize> {
        self.ids.get(p).copied()
    }

    pub fn prime(&self, id: usize) -> &HomElement {
        &self.primes[id]
    }

    /// Factors `f` and interns its primes; returns the unit and the id sequence.
    pub fn factor_ids(&mut self, alg: &Algebra, f: &HomElement) -> Result<(crate::Scalar, Vec<usize>)> {
        let pf = alg.factor(f)?;
        let ids = pf.primes().iter().map(|p| self.intern(p)).collect();
        Ok((pf.unit().clone(), ids))
    }

    pub fn product(&self, alg: &Algebra, ids: &[usize]) -> HomElement {
        let factors: Vec<HomElement> = ids.iter().map(|&i| self.primes[i].clone()).collect();
        product_raw(alg, &factors)
    }
}

/// Borders of `s`: the prefix-function value at every position.
fn prefix_function<T: PartialEq>(s: &[T]) -> Vec<usize> {
    let mut pi = vec![0usize; s.len()];
    for i in 1..s.len() {
        let mut k = pi[i - 1];
        while k > 0 && s[i] != s[k] {
            k = pi[k - 1];
        }
        if s[i] == s[k] {
            k += 1;
        }
        pi[i] = k;
    }
    pi
}

/// All `k >= 1` with `x[..k] == y[y.len()-k..]`, ascending.
pub fn overlaps(x: &[usize], y: &[usize]) -> Vec<usize> {
    if x.is_empty() || y.is_empty() {
        return Vec::new();
    }
    let mut s = Vec::with_capacity(x.len() + y.len() + 1);
    s.extend(x.iter().map(|&v| Some(v)));
    s.push(None);
    s.extend(y.iter().map(|&v| Some(v)));
    let pi = prefix_function(&s);
    let mut out = Vec::new();
    let mut k = pi[s.len() - 1];
    while k > 0 {
        out.push(k);
        k = pi[k - 1];
    }
    out.reverse();
    out
}

/// A finite set of monic non-unit elements, deduplicated and sorted deglex.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct CanonicalSet {
    members: Vec<HomElement>,
}

impl CanonicalSet {
    /// Canonicalizes `elements`; rejects zero and units.
    pub fn new<I: IntoIterator<Item = HomElement>>(alg: &Algebra, elements: I) -> Result<CanonicalSet> {
        let mut set = BTreeSet::new();
        for e in elements {
            e.nonzero_nonunit()?;
            set.insert(alg.canonical_monic(&e)?.1);
        }
        Ok(CanonicalSet { members: set.into_iter().collect() })
    }

    pub fn members(&self) -> &[HomElement] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, e: &HomElement) -> bool {
        self.members.binary_search(e).is_ok()
    }

    pub fn union(&self, other: &CanonicalSet) -> CanonicalSet {
        let set: BTreeSet<HomElement> = self.members.iter().chain(&other.members).cloned().collect();
        CanonicalSet { members: set.into_iter().collect() }
    }

    pub fn is_disjoint(&self, other: &CanonicalSet) -> bool {
        self.members.iter().all(|m| !other.contains(m))
    }

    fn from_sorted(set: BTreeSet<HomElement>) -> CanonicalSet {
        CanonicalSet { members: set.into_iter().collect() }
    }
}

/// `x = a·b`, `y = c·a` with `l(a) = k > 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OverlapWitness {
    pub x: HomElement,
    pub y: HomElement,
    pub k: usize,
    pub a: HomElement,
    pub b: HomElement,
    pub c: HomElement,
    /// `x = y` with `b` and `c` units: the one overlap the definition allows.
    pub exception: bool,
}

impl OverlapWitness {
    /// Re-multiplies the pieces; true when the identities hold and the overlap is a real violation.
    pub fn is_valid_violation(&self, alg: &Algebra) -> bool {
        let Ok(ab) = alg.mul(&self.a, &self.b) else { return false };
        let Ok(ca) = alg.mul(&self.c, &self.a) else { return false };
        let lambda_x = alg.proportional(&self.x, &ab).ok().flatten();
        let lambda_y = alg.proportional(&self.y, &ca).ok().flatten();
        let exception = self.x == self.y && self.b.is_unit() && self.c.is_unit();
        lambda_x.is_some() && lambda_y.is_some() && !self.a.is_unit() && !exception && !self.exception
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Goodness {
    Good,
    Violation(Box<OverlapWitness>),
}

impl Goodness {
    pub fn is_good(&self) -> bool {
        matches!(self, Goodness::Good)
    }

    pub fn witness(&self) -> Option<&OverlapWitness> {
        match self {
            Goodness::Good => None,
            Goodness::Violation(w) => Some(w),
        }
    }
}

struct Factored<'a> {
    element: &'a HomElement,
    ids: Vec<usize>,
}

fn first_violation(alg: &Algebra, table: &PrimeTable, order: &[Factored<'_>]) -> Option<OverlapWitness> {
    for fx in order {
        for fy in order {
            let same = std::ptr::eq(fx.element, fy.element) || fx.element == fy.element;
            for k in overlaps(&fx.ids, &fy.ids) {
                if same && k == fx.ids.len() {
                    continue;
                }
                let ly = fy.ids.len();
                return Some(OverlapWitness {
                    x: fx.element.clone(),
                    y: fy.element.clone(),
                    k,
                    a: table.product(alg, &fx.ids[..k]),
                    b: table.product(alg, &fx.ids[k..]),
                    c: table.product(alg, &fy.ids[..ly - k]),
                    exception: false,
                });
            }
        }
    }
    None
}

fn factor_all<'a>(
    alg: &Algebra,
    table: &mut PrimeTable,
    members: &'a [HomElement],
) -> Result<Vec<Factored<'a>>> {
    members
        .iter()
        .map(|m| Ok(Factored { element: m, ids: table.factor_ids(alg, m)?.1 }))
        .collect()
}

/// Decides goodness, scanning ordered pairs in deglex order and `k` ascending.
pub fn check_good(alg: &Algebra, set: &CanonicalSet) -> Result<Goodness> {
    check_good_in_order(alg, set.members())
}

/// Same as [`check_good`] with an explicit scan order over the members.
pub fn check_good_in_order(alg: &Algebra, members: &[HomElement]) -> Result<Goodness> {
    for m in members {
        m.nonzero_nonunit()?;
    }
    let mut table = PrimeTable::new();
    let order = factor_all(alg, &mut table, members)?;
    Ok(match first_violation(alg, &table, &order) {
        None => Goodness::Good,
        Some(w) => Goodness::Violation(Box::new(w)),
    })
}

/// Splits a sequence with a proper border as `y z y`, following the constructive
/// argument: take the shortest border `a` (`x = ab = ca`), the largest `n` with
/// `a = d·b^n`, then write `b = e·d`.
fn yzy_ids(s: &[usize]) -> Option<(Vec<usize>, Vec<usize>)> {
    let len = s.len();
    let k = *overlaps(s, s).iter().find(|&&k| k < len)?;
    let a = &s[..k];
    let b = &s[k..];
    let mut d = a;
    let mut n = 0;
    while d.len() >= b.len() && d.ends_with(b) {
        d = &d[..d.len() - b.len()];
        n += 1;
    }
    debug_assert!(d.len() < b.len() && b.ends_with(d));
    let e = &b[..b.len() - d.len()];
    let ed: Vec<usize> = e.iter().chain(d).copied().collect();
    if !d.is_empty() {
        let mut z: Vec<usize> = ed.repeat(n);
        z.extend_from_slice(e);
        Some((d.to_vec(), z))
    } else {
        debug_assert!(n >= 1);
        Some((e.to_vec(), e.repeat(n - 1)))
    }
}

/// `(y, z)` with `x = y·z·y` and `l(y) > 0` when `{x}` is not good; `None` when it is.
pub fn yzy_decompose(alg: &Algebra, x: &HomElement) -> Result<Option<(HomElement, HomElement)>> {
    x.nonzero_nonunit()?;
    let mut table = PrimeTable::new();
    let (unit, ids) = table.factor_ids(alg, x)?;
    let Some((y, z)) = yzy_ids(&ids) else {
        return Ok(None);
    };
    let y = table.product(alg, &y);
    let z = table.product(alg, &z).scale(&unit);
    Ok(Some((y, z)))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Rule {
    /// Cross overlap `x = ab`, `y = ca`: replace `{x, y}` by the non-units of `{a, b, c}`.
    A,
    /// Self overlap `x = sts`: replace `{x}` by `{s}` (t a unit) or `{s, st, ts}`.
    B,
    /// Canonicalize: scale to monic, drop units, merge proportional members.
    C,
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Rule::A => "A",
            Rule::B => "B",
            Rule::C => "C",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClosureStep {
    pub rule: Rule,
    pub consumed: Vec<HomElement>,
    pub produced: Vec<HomElement>,
    pub justification: String,
}

/// The rewrite sequence taking the input family to its good closure.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ClosureTrace {
    pub steps: Vec<ClosureStep>,
}

impl ClosureTrace {
    /// Replays the steps on the raw input, returning the resulting set.
    pub fn replay(&self, inputs: &[HomElement]) -> Result<BTreeSet<HomElement>> {
        let mut state: BTreeSet<HomElement> = inputs.iter().cloned().collect();
        for (i, step) in self.steps.iter().enumerate() {
            for c in &step.consumed {
                if !state.remove(c) {
                    return Err(Error::Verification(format!("step {i} consumes a missing element")));
                }
            }
            state.extend(step.produced.iter().cloned());
        }
        Ok(state)
    }
}

/// Computes the good closure with the deterministic deglex scan order.
pub fn good_closure(alg: &Algebra, inputs: &[HomElement]) -> Result<(CanonicalSet, ClosureTrace)> {
    good_closure_with_order(alg, inputs, None)
}

/// Computes the good closure; with `Some(seed)` each scan visits members in a shuffled order.
pub fn good_closure_with_order(
    alg: &Algebra,
    inputs: &[HomElement],
    seed: Option<u64>,
) -> Result<(CanonicalSet, ClosureTrace)> {
    let mut trace = ClosureTrace::default();
    let mut rng = seed.map(ChaCha8Rng::seed_from_u64);

    let mut state = BTreeSet::new();
    let mut units = 0;
    for e in inputs {
        e.nonzero()?;
        if e.is_unit() {
            units += 1;
        } else {
            state.insert(alg.canonical_monic(e)?.1);
        }
    }
    if !inputs.is_empty() {
        let raw: BTreeSet<HomElement> = inputs.iter().cloned().collect();
        let mut justification = String::from("scale to monic and merge proportional members");
        if units > 0 {
            justification.push_str(&format!("; dropped {units} unit(s), whose quotient is zero"));
        }
        trace.steps.push(ClosureStep {
            rule: Rule::C,
            consumed: raw.into_iter().collect(),
            produced: state.iter().cloned().collect(),
            justification,
        });
    }

    let mut table = PrimeTable::new();
    let mut cache: HashMap<HomElement, Vec<usize>> = HashMap::new();
    loop {
        let mut members: Vec<HomElement> = state.iter().cloned().collect();
        if let Some(rng) = rng.as_mut() {
            members.shuffle(rng);
        }
        let mut order = Vec::with_capacity(members.len());
        for m in &members {
            if !cache.contains_key(m) {
                let ids = table.factor_ids(alg, m)?.1;
                cache.insert(m.clone(), ids);
            }
            order.push(Factored { element: m, ids: cache[m].clone() });
        }
        let Some(w) = first_violation(alg, &table, &order) else {
            break;
        };
        let step = if w.x == w.y {
            let ids = &cache[&w.x];
            let (s, t) = yzy_ids(ids).expect("self overlap has a proper border");
            let s_el = table.product(alg, &s);
            let mut produced = vec![s_el.clone()];
            let mut justification = "self overlap x = s t s with t a unit: <x> = <s>".to_string();
            if !t.is_empty() {
                let st: Vec<usize> = s.iter().chain(&t).copied().collect();
                let ts: Vec<usize> = t.iter().chain(&s).copied().collect();
                for seq in [st, ts] {
                    let el = table.product(alg, &seq);
                    cache.insert(el.clone(), seq);
                    produced.push(el);
                }
                justification = "self overlap x = s t s: <x> = <s, st, ts>".to_string();
            }
            cache.insert(s_el, s);
            ClosureStep { rule: Rule::B, consumed: vec![w.x.clone()], produced, justification }
        } else {
            let ids_x = cache[&w.x].clone();
            let ids_y = cache[&w.y].clone();
            let k = w.k;
            let pieces = [
                (w.a.clone(), ids_x[..k].to_vec()),
                (w.b.clone(), ids_x[k..].to_vec()),
                (w.c.clone(), ids_y[..ids_y.len() - k].to_vec()),
            ];
            let mut produced = Vec::new();
            for (el, seq) in pieces {
                if !seq.is_empty() && !produced.contains(&el) {
                    cache.insert(el.clone(), seq);
                    produced.push(el);
                }
            }
            ClosureStep {
                rule: Rule::A,
                consumed: vec![w.x.clone(), w.y.clone()],
                produced,
                justification: "overlap x = ab, y = ca: <x, y> = <a, b, c>".to_string(),
            }
        };
        for c in &step.consumed {
            state.remove(c);
        }
        state.extend(step.produced.iter().cloned());
        trace.steps.push(step);
    }
    Ok((CanonicalSet::from_sorted(state), trace))
}
