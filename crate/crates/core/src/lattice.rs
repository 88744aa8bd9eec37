//! The infinite descending chain and binary tree of thick subcategories built from
//! good pairs of equal length.

use std::fmt;

use crate::algebra::{Algebra, HomElement};
use crate::error::{Error, Result};
use crate::good::{check_good, CanonicalSet};
use crate::subcat::{subcategory_leq, trivial_intersection, IntersectionVerdict, SubcategorySpec};

/// Word length reachable at the default lattice depth of 3.
pub const DEFAULT_LATTICE_CAP: usize = 5832;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GoodPair {
    pub a: HomElement,
    pub b: HomElement,
}

impl GoodPair {
    pub fn spec(&self, alg: &Algebra) -> Result<SubcategorySpec> {
        SubcategorySpec::new(alg, &[self.a.clone(), self.b.clone()])
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Plus,
    Minus,
}

/// A finite path in the binary tree, e.g. `+-`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct TreePath(pub Vec<Sign>);

impl TreePath {
    pub fn parse(s: &str) -> Result<TreePath> {
        s.chars()
            .enumerate()
            .map(|(i, c)| match c {
                '+' | 'p' => Ok(Sign::Plus),
                '-' | 'm' => Ok(Sign::Minus),
                _ => Err(Error::Parse { pos: i + 1, msg: format!("expected '+' or '-', found '{c}'") }),
            })
            .collect::<Result<_>>()
            .map(TreePath)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn child(&self, s: Sign) -> TreePath {
        let mut v = self.0.clone();
        v.push(s);
        TreePath(v)
    }

    pub fn is_prefix_of(&self, other: &TreePath) -> bool {
        other.0.starts_with(&self.0)
    }

    /// All paths of length `0..=depth`, breadth first, `+` before `-`.
    pub fn all_up_to(depth: usize) -> Vec<TreePath> {
        let mut out = vec![TreePath::default()];
        let mut level = vec![TreePath::default()];
        for _ in 0..depth {
            level = level.iter().flat_map(|p| [p.child(Sign::Plus), p.child(Sign::Minus)]).collect();
            out.extend(level.iter().cloned());
        }
        out
    }
}

impl fmt::Display for TreePath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("root");
        }
        for s in &self.0 {
            f.write_str(match s {
                Sign::Plus => "+",
                Sign::Minus => "-",
            })?;
        }
        Ok(())
    }
}

/// `a^i b^i a^j b^j`
fn block(alg: &Algebra, a: &HomElement, b: &HomElement, i: usize, j: usize) -> Result<HomElement> {
    alg.check_degree((i + j) * (a.degree() + b.degree()))?;
    let mut factors = Vec::with_capacity(2 * (i + j));
    factors.extend(std::iter::repeat_n(a, i));
    factors.extend(std::iter::repeat_n(b, i));
    factors.extend(std::iter::repeat_n(a, j));
    factors.extend(std::iter::repeat_n(b, j));
    alg.product(factors)
}

fn require_good_pair(alg: &Algebra, p: &GoodPair) -> Result<()> {
    if p.a == p.b || alg.length(&p.a)? != alg.length(&p.b)? || alg.length(&p.a)? == 0 {
        return Err(Error::Config("expected two distinct elements of equal positive length".into()));
    }
    let set = CanonicalSet::new(alg, [p.a.clone(), p.b.clone()])?;
    if !check_good(alg, &set)?.is_good() {
        return Err(Error::Config("expected a good pair".into()));
    }
    Ok(())
}

fn verified(alg: &Algebra, elems: &[&HomElement]) -> Result<()> {
    let set = CanonicalSet::new(alg, elems.iter().map(|&e| e.clone()))?;
    if set.len() != elems.len() || !check_good(alg, &set)?.is_good() {
        return Err(Error::Verification("generated family is not a good set of distinct elements".into()));
    }
    Ok(())
}

fn raw_plus(alg: &Algebra, p: &GoodPair) -> Result<GoodPair> {
    Ok(GoodPair { a: block(alg, &p.a, &p.b, 1, 8)?, b: block(alg, &p.a, &p.b, 2, 7)? })
}

fn raw_minus(alg: &Algebra, p: &GoodPair) -> Result<GoodPair> {
    Ok(GoodPair { a: block(alg, &p.a, &p.b, 3, 6)?, b: block(alg, &p.a, &p.b, 4, 5)? })
}

fn raw_children(alg: &Algebra, p: &GoodPair) -> Result<(GoodPair, GoodPair)> {
    require_good_pair(alg, p)?;
    let (plus, minus) = (raw_plus(alg, p)?, raw_minus(alg, p)?);
    verified(alg, &[&plus.a, &plus.b, &minus.a, &minus.b])?;
    Ok((plus, minus))
}

/// `(a b a^8 b^8, a^2 b^2 a^7 b^7)`
pub fn plus_pair(alg: &Algebra, p: &GoodPair) -> Result<GoodPair> {
    Ok(raw_children(alg, p)?.0)
}

/// `(a^3 b^3 a^6 b^6, a^4 b^4 a^5 b^5)`
pub fn minus_pair(alg: &Algebra, p: &GoodPair) -> Result<GoodPair> {
    Ok(raw_children(alg, p)?.1)
}

fn base_pair(alg: &Algebra) -> Result<GoodPair> {
    if alg.num_generators() < 2 {
        return Err(Error::Config("the chain and tree need at least two generators".into()));
    }
    Ok(GoodPair { a: alg.generator(0), b: alg.generator(1) })
}

/// `a_1 = x1`, `b_1 = x2`, `a_{k+1} = a b a^8 b^8`, `b_{k+1} = a^3 b^3 a^6 b^6`.
pub fn chain_pair(alg: &Algebra, k: usize) -> Result<GoodPair> {
    if k == 0 {
        return Err(Error::OutOfRange { what: "chain level", value: 0 });
    }
    let mut p = base_pair(alg)?;
    for _ in 1..k {
        let a = block(alg, &p.a, &p.b, 1, 8)?;
        let b = block(alg, &p.a, &p.b, 3, 6)?;
        p = GoodPair { a, b };
    }
    verified(alg, &[&p.a, &p.b])?;
    Ok(p)
}

pub fn tree_pair(alg: &Algebra, path: &TreePath) -> Result<GoodPair> {
    let mut p = base_pair(alg)?;
    for s in &path.0 {
        let (plus, minus) = raw_children(alg, &p)?;
        p = match s {
            Sign::Plus => plus,
            Sign::Minus => minus,
        };
    }
    Ok(p)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChainLevel {
    pub k: usize,
    pub length: usize,
    pub good: bool,
}

/// Verdicts for `⟨a_{k+1}, b_{k+1}⟩ ⊆ ⟨a_k, b_k⟩` and its strictness.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChainStep {
    pub k: usize,
    pub contained: bool,
    pub strict: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChainReport {
    pub levels: Vec<ChainLevel>,
    pub steps: Vec<ChainStep>,
}

impl ChainReport {
    pub fn all_strict(&self) -> bool {
        self.levels.iter().all(|l| l.good) && self.steps.iter().all(|s| s.contained && s.strict)
    }
}

pub fn verify_chain(alg: &Algebra, kmax: usize) -> Result<ChainReport> {
    let mut levels = Vec::new();
    let mut specs = Vec::new();
    for k in 1..=kmax {
        let p = chain_pair(alg, k)?;
        let spec = p.spec(alg)?;
        let good = spec.closure().members() == CanonicalSet::new(alg, [p.a.clone(), p.b.clone()])?.members();
        levels.push(ChainLevel { k, length: alg.length(&p.a)?, good });
        specs.push(spec);
    }
    let mut steps = Vec::new();
    for k in 1..kmax {
        let (upper, lower) = (&specs[k - 1], &specs[k]);
        steps.push(ChainStep {
            k,
            contained: subcategory_leq(alg, lower, upper)?,
            strict: !subcategory_leq(alg, upper, lower)?,
        });
    }
    Ok(ChainReport { levels, steps })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NodeReport {
    pub path: TreePath,
    pub length: usize,
    pub good: bool,
    /// For internal nodes: `T_{P+} ⊆ T_P` and `T_{P-} ⊆ T_P`.
    pub children_contained: Option<(bool, bool)>,
    /// For internal nodes: neither child contains the parent.
    pub children_strict: Option<(bool, bool)>,
    /// For internal nodes: the four children's generators form a good set.
    pub union_good: Option<bool>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PairRoute {
    /// Disjoint closures with a good union.
    Direct,
    /// Contained in the branches below the last common ancestor, which are certified.
    Ancestors,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PairReport {
    pub left: TreePath,
    pub right: TreePath,
    pub verdict: IntersectionVerdict,
    pub route: Option<PairRoute>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TreeReport {
    pub depth: usize,
    pub nodes: Vec<NodeReport>,
    pub pairs: Vec<PairReport>,
}

impl TreeReport {
    /// Pairs of distinct leaves.
    pub fn leaf_pairs(&self) -> impl Iterator<Item = &PairReport> {
        self.pairs.iter().filter(move |p| p.left.len() == self.depth && p.right.len() == self.depth)
    }

    pub fn all_certified(&self) -> bool {
        self.nodes.iter().all(|n| {
            n.good
                && n.children_contained.is_none_or(|(a, b)| a && b)
                && n.children_strict.is_none_or(|(a, b)| a && b)
                && n.union_good != Some(false)
        }) && self.pairs.iter().all(|p| p.verdict == IntersectionVerdict::CertifiedZero)
    }
}

pub fn verify_tree(alg: &Algebra, depth: usize) -> Result<TreeReport> {
    let paths = TreePath::all_up_to(depth);
    let mut pairs_by_path = Vec::with_capacity(paths.len());
    let mut specs = Vec::with_capacity(paths.len());
    for path in &paths {
        let p = tree_pair(alg, path)?;
        specs.push(p.spec(alg)?);
        pairs_by_path.push(p);
    }
    let index = |p: &TreePath| paths.iter().position(|q| q == p).expect("path in tree");

    let mut nodes = Vec::new();
    for (i, path) in paths.iter().enumerate() {
        let p = &pairs_by_path[i];
        let set = CanonicalSet::new(alg, [p.a.clone(), p.b.clone()])?;
        let good = set.len() == 2 && check_good(alg, &set)?.is_good() && alg.length(&p.a)? == alg.length(&p.b)?;
        let mut node = NodeReport {
            path: path.clone(),
            length: alg.length(&p.a)?,
            good,
            children_contained: None,
            children_strict: None,
            union_good: None,
        };
        if path.len() < depth {
            let (ip, im) = (index(&path.child(Sign::Plus)), index(&path.child(Sign::Minus)));
            node.children_contained = Some((
                subcategory_leq(alg, &specs[ip], &specs[i])?,
                subcategory_leq(alg, &specs[im], &specs[i])?,
            ));
            node.children_strict = Some((
                !subcategory_leq(alg, &specs[i], &specs[ip])?,
                !subcategory_leq(alg, &specs[i], &specs[im])?,
            ));
            let (pp, pm) = (&pairs_by_path[ip], &pairs_by_path[im]);
            let union = CanonicalSet::new(alg, [pp.a.clone(), pp.b.clone(), pm.a.clone(), pm.b.clone()])?;
            node.union_good = Some(union.len() == 4 && check_good(alg, &union)?.is_good());
        }
        nodes.push(node);
    }

    let mut pairs = Vec::new();
    for (i, p) in paths.iter().enumerate() {
        for (j, q) in paths.iter().enumerate().skip(i + 1) {
            if p.is_prefix_of(q) || q.is_prefix_of(p) {
                continue;
            }
            let direct = trivial_intersection(alg, &specs[i], &specs[j])?;
            let (verdict, route) = if direct == IntersectionVerdict::CertifiedZero {
                (direct, Some(PairRoute::Direct))
            } else {
                // the branches below the last common ancestor contain p and q
                let common = p.0.iter().zip(&q.0).take_while(|(a, b)| a == b).count();
                let bp = TreePath(p.0[..=common].to_vec());
                let bq = TreePath(q.0[..=common].to_vec());
                let contained = subcategory_leq(alg, &specs[i], &specs[index(&bp)])?
                    && subcategory_leq(alg, &specs[j], &specs[index(&bq)])?;
                let branches = trivial_intersection(alg, &specs[index(&bp)], &specs[index(&bq)])?;
                if contained && branches == IntersectionVerdict::CertifiedZero {
                    (IntersectionVerdict::CertifiedZero, Some(PairRoute::Ancestors))
                } else {
                    (IntersectionVerdict::Unknown, None)
                }
            };
            pairs.push(PairReport { left: p.clone(), right: q.clone(), verdict, route });
        }
    }
    Ok(TreeReport { depth, nodes, pairs })
}
