//! Prime factorization in the free algebra via rank-one flattenings.
//!
//! For a homogeneous `f` of degree `d` and `0 < d1 < d`, the flattening is the
//! matrix `M[u][v] = coeff(f, uv)` with `|u| = d1`. A factorization `f = g·h`
//! with `deg g = d1` exists exactly when `M` has rank one, and then `g` and `h`
//! are read off a row and a column. Peeling at the least split point yields the
//! primes left to right, each stored monic; the scalar is collected in the unit.

use std::collections::{BTreeMap, HashMap};

use crate::algebra::{mul_raw, Algebra, HomElement};
use crate::error::{Error, Result};
use crate::linalg;
use crate::scalar::Scalar;
use crate::word::Word;

/// A certified split `f = left · right` with `deg left = split_degree`; `left` is monic.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SplitCertificate {
    pub split_degree: usize,
    pub left: HomElement,
    pub right: HomElement,
}

/// `unit · primes[0] · ... · primes[r-1]`, every prime monic.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PrimeFactorization {
    unit: Scalar,
    primes: Vec<HomElement>,
}

impl PrimeFactorization {
    pub fn unit(&self) -> &Scalar {
        &self.unit
    }

    pub fn primes(&self) -> &[HomElement] {
        &self.primes
    }

    /// The length `l(f)`: number of prime factors.
    pub fn len(&self) -> usize {
        self.primes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.primes.is_empty()
    }

    /// Partial degree sums strictly between 0 and the total degree.
    pub fn split_degrees(&self) -> Vec<usize> {
        let mut out = Vec::new();
        let mut acc = 0;
        for p in self.primes.iter().take(self.primes.len().saturating_sub(1)) {
            acc += p.degree();
            out.push(acc);
        }
        out
    }

    pub fn degree(&self) -> usize {
        self.primes.iter().map(HomElement::degree).sum()
    }
}

impl Algebra {
    /// Splits `f` at degree `d1` when its flattening there has rank one.
    pub fn rank1_split(&self, f: &HomElement, d1: usize) -> Result<Option<SplitCertificate>> {
        f.nonzero()?;
        if d1 == 0 || d1 >= f.degree() {
            return Err(Error::OutOfRange { what: "split degree", value: d1 as i64 });
        }
        let mut rows: BTreeMap<Word, Vec<(Word, &Scalar)>> = BTreeMap::new();
        for (w, c) in f.terms() {
            let (u, v) = w.split_at(d1);
            rows.entry(u).or_default().push((v, c));
        }
        let mut it = rows.iter();
        let (first_prefix, first_row) = it.next().expect("nonzero");
        if first_row.len() * rows.len() != f.num_terms() {
            return Ok(None);
        }
        let pivot = first_row[0].1;
        let mut left_terms = vec![(first_prefix.clone(), self.field().one())];
        for (u, row) in it {
            if row.len() != first_row.len() {
                return Ok(None);
            }
            let mu = row[0].1.div(pivot).expect("nonzero pivot");
            for ((v, c), (v0, c0)) in row.iter().zip(first_row) {
                if v != v0 || **c != &mu * c0 {
                    return Ok(None);
                }
            }
            left_terms.push((u.clone(), mu));
        }
        let left = HomElement::from_terms(d1, left_terms)?;
        let right = HomElement::from_terms(
            f.degree() - d1,
            first_row.iter().map(|(v, c)| (v.clone(), (*c).clone())),
        )?;
        Ok(Some(SplitCertificate { split_degree: d1, left, right }))
    }

    /// Exact rank of the flattening of `f` at `d1` (rows: prefixes, columns: suffixes).
    pub fn flattening_rank(&self, f: &HomElement, d1: usize) -> Result<usize> {
        if d1 > f.degree() {
            return Err(Error::OutOfRange { what: "split degree", value: d1 as i64 });
        }
        let mut cols: HashMap<Word, usize> = HashMap::new();
        let mut rows: BTreeMap<Word, linalg::SparseRow> = BTreeMap::new();
        for (w, c) in f.terms() {
            let (u, v) = w.split_at(d1);
            let n = cols.len();
            let j = *cols.entry(v).or_insert(n);
            rows.entry(u).or_default().insert(j, c.clone());
        }
        Ok(linalg::rank(rows.into_values()))
    }

    /// All degrees at which `f` splits, ascending.
    pub fn split_points(&self, f: &HomElement) -> Result<Vec<usize>> {
        f.nonzero()?;
        if f.is_monomial() {
            return Ok((1..f.degree()).collect());
        }
        let mut out = Vec::new();
        for d1 in 1..f.degree() {
            if self.rank1_split(f, d1)?.is_some() {
                out.push(d1);
            }
        }
        Ok(out)
    }

    pub fn is_prime(&self, f: &HomElement) -> Result<bool> {
        f.nonzero()?;
        if f.degree() == 0 {
            return Ok(false);
        }
        if f.is_monomial() {
            return Ok(f.degree() == 1);
        }
        for d1 in 1..f.degree() {
            if self.rank1_split(f, d1)?.is_some() {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Factorization into monic primes, peeling at the least split point.
    pub fn factor(&self, f: &HomElement) -> Result<PrimeFactorization> {
        f.nonzero()?;
        self.check_degree(f.degree())?;
        if let Some((w, c)) = f.as_word() {
            let primes = w.letters().map(|i| self.generator(i)).collect();
            return Ok(PrimeFactorization { unit: c.clone(), primes });
        }
        let mut primes = Vec::new();
        let mut rest = f.clone();
        'peel: while rest.degree() > 0 {
            for d1 in 1..rest.degree() {
                if let Some(cert) = self.rank1_split(&rest, d1)? {
                    primes.push(cert.left);
                    rest = cert.right;
                    continue 'peel;
                }
            }
            let (lambda, p) = self.canonical_monic(&rest)?;
            primes.push(p);
            rest = self.constant(lambda);
        }
        let unit = rest.as_scalar().expect("degree-0 remainder").clone();
        Ok(PrimeFactorization { unit, primes })
    }

    /// The length `l(f)`.
    pub fn length(&self, f: &HomElement) -> Result<usize> {
        Ok(self.factor(f)?.len())
    }

    /// `h` with `f = g·h`, if it exists.
    pub fn left_divide(&self, g: &HomElement, f: &HomElement) -> Result<Option<HomElement>> {
        g.nonzero()?;
        f.nonzero()?;
        if g.degree() > f.degree() {
            return Ok(None);
        }
        let k = g.degree();
        let (w0, c0) = g.leading().unwrap();
        let inv = c0.inv().unwrap();
        let candidate = HomElement::from_terms(
            f.degree() - k,
            f.terms()
                .filter(|(w, _)| w.prefix(k) == *w0)
                .map(|(w, c)| (w.suffix(w.len() - k), c * &inv)),
        )?;
        if candidate.is_zero() || mul_raw(g, &candidate) != *f {
            return Ok(None);
        }
        Ok(Some(candidate))
    }

    /// `h` with `f = h·g`, if it exists.
    pub fn right_divide(&self, g: &HomElement, f: &HomElement) -> Result<Option<HomElement>> {
        g.nonzero()?;
        f.nonzero()?;
        if g.degree() > f.degree() {
            return Ok(None);
        }
        let k = g.degree();
        let (w0, c0) = g.leading().unwrap();
        let inv = c0.inv().unwrap();
        let candidate = HomElement::from_terms(
            f.degree() - k,
            f.terms()
                .filter(|(w, _)| w.suffix(k) == *w0)
                .map(|(w, c)| (w.prefix(w.len() - k), c * &inv)),
        )?;
        if candidate.is_zero() || mul_raw(&candidate, g) != *f {
            return Ok(None);
        }
        Ok(Some(candidate))
    }

    /// Monic product of the first `k` primes.
    pub fn prefix_product(&self, pf: &PrimeFactorization, k: usize) -> Result<HomElement> {
        if k > pf.len() {
            return Err(Error::OutOfRange { what: "prefix length", value: k as i64 });
        }
        Ok(product_raw(self, &pf.primes[..k]))
    }

    /// Monic product of the last `k` primes.
    pub fn suffix_product(&self, pf: &PrimeFactorization, k: usize) -> Result<HomElement> {
        if k > pf.len() {
            return Err(Error::OutOfRange { what: "suffix length", value: k as i64 });
        }
        Ok(product_raw(self, &pf.primes[pf.len() - k..]))
    }

    /// Multiplies `unit · ∏ primes` back out.
    pub fn expand(&self, pf: &PrimeFactorization) -> HomElement {
        product_raw(self, &pf.primes).scale(&pf.unit)
    }
}

pub(crate) fn product_raw(alg: &Algebra, factors: &[HomElement]) -> HomElement {
    factors.iter().fold(alg.one(), |acc, f| mul_raw(&acc, f))
}
