//! Exact arithmetic in the free graded algebra on `N` degree-one generators.
//!
//! Elements are homogeneous and stored as sparse maps from words to nonzero
//! scalars. The [`Algebra`] value carries the context (generator count, field,
//! degree cap) and performs every operation that depends on it.

use std::collections::BTreeMap;

use num_bigint::BigUint;

use crate::error::{Error, Result};
use crate::scalar::{Field, Scalar};
use crate::word::Word;

pub const DEFAULT_DEGREE_CAP: usize = 64;

/// A homogeneous element: a degree and a map from words of that length to nonzero scalars.
///
/// The zero element of degree `d` is the empty map.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct HomElement {
    degree: usize,
    terms: BTreeMap<Word, Scalar>,
}

impl HomElement {
    pub fn zero(degree: usize) -> HomElement {
        HomElement { degree, terms: BTreeMap::new() }
    }

    /// Builds an element from `(word, coefficient)` pairs, summing repeats and dropping zeros.
    pub fn from_terms<I>(degree: usize, terms: I) -> Result<HomElement>
    where
        I: IntoIterator<Item = (Word, Scalar)>,
    {
        let mut out = HomElement::zero(degree);
        for (w, c) in terms {
            if w.len() != degree {
                return Err(Error::DegreeMismatch { left: degree, right: w.len() });
            }
            out.add_term(w, c);
        }
        Ok(out)
    }

    fn add_term(&mut self, w: Word, c: Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&w) {
            Some(old) => {
                let s = &*old + &c;
                if s.is_zero() {
                    self.terms.remove(&w);
                } else {
                    *old = s;
                }
            }
            None => {
                self.terms.insert(w, c);
            }
        }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Nonzero scalar (degree 0); these are exactly the units of the algebra.
    pub fn is_unit(&self) -> bool {
        self.degree == 0 && !self.terms.is_empty()
    }

    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Word, &Scalar)> {
        self.terms.iter()
    }

    pub fn coeff(&self, w: &Word) -> Option<&Scalar> {
        self.terms.get(w)
    }

    /// The deglex-least word with its coefficient.
    pub fn leading(&self) -> Option<(&Word, &Scalar)> {
        self.terms.iter().next()
    }

    /// The scalar value of a unit, `None` otherwise.
    pub fn as_scalar(&self) -> Option<&Scalar> {
        if self.degree == 0 {
            self.terms.get(&Word::empty())
        } else {
            None
        }
    }

    /// The single word of a monomial.
    pub fn as_word(&self) -> Option<(&Word, &Scalar)> {
        if self.is_monomial() {
            self.leading()
        } else {
            None
        }
    }

    pub fn scale(&self, c: &Scalar) -> HomElement {
        if c.is_zero() {
            return HomElement::zero(self.degree);
        }
        HomElement {
            degree: self.degree,
            terms: self.terms.iter().map(|(w, a)| (w.clone(), a * c)).collect(),
        }
    }

    pub fn neg(&self) -> HomElement {
        HomElement {
            degree: self.degree,
            terms: self.terms.iter().map(|(w, a)| (w.clone(), -a)).collect(),
        }
    }

    pub(crate) fn nonzero(&self) -> Result<()> {
        if self.is_zero() {
            Err(Error::ZeroElement)
        } else {
            Ok(())
        }
    }

    pub(crate) fn nonzero_nonunit(&self) -> Result<()> {
        self.nonzero()?;
        if self.degree == 0 {
            Err(Error::UnitElement)
        } else {
            Ok(())
        }
    }
}

/// Product without the degree-cap check; used where the result is known to be bounded.
pub(crate) fn mul_raw(f: &HomElement, g: &HomElement) -> HomElement {
    let mut out = HomElement::zero(f.degree + g.degree);
    for (u, a) in &f.terms {
        for (v, b) in &g.terms {
            out.add_term(u.concat(v), a * b);
        }
    }
    out
}

/// Context for the free graded algebra `k<x1,...,xN>`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Algebra {
    num_generators: usize,
    field: Field,
    degree_cap: usize,
}

impl Algebra {
    pub fn new(num_generators: usize, field: Field) -> Result<Algebra> {
        if num_generators == 0 {
            return Err(Error::Config("at least one generator is required".into()));
        }
        if num_generators > u16::MAX as usize {
            return Err(Error::Config(format!("too many generators: {num_generators}")));
        }
        if let Field::Prime(p) = field {
            Field::prime(p)?;
        }
        Ok(Algebra { num_generators, field, degree_cap: DEFAULT_DEGREE_CAP })
    }

    /// Rationals, default cap.
    pub fn rational(num_generators: usize) -> Algebra {
        Algebra::new(num_generators, Field::Rationals).expect("N >= 1")
    }

    pub fn with_cap(mut self, degree_cap: usize) -> Result<Algebra> {
        if degree_cap == 0 {
            return Err(Error::Config("degree cap must be positive".into()));
        }
        self.degree_cap = degree_cap;
        Ok(self)
    }

    pub fn num_generators(&self) -> usize {
        self.num_generators
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn degree_cap(&self) -> usize {
        self.degree_cap
    }

    pub fn check_degree(&self, d: usize) -> Result<()> {
        if d > self.degree_cap {
            Err(Error::DegreeCap { requested: d, cap: self.degree_cap })
        } else {
            Ok(())
        }
    }

    pub fn zero(&self, degree: usize) -> HomElement {
        HomElement::zero(degree)
    }

    pub fn one(&self) -> HomElement {
        self.constant(self.field.one())
    }

    /// The degree-0 element `c`.
    pub fn constant(&self, c: Scalar) -> HomElement {
        let mut e = HomElement::zero(0);
        e.add_term(Word::empty(), c);
        e
    }

    pub fn int(&self, n: i64) -> Scalar {
        self.field.from_i64(n)
    }

    /// The generator `x_{i+1}` (0-based index).
    pub fn generator(&self, i: usize) -> HomElement {
        assert!(i < self.num_generators, "generator index {i} out of range");
        self.monomial(Word::letter(i), self.field.one())
    }

    pub fn monomial(&self, w: Word, c: Scalar) -> HomElement {
        let mut e = HomElement::zero(w.len());
        e.add_term(w, c);
        e
    }

    /// The word with the given 0-based letters and coefficient one.
    pub fn word(&self, letters: &[usize]) -> HomElement {
        self.monomial(Word::from_letters(letters.iter().copied()), self.field.one())
    }

    pub fn element<I>(&self, degree: usize, terms: I) -> Result<HomElement>
    where
        I: IntoIterator<Item = (Word, Scalar)>,
    {
        self.check_degree(degree)?;
        let e = HomElement::from_terms(degree, terms)?;
        for (w, c) in e.terms() {
            if w.max_letter().is_some_and(|m| m >= self.num_generators) {
                return Err(Error::OutOfRange { what: "generator index", value: w.max_letter().unwrap() as i64 });
            }
            if c.field() != self.field {
                return Err(Error::FieldMismatch);
            }
        }
        Ok(e)
    }

    pub fn add(&self, f: &HomElement, g: &HomElement) -> Result<HomElement> {
        if f.degree != g.degree {
            return Err(Error::DegreeMismatch { left: f.degree, right: g.degree });
        }
        let mut out = f.clone();
        for (w, c) in &g.terms {
            out.add_term(w.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, f: &HomElement, g: &HomElement) -> Result<HomElement> {
        self.add(f, &g.neg())
    }

    pub fn mul(&self, f: &HomElement, g: &HomElement) -> Result<HomElement> {
        self.check_degree(f.degree + g.degree)?;
        Ok(mul_raw(f, g))
    }

    /// Product of a sequence, the empty product being one.
    pub fn product<'a, I>(&self, factors: I) -> Result<HomElement>
    where
        I: IntoIterator<Item = &'a HomElement>,
    {
        let mut acc = self.one();
        for f in factors {
            acc = self.mul(&acc, f)?;
        }
        Ok(acc)
    }

    pub fn pow(&self, f: &HomElement, n: usize) -> Result<HomElement> {
        self.check_degree(f.degree.saturating_mul(n))?;
        self.product(std::iter::repeat_n(f, n))
    }

    /// `Some(λ)` with `f = λ·g`, or `None` when the two are not proportional.
    pub fn proportional(&self, f: &HomElement, g: &HomElement) -> Result<Option<Scalar>> {
        f.nonzero()?;
        g.nonzero()?;
        if f.degree != g.degree || f.terms.len() != g.terms.len() {
            return Ok(None);
        }
        let (wf, cf) = f.leading().unwrap();
        let (wg, cg) = g.leading().unwrap();
        if wf != wg {
            return Ok(None);
        }
        let lambda = cf.div(cg).expect("nonzero coefficient");
        for ((u, a), (v, b)) in f.terms.iter().zip(&g.terms) {
            if u != v || *a != b * &lambda {
                return Ok(None);
            }
        }
        Ok(Some(lambda))
    }

    /// `(λ, f̂)` with `f = λ·f̂` and the deglex-least word of `f̂` having coefficient one.
    pub fn canonical_monic(&self, f: &HomElement) -> Result<(Scalar, HomElement)> {
        f.nonzero()?;
        let lambda = f.leading().unwrap().1.clone();
        let inv = lambda.inv().expect("nonzero");
        Ok((lambda, f.scale(&inv)))
    }

    pub fn is_monic(&self, f: &HomElement) -> bool {
        f.leading().is_some_and(|(_, c)| c.is_one())
    }

    /// `dim A_d = N^d`, zero for negative `d`.
    pub fn graded_dim(&self, d: i64) -> BigUint {
        if d < 0 {
            BigUint::from(0u32)
        } else {
            BigUint::from(self.num_generators).pow(d as u32)
        }
    }

    /// Single-letter aliases `x, y, z` are active when `N <= 3`.
    pub fn uses_aliases(&self) -> bool {
        self.num_generators <= 3
    }

    pub fn generator_name(&self, i: usize) -> String {
        if self.uses_aliases() {
            ["x", "y", "z"][i].to_string()
        } else {
            format!("x{}", i + 1)
        }
    }
}
