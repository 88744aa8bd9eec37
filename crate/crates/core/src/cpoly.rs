//! Sparse commutative polynomials in `X1..XN` with exact coefficients.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::scalar::{Field, Scalar};

/// Exponent vector of a commutative monomial.
pub type Exponents = Vec<u32>;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CPoly {
    nvars: usize,
    field: Field,
    terms: BTreeMap<Exponents, Scalar>,
}

fn total(e: &Exponents) -> u32 {
    e.iter().sum()
}

impl CPoly {
    pub fn zero(nvars: usize, field: Field) -> CPoly {
        CPoly { nvars, field, terms: BTreeMap::new() }
    }

    pub fn constant(nvars: usize, c: Scalar) -> CPoly {
        let field = c.field();
        let mut p = CPoly::zero(nvars, field);
        p.add_term(vec![0; nvars], c);
        p
    }

    pub fn one(nvars: usize, field: Field) -> CPoly {
        CPoly::constant(nvars, field.one())
    }

    pub fn var(nvars: usize, field: Field, i: usize) -> CPoly {
        let mut e = vec![0; nvars];
        e[i] = 1;
        CPoly::monomial(field, e, field.one())
    }

    pub fn monomial(field: Field, e: Exponents, c: Scalar) -> CPoly {
        let mut p = CPoly::zero(e.len(), field);
        p.add_term(e, c);
        p
    }

    /// Adds `c·X^e` in place.
    pub fn add_term(&mut self, e: Exponents, c: Scalar) {
        debug_assert_eq!(e.len(), self.nvars);
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&e) {
            Some(old) => {
                let s = &*old + &c;
                if s.is_zero() {
                    self.terms.remove(&e);
                } else {
                    *old = s;
                }
            }
            None => {
                self.terms.insert(e, c);
            }
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exponents, &Scalar)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Nonzero constant.
    pub fn is_constant(&self) -> bool {
        self.terms.len() == 1 && self.terms.keys().all(|e| total(e) == 0)
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(total).max()
    }

    pub fn degree_in(&self, v: usize) -> Option<u32> {
        self.terms.keys().map(|e| e[v]).max()
    }

    /// Leading term in graded-lex order (total degree, then exponent vector).
    pub fn leading(&self) -> Option<(&Exponents, &Scalar)> {
        self.terms.iter().max_by(|a, b| total(a.0).cmp(&total(b.0)).then_with(|| a.0.cmp(b.0)))
    }

    pub fn scale(&self, c: &Scalar) -> CPoly {
        let mut p = CPoly::zero(self.nvars, self.field);
        for (e, v) in &self.terms {
            p.add_term(e.clone(), v * c);
        }
        p
    }

    pub fn add(&self, other: &CPoly) -> CPoly {
        let mut p = self.clone();
        for (e, v) in &other.terms {
            p.add_term(e.clone(), v.clone());
        }
        p
    }

    pub fn sub(&self, other: &CPoly) -> CPoly {
        let mut p = self.clone();
        for (e, v) in &other.terms {
            p.add_term(e.clone(), -v);
        }
        p
    }

    pub fn mul(&self, other: &CPoly) -> CPoly {
        let mut p = CPoly::zero(self.nvars, self.field);
        for (e1, v1) in &self.terms {
            for (e2, v2) in &other.terms {
                let e = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                p.add_term(e, v1 * v2);
            }
        }
        p
    }

    /// Scales so the leading coefficient is one; zero stays zero.
    pub fn monic(&self) -> CPoly {
        match self.leading() {
            None => self.clone(),
            Some((_, c)) => self.scale(&c.inv().expect("nonzero")),
        }
    }

    pub fn derivative(&self, v: usize) -> CPoly {
        let mut p = CPoly::zero(self.nvars, self.field);
        for (e, c) in &self.terms {
            if e[v] > 0 {
                let mut e2 = e.clone();
                e2[v] -= 1;
                p.add_term(e2, c * &self.field.from_i64(e[v] as i64));
            }
        }
        p
    }

    /// Exact quotient `self / g`, or `None` when `g` does not divide.
    pub fn exact_div(&self, g: &CPoly) -> Result<Option<CPoly>> {
        let Some((lg_e, lg_c)) = g.leading() else {
            return Err(Error::ZeroElement);
        };
        let (lg_e, lg_inv) = (lg_e.clone(), lg_c.inv().expect("nonzero"));
        let mut r = self.clone();
        let mut q = CPoly::zero(self.nvars, self.field);
        while let Some((e, c)) = r.leading() {
            if e.iter().zip(&lg_e).any(|(a, b)| a < b) {
                // the leading term of any multiple of g is divisible by lt(g)
                return Ok(None);
            }
            let de: Exponents = e.iter().zip(&lg_e).map(|(a, b)| a - b).collect();
            let t = CPoly::monomial(self.field, de, c * &lg_inv);
            r = r.sub(&t.mul(g));
            q = q.add(&t);
        }
        Ok(Some(q))
    }

    pub fn divides(&self, f: &CPoly) -> Result<bool> {
        Ok(f.exact_div(self)?.is_some())
    }

    /// Coefficient of `X_v^k`, as a polynomial not involving `X_v`.
    fn coeff_in(&self, v: usize, k: u32) -> CPoly {
        let mut p = CPoly::zero(self.nvars, self.field);
        for (e, c) in &self.terms {
            if e[v] == k {
                let mut e2 = e.clone();
                e2[v] = 0;
                p.add_term(e2, c.clone());
            }
        }
        p
    }

    fn shift_in(&self, v: usize, k: u32) -> CPoly {
        let mut p = CPoly::zero(self.nvars, self.field);
        for (e, c) in &self.terms {
            let mut e2 = e.clone();
            e2[v] += k;
            p.add_term(e2, c.clone());
        }
        p
    }

    fn main_var(&self) -> Option<usize> {
        (0..self.nvars).find(|&v| self.degree_in(v).unwrap_or(0) > 0)
    }

    /// Gcd of the coefficients with respect to `X_v`.
    fn content_in(&self, v: usize) -> CPoly {
        let mut g = CPoly::zero(self.nvars, self.field);
        for k in 0..=self.degree_in(v).unwrap_or(0) {
            let c = self.coeff_in(v, k);
            if !c.is_zero() {
                g = gcd(&g, &c);
                if g.is_constant() {
                    break;
                }
            }
        }
        g
    }

    fn primitive_in(&self, v: usize) -> CPoly {
        let c = self.content_in(v);
        self.exact_div(&c).expect("content is nonzero").expect("content divides")
    }

    /// Pseudo-remainder of `self` by `b` with respect to `X_v`.
    fn prem_in(&self, b: &CPoly, v: usize) -> CPoly {
        let db = b.degree_in(v).unwrap_or(0);
        let lb = b.coeff_in(v, db);
        let mut r = self.clone();
        while let Some(dr) = r.degree_in(v) {
            if r.is_zero() || dr < db {
                break;
            }
            let lr = r.coeff_in(v, dr);
            r = r.mul(&lb).sub(&b.mul(&lr).shift_in(v, dr - db));
        }
        r
    }
}

/// Monic greatest common divisor; `gcd(0, 0) = 0`.
pub fn gcd(f: &CPoly, g: &CPoly) -> CPoly {
    if f.is_zero() {
        return g.monic();
    }
    if g.is_zero() {
        return f.monic();
    }
    if f.is_constant() || g.is_constant() {
        return CPoly::one(f.nvars, f.field);
    }
    let v = match (f.main_var(), g.main_var()) {
        (Some(a), Some(b)) => a.min(b),
        (Some(a), None) | (None, Some(a)) => a,
        (None, None) => unreachable!("nonconstant polynomial has a variable"),
    };
    // both are polynomials in X_v over k[other vars]
    let (fv, gv) = (f.degree_in(v).unwrap_or(0), g.degree_in(v).unwrap_or(0));
    if fv == 0 {
        return gcd(f, &g.content_in(v));
    }
    if gv == 0 {
        return gcd(&f.content_in(v), g);
    }
    let content = gcd(&f.content_in(v), &g.content_in(v));
    let (mut a, mut b) = (f.primitive_in(v), g.primitive_in(v));
    if a.degree_in(v) < b.degree_in(v) {
        std::mem::swap(&mut a, &mut b);
    }
    while !b.is_zero() && b.degree_in(v).unwrap_or(0) > 0 {
        let r = a.prem_in(&b, v);
        a = b;
        b = if r.is_zero() { r } else { r.primitive_in(v) };
    }
    let last = if b.is_zero() { a } else { CPoly::one(f.nvars, f.field) };
    content.mul(&last).monic()
}

/// Radical of a nonzero polynomial, monic; refuses characteristics that can kill derivatives.
pub fn squarefree_part(f: &CPoly) -> Result<CPoly> {
    if f.is_zero() {
        return Err(Error::ZeroElement);
    }
    let p = f.field.characteristic();
    let deg = f.total_degree().unwrap_or(0) as u64;
    if p != 0 && p <= deg {
        return Err(Error::Characteristic { characteristic: p, degree: deg as usize });
    }
    let mut h = f.monic();
    loop {
        let mut g = h.clone();
        for v in 0..h.nvars {
            g = gcd(&g, &h.derivative(v));
        }
        if g.is_constant() {
            return Ok(h);
        }
        h = h.exact_div(&g)?.expect("gcd divides").monic();
    }
}

impl fmt::Display for CPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let names: Vec<String> = if self.nvars <= 3 {
            ["X", "Y", "Z"][..self.nvars].iter().map(|s| s.to_string()).collect()
        } else {
            (1..=self.nvars).map(|i| format!("X{i}")).collect()
        };
        let sep = if self.nvars <= 3 { "" } else { "*" };
        let mut terms: Vec<_> = self.terms.iter().collect();
        terms.sort_by(|a, b| total(b.0).cmp(&total(a.0)).then_with(|| b.0.cmp(a.0)));
        for (n, (e, c)) in terms.into_iter().enumerate() {
            let neg = c.is_negative();
            let abs = if neg { -c } else { c.clone() };
            match (n, neg) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let mono: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, &k)| k > 0)
                .map(|(i, &k)| if k == 1 { names[i].clone() } else { format!("{}^{k}", names[i]) })
                .collect();
            if mono.is_empty() {
                write!(f, "{abs}")?;
            } else if abs.is_one() {
                f.write_str(&mono.join(sep))?;
            } else {
                write!(f, "{abs}{}{}", if sep.is_empty() { "" } else { "*" }, mono.join(sep))?;
            }
        }
        Ok(())
    }
}
