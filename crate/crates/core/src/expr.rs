//! Text syntax for homogeneous elements.
//!
//! ```text
//! expr := ['-'] term (('+' | '-') term)*
//! term := power ('*'? power)*
//! power := atom ('^' nat)*
//! atom := number | generator | '(' expr ')'
//! ```
//!
//! Generators are `x1, x2, ...`; with at most three generators the aliases `x, y, z`
//! are available and a run such as `xyx` reads as a word, so `xy^2` is `x·y·y`.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::algebra::{Algebra, HomElement};
use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::word::Word;

const ALIASES: [char; 3] = ['x', 'y', 'z'];

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(BigRational),
    Gen(usize),
    Plus,
    Minus,
    Star,
    Caret,
    LParen,
    RParen,
}

fn lex(alg: &Algebra, text: &str) -> Result<Vec<(Tok, usize)>> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let pos = i + 1;
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        let simple = match c {
            '+' => Some(Tok::Plus),
            '-' => Some(Tok::Minus),
            '*' => Some(Tok::Star),
            '^' => Some(Tok::Caret),
            '(' => Some(Tok::LParen),
            ')' => Some(Tok::RParen),
            _ => None,
        };
        if let Some(t) = simple {
            out.push((t, pos));
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let num: BigInt = chars[start..i].iter().collect::<String>().parse().expect("digits");
            let mut value = BigRational::from_integer(num);
            if i + 1 < chars.len() && chars[i] == '/' && chars[i + 1].is_ascii_digit() {
                i += 1;
                let s = i;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                let den: BigInt = chars[s..i].iter().collect::<String>().parse().expect("digits");
                if den == BigInt::from(0) {
                    return Err(Error::Parse { pos: s + 1, msg: "zero denominator".into() });
                }
                value /= BigRational::from_integer(den);
            }
            out.push((Tok::Num(value), pos));
        } else if c.is_ascii_alphabetic() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_alphanumeric() {
                i += 1;
            }
            let ident: String = chars[start..i].iter().collect();
            lex_ident(alg, &ident, pos, &mut out)?;
        } else {
            return Err(Error::Parse { pos, msg: format!("unexpected character '{c}'") });
        }
    }
    Ok(out)
}

fn lex_ident(alg: &Algebra, ident: &str, pos: usize, out: &mut Vec<(Tok, usize)>) -> Result<()> {
    let n = alg.num_generators();
    let unknown = || Error::UnknownGenerator { name: ident.to_string(), pos };
    if let Some(digits) = ident.strip_prefix('x').filter(|d| !d.is_empty() && d.chars().all(|c| c.is_ascii_digit())) {
        let i: usize = digits.parse().map_err(|_| unknown())?;
        if i == 0 || i > n {
            return Err(unknown());
        }
        out.push((Tok::Gen(i - 1), pos));
        return Ok(());
    }
    if !alg.uses_aliases() {
        return Err(unknown());
    }
    for (k, c) in ident.chars().enumerate() {
        match ALIASES[..n].iter().position(|&a| a == c) {
            Some(g) => out.push((Tok::Gen(g), pos + k)),
            None => return Err(unknown()),
        }
    }
    Ok(())
}

/// Possibly inhomogeneous intermediate value.
type Poly = BTreeMap<Word, Scalar>;

struct Parser<'a> {
    alg: &'a Algebra,
    toks: Vec<(Tok, usize)>,
    at: usize,
    end: usize,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.at).map(|(t, _)| t)
    }

    fn pos(&self) -> usize {
        self.toks.get(self.at).map_or(self.end, |(_, p)| *p)
    }

    fn error<T>(&self, msg: &str) -> Result<T> {
        Err(Error::Parse { pos: self.pos(), msg: msg.to_string() })
    }

    fn constant(&self, c: Scalar) -> Poly {
        let mut p = Poly::new();
        if !c.is_zero() {
            p.insert(Word::empty(), c);
        }
        p
    }

    fn add(&self, mut f: Poly, g: Poly, negate: bool) -> Poly {
        for (w, c) in g {
            let c = if negate { -c } else { c };
            let s = match f.remove(&w) {
                Some(old) => &old + &c,
                None => c,
            };
            if !s.is_zero() {
                f.insert(w, s);
            }
        }
        f
    }

    fn mul(&self, f: &Poly, g: &Poly) -> Result<Poly> {
        let mut out = Poly::new();
        for (w1, c1) in f {
            for (w2, c2) in g {
                self.alg.check_degree(w1.len() + w2.len())?;
                let w = w1.concat(w2);
                let c = c1 * c2;
                let s = match out.remove(&w) {
                    Some(old) => &old + &c,
                    None => c,
                };
                if !s.is_zero() {
                    out.insert(w, s);
                }
            }
        }
        Ok(out)
    }

    fn expr(&mut self) -> Result<Poly> {
        let negate_first = if self.peek() == Some(&Tok::Minus) {
            self.at += 1;
            true
        } else {
            false
        };
        let first = self.term()?;
        let mut acc = self.add(Poly::new(), first, negate_first);
        while let Some(t @ (Tok::Plus | Tok::Minus)) = self.peek() {
            let negate = *t == Tok::Minus;
            self.at += 1;
            let rhs = self.term()?;
            acc = self.add(acc, rhs, negate);
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<Poly> {
        let mut acc = self.power()?;
        loop {
            match self.peek() {
                Some(Tok::Star) => {
                    self.at += 1;
                    let rhs = self.power()?;
                    acc = self.mul(&acc, &rhs)?;
                }
                Some(Tok::Num(_) | Tok::Gen(_) | Tok::LParen) => {
                    let rhs = self.power()?;
                    acc = self.mul(&acc, &rhs)?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn power(&mut self) -> Result<Poly> {
        let mut base = self.atom()?;
        while self.peek() == Some(&Tok::Caret) {
            self.at += 1;
            let e = match self.peek() {
                Some(Tok::Num(n)) if n.is_integer() => n.to_integer(),
                _ => return self.error("expected a nonnegative integer exponent"),
            };
            let deg = base.keys().map(Word::len).max().unwrap_or(0);
            let cap = self.alg.degree_cap();
            let e: usize = match usize::try_from(e) {
                Ok(e) if e <= cap.max(1024) && deg * e <= cap => e,
                Ok(e) => return Err(Error::DegreeCap { requested: deg.max(1).saturating_mul(e), cap }),
                Err(_) => return Err(Error::DegreeCap { requested: usize::MAX, cap }),
            };
            self.at += 1;
            let mut acc = self.constant(self.alg.field().one());
            for _ in 0..e {
                acc = self.mul(&acc, &base)?;
            }
            base = acc;
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Poly> {
        let Some(tok) = self.peek().cloned() else {
            return self.error("unexpected end of input");
        };
        match tok {
            Tok::Num(q) => {
                let c = self.alg.field().from_rational(&q).map_err(|_| Error::Parse {
                    pos: self.pos(),
                    msg: "denominator vanishes in the coefficient field".into(),
                })?;
                self.at += 1;
                Ok(self.constant(c))
            }
            Tok::Gen(g) => {
                self.at += 1;
                let mut p = Poly::new();
                p.insert(Word::letter(g), self.alg.field().one());
                Ok(p)
            }
            Tok::LParen => {
                self.at += 1;
                let inner = self.expr()?;
                if self.peek() != Some(&Tok::RParen) {
                    return self.error("expected ')'");
                }
                self.at += 1;
                Ok(inner)
            }
            _ => self.error("expected a number, generator or '('"),
        }
    }
}

/// Parses and evaluates `text`, which must be homogeneous.
pub fn parse_element(alg: &Algebra, text: &str) -> Result<HomElement> {
    let toks = lex(alg, text)?;
    let end = text.chars().count() + 1;
    if toks.is_empty() {
        return Err(Error::Parse { pos: end, msg: "empty expression".into() });
    }
    let mut p = Parser { alg, toks, at: 0, end };
    let poly = p.expr()?;
    if p.at < p.toks.len() {
        return p.error("unexpected token");
    }
    let mut degrees: Vec<usize> = poly.keys().map(Word::len).collect();
    degrees.dedup();
    if degrees.len() > 1 {
        return Err(Error::NonHomogeneous { first: degrees[0], second: degrees[1] });
    }
    let degree = degrees.first().copied().unwrap_or(0);
    alg.element(degree, poly)
}

/// Splits a comma- or newline-separated list, skipping blank lines and `#` comments.
pub fn split_list(text: &str) -> Vec<String> {
    text.lines()
        .map(|l| l.split('#').next().unwrap_or(""))
        .flat_map(|l| l.split(','))
        .map(|s| s.trim().to_string())
        .filter(|s| !s.is_empty())
        .collect()
}

pub fn parse_set(alg: &Algebra, text: &str) -> Result<Vec<HomElement>> {
    split_list(text).iter().map(|s| parse_element(alg, s)).collect()
}

pub fn format_scalar(c: &Scalar) -> String {
    c.to_string()
}

/// Renders a word: `x^2yx` with aliases, `x1^2*x2*x1` otherwise.
pub fn format_word(alg: &Algebra, w: &Word) -> String {
    let sep = if alg.uses_aliases() { "" } else { "*" };
    w.runs()
        .into_iter()
        .map(|(l, k)| {
            let name = alg.generator_name(l);
            if k == 1 {
                name
            } else {
                format!("{name}^{k}")
            }
        })
        .collect::<Vec<_>>()
        .join(sep)
}

/// Renders an element with terms in deglex order; `parse_element` inverts it.
pub fn format_element(alg: &Algebra, f: &HomElement) -> String {
    if f.is_zero() {
        return "0".into();
    }
    let mut out = String::new();
    for (n, (w, c)) in f.terms().enumerate() {
        let neg = c.is_negative();
        let abs = if neg { -c } else { c.clone() };
        match (n, neg) {
            (0, true) => out.push('-'),
            (0, false) => {}
            (_, true) => out.push_str(" - "),
            (_, false) => out.push_str(" + "),
        }
        if w.is_empty() {
            out.push_str(&abs.to_string());
            continue;
        }
        if !abs.is_one() {
            let s = abs.to_string();
            let joiner = if alg.uses_aliases() && !s.contains('/') { "" } else { "*" };
            out.push_str(&s);
            out.push_str(joiner);
        }
        out.push_str(&format_word(alg, w));
    }
    out
}
