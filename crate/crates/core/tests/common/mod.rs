#![allow(dead_code)]

use freelat_core::{parse_element, Algebra, HomElement, Word};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn el(alg: &Algebra, s: &str) -> HomElement {
    parse_element(alg, s).unwrap_or_else(|e| panic!("{s}: {e}"))
}

pub fn els(alg: &Algebra, xs: &[&str]) -> Vec<HomElement> {
    xs.iter().map(|s| el(alg, s)).collect()
}

pub fn random_letters(r: &mut ChaCha8Rng, n: usize, len: usize) -> Vec<usize> {
    (0..len).map(|_| r.random_range(0..n)).collect()
}

/// A nonzero element of the given degree with up to `max_terms` terms and small coefficients.
pub fn random_element(alg: &Algebra, r: &mut ChaCha8Rng, degree: usize, max_terms: usize) -> HomElement {
    loop {
        let k = r.random_range(1..=max_terms);
        let terms: Vec<(Word, _)> = (0..k)
            .map(|_| {
                let w = Word::from_letters(random_letters(r, alg.num_generators(), degree));
                let mut c = 0;
                while c == 0 {
                    c = r.random_range(-3i64..=3);
                }
                (w, alg.int(c))
            })
            .collect();
        let mut f = alg.zero(degree);
        for (w, c) in terms {
            f = alg.add(&f, &alg.monomial(w, c)).unwrap();
        }
        if !f.is_zero() {
            return f;
        }
    }
}

/// Elements listed as good and as not good.
pub const GOOD_ELEMENTS: [&str; 5] = ["x", "xy", "x^3y^4", "x^2y^3xy", "x^2yxy^2"];
pub const BAD_ELEMENTS: [&str; 5] = ["x^2", "x^3", "xyx", "xyxy", "xy^2x^2y"];
pub const GOOD_SETS: [&[&str]; 3] = [&["x", "y"], &["xy", "x^2y^2"], &["x^2yxy^2", "x^3y^2x^2y^3", "x^4y^3x^3y^4"]];
pub const BAD_SETS: [&[&str]; 4] = [
    &["xy", "yx^2"],
    &["x^2y^3", "x^3y^2"],
    &["x^2yxy^2", "xy^4xy"],
    &["xyx^2y^2", "x^2y^2xy"],
];

/// Input family and its good closure.
pub const CLOSURES: [(&[&str], &[&str]); 9] = [
    (&["x^2"], &["x"]),
    (&["x^3"], &["x"]),
    (&["xyx"], &["x", "y"]),
    (&["xy^2x^2y"], &["x", "y"]),
    (&["xy", "yx^2"], &["x", "y"]),
    (&["x^2y^3", "x^3y^2"], &["x", "y"]),
    (&["x^2yxy^2", "xy^4xy"], &["x", "y"]),
    (&["xyxy"], &["xy"]),
    (&["xyx^2y^2", "x^2y^2xy"], &["xy", "x^2y^2"]),
];
