mod common;

use common::*;
use freelat_core::cpoly::{gcd, CPoly};
use freelat_core::good::{check_good, good_closure, CanonicalSet};
use freelat_core::hom::{hom_dim, hom_nonzero_predict};
use freelat_core::lattice::{tree_pair, verify_tree, TreePath, DEFAULT_LATTICE_CAP};
use freelat_core::subcat::{member, subcategory_eq, subcategory_leq, SubcategorySpec};
use freelat_core::support::{abelianize, not_member_by_support, support_of, support_subset, SupportDescriptor};
use freelat_core::{Algebra, HomElement};
use num_bigint::BigUint;
use proptest::prelude::*;
use rand::Rng;

fn q2() -> Algebra {
    Algebra::rational(2)
}

fn random_words(a: &Algebra, r: &mut rand_chacha::ChaCha8Rng, k: usize, max_len: usize) -> Vec<HomElement> {
    (0..k)
        .map(|_| {
            let len = r.random_range(1..=max_len);
            a.word(&random_letters(r, a.num_generators(), len))
        })
        .collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn ring_axioms(seed in any::<u64>()) {
        let a = q2();
        let mut r = rng(seed);
        let (d1, d2, d3) = (r.random_range(0..4), r.random_range(0..4), r.random_range(0..4));
        let f = random_element(&a, &mut r, d1, 3);
        let g = random_element(&a, &mut r, d2, 3);
        let g2 = random_element(&a, &mut r, d2, 3);
        let h = random_element(&a, &mut r, d3, 3);
        let fg_h = a.mul(&a.mul(&f, &g).unwrap(), &h).unwrap();
        let f_gh = a.mul(&f, &a.mul(&g, &h).unwrap()).unwrap();
        prop_assert_eq!(fg_h, f_gh);
        let left = a.mul(&f, &a.add(&g, &g2).unwrap()).unwrap();
        let right = a.add(&a.mul(&f, &g).unwrap(), &a.mul(&f, &g2).unwrap()).unwrap();
        prop_assert_eq!(left, right);
        prop_assert_eq!(a.mul(&a.one(), &f).unwrap(), f.clone());
        prop_assert_eq!(a.mul(&f, &a.one()).unwrap(), f);
    }

    #[test]
    fn canonical_forms(seed in any::<u64>()) {
        let a = q2();
        let mut r = rng(seed);
        let d = r.random_range(0..5);
        let f = random_element(&a, &mut r, d, 4);
        let g = random_element(&a, &mut r, d, 4);
        let (_, fhat) = a.canonical_monic(&f).unwrap();
        prop_assert_eq!(a.canonical_monic(&fhat).unwrap(), (a.int(1), fhat.clone()));
        let scaled = f.scale(&a.int(r.random_range(1..9)));
        for other in [&g, &scaled] {
            let same = a.canonical_monic(other).unwrap().1 == fhat;
            prop_assert_eq!(a.proportional(&f, other).unwrap().is_some(), same);
        }
    }

    #[test]
    fn factorization_invariants(seed in any::<u64>()) {
        let a = q2();
        let mut r = rng(seed);
        let (dg, dh) = (r.random_range(1..5), r.random_range(1..5));
        let g = random_element(&a, &mut r, dg, 3);
        let h = random_element(&a, &mut r, dh, 2);
        let f = a.mul(&g, &h).unwrap();
        prop_assert_eq!(a.length(&f).unwrap(), a.length(&g).unwrap() + a.length(&h).unwrap());
        let pf = a.factor(&f).unwrap();
        prop_assert_eq!(a.expand(&pf), f.clone());
        for p in pf.primes() {
            prop_assert!(a.is_prime(p).unwrap());
            prop_assert!(a.is_monic(p));
        }
        let mut sums = Vec::new();
        let mut acc = 0;
        for p in &pf.primes()[..pf.len() - 1] {
            acc += p.degree();
            sums.push(acc);
        }
        prop_assert_eq!(a.split_points(&f).unwrap(), sums);
    }

    #[test]
    fn closures_are_good_conservative_and_replayable(seed in any::<u64>()) {
        let a = q2();
        let mut r = rng(seed);
        let k = r.random_range(1..4);
        let mut input = random_words(&a, &mut r, k, 6);
        if r.random_bool(0.5) {
            let d = r.random_range(1..4);
            input.push(random_element(&a, &mut r, d, 2));
        }
        let (closure, trace) = good_closure(&a, &input).unwrap();
        prop_assert!(check_good(&a, &closure).unwrap().is_good());
        let replayed: Vec<HomElement> = trace.replay(&input).unwrap().into_iter().collect();
        prop_assert_eq!(replayed.as_slice(), closure.members());
        let spec = SubcategorySpec::new(&a, &input).unwrap();
        for x in &input {
            prop_assert!(member(&a, x, &spec).unwrap().is_some());
        }
    }

    #[test]
    fn membership_invariances(seed in any::<u64>()) {
        let a = q2();
        let mut r = rng(seed);
        let k = r.random_range(1..4);
        let input = random_words(&a, &mut r, k, 5);
        let spec = SubcategorySpec::new(&a, &input).unwrap();
        let on_closure = SubcategorySpec::new(&a, spec.closure().members()).unwrap();
        let len = r.random_range(1..9);
        let x = a.word(&random_letters(&mut r, 2, len));
        let lambda = a.int(r.random_range(2..7));
        let m = member(&a, &x, &spec).unwrap();
        prop_assert_eq!(m.is_some(), member(&a, &x, &on_closure).unwrap().is_some());
        let scaled = member(&a, &x.scale(&lambda), &spec).unwrap();
        prop_assert_eq!(m.is_some(), scaled.is_some());
        if let Some(w) = scaled {
            prop_assert_eq!(w.lambda, lambda);
        }
    }

    #[test]
    fn properness(seed in any::<u64>()) {
        let a = q2();
        let mut r = rng(seed);
        let k = r.random_range(1..4);
        let spec = SubcategorySpec::new(&a, &random_words(&a, &mut r, k, 5)).unwrap();
        prop_assert!(spec.closure().members().iter().all(|m| !m.is_unit()));
        for i in 0..2 {
            let g = a.generator(i);
            let in_closure = spec.closure().contains(&g);
            prop_assert_eq!(member(&a, &g, &spec).unwrap().is_some(), in_closure);
        }
    }

    #[test]
    fn equality_matches_closure_equality(seed in any::<u64>()) {
        let a = q2();
        let mut r = rng(seed);
        let (k1, k2) = (r.random_range(1..3), r.random_range(1..3));
        let s1 = SubcategorySpec::new(&a, &random_words(&a, &mut r, k1, 4)).unwrap();
        let s2 = SubcategorySpec::new(&a, &random_words(&a, &mut r, k2, 4)).unwrap();
        prop_assert_eq!(subcategory_eq(&a, &s1, &s2).unwrap(), s1.closure() == s2.closure());
        prop_assert!(subcategory_leq(&a, &s1, &s1).unwrap());
    }

    #[test]
    fn abelianization_is_multiplicative(seed in any::<u64>()) {
        let a = q2();
        let mut r = rng(seed);
        let (d1, d2) = (r.random_range(0..4), r.random_range(0..4));
        let f = random_element(&a, &mut r, d1, 3);
        let g = random_element(&a, &mut r, d2, 3);
        prop_assert_eq!(abelianize(&a, &a.mul(&f, &g).unwrap()), abelianize(&a, &f).mul(&abelianize(&a, &g)));
    }

    #[test]
    fn gcd_is_multiplicative(seed in any::<u64>()) {
        let a = q2();
        let mut r = rng(seed);
        let poly = |r: &mut rand_chacha::ChaCha8Rng| {
            let d = r.random_range(0..3);
            abelianize(&a, &random_element(&a, r, d, 3))
        };
        let (f, g, h) = (poly(&mut r), poly(&mut r), poly(&mut r));
        prop_assume!(!f.is_zero() && !g.is_zero() && !h.is_zero());
        prop_assert_eq!(gcd(&f.mul(&h), &g.mul(&h)), h.mul(&gcd(&f, &g)).monic());
    }

    #[test]
    fn supports_have_codimension_at_most_one(seed in any::<u64>()) {
        let a = q2();
        let mut r = rng(seed);
        let d = r.random_range(1..5);
        let x = random_element(&a, &mut r, d, 4);
        match support_of(&a, &x).unwrap() {
            SupportDescriptor::FullSpace => prop_assert!(abelianize(&a, &x).is_zero()),
            SupportDescriptor::Hypersurface(f) => prop_assert!(!f.is_constant() && !f.is_zero()),
            SupportDescriptor::EmptySet => prop_assert!(false, "non-unit with empty support"),
        }
    }

    #[test]
    fn support_subset_is_a_preorder(seed in any::<u64>()) {
        let a = q2();
        let mut r = rng(seed);
        let desc = |r: &mut rand_chacha::ChaCha8Rng| {
            let d = r.random_range(0..4);
            support_of(&a, &random_element(&a, r, d, 2)).unwrap()
        };
        let (s1, s2, s3) = (desc(&mut r), desc(&mut r), desc(&mut r));
        prop_assert!(support_subset(&s1, &s1).unwrap());
        if support_subset(&s1, &s2).unwrap() && support_subset(&s2, &s3).unwrap() {
            prop_assert!(support_subset(&s1, &s3).unwrap());
        }
    }
}

#[test]
fn no_zero_divisors() {
    let a = q2();
    let mut r = rng(1);
    for _ in 0..200 {
        let (d1, d2) = (r.random_range(0..5), r.random_range(0..5));
        let f = random_element(&a, &mut r, d1, 4);
        let g = random_element(&a, &mut r, d2, 4);
        assert!(!a.mul(&f, &g).unwrap().is_zero());
    }
}

#[test]
fn graded_dimensions() {
    for n in 1..4 {
        let a = Algebra::rational(n);
        for d in 0..6 {
            assert_eq!(a.graded_dim(d), BigUint::from(n).pow(d as u32));
        }
        assert_eq!(a.graded_dim(-1), BigUint::from(0u32));
    }
}

/// For a good singleton `{g}` the members are exactly the scalar multiples of powers of `g`.
#[test]
fn minimality_of_good_singletons() {
    let a = q2();
    for g in ["x", "xy"] {
        let ge = el(&a, g);
        let spec = SubcategorySpec::new(&a, std::slice::from_ref(&ge)).unwrap();
        for len in 1..=8usize {
            for i in 0..1usize << len {
                let w: Vec<usize> = (0..len).rev().map(|b| (i >> b) & 1).collect();
                let x = a.word(&w);
                let is_power = len % ge.degree() == 0 && a.pow(&ge, len / ge.degree()).unwrap() == x;
                assert_eq!(member(&a, &x, &spec).unwrap().is_some(), is_power, "{g}: {w:?}");
            }
        }
    }
}

#[test]
fn hom_prediction_agrees_with_oracle() {
    let a = q2();
    let mut r = rng(4);
    for _ in 0..40 {
        let (lx, ly) = (r.random_range(1..=5), r.random_range(1..=5));
        let x = a.word(&random_letters(&mut r, 2, lx));
        let y = a.word(&random_letters(&mut r, 2, ly));
        let predicted = hom_nonzero_predict(&a, &x, &y).unwrap();
        if let Some(p) = &predicted {
            assert_eq!(a.mul(&p.c, &p.a).unwrap(), x);
            assert_eq!(a.mul(&p.b, &p.c).unwrap(), y);
        }
        let observed = (0..=8).any(|i| hom_dim(&a, &x, &y, i).unwrap() > 0);
        assert_eq!(predicted.is_some(), observed, "{x:?} {y:?}");
    }
}

#[test]
fn support_certificates_agree_with_membership() {
    let a = q2();
    let mut r = rng(5);
    let mut certified = 0;
    for _ in 0..50 {
        let (lx, ly) = (r.random_range(1..=6), r.random_range(1..=6));
        let x = a.word(&random_letters(&mut r, 2, lx));
        let y = a.word(&random_letters(&mut r, 2, ly));
        if not_member_by_support(&a, &x, &y).unwrap().is_certified() {
            certified += 1;
            let spec = SubcategorySpec::new(&a, std::slice::from_ref(&y)).unwrap();
            assert!(member(&a, &x, &spec).unwrap().is_none());
        }
    }
    assert!(certified > 0);
}

#[test]
fn prime_field_gcd_and_zero_handling() {
    let f = freelat_core::Field::Prime(5);
    let p = CPoly::var(2, f, 0).add(&CPoly::var(2, f, 1));
    assert_eq!(gcd(&p, &CPoly::zero(2, f)), p);
    assert_eq!(gcd(&CPoly::zero(2, f), &CPoly::zero(2, f)), CPoly::zero(2, f));
}

#[test]
fn tree_pairs_are_good_and_strictly_descending() {
    let a = Algebra::rational(2).with_cap(DEFAULT_LATTICE_CAP).unwrap();
    for path in TreePath::all_up_to(2) {
        let p = tree_pair(&a, &path).unwrap();
        assert_eq!(a.length(&p.a).unwrap(), a.length(&p.b).unwrap());
        let set = CanonicalSet::new(&a, [p.a.clone(), p.b.clone()]).unwrap();
        assert!(check_good(&a, &set).unwrap().is_good());
    }
    let report = verify_tree(&a, 2).unwrap();
    for n in report.nodes.iter().filter(|n| n.children_strict.is_some()) {
        assert_eq!(n.children_strict, Some((true, true)), "{}", n.path);
    }
}

/// Products of one sibling's generators are never members of the other sibling.
#[test]
fn sibling_subcategories_share_no_sampled_words() {
    let a = Algebra::rational(2).with_cap(DEFAULT_LATTICE_CAP).unwrap();
    let mut r = rng(6);
    for parent in TreePath::all_up_to(1) {
        let plus = tree_pair(&a, &parent.child(freelat_core::lattice::Sign::Plus)).unwrap();
        let minus = tree_pair(&a, &parent.child(freelat_core::lattice::Sign::Minus)).unwrap();
        let (sp, sm) = (plus.spec(&a).unwrap(), minus.spec(&a).unwrap());
        for (mine, other_spec) in [(&plus, &sm), (&minus, &sp)] {
            for _ in 0..10 {
                let k = r.random_range(1..=3);
                let factors: Vec<&HomElement> =
                    (0..k).map(|_| if r.random_bool(0.5) { &mine.a } else { &mine.b }).collect();
                let w = a.product(factors).unwrap();
                assert!(member(&a, &w, other_spec).unwrap().is_none());
            }
        }
    }
}
