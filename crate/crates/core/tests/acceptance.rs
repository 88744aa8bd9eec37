//! Acceptance suite: one PASS/FAIL line per criterion; exits nonzero on any failure.

mod common;

use std::collections::HashSet;
use std::panic::catch_unwind;
use std::time::{Duration, Instant};

use common::*;
use freelat_core::expr::{format_element, parse_element};
use freelat_core::good::{check_good, good_closure, good_closure_with_order, CanonicalSet};
use freelat_core::hom::{hilbert_cyclic, hom_dim};
use freelat_core::lattice::{verify_chain, verify_tree, DEFAULT_LATTICE_CAP};
use freelat_core::subcat::{
    filtration_witness, invertible_in_localization, localization_presentation, member, subcategory_eq,
    GradedMatrix, IntersectionVerdict, SubcategorySpec,
};
use freelat_core::support::{full_support_not_member, not_member_by_support, trivial_intersection_by_support};
use freelat_core::{Algebra, Field, HomElement, Word};
use rand::Rng;

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn q2() -> Algebra {
    Algebra::rational(2)
}

fn spec(alg: &Algebra, xs: &[&str]) -> SubcategorySpec {
    SubcategorySpec::new(alg, &els(alg, xs)).unwrap()
}

fn canonical(alg: &Algebra, xs: &[&str]) -> CanonicalSet {
    CanonicalSet::new(alg, els(alg, xs)).unwrap()
}

fn good_bad_classification() -> Outcome {
    let a = q2();
    let mut cases = 0;
    let cases_iter = GOOD_ELEMENTS
        .iter()
        .map(|s| (vec![*s], true))
        .chain(BAD_ELEMENTS.iter().map(|s| (vec![*s], false)))
        .chain(GOOD_SETS.iter().map(|s| (s.to_vec(), true)))
        .chain(BAD_SETS.iter().map(|s| (s.to_vec(), false)));
    for (set, expected) in cases_iter {
        let verdict = check_good(&a, &canonical(&a, &set)).unwrap();
        ensure(verdict.is_good() == expected, || format!("{set:?} classified wrongly"))?;
        if let Some(w) = verdict.witness() {
            ensure(w.is_valid_violation(&a), || format!("{set:?}: invalid overlap witness"))?;
        }
        cases += 1;
    }
    Ok(format!("{cases} elements and sets classified, every negative has a valid witness"))
}

fn closure_table() -> Outcome {
    let a = q2();
    for (input, expected) in CLOSURES {
        let (got, _) = good_closure(&a, &els(&a, input)).unwrap();
        ensure(got == canonical(&a, expected), || {
            let shown: Vec<String> = got.members().iter().map(|m| format_element(&a, m)).collect();
            format!("closure of {input:?} is {shown:?}, expected {expected:?}")
        })?;
    }
    Ok(format!("{} closure equalities reproduced", CLOSURES.len()))
}

fn all_words(n: usize, len: usize) -> impl Iterator<Item = Vec<usize>> {
    (0..n.pow(len as u32)).map(move |mut i| {
        let mut w = vec![0; len];
        for slot in w.iter_mut().rev() {
            *slot = i % n;
            i /= n;
        }
        w
    })
}

fn localization_examples() -> Outcome {
    let a = q2();
    let g = spec(&a, &["xy"]);
    let h = spec(&a, &["xyx"]);
    let mut words = 0;
    for len in 0..=8 {
        for w in all_words(2, len) {
            let x = a.word(&w);
            let is_power = len % 2 == 0 && w.chunks(2).all(|c| c == [0, 1]);
            let inv_g = invertible_in_localization(&a, &x, &g).unwrap();
            ensure(inv_g.is_some() == is_power, || format!("A[(xy)^-1]: word {w:?}"))?;
            ensure(invertible_in_localization(&a, &x, &h).unwrap().is_some(), || format!("A[(xyx)^-1]: word {w:?}"))?;
            words += 1;
        }
    }
    Ok(format!("{words} words checked against both localizations"))
}

fn hom_lemma() -> Outcome {
    let a = q2();
    let mut families: Vec<Vec<&str>> = GOOD_SETS.iter().map(|s| s.to_vec()).collect();
    families.extend(GOOD_ELEMENTS.iter().map(|s| vec![*s]));
    let mut checks = 0;
    for fam in &families {
        for x in fam {
            for y in fam {
                let (ex, ey) = (el(&a, x), el(&a, y));
                for i in 0..=6 {
                    let d = hom_dim(&a, &ex, &ey, i).unwrap();
                    let expected = usize::from(x == y && i == 0);
                    ensure(d == expected, || format!("dim Hom(A/{x}, A/{y}[{i}]) = {d}"))?;
                    checks += 1;
                }
            }
        }
    }
    Ok(format!("{checks} Hom dimensions match"))
}

fn generation_lemma() -> Outcome {
    let a = q2();
    let mut checks = 0;
    for (a1, a2, a3) in [("x", "y", "xy"), ("xy", "x", "yx")] {
        let (e1, e2, e3) = (el(&a, a1), el(&a, a2), el(&a, a3));
        let p12 = a.mul(&e1, &e2).unwrap();
        let p23 = a.mul(&e2, &e3).unwrap();
        let s = |v: &[&HomElement]| SubcategorySpec::new(&a, &v.iter().map(|&e| e.clone()).collect::<Vec<_>>()).unwrap();
        ensure(member(&a, &p12, &s(&[&e1, &e2])).unwrap().is_some(), || format!("(1) for {a1},{a2}"))?;
        ensure(member(&a, &e1, &s(&[&p12, &e2])).unwrap().is_some(), || format!("(2a) for {a1},{a2}"))?;
        ensure(member(&a, &e2, &s(&[&p12, &e1])).unwrap().is_some(), || format!("(2b) for {a1},{a2}"))?;
        ensure(subcategory_eq(&a, &s(&[&p12, &p23]), &s(&[&e1, &e2, &e3])).unwrap(), || format!("(3) for {a1},{a2},{a3}"))?;
        for n in 1..=4 {
            let pow = a.pow(&e1, n).unwrap();
            ensure(subcategory_eq(&a, &s(&[&pow]), &s(&[&e1])).unwrap(), || format!("(4) for {a1}^{n}"))?;
        }
        checks += 8;
    }
    Ok(format!("{checks} generation identities hold"))
}

fn localization_lemma() -> Outcome {
    let a = q2();
    for (a1, a2) in [("x", "y"), ("xy", "x")] {
        let (e1, e2) = (el(&a, a1), el(&a, a2));
        let s = SubcategorySpec::new(&a, &[a.product([&e1, &e2, &e1]).unwrap()]).unwrap();
        ensure(invertible_in_localization(&a, &e1, &s).unwrap().is_some(), || format!("{a1} not invertible"))?;
        ensure(invertible_in_localization(&a, &e2, &s).unwrap().is_some(), || format!("{a2} not invertible"))?;
    }
    Ok("a1 and a2 invertible after inverting a1 a2 a1, for both pairs".into())
}

fn lattice_alg() -> Algebra {
    Algebra::rational(2).with_cap(DEFAULT_LATTICE_CAP).unwrap()
}

fn chain() -> Outcome {
    let r = verify_chain(&lattice_alg(), 3).unwrap();
    let lengths: Vec<usize> = r.levels.iter().map(|l| l.length).collect();
    ensure(lengths == [1, 18, 324], || format!("lengths {lengths:?}"))?;
    ensure(r.levels.iter().all(|l| l.good), || "a chain pair is not good".into())?;
    let strict: Vec<usize> = r.steps.iter().filter(|s| s.contained && s.strict).map(|s| s.k).collect();
    ensure(strict == [1, 2], || format!("strict descent only at {strict:?}"))?;
    Ok("strict descent at k = 1, 2; lengths 1, 18, 324".into())
}

fn tree() -> Outcome {
    let r = verify_tree(&lattice_alg(), 2).unwrap();
    let internal: Vec<_> = r.nodes.iter().filter(|n| n.children_contained.is_some()).collect();
    ensure(internal.len() == 3, || format!("{} internal nodes", internal.len()))?;
    for n in &internal {
        ensure(n.children_contained == Some((true, true)), || format!("edges below {}", n.path))?;
        ensure(n.union_good == Some(true), || format!("sibling union below {}", n.path))?;
    }
    ensure(r.nodes.iter().all(|n| n.good), || "a node pair is not good".into())?;
    let leaf: Vec<_> = r.leaf_pairs().collect();
    ensure(leaf.len() == 6, || format!("{} leaf pairs", leaf.len()))?;
    ensure(leaf.iter().all(|p| p.verdict == IntersectionVerdict::CertifiedZero), || "a leaf pair is not certified".into())?;
    ensure(r.all_certified(), || "a cross-level pair is not certified".into())?;
    Ok(format!(
        "6 edges, 3 sibling unions good, 6 leaf pairs certified ({} non-comparable pairs in total)",
        r.pairs.len()
    ))
}

/// All elements of degree `d` in two variables over the field with two elements, as bit masks.
fn f2_element(alg: &Algebra, d: usize, mask: u32) -> HomElement {
    let terms: Vec<(Word, _)> = (0..1usize << d)
        .filter(|i| mask >> i & 1 == 1)
        .map(|i| (Word::from_letters((0..d).rev().map(|b| (i >> b) & 1)), alg.int(1)))
        .collect();
    alg.element(d, terms).unwrap()
}

fn f2_mask(f: &HomElement) -> u32 {
    f.terms().map(|(w, _)| 1u32 << w.letters().fold(0, |acc, l| acc * 2 + l)).sum()
}

fn ufd_suite() -> Outcome {
    let a = q2();
    let mut r = rng(9);
    for t in 0..200 {
        let dg = r.random_range(1..=5);
        let dh = r.random_range(1..=5);
        let g = random_element(&a, &mut r, dg, 3);
        let h = random_element(&a, &mut r, dh, 3);
        let f = a.mul(&g, &h).unwrap();
        let (pf, pg, ph) = (a.factor(&f).unwrap(), a.factor(&g).unwrap(), a.factor(&h).unwrap());
        let concat: Vec<HomElement> = pg.primes().iter().chain(ph.primes()).cloned().collect();
        ensure(pf.primes() == concat.as_slice(), || format!("round trip {t} failed"))?;
        ensure(*pf.unit() == pg.unit() * ph.unit(), || format!("round trip {t}: unit"))?;
    }
    let f2 = Algebra::new(2, Field::Prime(2)).unwrap();
    let mut checked = 0;
    for d in 1..=4usize {
        let mut composite = HashSet::new();
        for d1 in 1..d {
            for mg in 1..1u32 << (1 << d1) {
                let g = f2_element(&f2, d1, mg);
                for mh in 1..1u32 << (1 << (d - d1)) {
                    let h = f2_element(&f2, d - d1, mh);
                    composite.insert(f2_mask(&f2.mul(&g, &h).unwrap()));
                }
            }
        }
        for m in 1..1u32 << (1 << d) {
            let f = f2_element(&f2, d, m);
            let prime = f2.is_prime(&f).unwrap();
            ensure(prime != composite.contains(&m), || format!("degree {d}, mask {m:#x}"))?;
            checked += 1;
        }
    }
    Ok(format!("200 round trips; {checked} elements over F2 agree with brute force"))
}

fn presentation() -> Outcome {
    let a = q2();
    let g = GradedMatrix::new(vec![vec![el(&a, "x"), el(&a, "y")]]).unwrap();
    let p = localization_presentation(&[g]).unwrap();
    let degrees: Vec<i64> = p.generators.iter().map(|(_, d)| *d).collect();
    ensure(degrees == [-1, -1], || format!("degrees {degrees:?}"))?;
    let mut got = p.render_relations(&a);
    let mut want = vec!["xt_1+yt_2-1", "t_1x-1", "t_1y", "t_2x", "t_2y-1"];
    got.sort();
    want.sort();
    ensure(got == want, || format!("relations {got:?}"))?;
    Ok("five relations, t-degrees -1".into())
}

fn support_predicates() -> Outcome {
    let a = q2();
    let (x, y) = (el(&a, "x"), el(&a, "y"));
    ensure(not_member_by_support(&a, &x, &y).unwrap().is_certified(), || "(1) did not certify (x, y)".into())?;
    ensure(member(&a, &x, &SubcategorySpec::new(&a, &[y.clone()]).unwrap()).unwrap().is_none(), || "member(x, {y}) found".into())?;
    ensure(trivial_intersection_by_support(&a, &x, &y).unwrap().is_certified(), || "(3) on (x, y)".into())?;
    ensure(
        trivial_intersection_by_support(&a, &el(&a, "x+y"), &el(&a, "x-y")).unwrap().is_certified(),
        || "(3) on (x+y, x-y)".into(),
    )?;
    ensure(full_support_not_member(&a, 2, 1, &y).unwrap().is_certified(), || "(2) on y".into())?;
    ensure(!full_support_not_member(&a, 2, 1, &el(&a, "xy-yx")).unwrap().is_certified(), || "(2) on xy-yx".into())?;
    Ok("predicates (1), (2), (3) behave as stated".into())
}

fn invariant_suites() -> Outcome {
    let a = q2();
    let mut r = rng(12);

    // membership witnesses and the filtrations they induce
    let mut witnesses = 0;
    let families: Vec<Vec<&str>> = CLOSURES.iter().map(|(i, _)| i.to_vec()).chain(GOOD_SETS.iter().map(|s| s.to_vec())).collect();
    for fam in &families {
        let s = spec(&a, fam);
        let members = s.closure().members().to_vec();
        for _ in 0..20 {
            let k = r.random_range(1..=4);
            let mut x = a.int(r.random_range(1..=5)).clone();
            let mut factors = Vec::new();
            for _ in 0..k {
                factors.push(members[r.random_range(0..members.len())].clone());
            }
            if r.random_bool(0.3) {
                factors.push(el(&a, "x+y"));
            }
            x = if r.random_bool(0.5) { x } else { -&x };
            let elem = a.product(&factors).unwrap().scale(&x);
            if let Some(w) = member(&a, &elem, &s).unwrap() {
                let rebuilt = a.product(&w.factors).unwrap().scale(&w.lambda);
                ensure(rebuilt == elem, || "witness does not re-multiply".into())?;
                ensure(w.factors.iter().all(|f| s.closure().contains(f)), || "witness factor outside closure".into())?;
                let fw = filtration_witness(&a, &elem, &s).unwrap().unwrap();
                ensure(fw.hilbert_telescopes(), || "telescoping identity fails".into())?;
                for i in -2..=12i64 {
                    let lhs = hilbert_cyclic(&a, &elem, i).unwrap();
                    let rhs = fw.pieces.iter().map(|(y, s)| hilbert_cyclic(&a, y, i - *s as i64).unwrap()).sum();
                    ensure(lhs == rhs, || format!("Hilbert additivity fails at {i}"))?;
                }
                witnesses += 1;
            } else {
                ensure(factors.len() > k, || "product of closure members is not a member".into())?;
            }
        }
    }

    // closure order independence
    let mut inputs: Vec<Vec<HomElement>> = CLOSURES.iter().map(|(i, _)| els(&a, i)).collect();
    for _ in 0..10 {
        let k = r.random_range(2..=4);
        inputs.push(
            (0..k)
                .map(|_| {
                    let len = r.random_range(2..=7);
                    a.word(&random_letters(&mut r, 2, len))
                })
                .collect(),
        );
    }
    for input in &inputs {
        let (reference, trace) = good_closure(&a, input).unwrap();
        let replayed: Vec<HomElement> = trace.replay(input).unwrap().into_iter().collect();
        ensure(replayed == reference.members(), || "trace replay differs".into())?;
        for seed in 0..20 {
            let (c, _) = good_closure_with_order(&a, input, Some(seed)).unwrap();
            ensure(c == reference, || format!("seed {seed} changes the closure"))?;
        }
    }

    // parser round trip
    let algebras = [
        Algebra::rational(2),
        Algebra::rational(3),
        Algebra::rational(4),
        Algebra::new(2, Field::Prime(7)).unwrap(),
        Algebra::new(5, Field::Prime(101)).unwrap(),
    ];
    for t in 0..500 {
        let alg = &algebras[t % algebras.len()];
        let d = r.random_range(0..=4);
        let f = random_element(alg, &mut r, d, 4);
        let f = if t % 7 == 0 { f.scale(&alg.field().from_rational(&num_rational::BigRational::new(1.into(), 3.into())).unwrap()) } else { f };
        let text = format_element(alg, &f);
        let back = parse_element(alg, &text).map_err(|e| format!("{text}: {e}"))?;
        ensure(back == f, || format!("round trip of {text}"))?;
    }
    Ok(format!(
        "{witnesses} witnesses verified; {} closures stable over 20 seeds; 500 parser round trips",
        inputs.len()
    ))
}

fn main() {
    type Criterion = (usize, &'static str, Duration, fn() -> Outcome);
    let criteria: [Criterion; 12] = [
        (1, "good/bad classification", Duration::from_secs(1), good_bad_classification),
        (2, "good-closure table", Duration::from_secs(5), closure_table),
        (3, "invertibility in A[(xy)^-1] and A[(xyx)^-1]", Duration::from_secs(5), localization_examples),
        (4, "Hom between cyclic modules of good pairs", Duration::from_secs(10), hom_lemma),
        (5, "generation identities", Duration::from_secs(5), generation_lemma),
        (6, "inverting a1 a2 a1", Duration::from_secs(5), localization_lemma),
        (7, "descending chain", Duration::from_secs(10), chain),
        (8, "descending binary tree", Duration::from_secs(30), tree),
        (9, "rigid UFD suite", Duration::from_secs(30), ufd_suite),
        (10, "localization presentation of (x y)", Duration::from_secs(1), presentation),
        (11, "support certificates", Duration::from_secs(5), support_predicates),
        (12, "invariant suites", Duration::from_secs(30), invariant_suites),
    ];
    let mut failures = 0;
    for (n, name, budget, run) in criteria {
        let start = Instant::now();
        let outcome = catch_unwind(run).unwrap_or_else(|p| {
            Err(p.downcast_ref::<String>().cloned().or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string())).unwrap_or_else(|| "panic".into()))
        });
        let elapsed = start.elapsed();
        let outcome = outcome.and_then(|d| {
            if elapsed <= budget {
                Ok(d)
            } else {
                Err(format!("{d}; took {:.1}s, budget {}s", elapsed.as_secs_f64(), budget.as_secs()))
            }
        });
        match outcome {
            Ok(detail) => println!("criterion {n:>2} PASS  {name}: {detail} [{:.2}s]", elapsed.as_secs_f64()),
            Err(why) => {
                failures += 1;
                println!("criterion {n:>2} FAIL  {name}: {why} [{:.2}s]", elapsed.as_secs_f64());
            }
        }
    }
    println!("acceptance: {} passed, {failures} failed", 12 - failures);
    if failures > 0 {
        std::process::exit(1);
    }
}
