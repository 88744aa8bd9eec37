//! Built-in reference vectors, run by `verify-paper` in a fixed order.

use freelat_core::good::{check_good, good_closure, yzy_decompose, CanonicalSet};
use freelat_core::hom::hom_dim;
use freelat_core::lattice::{verify_chain, verify_tree, DEFAULT_LATTICE_CAP};
use freelat_core::subcat::{
    invertible_in_localization, localization_presentation, member, subcategory_eq, GradedMatrix, IntersectionVerdict,
    SubcategorySpec,
};
use freelat_core::support::{full_support_not_member, not_member_by_support, trivial_intersection_by_support};
use freelat_core::{format_element, parse_element, Algebra, HomElement, Result};

pub struct VectorResult {
    pub id: &'static str,
    pub group: &'static str,
    pub pass: bool,
    pub detail: String,
}

type Outcome = std::result::Result<String, String>;

struct Vector {
    id: &'static str,
    group: &'static str,
    run: fn(&Algebra) -> Outcome,
}

const GOOD_ELEMENTS: [&str; 5] = ["x", "xy", "x^3y^4", "x^2y^3xy", "x^2yxy^2"];
const BAD_ELEMENTS: [&str; 5] = ["x^2", "x^3", "xyx", "xyxy", "xy^2x^2y"];
const GOOD_SETS: [&[&str]; 3] = [&["x", "y"], &["xy", "x^2y^2"], &["x^2yxy^2", "x^3y^2x^2y^3", "x^4y^3x^3y^4"]];
const BAD_SETS: [&[&str]; 4] = [&["xy", "yx^2"], &["x^2y^3", "x^3y^2"], &["x^2yxy^2", "xy^4xy"], &["xyx^2y^2", "x^2y^2xy"]];

const CLOSURES: [(&[&str], &[&str]); 9] = [
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

fn err(e: freelat_core::Error) -> String {
    e.to_string()
}

fn els(a: &Algebra, xs: &[&str]) -> std::result::Result<Vec<HomElement>, String> {
    xs.iter().map(|s| parse_element(a, s).map_err(err)).collect()
}

fn el(a: &Algebra, s: &str) -> std::result::Result<HomElement, String> {
    parse_element(a, s).map_err(err)
}

fn spec(a: &Algebra, xs: &[HomElement]) -> std::result::Result<SubcategorySpec, String> {
    SubcategorySpec::new(a, xs).map_err(err)
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> std::result::Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn classify(a: &Algebra, sets: &[Vec<&str>], expected: bool) -> Outcome {
    for set in sets {
        let c = CanonicalSet::new(a, els(a, set)?).map_err(err)?;
        let g = check_good(a, &c).map_err(err)?;
        ensure(g.is_good() == expected, || format!("{set:?} misclassified"))?;
        if let Some(w) = g.witness() {
            ensure(w.is_valid_violation(a), || format!("{set:?}: invalid witness"))?;
        }
    }
    Ok(format!("{} cases", sets.len()))
}

fn good_elements(a: &Algebra) -> Outcome {
    classify(a, &GOOD_ELEMENTS.iter().map(|s| vec![*s]).collect::<Vec<_>>(), true)
}

fn bad_elements(a: &Algebra) -> Outcome {
    classify(a, &BAD_ELEMENTS.iter().map(|s| vec![*s]).collect::<Vec<_>>(), false)
}

fn good_sets(a: &Algebra) -> Outcome {
    classify(a, &GOOD_SETS.iter().map(|s| s.to_vec()).collect::<Vec<_>>(), true)
}

fn bad_sets(a: &Algebra) -> Outcome {
    classify(a, &BAD_SETS.iter().map(|s| s.to_vec()).collect::<Vec<_>>(), false)
}

fn yzy_bad_elements(a: &Algebra) -> Outcome {
    for s in BAD_ELEMENTS {
        let x = el(a, s)?;
        let (y, z) = yzy_decompose(a, &x).map_err(err)?.ok_or_else(|| format!("{s}: no decomposition"))?;
        ensure(y.degree() > 0 && a.product([&y, &z, &y]).map_err(err)? == x, || format!("{s}: bad decomposition"))?;
    }
    Ok("every non-good element is y z y".into())
}

fn closure_table(a: &Algebra) -> Outcome {
    for (input, expected) in CLOSURES {
        let (got, _) = good_closure(a, &els(a, input)?).map_err(err)?;
        let want = CanonicalSet::new(a, els(a, expected)?).map_err(err)?;
        ensure(got == want, || {
            let shown: Vec<String> = got.members().iter().map(|m| format_element(a, m)).collect();
            format!("closure of {input:?} is {shown:?}")
        })?;
    }
    Ok(format!("{} equalities", CLOSURES.len()))
}

fn words(len: usize) -> impl Iterator<Item = Vec<usize>> {
    (0..1usize << len).map(move |i| (0..len).rev().map(|b| (i >> b) & 1).collect())
}

fn invert_xy(a: &Algebra) -> Outcome {
    let s = spec(a, &[el(a, "xy")?])?;
    let mut n = 0;
    for len in 0..=8 {
        for w in words(len) {
            let power = len % 2 == 0 && w.chunks(2).all(|c| c == [0, 1]);
            let inv = invertible_in_localization(a, &a.word(&w), &s).map_err(err)?.is_some();
            ensure(inv == power, || format!("word {w:?}"))?;
            n += 1;
        }
    }
    Ok(format!("{n} words: exactly the powers of xy are invertible"))
}

fn invert_xyx(a: &Algebra) -> Outcome {
    let s = spec(a, &[el(a, "xyx")?])?;
    let mut n = 0;
    for len in 0..=8 {
        for w in words(len) {
            ensure(invertible_in_localization(a, &a.word(&w), &s).map_err(err)?.is_some(), || format!("word {w:?}"))?;
            n += 1;
        }
    }
    Ok(format!("{n} words, all invertible"))
}

fn hom_good_pairs(a: &Algebra) -> Outcome {
    let mut n = 0;
    let families = GOOD_SETS.iter().map(|s| s.to_vec()).chain(GOOD_ELEMENTS.iter().map(|s| vec![*s]));
    for fam in families {
        let es = els(a, &fam)?;
        for (i, x) in es.iter().enumerate() {
            for (j, y) in es.iter().enumerate() {
                for s in 0..=6 {
                    let d = hom_dim(a, x, y, s).map_err(err)?;
                    ensure(d == usize::from(i == j && s == 0), || format!("Hom({}, {}[{s}]) = {d}", fam[i], fam[j]))?;
                    n += 1;
                }
            }
        }
    }
    Ok(format!("{n} dimensions"))
}

fn generation(a: &Algebra) -> Outcome {
    for (a1, a2, a3) in [("x", "y", "xy"), ("xy", "x", "yx")] {
        let (e1, e2, e3) = (el(a, a1)?, el(a, a2)?, el(a, a3)?);
        let p12 = a.mul(&e1, &e2).map_err(err)?;
        let p23 = a.mul(&e2, &e3).map_err(err)?;
        let mem = |x: &HomElement, s: &[HomElement]| -> std::result::Result<bool, String> {
            Ok(member(a, x, &spec(a, s)?).map_err(err)?.is_some())
        };
        ensure(mem(&p12, &[e1.clone(), e2.clone()])?, || format!("({a1})({a2}) in <{a1}, {a2}>"))?;
        ensure(mem(&e1, &[p12.clone(), e2.clone()])?, || format!("{a1} in <{a1}{a2}, {a2}>"))?;
        ensure(mem(&e2, &[p12.clone(), e1.clone()])?, || format!("{a2} in <{a1}{a2}, {a1}>"))?;
        let eq = subcategory_eq(a, &spec(a, &[p12, p23])?, &spec(a, &[e1.clone(), e2, e3])?).map_err(err)?;
        ensure(eq, || format!("<a1a2, a2a3> for {a1}, {a2}, {a3}"))?;
        for n in 1..=4 {
            let p = a.pow(&e1, n).map_err(err)?;
            ensure(subcategory_eq(a, &spec(a, &[p])?, &spec(a, &[e1.clone()])?).map_err(err)?, || format!("{a1}^{n}"))?;
        }
    }
    Ok("16 identities".into())
}

fn invert_a1a2a1(a: &Algebra) -> Outcome {
    for (a1, a2) in [("x", "y"), ("xy", "x")] {
        let (e1, e2) = (el(a, a1)?, el(a, a2)?);
        let s = spec(a, &[a.product([&e1, &e2, &e1]).map_err(err)?])?;
        ensure(invertible_in_localization(a, &e1, &s).map_err(err)?.is_some(), || format!("{a1}"))?;
        ensure(invertible_in_localization(a, &e2, &s).map_err(err)?.is_some(), || format!("{a2}"))?;
    }
    Ok("a1 and a2 invertible for both pairs".into())
}

fn lattice_alg() -> Result<Algebra> {
    Algebra::rational(2).with_cap(DEFAULT_LATTICE_CAP)
}

fn chain(_: &Algebra) -> Outcome {
    let r = verify_chain(&lattice_alg().map_err(err)?, 3).map_err(err)?;
    let lengths: Vec<usize> = r.levels.iter().map(|l| l.length).collect();
    ensure(lengths == [1, 18, 324], || format!("lengths {lengths:?}"))?;
    ensure(r.levels.iter().all(|l| l.good), || "a level is not good".into())?;
    let strict: Vec<usize> = r.steps.iter().filter(|s| s.contained && s.strict).map(|s| s.k).collect();
    ensure(strict == [1, 2], || format!("strict at {strict:?}"))?;
    Ok("lengths 1, 18, 324; strict at k = 1, 2".into())
}

fn tree(_: &Algebra) -> Outcome {
    let r = verify_tree(&lattice_alg().map_err(err)?, 2).map_err(err)?;
    for n in r.nodes.iter().filter(|n| n.children_contained.is_some()) {
        ensure(n.children_contained == Some((true, true)), || format!("edges below {}", n.path))?;
        ensure(n.union_good == Some(true), || format!("union below {}", n.path))?;
    }
    let leaf: Vec<_> = r.leaf_pairs().collect();
    ensure(leaf.len() == 6, || format!("{} leaf pairs", leaf.len()))?;
    ensure(leaf.iter().all(|p| p.verdict == IntersectionVerdict::CertifiedZero), || "leaf pair not certified".into())?;
    ensure(r.all_certified(), || "non-comparable pair not certified".into())?;
    Ok("edges contained, sibling unions good, 6 leaf pairs certified zero".into())
}

fn presentation(a: &Algebra) -> Outcome {
    let g = GradedMatrix::new(vec![vec![el(a, "x")?, el(a, "y")?]]).map_err(err)?;
    let p = localization_presentation(&[g]).map_err(err)?;
    ensure(p.generators.iter().all(|(_, d)| *d == -1), || "t-degrees".into())?;
    let mut got = p.render_relations(a);
    let mut want = vec!["xt_1+yt_2-1", "t_1x-1", "t_1y", "t_2x", "t_2y-1"];
    got.sort();
    want.sort();
    ensure(got == want, || format!("{got:?}"))?;
    Ok("five relations, degrees -1".into())
}

fn support(a: &Algebra) -> Outcome {
    let (x, y) = (el(a, "x")?, el(a, "y")?);
    ensure(not_member_by_support(a, &x, &y).map_err(err)?.is_certified(), || "(x, y) not certified".into())?;
    ensure(member(a, &x, &spec(a, &[y.clone()])?).map_err(err)?.is_none(), || "x found in <y>".into())?;
    ensure(trivial_intersection_by_support(a, &x, &y).map_err(err)?.is_certified(), || "{x}, {y}".into())?;
    let (s, d) = (el(a, "x+y")?, el(a, "x-y")?);
    ensure(trivial_intersection_by_support(a, &s, &d).map_err(err)?.is_certified(), || "x+y, x-y".into())?;
    ensure(full_support_not_member(a, 2, 1, &y).map_err(err)?.is_certified(), || "rank mismatch against y".into())?;
    let comm = el(a, "xy-yx")?;
    ensure(!full_support_not_member(a, 2, 1, &comm).map_err(err)?.is_certified(), || "certified against xy-yx".into())?;
    Ok("three support predicates".into())
}

const VECTORS: &[Vector] = &[
    Vector { id: "goodness.elements.good", group: "goodness", run: good_elements },
    Vector { id: "goodness.elements.bad", group: "goodness", run: bad_elements },
    Vector { id: "goodness.sets.good", group: "goodness", run: good_sets },
    Vector { id: "goodness.sets.bad", group: "goodness", run: bad_sets },
    Vector { id: "goodness.yzy", group: "goodness", run: yzy_bad_elements },
    Vector { id: "closure.table", group: "closure", run: closure_table },
    Vector { id: "hom.good-pairs", group: "hom", run: hom_good_pairs },
    Vector { id: "membership.generation", group: "membership", run: generation },
    Vector { id: "localization.a1a2a1", group: "localization", run: invert_a1a2a1 },
    Vector { id: "localization.invert-xy", group: "localization", run: invert_xy },
    Vector { id: "localization.invert-xyx", group: "localization", run: invert_xyx },
    Vector { id: "localization.presentation", group: "localization", run: presentation },
    Vector { id: "support.predicates", group: "support", run: support },
    Vector { id: "lattice.chain", group: "lattice", run: chain },
    Vector { id: "lattice.tree", group: "lattice", run: tree },
];

/// Runs every vector whose id contains `filter`, in registry order.
pub fn run(filter: Option<&str>) -> Vec<VectorResult> {
    let a = Algebra::rational(2);
    VECTORS
        .iter()
        .filter(|v| filter.is_none_or(|f| v.id.contains(f)))
        .map(|v| {
            let out = (v.run)(&a);
            VectorResult {
                id: v.id,
                group: v.group,
                pass: out.is_ok(),
                detail: out.unwrap_or_else(|e| e),
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ids_are_unique_and_filterable() {
        let mut ids: Vec<_> = VECTORS.iter().map(|v| v.id).collect();
        ids.dedup();
        assert_eq!(ids.len(), VECTORS.len());
        assert!(VECTORS.iter().all(|v| v.id.starts_with(v.group)));
        let closure = run(Some("closure"));
        assert_eq!(closure.len(), 1);
        assert!(closure[0].pass, "{}", closure[0].detail);
    }
}
