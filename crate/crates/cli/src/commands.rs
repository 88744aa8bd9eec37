//! Dispatch: parses inputs, calls the kernel, re-checks every witness, and fills a [`Report`].

use std::fs;

use freelat_core::expr::{format_scalar, parse_set};
use freelat_core::good::{check_good, good_closure, yzy_decompose, CanonicalSet, ClosureTrace, Goodness};
use freelat_core::hom::{
    hilbert_cyclic, hom_dim, hom_nonzero_predict, hom_table, iso_test, quotient_onto, submodule_embedding, tau_rank,
};
use freelat_core::lattice::{chain_pair, tree_pair, verify_chain, verify_tree, PairRoute, TreePath, DEFAULT_LATTICE_CAP};
use freelat_core::subcat::{
    filtration_witness, localization_presentation, member, subcategory_eq, subcategory_leq, trivial_intersection,
    GradedMatrix, IntersectionVerdict, MembershipWitness, SubcategorySpec,
};
use freelat_core::support::{
    abelianize, full_support_not_member, not_member_by_support, support_of, trivial_intersection_by_support,
    Certificate, SupportDescriptor,
};
use freelat_core::{format_element, parse_element, Algebra, Error, Field, HomElement, Result};
use serde_json::{json, Value};

use crate::render::Report;
use crate::{Cli, Command, PairOfSets, Predicate, SetArg, EXIT_NEGATIVE, EXIT_OK, EXIT_UNKNOWN};

const DEFAULT_CAP: usize = 64;

pub fn parse_field(s: &str) -> Result<Field> {
    let t = s.trim();
    if t.eq_ignore_ascii_case("q") {
        return Ok(Field::Rationals);
    }
    let p = t
        .strip_prefix("p:")
        .or_else(|| t.strip_prefix("P:"))
        .ok_or_else(|| Error::Config(format!("unknown field `{s}`; expected q or p:<prime>")))?;
    let p: u64 = p.parse().map_err(|_| Error::Config(format!("bad characteristic `{p}`")))?;
    Field::prime(p)
}

/// Shared state for one invocation.
struct Ctx {
    alg: Algebra,
}

impl Ctx {
    fn el(&self, text: &str) -> Result<HomElement> {
        parse_element(&self.alg, text)
    }

    fn show(&self, f: &HomElement) -> String {
        format_element(&self.alg, f)
    }

    fn show_all(&self, fs: &[HomElement]) -> Vec<String> {
        fs.iter().map(|f| self.show(f)).collect()
    }

    fn braces(&self, fs: &[HomElement]) -> String {
        format!("{{{}}}", self.show_all(fs).join(", "))
    }

    fn set(&self, arg: &SetArg, what: &str) -> Result<Vec<HomElement>> {
        self.family(arg.set.as_deref(), arg.set_file.as_deref(), what)
    }

    fn family(&self, inline: Option<&str>, file: Option<&str>, what: &str) -> Result<Vec<HomElement>> {
        let mut text = String::new();
        if let Some(s) = inline {
            text.push_str(s);
        }
        if let Some(path) = file {
            let body = fs::read_to_string(path).map_err(|e| Error::Config(format!("cannot read {path}: {e}")))?;
            text.push('\n');
            text.push_str(&body);
        }
        if inline.is_none() && file.is_none() {
            return Err(Error::Config(format!("missing {what}: give --{what} or --{what}-file")));
        }
        parse_set(&self.alg, &text)
    }

    fn pair(&self, p: &PairOfSets) -> Result<(Vec<HomElement>, Vec<HomElement>)> {
        Ok((
            self.family(p.left.as_deref(), p.left_file.as_deref(), "left")?,
            self.family(p.right.as_deref(), p.right_file.as_deref(), "right")?,
        ))
    }

    fn report(&self, command: &'static str, verdict: &str, exit: u8) -> Report {
        Report {
            command,
            field: self.alg.field().to_string(),
            cap: self.alg.degree_cap(),
            verdict: verdict.to_string(),
            exit,
            witness: None,
            certificate: None,
            trace: None,
            lines: Vec::new(),
        }
    }

    fn closure_trace(&self, t: &ClosureTrace) -> Value {
        Value::Array(
            t.steps
                .iter()
                .map(|s| {
                    json!({
                        "rule": s.rule.to_string(),
                        "consumed": self.show_all(&s.consumed),
                        "produced": self.show_all(&s.produced),
                        "justification": s.justification,
                    })
                })
                .collect(),
        )
    }

    fn membership_json(&self, w: &MembershipWitness) -> Value {
        json!({ "lambda": format_scalar(&w.lambda), "factors": self.show_all(&w.factors) })
    }

    fn membership_line(&self, x: &HomElement, w: &MembershipWitness) -> String {
        let mut parts = Vec::new();
        if !w.lambda.is_one() || w.factors.is_empty() {
            parts.push(format_scalar(&w.lambda));
        }
        parts.extend(w.factors.iter().map(|f| format!("({})", self.show(f))));
        format!("{} = {}", self.show(x), parts.join(" * "))
    }

    /// Closure trace plus the prime factorization the membership DP tiles.
    fn membership_trace(&self, x: &HomElement, spec: &SubcategorySpec, w: Option<&MembershipWitness>) -> Result<Value> {
        let pf = self.alg.factor(x)?;
        let mut t = json!({
            "closure": self.closure_trace(spec.trace()),
            "primes": self.show_all(pf.primes()),
        });
        if let Some(w) = w {
            t["path"] = json!(self.show_all(&w.factors));
        }
        Ok(t)
    }
}

fn verified(ok: bool, what: &str) -> Result<()> {
    if ok {
        Ok(())
    } else {
        Err(Error::Verification(format!("{what} failed re-verification")))
    }
}

fn yes_no(ok: bool) -> u8 {
    if ok {
        EXIT_OK
    } else {
        EXIT_NEGATIVE
    }
}

pub fn run(cli: &Cli) -> Result<Report> {
    let field = parse_field(&cli.global.field)?;
    let lattice = matches!(cli.command, Command::Chain { .. } | Command::Tree { .. });
    let cap = cli.global.cap.unwrap_or(if lattice { DEFAULT_LATTICE_CAP } else { DEFAULT_CAP });
    let alg = Algebra::new(cli.global.gens, field)?.with_cap(cap)?;
    let cx = Ctx { alg };
    let trace = cli.global.trace;
    let a = &cx.alg;

    match &cli.command {
        Command::Factor { expr } => {
            let f = cx.el(expr)?;
            let pf = a.factor(&f)?;
            verified(a.expand(&pf) == f, "factorization")?;
            let mut r = cx.report("factor", "factored", EXIT_OK);
            r.witness = Some(json!({
                "unit": format_scalar(pf.unit()),
                "primes": cx.show_all(pf.primes()),
                "length": pf.len(),
            }));
            r.lines.push(format!("unit: {}", format_scalar(pf.unit())));
            r.lines.push(format!("length: {}", pf.len()));
            for (i, p) in pf.primes().iter().enumerate() {
                r.lines.push(format!("p{} = {}", i + 1, cx.show(p)));
            }
            Ok(r)
        }
        Command::Prime { expr } => {
            let f = cx.el(expr)?;
            let prime = a.is_prime(&f)?;
            let mut r = cx.report("prime", if prime { "prime" } else { "not-prime" }, yes_no(prime));
            if prime {
                let pts = a.split_points(&f)?;
                r.certificate = Some(json!({ "degree": f.degree(), "split_points": pts }));
                r.lines.push(format!("no rank-one flattening in degrees 1..{}", f.degree()));
            } else if f.is_unit() {
                r.certificate = Some(json!({ "reason": "unit" }));
                r.lines.push("degree 0: a unit".into());
            } else {
                let d = a.split_points(&f)?[0];
                let cert = a.rank1_split(&f, d)?.ok_or_else(|| Error::Verification("split point without split".into()))?;
                verified(a.mul(&cert.left, &cert.right)? == f, "split certificate")?;
                r.certificate = Some(json!({
                    "split_degree": cert.split_degree,
                    "left": cx.show(&cert.left),
                    "right": cx.show(&cert.right),
                }));
                r.lines.push(format!("{} = ({}) * ({})", cx.show(&f), cx.show(&cert.left), cx.show(&cert.right)));
            }
            Ok(r)
        }
        Command::SplitPoints { expr } => {
            let f = cx.el(expr)?;
            let pts = a.split_points(&f)?;
            let mut r = cx.report("split-points", "answered", EXIT_OK);
            r.witness = Some(json!({ "degree": f.degree(), "split_points": pts }));
            r.lines.push(format!("split points: {pts:?}"));
            Ok(r)
        }
        Command::Good(arg) => {
            let set = CanonicalSet::new(a, cx.set(arg, "set")?)?;
            let g = check_good(a, &set)?;
            let mut r = cx.report("good", if g.is_good() { "good" } else { "not-good" }, yes_no(g.is_good()));
            r.lines.push(format!("set: {}", cx.braces(set.members())));
            if let Goodness::Violation(w) = &g {
                verified(w.is_valid_violation(a), "overlap witness")?;
                r.witness = Some(json!({
                    "x": cx.show(&w.x),
                    "y": cx.show(&w.y),
                    "overlap_length": w.k,
                    "a": cx.show(&w.a),
                    "b": cx.show(&w.b),
                    "c": cx.show(&w.c),
                }));
                r.lines.push(format!("x = {} = ({}) * ({})", cx.show(&w.x), cx.show(&w.a), cx.show(&w.b)));
                r.lines.push(format!("y = {} = ({}) * ({})", cx.show(&w.y), cx.show(&w.c), cx.show(&w.a)));
            }
            Ok(r)
        }
        Command::Yzy { expr } => {
            let x = cx.el(expr)?;
            match yzy_decompose(a, &x)? {
                Some((y, z)) => {
                    verified(a.product([&y, &z, &y])? == x, "yzy decomposition")?;
                    let mut r = cx.report("yzy", "decomposed", EXIT_OK);
                    r.witness = Some(json!({ "y": cx.show(&y), "z": cx.show(&z) }));
                    r.lines.push(format!("y = {}", cx.show(&y)));
                    r.lines.push(format!("z = {}", cx.show(&z)));
                    Ok(r)
                }
                None => Ok(cx.report("yzy", "good", EXIT_NEGATIVE)),
            }
        }
        Command::Closure(arg) => {
            let inputs = cx.set(arg, "set")?;
            let (c, t) = good_closure(a, &inputs)?;
            let replayed: Vec<HomElement> = t.replay(&inputs)?.into_iter().collect();
            verified(replayed == c.members() && check_good(a, &c)?.is_good(), "closure")?;
            let mut r = cx.report("closure", "closed", EXIT_OK);
            r.witness = Some(json!({ "closure": cx.show_all(c.members()) }));
            r.lines.push(cx.braces(c.members()));
            if trace {
                r.trace = Some(cx.closure_trace(&t));
            }
            Ok(r)
        }
        Command::Member { x, set } | Command::Invertible { x, set } => {
            let invertible = matches!(cli.command, Command::Invertible { .. });
            let (name, yes, no) =
                if invertible { ("invertible", "invertible", "not-invertible") } else { ("member", "member", "not-member") };
            let x = cx.el(x)?;
            let spec = SubcategorySpec::new(a, &cx.set(set, "set")?)?;
            let w = member(a, &x, &spec)?;
            let mut r = cx.report(name, if w.is_some() { yes } else { no }, yes_no(w.is_some()));
            r.lines.push(format!("closure: {}", cx.braces(spec.closure().members())));
            if let Some(w) = &w {
                verified(w.verify(a, &x), "membership witness")?;
                r.witness = Some(cx.membership_json(w));
                r.lines.push(cx.membership_line(&x, w));
            }
            if trace {
                r.trace = Some(cx.membership_trace(&x, &spec, w.as_ref())?);
            }
            Ok(r)
        }
        Command::Filtration { x, set } => {
            let x = cx.el(x)?;
            let spec = SubcategorySpec::new(a, &cx.set(set, "set")?)?;
            match filtration_witness(a, &x, &spec)? {
                Some(fw) => {
                    verified(fw.hilbert_telescopes(), "Hilbert telescoping")?;
                    let mut r = cx.report("filtration", "filtered", EXIT_OK);
                    r.witness = Some(json!({
                        "degree": fw.degree,
                        "pieces": fw.pieces.iter().map(|(y, s)| json!({ "quotient": cx.show(y), "shift": s })).collect::<Vec<_>>(),
                    }));
                    r.certificate = Some(json!({ "hilbert_telescopes": true }));
                    for (y, s) in &fw.pieces {
                        r.lines.push(format!("A/({})A[-{s}]", cx.show(y)));
                    }
                    Ok(r)
                }
                None => Ok(cx.report("filtration", "no-filtration", EXIT_NEGATIVE)),
            }
        }
        Command::SubcatEq(p) | Command::SubcatLeq(p) => {
            let eq = matches!(cli.command, Command::SubcatEq(_));
            let (l, rt) = cx.pair(p)?;
            let (s1, s2) = (SubcategorySpec::new(a, &l)?, SubcategorySpec::new(a, &rt)?);
            let ok = if eq { subcategory_eq(a, &s1, &s2)? } else { subcategory_leq(a, &s1, &s2)? };
            let (name, verdict) = match (eq, ok) {
                (true, true) => ("subcat-eq", "equal"),
                (true, false) => ("subcat-eq", "not-equal"),
                (false, true) => ("subcat-leq", "contained"),
                (false, false) => ("subcat-leq", "not-contained"),
            };
            let mut r = cx.report(name, verdict, yes_no(ok));
            let (c1, c2) = (s1.closure().members(), s2.closure().members());
            let mut w = json!({ "left_closure": cx.show_all(c1), "right_closure": cx.show_all(c2) });
            r.lines.push(format!("left closure: {}", cx.braces(c1)));
            r.lines.push(format!("right closure: {}", cx.braces(c2)));
            if !ok {
                // a generator on one side that the other side misses
                let sides: &[(&[HomElement], &SubcategorySpec, &str)] =
                    if eq { &[(c1, &s2, "right"), (c2, &s1, "left")] } else { &[(c1, &s2, "right")] };
                'outer: for (gens, other, side) in sides {
                    for g in gens.iter() {
                        if member(a, g, other)?.is_none() {
                            w["missing"] = json!({ "element": cx.show(g), "absent_from": side });
                            r.lines.push(format!("{} is not in the {side} subcategory", cx.show(g)));
                            break 'outer;
                        }
                    }
                }
            }
            r.witness = Some(w);
            if trace {
                r.trace = Some(json!({ "left": cx.closure_trace(s1.trace()), "right": cx.closure_trace(s2.trace()) }));
            }
            Ok(r)
        }
        Command::Intersect(p) => {
            let (l, rt) = cx.pair(p)?;
            let (s1, s2) = (SubcategorySpec::new(a, &l)?, SubcategorySpec::new(a, &rt)?);
            let v = trivial_intersection(a, &s1, &s2)?;
            let (c1, c2) = (s1.closure().members(), s2.closure().members());
            let certified = v == IntersectionVerdict::CertifiedZero;
            let mut r = cx.report(
                "intersect",
                if certified { "trivial" } else { "unknown" },
                if certified { EXIT_OK } else { EXIT_UNKNOWN },
            );
            if certified {
                let union = s1.closure().union(s2.closure());
                r.certificate = Some(json!({
                    "left_closure": cx.show_all(c1),
                    "right_closure": cx.show_all(c2),
                    "good_union": cx.show_all(union.members()),
                }));
                r.lines.push(format!("disjoint good closures {} and {} with good union", cx.braces(c1), cx.braces(c2)));
            }
            Ok(r)
        }
        Command::Hom { x, y, shift } => {
            let (x, y) = (cx.el(x)?, cx.el(y)?);
            let mut r = cx.report("hom", "answered", EXIT_OK);
            let dims: Vec<(i64, usize)> = match shift {
                Some(i) => vec![(*i, hom_dim(a, &x, &y, *i)?)],
                None => hom_table(a, &x, &y, cli.global.window)?.dims.into_iter().enumerate().map(|(i, d)| (i as i64, d)).collect(),
            };
            let overlap = hom_nonzero_predict(a, &x, &y)?;
            let sub = submodule_embedding(a, &x, &y)?;
            let quot = quotient_onto(a, &x, &y)?;
            let iso = iso_test(a, &x, &y)?;
            let mut w = json!({
                "dims": dims.iter().map(|(i, d)| json!({ "shift": i, "dim": d })).collect::<Vec<_>>(),
            });
            for (i, d) in &dims {
                r.lines.push(format!("dim Hom(M_x, M_y[{i}]) = {d}"));
            }
            if let Some(o) = &overlap {
                w["overlap"] = json!({ "c": cx.show(&o.c), "a": cx.show(&o.a), "b": cx.show(&o.b) });
                r.lines.push(format!("overlap: x = ({})({}), y = ({})({})", cx.show(&o.c), cx.show(&o.a), cx.show(&o.b), cx.show(&o.c)));
            } else {
                r.lines.push("no overlap: Hom predicted zero".into());
            }
            if let Some((d, deg)) = &sub {
                w["submodule"] = json!({ "d": cx.show(d), "shift": deg });
                r.lines.push(format!("A/xA embeds in A/yA[{deg}] via {}", cx.show(d)));
            }
            if let Some(q) = &quot {
                w["quotient"] = json!({ "d": cx.show(q) });
                r.lines.push(format!("A/xA maps onto A/yA via {}", cx.show(q)));
            }
            if let Some(c) = &iso {
                w["isomorphic"] = json!({ "scalar": format_scalar(c) });
                r.lines.push(format!("isomorphic: x = {} * y", format_scalar(c)));
            }
            r.witness = Some(w);
            Ok(r)
        }
        Command::Hilbert { x, degree } => {
            let x = cx.el(x)?;
            let degrees: Vec<i64> = match degree {
                Some(d) => vec![*d],
                None => (0..=cli.global.window as i64).collect(),
            };
            let mut r = cx.report("hilbert", "answered", EXIT_OK);
            let mut vals = Vec::new();
            for i in degrees {
                let h = hilbert_cyclic(a, &x, i)?;
                r.lines.push(format!("H({i}) = {h}"));
                vals.push(json!({ "degree": i, "dim": h.to_string() }));
            }
            r.witness = Some(json!({ "values": vals }));
            Ok(r)
        }
        Command::Tau { m, d } => {
            let t = tau_rank(a, *m, *d);
            let mut r = cx.report("tau", "answered", EXIT_OK);
            r.witness = Some(json!({ "rank": t.rank.to_string(), "shift": t.shift, "unchanged": t.unchanged }));
            if t.unchanged {
                r.lines.push(format!("truncation leaves A[{m}] unchanged"));
            } else {
                r.lines.push(format!("A^{}[{}]", t.rank, t.shift));
            }
            Ok(r)
        }
        Command::Abelianize { expr } => {
            let f = cx.el(expr)?;
            let p = abelianize(a, &f);
            let mut r = cx.report("abelianize", "answered", EXIT_OK);
            r.witness = Some(json!({ "polynomial": p.to_string() }));
            r.lines.push(p.to_string());
            Ok(r)
        }
        Command::Support { expr } => {
            let f = cx.el(expr)?;
            let s = support_of(a, &f)?;
            let (kind, text) = match &s {
                SupportDescriptor::FullSpace => ("full-space", "all of projective space".to_string()),
                SupportDescriptor::EmptySet => ("empty", "empty".to_string()),
                SupportDescriptor::Hypersurface(p) => ("hypersurface", format!("Z({p})")),
            };
            let mut r = cx.report("support", kind, EXIT_OK);
            let mut w = json!({ "kind": kind });
            if let SupportDescriptor::Hypersurface(p) = &s {
                w["equation"] = json!(p.to_string());
            }
            r.witness = Some(w);
            r.lines.push(format!("Supp M_x = {text}"));
            Ok(r)
        }
        Command::SupportCompare { predicate, x, y, rank0, rank1 } => {
            let y = cx.el(y)?;
            let need_x = || -> Result<HomElement> {
                cx.el(x.as_deref().ok_or_else(|| Error::Config("this predicate needs --x".into()))?)
            };
            let cert = match predicate {
                Predicate::NotMember => not_member_by_support(a, &need_x()?, &y)?,
                Predicate::Intersection => trivial_intersection_by_support(a, &need_x()?, &y)?,
                Predicate::RankMismatch => {
                    let (r0, r1) = rank0
                        .zip(*rank1)
                        .ok_or_else(|| Error::Config("rank-mismatch needs --rank0 and --rank1".into()))?;
                    full_support_not_member(a, r0, r1, &y)?
                }
            };
            Ok(match cert {
                Certificate::Certified(why) => {
                    let mut r = cx.report("support-compare", "certified", EXIT_OK);
                    r.certificate = Some(json!({ "reason": why }));
                    r.lines.push(why);
                    r
                }
                Certificate::Unknown => cx.report("support-compare", "unknown", EXIT_UNKNOWN),
            })
        }
        Command::Localize { matrix, set } => {
            let mut mats = Vec::new();
            for m in matrix {
                mats.push(parse_matrix(a, m)?);
            }
            if set.set.is_some() || set.set_file.is_some() {
                for g in cx.set(set, "set")? {
                    mats.push(GradedMatrix::from_element(&g));
                }
            }
            if mats.is_empty() {
                return Err(Error::Config("localize needs --matrix or --set".into()));
            }
            let p = localization_presentation(&mats)?;
            let rels = p.render_relations(a);
            let mut r = cx.report("localize", "presented", EXIT_OK);
            r.witness = Some(json!({
                "generators": p.generators.iter().map(|(n, d)| json!({ "name": n, "degree": d })).collect::<Vec<_>>(),
                "relations": rels,
            }));
            for (n, d) in &p.generators {
                r.lines.push(format!("deg {n} = {d}"));
            }
            r.lines.extend(rels);
            Ok(r)
        }
        Command::Chain { level: Some(k), .. } => {
            let p = chain_pair(a, *k)?;
            let mut r = cx.report("chain", "answered", EXIT_OK);
            r.witness = Some(json!({ "k": k, "a": cx.show(&p.a), "b": cx.show(&p.b), "length": p.a.degree() }));
            r.lines.push(format!("a_{k} = {}", cx.show(&p.a)));
            r.lines.push(format!("b_{k} = {}", cx.show(&p.b)));
            Ok(r)
        }
        Command::Chain { verify, .. } => {
            let rep = verify_chain(a, verify.unwrap_or(3))?;
            let ok = rep.all_strict() && rep.levels.iter().all(|l| l.good);
            let mut r = cx.report("chain", if ok { "strict" } else { "not-strict" }, yes_no(ok));
            r.witness = Some(json!({
                "levels": rep.levels.iter().map(|l| json!({ "k": l.k, "length": l.length, "good": l.good })).collect::<Vec<_>>(),
                "steps": rep.steps.iter().map(|s| json!({ "k": s.k, "contained": s.contained, "strict": s.strict })).collect::<Vec<_>>(),
            }));
            for l in &rep.levels {
                r.lines.push(format!("level {}: length {}, good {}", l.k, l.length, l.good));
            }
            for s in &rep.steps {
                r.lines.push(format!("step {}: contained {}, strict {}", s.k, s.contained, s.strict));
            }
            Ok(r)
        }
        Command::Tree { path: Some(p), .. } => {
            let path = TreePath::parse(p)?;
            let pair = tree_pair(a, &path)?;
            let mut r = cx.report("tree", "answered", EXIT_OK);
            r.witness = Some(json!({ "path": path.to_string(), "a": cx.show(&pair.a), "b": cx.show(&pair.b), "length": pair.a.degree() }));
            r.lines.push(format!("path {path}"));
            r.lines.push(format!("a = {}", cx.show(&pair.a)));
            r.lines.push(format!("b = {}", cx.show(&pair.b)));
            Ok(r)
        }
        Command::Tree { verify, .. } => {
            let rep = verify_tree(a, verify.unwrap_or(2))?;
            let nodes_ok = rep.nodes.iter().all(|n| {
                n.good
                    && n.children_contained.is_none_or(|c| c == (true, true))
                    && n.children_strict.is_none_or(|c| c == (true, true))
                    && n.union_good.is_none_or(|g| g)
            });
            let ok = nodes_ok && rep.all_certified();
            let mut r = cx.report("tree", if ok { "certified" } else { "not-certified" }, yes_no(ok));
            let route = |p: &Option<PairRoute>| match p {
                Some(PairRoute::Direct) => "direct",
                Some(PairRoute::Ancestors) => "ancestors",
                None => "none",
            };
            r.witness = Some(json!({
                "depth": rep.depth,
                "nodes": rep.nodes.iter().map(|n| json!({
                    "path": n.path.to_string(),
                    "length": n.length,
                    "good": n.good,
                    "children_contained": n.children_contained.map(|(p, m)| [p, m]),
                    "children_strict": n.children_strict.map(|(p, m)| [p, m]),
                    "union_good": n.union_good,
                })).collect::<Vec<_>>(),
                "pairs": rep.pairs.iter().map(|p| json!({
                    "left": p.left.to_string(),
                    "right": p.right.to_string(),
                    "certified": p.verdict == IntersectionVerdict::CertifiedZero,
                    "route": route(&p.route),
                })).collect::<Vec<_>>(),
            }));
            for n in &rep.nodes {
                r.lines.push(format!("node {}: length {}, good {}", n.path, n.length, n.good));
            }
            for p in &rep.pairs {
                let v = if p.verdict == IntersectionVerdict::CertifiedZero { "zero" } else { "unknown" };
                r.lines.push(format!("pair {} / {}: {v} ({})", p.left, p.right, route(&p.route)));
            }
            Ok(r)
        }
        Command::VerifyPaper { filter } => {
            let results = crate::vectors::run(filter.as_deref());
            let failed = results.iter().filter(|v| !v.pass).count();
            let mut r = cx.report("verify-paper", if failed == 0 { "pass" } else { "fail" }, yes_no(failed == 0));
            r.field = "q".into();
            r.witness = Some(json!({
                "vectors": results.iter().map(|v| json!({ "id": v.id, "group": v.group, "pass": v.pass, "detail": v.detail })).collect::<Vec<_>>(),
                "passed": results.len() - failed,
                "failed": failed,
            }));
            for v in &results {
                r.lines.push(format!("{} {}: {}", if v.pass { "PASS" } else { "FAIL" }, v.id, v.detail));
            }
            r.lines.push(format!("{} passed, {failed} failed", results.len() - failed));
            Ok(r)
        }
    }
}

/// `[a b; c d]` or `[a, b; c, d]`; commas, when present, separate entries.
pub fn parse_matrix(alg: &Algebra, text: &str) -> Result<GradedMatrix> {
    let t = text.trim();
    let inner = t
        .strip_prefix('[')
        .and_then(|s| s.strip_suffix(']'))
        .ok_or_else(|| Error::Parse { pos: 1, msg: "matrix must be enclosed in [ ]".into() })?;
    let rows = inner
        .split(';')
        .map(|row| {
            let entries: Vec<&str> = if row.contains(',') {
                row.split(',').map(str::trim).collect()
            } else {
                row.split_whitespace().collect()
            };
            if entries.is_empty() || entries.iter().any(|e| e.is_empty()) {
                return Err(Error::Parse { pos: 1, msg: "empty matrix entry".into() });
            }
            entries.iter().map(|e| parse_element(alg, e)).collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    GradedMatrix::new(rows)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fields() {
        assert_eq!(parse_field("q").unwrap(), Field::Rationals);
        assert_eq!(parse_field("p:7").unwrap(), Field::Prime(7));
        assert!(parse_field("p:8").is_err());
        assert!(parse_field("r").is_err());
    }

    #[test]
    fn matrices() {
        let a = Algebra::rational(2);
        assert_eq!(parse_matrix(&a, "[x y]").unwrap().shape(), (1, 2));
        assert_eq!(parse_matrix(&a, "[x, x+y; y^2, xy]").unwrap().shape(), (2, 2));
        assert!(parse_matrix(&a, "[x, x^2; y, y]").is_err());
        assert_eq!(parse_matrix(&a, "[x, y; x^2, xy]").unwrap().shape(), (2, 2));
        assert!(parse_matrix(&a, "x y").is_err());
    }
}
