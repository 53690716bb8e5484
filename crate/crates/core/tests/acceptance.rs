//! Acceptance criteria, one line per criterion.
//!
//! Runs as a plain binary (`harness = false`) so the PASS/FAIL lines are
//! always printed. Criteria listed in `KNOWN_FAILURES` are evaluated as
//! stated and reported as failing; the binary exits nonzero if any other
//! criterion fails, or if a listed one starts passing.

mod common;

use std::collections::HashSet;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use rayon::prelude::*;

use sextactica::cayley::{self, dual_hesse_product, fermat_cubic, Coefficients};
use sextactica::expected::{counts, manifest};
use sextactica::incidence::{
    conic_through, dual_hesse_lines, dual_hesse_triple_points, flex_points, hesse_lines, sextactic_lines,
    sextactic_points_computed, ArrangementSummary, ConicSpan, Line, ProjPoint,
};
use sextactica::verify::{Pipeline, Scope};
use sextactica::{FieldElement, Poly, Ring};

const KNOWN_FAILURES: [(u32, &str); 2] = [
    (2, "for F both Omega terms vanish, so weight 40 gives exactly twice the corrected H2"),
    (3, "reference S13 is not on the curve; the computed point differs in the sign of x"),
];

struct Criterion {
    pass: bool,
    lines: Vec<String>,
}

impl Criterion {
    fn new() -> Self {
        Self { pass: true, lines: Vec::new() }
    }

    fn check(&mut self, ok: bool, what: impl AsRef<str>) {
        self.pass &= ok;
        self.lines.push(format!("{} {}", if ok { "ok  " } else { "FAIL" }, what.as_ref()));
    }

    fn info(&mut self, what: impl AsRef<str>) {
        self.lines.push(format!("     {}", what.as_ref()));
    }
}

fn points(named: Vec<(String, ProjPoint)>) -> Vec<ProjPoint> {
    named.into_iter().map(|(_, p)| p).collect()
}

fn xyz() -> Poly {
    Poly::monomial(FieldElement::from_i64(1), [1, 1, 1])
}

fn hessian_and_flexes(c: &mut Criterion) {
    let n = counts();
    let f: Poly = fermat_cubic();
    let h = cayley::hessian(&f).expect("Hessian").h;
    c.check(h.proportional(&xyz()).is_some(), "H(F) is a multiple of xyz");
    let flexes = points(flex_points().expect("flexes"));
    let reference: HashSet<ProjPoint> = points(manifest().flexes().expect("manifest")).into_iter().collect();
    c.check(flexes.len() == n.flexes, format!("{} flexes", flexes.len()));
    c.check(flexes.iter().cloned().collect::<HashSet<_>>() == reference, "flexes equal the reference list as a set");
    let hesse: Vec<Line> = hesse_lines(&flexes).expect("Hesse lines").into_iter().map(|x| x.1).collect();
    let sig = ArrangementSummary::from_incidence(&hesse, &flexes).signature;
    c.check(sig == n.hesse_signature, format!("Hesse signature {sig}"));
    let dual = dual_hesse_lines().expect("dual Hesse lines");
    let triple = dual_hesse_triple_points(&dual).expect("triple points");
    let summary = ArrangementSummary::from_incidence(&dual, &triple);
    c.check(summary.signature == n.dual_hesse_signature, format!("dual Hesse signature {}", summary.signature));
    let only_triple = summary.lines_per_point.keys().eq([3].iter());
    c.check(triple.len() == n.dual_hesse_points && only_triple, format!("{} triple points, no others", triple.len()));
}

fn second_hessian(c: &mut Criterion) {
    let n = counts();
    let f: Poly = fermat_cubic();
    let witness: Poly = dual_hesse_product();
    let coeffs = &manifest().coefficients;
    let h2 = cayley::second_hessian_with(&f, Coefficients::with_psi_factor(3, coeffs.psi_corrected)).expect("H2").h2;
    let lambda = h2.proportional(&witness);
    c.check(lambda.is_some(), "H2(F) is a multiple of (x^3-y^3)(y^3-z^3)(z^3-x^3)");
    if let Some(l) = lambda {
        c.info(format!("H2(F) = {l} * (x^3-y^3)(y^3-z^3)(z^3-x^3)"));
    }
    let d = h2.degree();
    c.check(d == Some(n.second_hessian_degree) && d == Some(12 * 3 - 27), format!("deg H2(F) = {d:?} = 12*3 - 27"));
    let mutated = cayley::second_hessian_with(&f, Coefficients::with_psi_factor(3, coeffs.psi_original)).expect("H2").h2;
    let ratio = mutated.proportional(&h2);
    c.check(ratio.is_none(), format!("weight {} breaks proportionality with the corrected H2", coeffs.psi_original));
    if let Some(r) = ratio {
        c.info(format!("weight {} gives {r} times the corrected H2(F)", coeffs.psi_original));
    }
    let quartic: Poly = "x^4 + y^4 + z^4 + x*y*z^2".parse().expect("quartic");
    let q20 = cayley::second_hessian_with(&quartic, Coefficients::with_psi_factor(4, coeffs.psi_corrected)).expect("H2");
    let q40 = cayley::second_hessian_with(&quartic, Coefficients::with_psi_factor(4, coeffs.psi_original)).expect("H2");
    let detected = q40.h2.proportional(&q20.h2).is_none();
    c.info(format!("on x^4 + y^4 + z^4 + xyz^2 the weight change is detected: {detected}"));
}

fn sextactic(c: &mut Criterion) {
    let n = counts();
    let f: Poly = fermat_cubic();
    let s = sextactic_lines().expect("second Hessian");
    let pts = sextactic_points_computed(&s).expect("sextactic points");
    let set: HashSet<&ProjPoint> = pts.iter().collect();
    c.check(pts.len() == n.sextactic_points && set.len() == pts.len(), format!("{} distinct points", set.len()));
    let listed = manifest().sextactic_verbatim().expect("manifest");
    let missing: Vec<&str> = listed.iter().filter(|(_, p)| !set.contains(p)).map(|(n, _)| n.as_str()).collect();
    c.check(missing.is_empty(), "equal as a set to the reference S1..S27");
    if !missing.is_empty() {
        c.info(format!("reference points not computed: {}", missing.join(", ")));
        for (name, p) in listed.iter().filter(|(n, _)| missing.contains(&n.as_str())) {
            c.info(format!("{name} = {p}: F = {}", f.evaluate(p.coords())));
        }
    }
    let on = pts.iter().all(|p| p.on_curve(&f) && p.on_curve(&s.h2));
    c.check(on, "all satisfy F = 0 and H2(F) = 0");
    let bezout = 3 * s.h2.degree().unwrap_or(0) as usize;
    c.check(bezout == pts.len(), format!("Bezout bound 3 * 9 = {bezout} reached"));
}

fn census(c: &mut Criterion, p: &mut Pipeline<'_>) {
    let n = counts();
    let pts = points(p.sextactic_points().expect("points").to_vec());
    let census = p.census().expect("census").clone();
    c.check(census.subsets_scanned == n.six_subsets, format!("{} six-subsets scanned", census.subsets_scanned));
    c.check(census.total == n.conics_total, format!("total {}", census.total));
    c.check(census.smooth == n.conics_smooth, format!("smooth {}", census.smooth));
    c.check(census.split == n.conics_split, format!("split {}", census.split));
    let per: HashSet<usize> = census.per_point.iter().map(|x| x.total).collect();
    let per_smooth: HashSet<usize> = census.per_point.iter().map(|x| x.smooth).collect();
    c.check(per == HashSet::from([n.conics_per_point]), format!("per point {per:?}"));
    c.check(per_smooth == HashSet::from([n.smooth_conics_per_point]), format!("smooth per point {per_smooth:?}"));
    c.check(census.total - census.smooth == census.split, "8244 - 5976 = 2268");
    c.check(census.total * 6 == n.conics_per_point * 27, "8244 * 6 / 27 = 1832");
    c.check(census.smooth * 6 == n.smooth_conics_per_point * 27, "5976 * 6 / 27 = 1328");
    let agree = census.conics.par_iter().all(|cc| {
        let six: Vec<ProjPoint> = cc.members.iter().map(|&i| pts[i].clone()).collect();
        matches!(conic_through(&six), Ok(ConicSpan::Unique(k)) if k == cc.conic)
    });
    c.check(agree, "each census conic agrees with a direct kernel computation");
}

fn arrangement(c: &mut Criterion, p: &mut Pipeline<'_>) {
    let n = counts();
    let split = p.split_lines().expect("split lines").clone();
    c.check(split.lines.len() == n.split_lines, format!("{} distinct lines", split.lines.len()));
    c.check(split.summary.signature == n.split_lines_signature, format!("signature {}", split.summary.signature));
    c.check(split.unfactored == 0 && split.unbalanced == 0, "every split conic is two lines with 3 points each");
    c.check(split.vertex_in_set == 0, "no split conic has its vertex at a sextactic point");
    let integ = p.integrality().expect("integrality").clone();
    c.check(integ.product.degree() == Some(n.split_lines_product_degree), "product has degree 81");
    c.check(integ.integral, "product has integer coefficients after one scaling");
}

fn group(c: &mut Criterion, p: &mut Pipeline<'_>) {
    let report = p.run(Scope::Group).expect("group scope");
    for check in &report.checks {
        c.check(check.status == sextactica::report::Status::Pass, format!("{}: {}", check.name, check.actual));
    }
    let recorded = report.conic_predicate.clone();
    c.check(recorded.is_some(), format!("predicate recorded: {}", recorded.as_deref().unwrap_or("none")));
    for (name, count) in &report.counts.predicates.0 {
        c.info(format!("{name}: {count}"));
    }
}

fn witness(c: &mut Criterion) {
    let n = counts();
    let w: Poly = dual_hesse_product();
    let pts = dual_hesse_triple_points(&dual_hesse_lines().expect("lines")).expect("points");
    let orders: Vec<u32> = pts.iter().map(|q| w.vanishing_order(q.coords()).expect("order")).collect();
    c.check(pts.len() == n.dual_hesse_points, format!("{} points", pts.len()));
    c.check(orders.iter().all(|&o| o == n.witness_vanishing_order), format!("orders {orders:?}"));
}

fn properties(c: &mut Criterion) {
    for (name, suite) in common::SUITES {
        match suite() {
            Ok(cases) => c.check(cases >= 200, format!("{name}: {cases} cases")),
            Err(e) => c.check(false, format!("{name}: {e}")),
        }
    }
}

fn determinism(c: &mut Criterion) {
    let threads = std::thread::available_parallelism().map_or(4, |n| n.get()).max(4);
    let run = |n: usize| {
        let pool = rayon::ThreadPoolBuilder::new().num_threads(n).build().expect("pool");
        pool.install(|| {
            let mut p = Pipeline::default();
            let report = p.run(Scope::Conics).expect("conics scope").to_json();
            let conics = serde_json::to_string(p.census().expect("census")).expect("serializes");
            (report, conics)
        })
    };
    let (r1, c1) = run(1);
    let (rn, cn) = run(threads);
    c.check(r1 == rn, format!("census report identical with 1 and {threads} threads ({} bytes)", r1.len()));
    c.check(c1 == cn, format!("full conic list identical with 1 and {threads} threads ({} bytes)", c1.len()));
}

fn main() -> ExitCode {
    let mut pipeline = Pipeline::default();
    let mut unexpected = Vec::new();
    let mut run = |id: u32, title: &str, limit: Option<Duration>, body: &mut dyn FnMut(&mut Criterion)| {
        let mut c = Criterion::new();
        let start = Instant::now();
        body(&mut c);
        let elapsed = start.elapsed();
        match limit {
            Some(limit) => {
                c.check(elapsed < limit, format!("runtime {:.2} s within {} s", elapsed.as_secs_f64(), limit.as_secs()))
            }
            None => c.info(format!("runtime {:.2} s", elapsed.as_secs_f64())),
        }
        let known = KNOWN_FAILURES.iter().find(|(k, _)| *k == id).map(|(_, why)| *why);
        let verdict = match (c.pass, known) {
            (true, None) => "PASS".to_string(),
            (false, Some(why)) => format!("FAIL (known: {why})"),
            (true, Some(_)) => {
                unexpected.push(id);
                "PASS (listed as a known failure)".to_string()
            }
            (false, None) => {
                unexpected.push(id);
                "FAIL".to_string()
            }
        };
        println!("criterion {id}: {title}: {verdict}");
        for l in &c.lines {
            println!("    {l}");
        }
    };

    run(1, "Hessian, flexes, Hesse and dual Hesse arrangements", Some(Duration::from_secs(1)), &mut hessian_and_flexes);
    run(2, "second Hessian and the weight-40 mutation", Some(Duration::from_secs(10)), &mut second_hessian);
    run(3, "sextactic points", Some(Duration::from_secs(5)), &mut sextactic);
    run(4, "conic census over all six-subsets", Some(Duration::from_secs(600)), &mut |c| census(c, &mut pipeline));
    run(5, "81-line arrangement and integral product", Some(Duration::from_secs(60)), &mut |c| arrangement(c, &mut pipeline));
    run(6, "group-law oracle", Some(Duration::from_secs(120)), &mut |c| group(c, &mut pipeline));
    run(7, "witness vanishing order", Some(Duration::from_secs(5)), &mut witness);
    run(8, "property suites", None, &mut properties);
    run(9, "determinism across thread counts", None, &mut determinism);

    if unexpected.is_empty() {
        println!("acceptance: all criteria behave as recorded ({} known failures)", KNOWN_FAILURES.len());
        ExitCode::SUCCESS
    } else {
        println!("acceptance: unexpected outcome for criteria {unexpected:?}");
        ExitCode::FAILURE
    }
}
