//! One line per acceptance criterion on stderr, each of the form
//! `criterion N name: PASS|FAIL (details)`.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

use std::io::Write;
use std::time::Instant;

use num_complex::Complex64;

use qdgraph::graph::{build_graph, CriticalGraph, Topology};
use qdgraph::jacobi;
use qdgraph::qdiff::Tolerances;
use qdgraph::tracer::Fate;
use qdgraph::verify::{self, SuiteResult};
use qdgraph::{PathPolyline, QDParams};

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn report(n: usize, name: &str, ok: bool, details: &str, started: Instant, budget: f64) {
    let secs = started.elapsed().as_secs_f64();
    let pass = ok && secs <= budget;
    let _ = writeln!(
        std::io::stderr(),
        "criterion {n} {name}: {} ({details}; {secs:.2}s of {budget}s)",
        if pass { "PASS" } else { "FAIL" }
    );
    assert!(ok, "criterion {n} {name}: {details}");
    assert!(secs <= budget, "criterion {n} {name}: {secs:.2}s over {budget}s");
}

fn suite_details(r: &SuiteResult) -> String {
    let mut s = format!("{} cases, worst {:.3e}, tol {:.1e}", r.cases, r.worst, r.tol);
    for f in r.failures.iter().take(3) {
        s.push_str(&format!("; {} :: {}", f.case, f.detail));
    }
    s
}

fn graph(a: Complex64, b: Complex64) -> CriticalGraph {
    build_graph(&QDParams::from_jacobi(a, b).unwrap()).unwrap()
}

fn has_loop_around(g: &CriticalGraph, pole: f64) -> bool {
    g.self_loops.iter().any(|l| if pole < 0.0 { l.winding.0 != 0 } else { l.winding.1 != 0 })
}

#[test]
fn criterion_01_identities() {
    let t = Instant::now();
    let r = verify::identities(0, 100, &Tolerances::default());
    report(1, "algebraic identities", r.passed(), &suite_details(&r), t, 1.0);
}

#[test]
fn criterion_02_residues() {
    let t = Instant::now();
    let r = verify::residue_oracle(0, 20);
    report(2, "residues against contour integrals", r.passed(), &suite_details(&r), t, 5.0);
}

#[test]
fn criterion_03_period_classes() {
    let t = Instant::now();
    let r = verify::period_classes(0, &verify::class_params(), 2);
    report(3, "period classes", r.passed(), &suite_details(&r), t, 10.0);
}

#[test]
fn criterion_04_dichotomy() {
    let t = Instant::now();
    let one = graph(c(1.0, 0.1), c(-1.0, 0.1));
    let two = graph(c(1.0, 0.1), c(-1.0, -0.1));
    let mut problems = Vec::new();

    if one.shorts.len() != 1 {
        problems.push(format!("case A: {} shorts", one.shorts.len()));
    } else {
        let s = &one.shorts[0];
        let limit = 1e-6 * one.params.scale();
        let gaps: Vec<f64> = std::iter::once(s.forward)
            .chain(s.backward)
            .map(|i| one.trajectories[i].terminal_gap)
            .collect();
        if s.backward.is_none() || gaps.iter().any(|&g| !(g < limit)) {
            problems.push(format!("case A: arrival gaps {gaps:?}, limit {limit:.1e}"));
        }
    }

    if two.shorts.len() != 2 {
        problems.push(format!("case B: {} shorts", two.shorts.len()));
    } else {
        let curve: PathPolyline = two.shorts[0].polyline.concat(&two.shorts[1].polyline.reversed());
        let w = (curve.winding_number(c(-1.0, 0.0)), curve.winding_number(c(1.0, 0.0)));
        if w.0.abs() != 1 || w.1.abs() != 1 {
            problems.push(format!("case B: Jordan curve winding {w:?}"));
        }
        let classes: Vec<_> = two.shorts.iter().map(|s| s.period.matched.as_ref().and_then(|m| m.class)).collect();
        if classes[0].is_none() || classes[0] == classes[1] {
            problems.push(format!("case B: classes {classes:?}"));
        }
    }
    if two.topology != Topology::TwoShortJordanCurve {
        problems.push(format!("case B: topology {:?}", two.topology));
    }
    let details = if problems.is_empty() {
        "one short for A = 1+0.1i, B = -1+0.1i; two shorts enclosing both poles for B = -1-0.1i".to_string()
    } else {
        problems.join("; ")
    };
    report(4, "one or two shorts", problems.is_empty(), &details, t, 30.0);
}

#[test]
fn criterion_05_real_parameters() {
    let t = Instant::now();
    let mut problems = Vec::new();
    let g = graph(c(2.0, 0.0), c(3.0, 0.0));
    let r2 = 2f64.sqrt();
    let expected = [(5.0 - 24.0 * r2) / 49.0, (5.0 + 24.0 * r2) / 49.0];
    let zeros = g.params.zeros();
    let mut zr: Vec<f64> = zeros.iter().map(|z| z.re).collect();
    zr.sort_by(f64::total_cmp);
    let zero_err = zeros
        .iter()
        .map(|z| z.im.abs())
        .chain(zr.iter().zip(expected).map(|(x, e)| (x - e).abs()))
        .fold(0.0, f64::max);
    if zero_err > 1e-12 {
        problems.push(format!("zeros off by {zero_err:.3e}"));
    }
    if g.shorts.len() != 1 {
        problems.push(format!("{} shorts", g.shorts.len()));
    } else {
        let im = g.shorts[0].polyline.points().iter().map(|z| z.im.abs()).fold(0.0, f64::max);
        if !(im < 1e-8) {
            problems.push(format!("short leaves the real axis by {im:.3e}"));
        }
    }
    if !has_loop_around(&g, -1.0) || !has_loop_around(&g, 1.0) {
        problems.push("missing self-loop".into());
    }
    if g.topology != Topology::RealLoopsPlusSegment {
        problems.push(format!("A=2, B=3 topology {:?}", g.topology));
    }
    let h = graph(c(-2.0, 0.0), c(3.0, 0.0));
    if h.topology != Topology::RealLoopsCommonEdge {
        problems.push(format!("A=-2, B=3 topology {:?}", h.topology));
    }
    let details = if problems.is_empty() {
        "segment between the zeros, loops around both poles; common-edge loops for A=-2".to_string()
    } else {
        problems.join("; ")
    };
    report(5, "real parameters", problems.is_empty(), &details, t, 30.0);
}

#[test]
fn criterion_06_loop_case() {
    let t = Instant::now();
    let g = graph(c(-1.1, 0.1), c(1.0, 0.0));
    let mut problems = Vec::new();
    if g.shorts.len() != 1 {
        problems.push(format!("{} shorts", g.shorts.len()));
    }
    if !has_loop_around(&g, -1.0) || has_loop_around(&g, 1.0) {
        let w: Vec<_> = g.self_loops.iter().map(|l| l.winding).collect();
        problems.push(format!("self-loop windings {w:?}"));
    }
    let fates = g.infinite_fates();
    if !fates.contains(&Fate::ToPolePlus1) || !fates.contains(&Fate::ToInfinity) {
        problems.push(format!("free fates {fates:?}"));
    }
    if g.topology != Topology::OneShortLoopTwoInfinite {
        problems.push(format!("topology {:?}", g.topology));
    }
    let details = if problems.is_empty() {
        format!("{:?}, free fates {fates:?}", g.topology)
    } else {
        problems.join("; ")
    };
    report(6, "short plus self-loop", problems.is_empty(), &details, t, 30.0);
}

#[test]
fn criterion_07_unit_mass() {
    let t = Instant::now();
    let g = graph(c(1.0, 0.1), c(-1.0, 0.1));
    let (ok, details) = match g.shorts.first() {
        Some(s) => {
            let dev = (s.period.value.norm() / std::f64::consts::TAU - 1.0).abs();
            (dev < 1e-6, format!("|period/2pi| - 1 = {dev:.3e}"))
        }
        None => (false, "no short trajectory".to_string()),
    };
    report(7, "unit mass of the short", ok, &details, t, 30.0);
}

#[test]
fn criterion_08_existence() {
    let t = Instant::now();
    let r = verify::existence(0, 50);
    report(8, "shorts exactly under Property P", r.passed(), &suite_details(&r), t, 300.0);
}

#[test]
fn criterion_09_jacobi_convergence() {
    let t = Instant::now();
    let (a, b) = (c(1.0, 0.1), c(-1.0, 0.1));
    let g = graph(a, b);
    let z = c(3.0, 0.0);
    let mut means = Vec::new();
    let mut residuals = Vec::new();
    let mut problems = Vec::new();
    for n in [16, 32, 64] {
        match jacobi::compare(a, b, n, &g) {
            Ok((rs, cmp)) => {
                means.push(cmp.mean_dist);
                match jacobi::cauchy(&rs, z) {
                    Ok(cz) => residuals.push(jacobi::quadratic_residual(a, b, z, cz)),
                    Err(e) => problems.push(format!("n={n}: {e}")),
                }
            }
            Err(e) => problems.push(format!("n={n}: {e}")),
        }
    }
    let decreasing = |v: &[f64]| v.len() == 3 && v.windows(2).all(|w| w[1] < w[0]);
    if !decreasing(&means) {
        problems.push("mean distance not decreasing".into());
    }
    if !decreasing(&residuals) {
        problems.push("Cauchy residual not decreasing".into());
    }
    let fmt = |v: &[f64]| v.iter().map(|x| format!("{x:.3e}")).collect::<Vec<_>>().join(" > ");
    let mut details = format!("mean distance {}; residual at z=3 {}", fmt(&means), fmt(&residuals));
    for p in &problems {
        details.push_str("; ");
        details.push_str(p);
    }
    report(9, "zeros approach the short", problems.is_empty(), &details, t, 60.0);
}

#[test]
fn criterion_10_polygons() {
    let t = Instant::now();
    let r = verify::teich_instances();
    report(10, "polygon residue balance", r.passed(), &suite_details(&r), t, 10.0);
}

#[test]
fn criterion_11_numerical_hygiene() {
    let t = Instant::now();
    let (level, halving) = verify::hygiene(&verify::hygiene_params(0));
    let details = format!("level: {}; halving: {}", suite_details(&level), suite_details(&halving));
    report(11, "level set and step halving", level.passed() && halving.passed(), &details, t, 120.0);
}
