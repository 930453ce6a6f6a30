//! Seeded invariant suites over random parameter samples. Each suite reports
//! the number of cases, the worst measured deviation against its tolerance
//! and enough data on failures to reproduce them.

use std::f64::consts::TAU;
use std::time::Instant;

use num_complex::Complex64;
use rand::{RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::branch;
use crate::geom::{point_segment_distance, segment_intersection, Crossing, PathPolyline};
use crate::graph::build_graph;
use crate::jacobi;
use crate::periods::{self, circle_residue_value, loop_period, Corner, QDPolygon};
use crate::qdiff::{self, property_p_with, residues, QDParams, SignPair, Tolerances};
use crate::tracer::{trace_critical, Fate, StepLimits, TrajectoryRecord, ZeroId};

const I: Complex64 = Complex64::new(0.0, 1.0);

/// Absolute tolerance of the residue-theorem comparison.
pub const TOL_RESIDUE: f64 = 1e-8;
/// Level-set tolerance per unit of `scale`.
pub const TOL_TRAJ: f64 = 1e-7;
/// Samples closer than this to the Property-P boundary are redrawn.
pub const P_MARGIN: f64 = 1e-3;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CaseFailure {
    pub case: String,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SuiteResult {
    pub name: &'static str,
    pub cases: usize,
    pub worst: f64,
    pub tol: f64,
    pub failures: Vec<CaseFailure>,
    /// Wall time in seconds; not part of any deterministic output.
    #[serde(skip)]
    pub seconds: f64,
}

impl SuiteResult {
    fn new(name: &'static str, tol: f64) -> Self {
        Self {
            name,
            cases: 0,
            worst: 0.0,
            tol,
            failures: Vec::new(),
            seconds: 0.0,
        }
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty() && self.cases > 0
    }

    fn record(&mut self, case: impl FnOnce() -> String, err: f64, tol: f64, what: &str) {
        self.worst = self.worst.max(err);
        if !(err <= tol) {
            self.failures.push(CaseFailure {
                case: case(),
                detail: format!("{what}: {err:.3e} > {tol:.3e}"),
            });
        }
    }

    fn fail(&mut self, case: String, detail: String) {
        self.failures.push(CaseFailure { case, detail });
    }
}

fn timed(f: impl FnOnce() -> SuiteResult) -> SuiteResult {
    let t = Instant::now();
    let mut r = f();
    r.seconds = t.elapsed().as_secs_f64();
    r
}

fn rng_for(seed: u64, salt: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed ^ salt.wrapping_mul(0x9E37_79B9_7F4A_7C15))
}

fn disk(rng: &mut ChaCha8Rng, radius: f64) -> Complex64 {
    loop {
        let z = Complex64::new(rng.random_range(-radius..radius), rng.random_range(-radius..radius));
        if z.norm() <= radius {
            return z;
        }
    }
}

fn boxed(rng: &mut ChaCha8Rng, half: f64) -> Complex64 {
    Complex64::new(rng.random_range(-half..half), rng.random_range(-half..half))
}

fn fmt_c(z: Complex64) -> String {
    format!("{:?}{:+?}i", z.re, z.im)
}

/// Full-precision description of a parameter triple for reproduction.
pub fn case_dump(p: &QDParams) -> String {
    let mut s = format!("a={} b={} lambda={}", fmt_c(p.a()), fmt_c(p.b()), fmt_c(p.lambda()));
    if let Some(o) = p.origin() {
        s.push_str(&format!(" A={} B={}", fmt_c(o.a), fmt_c(o.b)));
    }
    s
}

/// Jacobi parameters `(A, B)` in the disk of radius `radius`, away from the
/// degenerate sums.
pub fn sample_jacobi(rng: &mut ChaCha8Rng, radius: f64, tol: &Tolerances) -> QDParams {
    loop {
        let a = disk(rng, radius);
        let b = disk(rng, radius);
        if (a + b + 1.0).norm() < 1e-3 || (a + b + 2.0).norm() < 1e-3 {
            continue;
        }
        if let Ok(p) = QDParams::from_jacobi_with(a, b, tol) {
            return p;
        }
    }
}

/// Distance of the four period values from having zero imaginary part,
/// relative to `1 + |v|`.
fn p_margins(p: &QDParams) -> [f64; 4] {
    let mut out = [0.0; 4];
    for (o, s) in out.iter_mut().zip(SignPair::ALL) {
        let v = qdiff::period_value(p, s);
        *o = v.im.abs() / (1.0 + v.norm());
    }
    out
}

/// Admissible triple `(a, b, λ)`. With `force_p`, `λ` is chosen so that one
/// period value is real. All other period values keep a margin of
/// [`P_MARGIN`] from the real axis.
pub fn sample_triple(rng: &mut ChaCha8Rng, force_p: bool) -> QDParams {
    loop {
        let a = boxed(rng, 2.0);
        let b = boxed(rng, 2.0);
        let clear = [a - b, a - 1.0, a + 1.0, b - 1.0, b + 1.0]
            .iter()
            .all(|d| d.norm() >= 0.3);
        if !clear {
            continue;
        }
        let lambda = if force_p {
            let (x, y) = (((1.0 - a) * (1.0 - b)).sqrt(), ((1.0 + a) * (1.0 + b)).sqrt());
            let s = SignPair::ALL[rng.random_range(0..4)];
            let w = x * f64::from(s.0) + y * f64::from(s.1) - 2.0;
            if w.norm() < 0.3 {
                continue;
            }
            -I * rng.random_range(0.5..2.5) / w
        } else {
            Complex64::from_polar(rng.random_range(0.5..2.0), rng.random_range(0.0..TAU))
        };
        let Ok(p) = QDParams::validate(a, b, lambda) else {
            continue;
        };
        let m = p_margins(&p);
        let vanishing = m.iter().filter(|&&x| x == 0.0 || x < 1e-12).count();
        let near = m.iter().filter(|&&x| (1e-12..P_MARGIN).contains(&x)).count();
        if near == 0 && vanishing == usize::from(force_p) {
            return p;
        }
    }
}

/// `R_{A,B}(ζ±) = 0`, `R(1) = 4A²`, `R(−1) = 4B²`, the product forms at
/// `±1`, and the residues `−A², −B², −(A+B+2)²`, all relative to `tol.root`.
pub fn identities(seed: u64, cases: usize, tol: &Tolerances) -> SuiteResult {
    timed(|| {
        let mut rng = rng_for(seed, 1);
        let mut r = SuiteResult::new("identities", tol.root);
        for _ in 0..cases {
            let p = sample_jacobi(&mut rng, 5.0, tol);
            let o = p.origin().expect("origin");
            let (ba, bb) = (o.a, o.b);
            let (zp, zm) = qdiff::jacobi_zeros(ba, bb);
            let s2 = (ba + bb + 2.0) * (ba + bb + 2.0);
            let rel = |lhs: Complex64, rhs: Complex64, scale: f64| (lhs - rhs).norm() / scale.max(f64::MIN_POSITIVE);
            let zero = Complex64::new(0.0, 0.0);
            let one = Complex64::new(1.0, 0.0);
            let res = residues(&p);
            let checks = [
                ("R(zeta+)", rel(qdiff::r_ab(ba, bb, zp), zero, qdiff::r_ab_scale(ba, bb, zp))),
                ("R(zeta-)", rel(qdiff::r_ab(ba, bb, zm), zero, qdiff::r_ab_scale(ba, bb, zm))),
                ("R(1)", rel(qdiff::r_ab(ba, bb, one), 4.0 * ba * ba, qdiff::r_ab_scale(ba, bb, one))),
                ("R(-1)", rel(qdiff::r_ab(ba, bb, -one), 4.0 * bb * bb, qdiff::r_ab_scale(ba, bb, -one))),
                (
                    "product at 1",
                    rel(s2 * (zp - 1.0) * (zm - 1.0), 4.0 * ba * ba, (s2 * (zp - 1.0) * (zm - 1.0)).norm() + 4.0 * ba.norm_sqr()),
                ),
                (
                    "product at -1",
                    rel(s2 * (zp + 1.0) * (zm + 1.0), 4.0 * bb * bb, (s2 * (zp + 1.0) * (zm + 1.0)).norm() + 4.0 * bb.norm_sqr()),
                ),
                ("residue at 1", rel(res.plus1, -ba * ba, res.plus1.norm() + ba.norm_sqr())),
                ("residue at -1", rel(res.minus1, -bb * bb, res.minus1.norm() + bb.norm_sqr())),
                ("residue at infinity", rel(res.inf, -s2, 2.0 * s2.norm())),
            ];
            r.cases += 1;
            for (what, err) in checks {
                r.record(|| case_dump(&p), err, tol.root, what);
            }
        }
        r
    })
}

/// Random circles around no zero or both zeros, traversed either way:
/// quadrature of `√φ/(t²−1)` against `2πi` times the winding-weighted
/// residues.
pub fn residue_oracle(seed: u64, loops: usize) -> SuiteResult {
    timed(|| {
        let mut rng = rng_for(seed, 2);
        let mut r = SuiteResult::new("residue oracle", TOL_RESIDUE);
        while r.cases < loops {
            let p = sample_triple(&mut rng, false);
            let center = boxed(&mut rng, 2.5);
            let radius = rng.random_range(0.2..3.0);
            let inside = |z: Complex64| (z - center).norm() < radius;
            if inside(p.a()) != inside(p.b()) {
                continue;
            }
            let poles = [Complex64::new(-1.0, 0.0), Complex64::new(1.0, 0.0)];
            if !inside(p.a()) && !poles.iter().any(|&q| inside(q)) {
                continue;
            }
            let margin = 4.0 * branch::default_r_safe(&p);
            if p.critical_points().iter().any(|&c| ((c - center).norm() - radius).abs() < margin) {
                continue;
            }
            let ccw = rng.random_range(0..2) == 0;
            let circle = PathPolyline::circle(center, radius, 256);
            let (path, weight) = if ccw { (circle, 1.0) } else { (circle.reversed(), -1.0) };
            let case = || format!("{} center={} radius={radius:?} ccw={ccw}", case_dump(&p), fmt_c(center));
            let expected = match circle_residue_value(&p, center, radius) {
                Ok(v) => v * weight,
                Err(e) => {
                    r.fail(case(), format!("oracle: {e}"));
                    r.cases += 1;
                    continue;
                }
            };
            match loop_period(&p, &path) {
                Ok(rep) => r.record(case, (rep.value - expected).norm(), TOL_RESIDUE, "quadrature vs residues"),
                Err(e) => r.fail(case(), format!("quadrature: {e}")),
            }
            r.cases += 1;
        }
        r
    })
}

/// Winding archetype of an arc relative to the reference arc: whether it
/// goes around `−1` and whether it goes around `+1`.
pub fn archetype(winding: (i32, i32)) -> usize {
    usize::from(winding.0 != 0) + 2 * usize::from(winding.1 != 0)
}

/// Distance of `v` from the set `±2π{1, A+1, B+1, A+B+1}` (the values whose
/// product with `−i` lie in `±2πi{…}`).
pub fn class_distance(p: &QDParams, v: Complex64) -> Option<(f64, qdiff::JacobiClass)> {
    use qdiff::JacobiClass::*;
    let o = p.origin()?;
    [One, APlusOne, BPlusOne, ABPlusOne]
        .into_iter()
        .map(|c| {
            let target = TAU * c.value(&o);
            ((v - target).norm().min((v + target).norm()), c)
        })
        .min_by(|x, y| x.0.total_cmp(&y.0))
}

fn random_arc(rng: &mut ChaCha8Rng, p: &QDParams) -> Option<PathPolyline> {
    let k = rng.random_range(1..4);
    let mut corners = vec![p.a()];
    for _ in 0..k {
        corners.push(boxed(rng, 3.0));
    }
    corners.push(p.b());
    let legs: Vec<(Complex64, Complex64)> = corners.windows(2).map(|w| (w[0], w[1])).collect();
    for i in 0..legs.len() {
        for j in i + 2..legs.len() {
            if segment_intersection(legs[i].0, legs[i].1, legs[j].0, legs[j].1) != Crossing::None {
                return None;
            }
        }
    }
    let poles = [Complex64::new(-1.0, 0.0), Complex64::new(1.0, 0.0)];
    for (i, &(u, v)) in legs.iter().enumerate() {
        let mut avoid: Vec<Complex64> = poles.to_vec();
        if i != 0 {
            avoid.push(p.a());
        }
        if i + 1 != legs.len() {
            avoid.push(p.b());
        }
        if avoid.iter().any(|&c| point_segment_distance(c, u, v) < 0.05) {
            return None;
        }
    }
    let mut pts = vec![p.a()];
    for &(u, v) in &legs {
        pts.extend(PathPolyline::segment(u, v, 12).points()[1..].iter());
    }
    Some(PathPolyline::new(pts))
}

/// Arc periods for Jacobi parameters against `±2π{1, A+1, B+1, A+B+1}`,
/// collecting arcs of every winding archetype.
pub fn period_classes(seed: u64, params: &[QDParams], per_archetype: usize) -> SuiteResult {
    timed(|| {
        let mut rng = rng_for(seed, 3);
        let mut r = SuiteResult::new("period classes", periods::TOL_PERIOD);
        for p in params {
            let mut found = [0usize; 4];
            let mut attempts = 0;
            while found.iter().any(|&f| f < per_archetype) && attempts < 4000 {
                attempts += 1;
                let Some(arc) = random_arc(&mut rng, p) else { continue };
                let Ok(rep) = periods::arc_period(p, &arc, true) else { continue };
                let kind = archetype(rep.winding);
                if found[kind] >= per_archetype {
                    continue;
                }
                found[kind] += 1;
                r.cases += 1;
                let case = || format!("{} winding={:?}", case_dump(p), rep.winding);
                match class_distance(p, rep.value) {
                    Some((d, _)) => r.record(case, d, periods::TOL_PERIOD, "distance to class set"),
                    None => r.fail(case(), "parameters carry no Jacobi origin".into()),
                }
                // Reversal negates the period.
                if let Ok(back) = periods::arc_period(p, &arc.reversed(), true) {
                    r.record(case, (back.value + rep.value).norm(), periods::TOL_PERIOD, "reversed arc");
                }
            }
            for (kind, &f) in found.iter().enumerate() {
                if f < per_archetype {
                    r.fail(case_dump(p), format!("archetype {kind}: found {f} arcs of {per_archetype}"));
                }
            }
        }
        r
    })
}

/// Property-P verdict invariance under `a ↔ b`, joint conjugation and
/// `λ → −λ`.
pub fn property_p_symmetry(seed: u64, cases: usize, tol: &Tolerances) -> SuiteResult {
    timed(|| {
        let mut rng = rng_for(seed, 4);
        let mut r = SuiteResult::new("property P symmetry", 0.0);
        for k in 0..cases {
            let p = sample_triple(&mut rng, k % 2 == 0);
            let base = property_p_with(&p, tol);
            r.cases += 1;
            if base.satisfied != (k % 2 == 0) {
                r.fail(case_dump(&p), format!("verdict {} for a sample drawn with forced={}", base.satisfied, k % 2 == 0));
            }
            let neg = p.with_lambda(-p.lambda()).expect("valid");
            for (what, q) in [("swap", p.swapped()), ("conjugate", p.conj()), ("negate lambda", neg)] {
                let other = property_p_with(&q, tol);
                if other.satisfied != base.satisfied {
                    r.fail(case_dump(&p), format!("{what} changes the verdict"));
                }
            }
            // λ → −λ negates every value: the vanishing set is the same.
            let flipped = property_p_with(&neg, tol);
            for (x, y) in base.values.iter().zip(&flipped.values) {
                if x.vanishes != y.vanishes {
                    r.fail(case_dump(&p), format!("negate lambda changes the vanishing of {}", x.signs));
                }
            }
        }
        r
    })
}

/// The two polygon instances: two zero corners with no interior
/// singularity, and one zero corner around a double pole.
pub fn teich_instances() -> SuiteResult {
    timed(|| {
        let mut r = SuiteResult::new("teichmueller", 0.0);
        let two = QDPolygon {
            corners: vec![Corner { n: 1, theta: TAU / 3.0 }; 2],
            interior: vec![],
        };
        let res = periods::teich_check(&two);
        r.cases += 1;
        if res.consistent || res.lhs.abs() > 1e-15 || res.rhs != 2.0 {
            r.fail("two corners".into(), format!("lhs={} rhs={} consistent={}", res.lhs, res.rhs, res.consistent));
        }
        let one = QDPolygon {
            corners: vec![Corner { n: 1, theta: TAU / 3.0 }],
            interior: vec![-2],
        };
        let res = periods::teich_check(&one);
        r.cases += 1;
        if !res.consistent || res.lhs != res.rhs {
            r.fail("loop around a pole".into(), format!("lhs={} rhs={} consistent={}", res.lhs, res.rhs, res.consistent));
        }
        r
    })
}

/// Discrete Cauchy transform from the roots against `P′/(nP)`, and the
/// degree-one closed form, for random fixed parameters.
pub fn cauchy_duality(seed: u64, cases: usize) -> SuiteResult {
    timed(|| {
        let mut rng = rng_for(seed, 5);
        let tol = 1e-9;
        let mut r = SuiteResult::new("cauchy duality", tol);
        while r.cases < cases {
            let n = rng.random_range(1..13);
            let alpha = boxed(&mut rng, 3.0);
            let beta = boxed(&mut rng, 3.0);
            let case = || format!("n={n} alpha={} beta={}", fmt_c(alpha), fmt_c(beta));
            let Ok(spec) = jacobi::build(n, alpha, beta) else { continue };
            if spec.degree != n {
                continue;
            }
            let rs = match jacobi::roots(&spec) {
                Ok(rs) => rs,
                Err(e) => {
                    r.cases += 1;
                    r.fail(case(), format!("roots: {e}"));
                    continue;
                }
            };
            r.cases += 1;
            let z = Complex64::from_polar(2.0 * rs.max_modulus().max(1.0), rng.random_range(0.0..TAU));
            match jacobi::cauchy(&rs, z) {
                Ok(c) => {
                    let d = jacobi::cauchy_ratio(&spec, z);
                    r.record(case, (c - d).norm() / d.norm(), tol, "roots vs P'/(nP)");
                }
                Err(e) => r.fail(case(), format!("cauchy: {e}")),
            }
            if n == 1 {
                let exact = (beta - alpha) / (alpha + beta + 2.0);
                r.record(case, (rs.roots[0] - exact).norm() / (1.0 + exact.norm()), tol, "degree one root");
            }
        }
        r
    })
}

/// Short-trajectory detection against Property P on random triples, half of
/// them drawn to satisfy it.
pub fn existence(seed: u64, cases: usize) -> SuiteResult {
    timed(|| {
        let mut rng = rng_for(seed, 6);
        let samples: Vec<QDParams> = (0..cases).map(|k| sample_triple(&mut rng, k % 2 == 0)).collect();
        let outcomes: Vec<_> = samples
            .par_iter()
            .map(|p| (p, build_graph(p)))
            .collect();
        let mut r = SuiteResult::new("existence", 0.0);
        for (p, g) in outcomes {
            r.cases += 1;
            match g {
                Ok(g) => {
                    if g.has_short() != g.property_p.satisfied {
                        r.fail(
                            case_dump(p),
                            format!(
                                "shorts={} property_p={} refined={} fates={:?}",
                                g.shorts.len(),
                                g.property_p.satisfied,
                                g.refined,
                                g.trajectories.iter().map(|t| t.fate).collect::<Vec<_>>()
                            ),
                        );
                    }
                }
                Err(e) => r.fail(case_dump(p), format!("graph: {e}")),
            }
        }
        r
    })
}

/// Largest `|Im F|/(1+s)` over the vertices of a traced trajectory, where `F`
/// is the running integral and `s` the arclength so far.
pub fn level_profile(p: &QDParams, t: &TrajectoryRecord) -> crate::Result<f64> {
    let from_zero = t.origin.is_some();
    let prof = periods::trajectory_profile(p, &t.polyline, from_zero)?;
    let cum = t.polyline.cumulative();
    Ok(prof
        .iter()
        .zip(cum)
        .map(|(e, s)| e.value.im.abs() / (1.0 + s))
        .fold(0.0, f64::max))
}

/// Distance from `z` to the curve sampled by `path`, using the circle through
/// the three vertices around the nearest one so chord sagitta does not count.
fn distance_to_curve(path: &PathPolyline, z: Complex64) -> f64 {
    let pts = path.points();
    if pts.len() < 3 {
        return path.distance_to(z);
    }
    let j = (0..pts.len())
        .min_by(|&i, &k| (pts[i] - z).norm().total_cmp(&(pts[k] - z).norm()))
        .expect("nonempty")
        .clamp(1, pts.len() - 2);
    let (p, q, r) = (pts[j - 1], pts[j], pts[j + 1]);
    let (u, v) = (q - p, r - p);
    let det = 2.0 * (u.re * v.im - u.im * v.re);
    if det.abs() <= 1e-12 * u.norm() * v.norm() {
        return path.distance_to(z);
    }
    let (nu, nv) = (u.norm_sqr(), v.norm_sqr());
    let c = p + Complex64::new(v.im * nu - u.im * nv, u.re * nv - v.re * nu) / det;
    ((z - c).norm() - (q - c).norm()).abs()
}

/// Level-set invariant along every critical trajectory and detected loop,
/// and the terminal-point shift of each critical trajectory when re-traced
/// at half the step tolerance.
pub fn hygiene(params: &[QDParams]) -> (SuiteResult, SuiteResult) {
    let t0 = Instant::now();
    let mut level = SuiteResult::new("level invariant", TOL_TRAJ);
    let mut halving = SuiteResult::new("step halving", 10.0);
    for p in params {
        match build_graph(p) {
            Ok(g) => {
                let loops = g.loops.iter().map(|l| &l.trajectory);
                for t in g.trajectories.iter().chain(loops) {
                    level.cases += 1;
                    match level_profile(p, t) {
                        Ok(v) => level.record(|| case_dump(p), v / p.scale(), TOL_TRAJ, "max |Im F|/(1+s)"),
                        Err(e) => level.fail(case_dump(p), format!("profile: {e}")),
                    }
                }
            }
            Err(e) => level.fail(case_dump(p), format!("graph: {e}")),
        }
        let limits = StepLimits::for_params(p);
        let half = limits.refined(0.5);
        let jobs: Vec<(ZeroId, usize)> = [ZeroId::A, ZeroId::B]
            .into_iter()
            .flat_map(|z| (0..3).map(move |k| (z, k)))
            .collect();
        let pairs: Vec<_> = jobs
            .par_iter()
            .map(|&(z, k)| (z, k, trace_critical(p, z, k, &limits), trace_critical(p, z, k, &half)))
            .collect();
        for (z, k, full, fine) in pairs {
            halving.cases += 1;
            let case = || format!("{} zero={} k={k}", case_dump(p), z.label());
            match (full, fine) {
                (Ok(x), Ok(y)) => {
                    let moved = if x.fate == Fate::Truncated {
                        // Truncation points are set by the arclength budget, so
                        // compare across the track instead of along it.
                        let (short, long) = if x.arclength <= y.arclength { (&x, &y) } else { (&y, &x) };
                        distance_to_curve(&long.polyline, short.polyline.last().unwrap())
                    } else {
                        (x.polyline.last().unwrap() - y.polyline.last().unwrap()).norm()
                    };
                    // A trace stops anywhere within its terminal gap of a zero,
                    // so that gap is part of the terminal point's uncertainty.
                    let stop = |t: &TrajectoryRecord| match t.fate {
                        Fate::ToOtherZero | Fate::ToSameZero => t.terminal_gap,
                        _ => 0.0,
                    };
                    let est = (x.est_error + stop(&x)).max(y.est_error + stop(&y));
                    if x.fate != y.fate {
                        halving.fail(case(), format!("fate {:?} vs {:?}", x.fate, y.fate));
                    }
                    let ratio = if moved == 0.0 { 0.0 } else { moved / est };
                    halving.record(case, ratio, 10.0, "terminal shift / error estimate");
                }
                (Err(e), _) | (_, Err(e)) => halving.fail(case(), format!("trace: {e}")),
            }
        }
    }
    let secs = t0.elapsed().as_secs_f64();
    level.seconds = secs;
    halving.seconds = secs;
    (level, halving)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VerifyConfig {
    pub seed: u64,
    pub tol: Tolerances,
    /// Adds the graph-based suites.
    pub full: bool,
}

/// Parameter sets used by the period-class suite.
pub fn class_params() -> Vec<QDParams> {
    let c = Complex64::new;
    [
        (c(1.0, 0.1), c(-1.0, 0.1)),
        (c(1.0, 0.1), c(-1.0, -0.1)),
        (c(2.0, 0.0), c(3.0, 0.0)),
        (c(-1.1, 0.1), c(1.0, 0.0)),
    ]
    .into_iter()
    .map(|(a, b)| QDParams::from_jacobi(a, b).expect("valid"))
    .collect()
}

/// The figure cases used by the hygiene suites.
pub fn figure_params() -> Vec<QDParams> {
    let c = Complex64::new;
    [
        (c(2.0, 0.0), c(3.0, 0.0)),
        (c(-2.0, 0.0), c(3.0, 0.0)),
        (c(1.0, 0.1), c(-1.0, 0.1)),
        (c(1.0, 0.1), c(-1.0, -0.1)),
        (c(-1.1, 0.1), c(1.0, 0.0)),
    ]
    .into_iter()
    .map(|(a, b)| QDParams::from_jacobi(a, b).expect("valid"))
    .collect()
}

/// Figure cases plus seeded random triples, half satisfying Property P.
pub fn hygiene_params(seed: u64) -> Vec<QDParams> {
    let mut rng = rng_for(seed, 7);
    let mut out = figure_params();
    out.extend((0..6).map(|k| sample_triple(&mut rng, k % 2 == 0)));
    out
}

pub fn run_all(cfg: &VerifyConfig) -> Vec<SuiteResult> {
    let mut out = vec![
        identities(cfg.seed, 100, &cfg.tol),
        residue_oracle(cfg.seed, 20),
        period_classes(cfg.seed, &class_params(), 2),
        property_p_symmetry(cfg.seed, 100, &cfg.tol),
        teich_instances(),
        cauchy_duality(cfg.seed, 40),
    ];
    if cfg.full {
        out.push(existence(cfg.seed, 50));
        let (level, halving) = hygiene(&hygiene_params(cfg.seed));
        out.push(level);
        out.push(halving);
    }
    out
}
