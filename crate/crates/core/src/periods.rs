//! Integrals of `√φ(t)/(t²−1) dt` along polylines: arcs joining the zeros
//! (with the square-root endpoint singularities removed by `t = e + d·u²`),
//! closed loops, and the identification of an arc's period with one of the
//! four closed-form values. Also the angle-sum check for ϖ-polygons.

use std::f64::consts::TAU;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::branch::{self, nearest_root, BranchState};
use crate::error::{Error, Result};
use crate::geom::{point_segment_distance, PathPolyline};
use crate::qdiff::{jacobi_class, period_value, JacobiClass, QDParams, SignPair};
use crate::quad::{self, Estimate};

/// Panel length as a fraction of the distance to the nearest singular point.
const PANEL_FRACTION: f64 = 0.2;
const REL_TOL: f64 = 1e-13;
const MAX_DEPTH: u32 = 16;
/// Matching tolerance for closed-form period values.
pub const TOL_PERIOD: f64 = 1e-7;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PeriodReport {
    pub value: Complex64,
    pub est_error: f64,
    /// `+1` when the arc runs from `a` to `b`, `−1` for `b` to `a`; `0` for loops
    /// and open arcs between regular points.
    pub orientation: i8,
    /// Closed-form value the period was matched to, if any.
    pub matched: Option<ClassMatch>,
    /// Winding numbers around `−1` and `+1` (of the comparison loop for arcs,
    /// of the loop itself for loops).
    pub winding: (i32, i32),
    /// Winding numbers around `a` and `b`, for loops.
    pub zero_winding: Option<(i32, i32)>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClassMatch {
    pub signs: SignPair,
    /// `value = sign · v(signs)`.
    pub sign: i8,
    pub predicted: Complex64,
    pub distance: f64,
    pub class: Option<JacobiClass>,
    /// Sign `σ` with `−i·value = σ·2πi·class` (the period of `√R_{A,B}`).
    pub jacobi_sign: Option<i8>,
}

fn singular_points(p: &QDParams) -> [Complex64; 4] {
    p.critical_points()
}

fn dist_to(points: &[Complex64], z: Complex64) -> f64 {
    points.iter().map(|&c| (z - c).norm()).fold(f64::INFINITY, f64::min)
}

fn integrand(t: Complex64, s: Complex64) -> Complex64 {
    s / (t * t - 1.0)
}

/// `∫_{z0}^{z1} √φ/(t²−1) dt` along the straight segment, branch continued
/// from `s0` at `z0`. Returns the estimate and the value of `√φ` at `z1`.
fn integrate_regular(
    p: &QDParams,
    z0: Complex64,
    z1: Complex64,
    s0: Complex64,
) -> Result<(Estimate, Complex64)> {
    let d = z1 - z0;
    let len = d.norm();
    if len == 0.0 {
        return Ok((Estimate::ZERO, s0));
    }
    let sing = singular_points(p);
    let mut total = Estimate::ZERO;
    let mut sigma = 0.0;
    let mut s = s0;
    let mut panels = 0usize;
    while sigma < 1.0 {
        let t0 = z0 + d * sigma;
        let r = dist_to(&sing, t0);
        if r == 0.0 {
            return Err(Error::NearCriticalPoint { point: t0, distance: 0.0 });
        }
        let ds = (PANEL_FRACTION * r / len).min(1.0 - sigma);
        let s1 = sigma + ds;
        let reference = s;
        let mut f = |sg: f64| {
            let t = z0 + d * sg;
            integrand(t, nearest_root(p.phi(t), reference)) * d
        };
        let scale = f(0.5 * (sigma + s1)).norm() * ds;
        // φ(t) loses about |t|/r of relative accuracy near a critical point.
        let floor = f64::EPSILON * (1.0 + t0.norm()) / r;
        let est = quad::adaptive(&mut f, sigma, s1, (REL_TOL + floor) * scale + f64::MIN_POSITIVE, MAX_DEPTH);
        total = total + est;
        let t1 = if s1 >= 1.0 { z1 } else { z0 + d * s1 };
        s = nearest_root(p.phi(t1), reference);
        sigma = if s1 >= 1.0 { 1.0 } else { s1 };
        panels += 1;
        if panels > 10_000_000 {
            return Err(Error::Quadrature { est: f64::INFINITY });
        }
    }
    Ok((total, s))
}

/// `∫_{zero}^{far} √φ/(t²−1) dt` along the straight segment with
/// `t = zero + (far − zero)u²`, given `√φ(far) = s_far`.
fn singular_leg(
    p: &QDParams,
    zero: Complex64,
    other: Complex64,
    far: Complex64,
    s_far: Complex64,
) -> Result<Estimate> {
    let d = far - zero;
    let l2 = p.lambda() * p.lambda();
    // √φ(t(u)) = u·ψ(u), ψ(u)² = λ²d(t(u) − other), ψ(1) = √φ(far).
    let psi2 = |u: f64| l2 * d * (zero + d * (u * u) - other);
    let avoid = [other, Complex64::new(-1.0, 0.0), Complex64::new(1.0, 0.0)];
    let mut total = Estimate::ZERO;
    let mut hi = 1.0f64;
    let mut psi = s_far;
    let mut panels = 0usize;
    while hi > 0.0 {
        let t_hi = zero + d * (hi * hi);
        let r = dist_to(&avoid, t_hi);
        if r == 0.0 {
            return Err(Error::NearCriticalPoint { point: t_hi, distance: 0.0 });
        }
        let speed = 2.0 * d.norm() * hi;
        let du = if speed > 0.0 {
            (PANEL_FRACTION * r / speed).min(0.25)
        } else {
            0.25
        };
        let lo = (hi - du).max(0.0);
        let reference = psi;
        let mut f = |u: f64| {
            let t = zero + d * (u * u);
            let ps = nearest_root(psi2(u), reference);
            ps * u * 2.0 * d * u / (t * t - 1.0)
        };
        let scale = f(0.5 * (lo + hi)).norm() * (hi - lo);
        let est = quad::adaptive(&mut f, lo, hi, REL_TOL * scale + f64::MIN_POSITIVE, MAX_DEPTH);
        total = total + est;
        psi = nearest_root(psi2(lo), reference);
        hi = lo;
        panels += 1;
        if panels > 10_000_000 {
            return Err(Error::Quadrature { est: f64::INFINITY });
        }
    }
    Ok(total)
}

fn identify_zero(p: &QDParams, z: Complex64) -> (Complex64, Complex64) {
    if (z - p.a()).norm() <= (z - p.b()).norm() {
        (p.a(), p.b())
    } else {
        (p.b(), p.a())
    }
}

/// Integral along the polyline with `√φ(pts[k]) = s_k`. Singular endpoints
/// must coincide with a zero.
pub fn integrate_polyline(
    p: &QDParams,
    pts: &[Complex64],
    k: usize,
    s_k: Complex64,
    singular_start: bool,
    singular_end: bool,
) -> Result<Estimate> {
    let n = pts.len();
    if n < 2 || k >= n {
        return Err(Error::PathTooShort { needed: 2, got: n });
    }
    let mut total = Estimate::ZERO;
    let mut s = s_k;
    for j in k..n - 1 {
        if j + 1 == n - 1 && singular_end {
            let (zero, other) = identify_zero(p, pts[n - 1]);
            let e = singular_leg(p, zero, other, pts[j], s)?;
            total = total + Estimate { value: -e.value, error: e.error };
        } else {
            let (e, s1) = integrate_regular(p, pts[j], pts[j + 1], s)?;
            total = total + e;
            s = s1;
        }
    }
    s = s_k;
    for j in (1..=k).rev() {
        if j == 1 && singular_start {
            let (zero, other) = identify_zero(p, pts[0]);
            total = total + singular_leg(p, zero, other, pts[1], s)?;
        } else {
            let (e, s0) = integrate_regular(p, pts[j], pts[j - 1], s)?;
            total = total + Estimate { value: -e.value, error: e.error };
            s = s0;
        }
    }
    Ok(total)
}

/// Value of the branch normalized at infinity (no cut) at `z`, continued
/// along a straight ray avoiding the zeros.
pub fn seed_from_infinity(p: &QDParams, z: Complex64) -> Result<Complex64> {
    let empty = PathPolyline::new(Vec::new());
    branch::value_off_arc(p, &empty, z, branch::default_r_safe(p))
}

fn check_avoids_poles(path: &PathPolyline, r_safe: f64) -> Result<()> {
    for (u, v) in path.segments() {
        for c in [Complex64::new(-1.0, 0.0), Complex64::new(1.0, 0.0)] {
            let d = point_segment_distance(c, u, v);
            if d < r_safe {
                return Err(Error::NearCriticalPoint { point: c, distance: d });
            }
        }
    }
    Ok(())
}

fn densify(arc: &PathPolyline) -> PathPolyline {
    if arc.len() >= 3 {
        return arc.clone();
    }
    let pts = arc.points();
    PathPolyline::segment(pts[0], pts[pts.len() - 1], 2)
}

/// Straight arc `a → b` when it clears the poles, otherwise a bent
/// two-leg arc through a point off the midpoint.
pub fn reference_arc(p: &QDParams) -> PathPolyline {
    let (a, b) = (p.a(), p.b());
    let clear = 10.0 * branch::default_r_safe(p);
    let straight = PathPolyline::segment(a, b, 16);
    let poles = [Complex64::new(-1.0, 0.0), Complex64::new(1.0, 0.0)];
    let clearance = |arc: &PathPolyline| poles.iter().map(|&c| arc.distance_to(c)).fold(f64::INFINITY, f64::min);
    if clearance(&straight) >= clear {
        return straight;
    }
    let m = 0.5 * (a + b);
    let n = Complex64::new(0.0, 1.0) * (b - a) / (b - a).norm();
    let mut best = straight;
    let mut best_c = 0.0;
    for h in [0.3, -0.3, 0.6, -0.6, 1.0, -1.0] {
        let apex = m + n * (h * (b - a).norm());
        let arc = PathPolyline::segment(a, apex, 8).concat(&PathPolyline::segment(apex, b, 8));
        let c = clearance(&arc);
        if c > best_c {
            best_c = c;
            best = arc;
        }
        if c >= clear {
            break;
        }
    }
    best
}

/// Interior vertex with the most room around it.
fn seed_vertex(p: &QDParams, pts: &[Complex64]) -> usize {
    let sing = singular_points(p);
    (1..pts.len() - 1)
        .max_by(|&i, &j| {
            let room = |k: usize| {
                (pts[k] - pts[k - 1])
                    .norm()
                    .min((pts[k + 1] - pts[k]).norm())
                    .min(dist_to(&sing, pts[k]))
            };
            room(i).total_cmp(&room(j))
        })
        .expect("interior vertex")
}

/// Period of an arc. With `endpoint_singular` the arc must join the zeros and
/// the integrand is the boundary value from the left of the `a → b`
/// direction; otherwise the branch is the one normalized at infinity,
/// continued along the arc from its first point.
pub fn arc_period(p: &QDParams, arc: &PathPolyline, endpoint_singular: bool) -> Result<PeriodReport> {
    arc.require_points(2)?;
    let r_safe = branch::default_r_safe(p);
    check_avoids_poles(arc, r_safe)?;
    if !endpoint_singular {
        let pts = arc.points();
        let s0 = seed_from_infinity(p, pts[0])?;
        let e = integrate_polyline(p, pts, 0, s0, false, false)?;
        return Ok(PeriodReport {
            value: e.value,
            est_error: e.error,
            orientation: 0,
            matched: None,
            winding: (0, 0),
            zero_winding: None,
        });
    }
    let first = arc.first().expect("nonempty");
    let last = arc.last().expect("nonempty");
    let tol_end = 1e-9 * p.scale();
    let gap_ab = (first - p.a()).norm().max((last - p.b()).norm());
    let gap_ba = (first - p.b()).norm().max((last - p.a()).norm());
    let (canonical, orientation) = if gap_ab <= tol_end {
        (arc.with_endpoints(p.a(), p.b()), 1i8)
    } else if gap_ba <= tol_end {
        (arc.reversed().with_endpoints(p.a(), p.b()), -1i8)
    } else {
        return Err(Error::ArcEndpoints {
            gap: gap_ab.min(gap_ba),
        });
    };
    let canonical = densify(&canonical);
    let pts = canonical.points();
    let k = seed_vertex(p, pts);
    let s_k = branch::plus_boundary_value(p, &canonical, k, r_safe)?;
    let e = integrate_polyline(p, pts, k, s_k, true, true)?;
    let value = e.value * f64::from(orientation);

    let signs = predicted_signs(p, &canonical, r_safe)?;
    let matched = match_value(p, value, e.error, orientation, signs);
    let comparison = canonical.concat(&reference_arc(p).reversed());
    let winding = (
        comparison.winding_number(Complex64::new(-1.0, 0.0)),
        comparison.winding_number(Complex64::new(1.0, 0.0)),
    );
    Ok(PeriodReport {
        value,
        est_error: e.error,
        orientation,
        matched,
        winding,
        zero_winding: None,
    })
}

/// Sign pair of the closed form for the `ℂ∖arc` branch, read off from its
/// values at `±1`: `√φ(1) = s₁λ√((1−a)(1−b))`, `−√φ(−1) = s₂λ√((1+a)(1+b))`.
fn predicted_signs(p: &QDParams, arc: &PathPolyline, r_safe: f64) -> Result<SignPair> {
    let (x, y) = crate::qdiff::pole_roots(p);
    let v1 = branch::value_off_arc(p, arc, Complex64::new(1.0, 0.0), r_safe)?;
    let vm1 = branch::value_off_arc(p, arc, Complex64::new(-1.0, 0.0), r_safe)?;
    let s1 = if (v1 / (p.lambda() * x)).re >= 0.0 { 1 } else { -1 };
    let s2 = if (-vm1 / (p.lambda() * y)).re >= 0.0 { 1 } else { -1 };
    Ok(SignPair(s1, s2))
}

fn match_value(
    p: &QDParams,
    value: Complex64,
    est: f64,
    orientation: i8,
    predicted: SignPair,
) -> Option<ClassMatch> {
    let tol = TOL_PERIOD.max(3.0 * est);
    let build = |signs: SignPair, sign: i8| {
        let v = period_value(p, signs) * f64::from(sign);
        let class = jacobi_class(p, signs);
        ClassMatch {
            signs,
            sign,
            predicted: v,
            distance: (value - v).norm(),
            class,
            // −i·(sign·2π·class) = −sign·2πi·class
            jacobi_sign: class.map(|_| -sign),
        }
    };
    let first = build(predicted, orientation);
    if first.distance <= tol {
        return Some(first);
    }
    SignPair::ALL
        .iter()
        .flat_map(|&s| [build(s, 1), build(s, -1)])
        .filter(|m| m.distance <= tol)
        .min_by(|x, y| x.distance.total_cmp(&y.distance))
}

/// Period along a closed polyline, branch normalized at infinity and seeded at
/// the first point.
pub fn loop_period(p: &QDParams, lp: &PathPolyline) -> Result<PeriodReport> {
    lp.require_points(3)?;
    let closed = lp.closed();
    let r_safe = branch::default_r_safe(p);
    for (u, v) in closed.segments() {
        for c in p.critical_points() {
            let d = point_segment_distance(c, u, v);
            if d < r_safe {
                return Err(Error::NearCriticalPoint { point: c, distance: d });
            }
        }
    }
    let pts = closed.points();
    let s0 = seed_from_infinity(p, pts[0])?;
    let e = integrate_polyline(p, pts, 0, s0, false, false)?;
    Ok(PeriodReport {
        value: e.value,
        est_error: e.error,
        orientation: 0,
        matched: None,
        winding: (
            closed.winding_number(Complex64::new(-1.0, 0.0)),
            closed.winding_number(Complex64::new(1.0, 0.0)),
        ),
        zero_winding: Some((closed.winding_number(p.a()), closed.winding_number(p.b()))),
    })
}

/// Arc period with class identification against the closed-form values.
pub fn classify_arc(p: &QDParams, arc: &PathPolyline) -> Result<PeriodReport> {
    arc_period(p, arc, true)
}

/// Accumulated `∫ √φ/(t²−1) dt` along a traced trajectory that starts at a
/// zero (when `from_zero`), for checking the trajectory equation. The overall
/// sign of the branch is arbitrary.
pub fn trajectory_integral(p: &QDParams, path: &PathPolyline, from_zero: bool) -> Result<Estimate> {
    path.require_points(2)?;
    let pts = path.points();
    let k = usize::from(from_zero);
    let s = p.phi(pts[k]).sqrt();
    integrate_polyline(p, pts, k, s, from_zero, false)
}

/// Running values of [`trajectory_integral`] at every vertex of the path.
pub fn trajectory_profile(p: &QDParams, path: &PathPolyline, from_zero: bool) -> Result<Vec<Estimate>> {
    path.require_points(2)?;
    let pts = path.points();
    let k = usize::from(from_zero);
    let mut s = p.phi(pts[k]).sqrt();
    let mut acc = Estimate::ZERO;
    let mut out = vec![Estimate::ZERO; pts.len()];
    if from_zero {
        let (zero, other) = identify_zero(p, pts[0]);
        acc = singular_leg(p, zero, other, pts[1], s)?;
        out[1] = acc;
    }
    for j in k..pts.len() - 1 {
        let (e, s1) = integrate_regular(p, pts[j], pts[j + 1], s)?;
        acc = acc + e;
        s = s1;
        out[j + 1] = acc;
    }
    Ok(out)
}

/// A ϖ-polygon corner: multiplicity (`1` zero, `0` regular, `−2` double pole)
/// and interior angle.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Corner {
    pub n: i32,
    pub theta: f64,
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct QDPolygon {
    pub corners: Vec<Corner>,
    pub interior: Vec<i32>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TeichResult {
    pub lhs: f64,
    pub rhs: f64,
    pub consistent: bool,
}

/// Evaluates `Σ β_j` and `2 + Σ n_i` with `β_j = 1 − θ_j(n_j+2)/(2π)`.
pub fn teich_check(poly: &QDPolygon) -> TeichResult {
    let lhs: f64 = poly
        .corners
        .iter()
        .map(|c| 1.0 - c.theta * f64::from(c.n + 2) / TAU)
        .sum();
    let rhs = 2.0 + poly.interior.iter().map(|&n| f64::from(n)).sum::<f64>();
    TeichResult {
        lhs,
        rhs,
        consistent: (lhs - rhs).abs() < 1e-12,
    }
}

/// `2πi` times the winding-weighted residues of `√φ/(t²−1)` inside a circle
/// that contains either no zero or both zeros. Independent of the quadrature
/// route: residues at `±1` are `±√φ(±1)/2`, the one at infinity is `−σλ`.
pub fn circle_residue_value(p: &QDParams, center: Complex64, radius: f64) -> Result<Complex64> {
    let inside = |z: Complex64| (z - center).norm() < radius;
    let start = center + radius;
    let s_start = seed_from_infinity(p, start)?;
    let two_pi_i = Complex64::new(0.0, TAU);
    match (inside(p.a()), inside(p.b())) {
        (false, false) => {
            // Single-valued inside: continue radially inward, then to each pole.
            let mut st = BranchState { z: start, s: s_start };
            st = branch::continue_segment(p, st, center)?;
            let mut total = Complex64::new(0.0, 0.0);
            for pole in [1.0f64, -1.0] {
                let zp = Complex64::new(pole, 0.0);
                if inside(zp) {
                    let at = branch::continue_segment(p, st, zp)?;
                    total += at.s / (2.0 * pole);
                }
            }
            Ok(two_pi_i * total)
        }
        (true, true) => {
            // Single-valued outside: fix the sign against λz far away, then
            // subtract the residues at the poles left outside.
            let reach = radius + 2.0 * branch::far_radius(p) + center.norm();
            let far = center + reach;
            let st = branch::continue_segment(p, BranchState { z: start, s: s_start }, far)?;
            let sigma = if (st.s / (p.lambda() * far)).re >= 0.0 { 1.0 } else { -1.0 };
            let outer = |z: Complex64| sigma * p.lambda() * z * ((1.0 - p.a() / z) * (1.0 - p.b() / z)).sqrt();
            let mut total = p.lambda() * sigma;
            for pole in [1.0f64, -1.0] {
                let zp = Complex64::new(pole, 0.0);
                if inside(zp) {
                    continue;
                }
                // The ray from the pole away from the center stays outside.
                let away = (zp - center) / (zp - center).norm();
                let z_far = zp + away * (4.0 * reach);
                let at = branch::continue_segment(p, BranchState { z: z_far, s: outer(z_far) }, zp)?;
                total -= at.s / (2.0 * pole);
            }
            Ok(two_pi_i * total)
        }
        _ => Err(Error::NearCriticalPoint {
            point: if inside(p.a()) { p.a() } else { p.b() },
            distance: 0.0,
        }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qdiff::property_p;
    use std::f64::consts::PI;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn straight_arc_matches_closed_form() {
        let p = QDParams::validate(c(1., -1.), c(1., 2.), c(1., 0.5)).unwrap();
        // The straight segment passes through +1, so the reference bends.
        let arc = reference_arc(&p);
        assert!(arc.distance_to(c(1., 0.)) > 0.1);
        let rep = arc_period(&p, &arc, true).unwrap();
        let cands: Vec<_> = SignPair::ALL.iter().map(|&s| period_value(&p, s)).collect();
        let m = rep.matched.clone().unwrap_or_else(|| panic!("{rep:?} {cands:?}"));
        assert!(m.distance < 1e-10, "{rep:?}");
        assert_eq!(m.sign, 1);
        assert_eq!(rep.winding, (0, 0));
        let rev = arc_period(&p, &arc.reversed(), true).unwrap();
        assert!((rev.value + rep.value).norm() < 1e-11);
    }

    #[test]
    fn real_segment_value() {
        // (2,3), λ = 1: ∫₂³ i√((t−2)(3−t))/(t²−1) dt from the left side; the
        // closed form with the branch signs at ±1 both positive gives
        // iπ/2(√2 − √12 − 2)·… computed independently below.
        let p = QDParams::validate(c(2., 0.), c(3., 0.), c(1., 0.)).unwrap();
        let arc = PathPolyline::segment(p.a(), p.b(), 4);
        let rep = arc_period(&p, &arc, true).unwrap();
        // Oracle: midpoint rule in the variable t = 2.5 + 0.5 sin θ.
        let n = 200_000;
        let mut acc = 0.0;
        for j in 0..n {
            let th = -PI / 2.0 + PI * (j as f64 + 0.5) / n as f64;
            let t = 2.5 + 0.5 * th.sin();
            let root = ((t - 2.0) * (3.0 - t)).sqrt();
            acc += root / (t * t - 1.0) * 0.5 * th.cos() * PI / n as f64;
        }
        assert!((rep.value - c(0., acc)).norm() < 1e-9, "{} vs {}", rep.value, acc);
    }

    #[test]
    fn detour_arc_changes_class_by_loop_period() {
        let p = QDParams::validate(c(0.3, 0.8), c(0.2, -0.9), c(1.3, 0.4)).unwrap();
        let base = reference_arc(&p);
        let r0 = classify_arc(&p, &base).unwrap();
        assert_eq!(r0.winding, (0, 0));
        // Arc from a that swings around +1 before reaching b.
        let mut pts = vec![p.a()];
        pts.extend(PathPolyline::segment(p.a(), c(1.0, 1.0), 8).points()[1..].iter());
        pts.extend(PathPolyline::segment(c(1.0, 1.0), c(2.0, 0.0), 8).points()[1..].iter());
        pts.extend(PathPolyline::segment(c(2.0, 0.0), c(1.0, -1.0), 8).points()[1..].iter());
        pts.extend(PathPolyline::segment(c(1.0, -1.0), p.b(), 8).points()[1..].iter());
        let detour = PathPolyline::new(pts);
        let r1 = classify_arc(&p, &detour).unwrap();
        assert!(r1.matched.is_some());
        assert_eq!(r1.winding.1.abs(), 1);
        let loop_around = PathPolyline::circle(c(1., 0.), 0.5, 256);
        let lp = loop_period(&p, &loop_around).unwrap();
        let d = r1.value - r0.value;
        assert!((d - lp.value).norm() < 1e-9 || (d + lp.value).norm() < 1e-9);
    }

    #[test]
    fn loop_residues() {
        let p = QDParams::validate(c(2., 0.), c(3., 0.), c(1., 0.)).unwrap();
        for r in [0.3, 0.5] {
            let lp = loop_period(&p, &PathPolyline::circle(c(1., 0.), r, 300)).unwrap();
            let expect = Complex64::new(0.0, PI) * 2f64.sqrt();
            assert!((lp.value.norm() - expect.norm()).abs() < 1e-10);
            assert!((lp.value - circle_residue_value(&p, c(1., 0.), r).unwrap()).norm() < 1e-10);
        }
        let lp = loop_period(&p, &PathPolyline::circle(c(-3., 3.), 0.5, 100)).unwrap();
        assert!(lp.value.norm() < 1e-12);
        let big = loop_period(&p, &PathPolyline::circle(c(0., 0.), 10.0, 2000)).unwrap();
        assert!((big.value - Complex64::new(0.0, TAU)).norm() < 1e-9, "{}", big.value);
    }

    #[test]
    fn short_of_real_case_is_class_one() {
        let p = QDParams::from_jacobi(c(2., 0.), c(3., 0.)).unwrap();
        let rep = classify_arc(&p, &PathPolyline::segment(p.a(), p.b(), 6)).unwrap();
        let m = rep.matched.unwrap();
        assert_eq!(m.class, Some(JacobiClass::One));
        assert!((rep.value - c(TAU, 0.)).norm() < 1e-9);
        assert!(property_p(&p).satisfied);
    }

    #[test]
    fn teichmuller_examples() {
        let two = QDPolygon {
            corners: vec![Corner { n: 1, theta: TAU / 3.0 }; 2],
            interior: vec![],
        };
        let r = teich_check(&two);
        assert!(r.lhs.abs() < 1e-15 && r.rhs == 2.0 && !r.consistent);
        let one = QDPolygon {
            corners: vec![Corner { n: 1, theta: TAU / 3.0 }],
            interior: vec![-2],
        };
        assert!(teich_check(&one).consistent);
        let none = QDPolygon {
            corners: vec![],
            interior: vec![-2],
        };
        let r = teich_check(&none);
        assert!(r.consistent && r.lhs == 0.0 && r.rhs == 0.0);
    }
}
