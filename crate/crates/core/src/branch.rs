//! Branch bookkeeping for `√φ(z)`, `φ(z) = λ²(z−a)(z−b)`.
//!
//! Values are obtained by analytic continuation: pick the root nearest the
//! previous value while stepping in increments small relative to the distance
//! to the zeros. The normalization near infinity is `√φ(z) ~ λz`. On the
//! complement of an arc joining `a` and `b` the branch is single valued, and a
//! value there is the continuation from a far point times `(−1)` per crossing
//! of the arc.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::geom::{point_segment_distance, PathPolyline};
use crate::qdiff::QDParams;

/// Continuation step as a fraction of the distance to the nearest zero.
const STEP_FRACTION: f64 = 0.2;
const MAX_SUBSTEPS: usize = 10_000_000;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BranchState {
    pub z: Complex64,
    pub s: Complex64,
}

/// Minimum `|z|` where the normalization at infinity is unambiguous.
pub fn far_radius(p: &QDParams) -> f64 {
    4.0 * p.a().norm().max(p.b().norm()).max(1.0)
}

/// Default clearance from critical points required along continuation paths.
pub fn default_r_safe(p: &QDParams) -> f64 {
    1e-3 * p.scale()
}

pub fn nearest_root(phi: Complex64, reference: Complex64) -> Complex64 {
    let s = phi.sqrt();
    if (s * reference.conj()).re < 0.0 {
        -s
    } else {
        s
    }
}

/// The root of `φ(z)` asymptotic to `λz`.
pub fn root_at_infinity(p: &QDParams, z: Complex64) -> Result<BranchState> {
    let r = far_radius(p);
    if z.norm() < r {
        return Err(Error::NotFarEnough { z, min_radius: r });
    }
    let s = nearest_root(p.phi(z), p.lambda() * z);
    Ok(BranchState { z, s })
}

fn zero_distance(p: &QDParams, z: Complex64) -> f64 {
    (z - p.a()).norm().min((z - p.b()).norm())
}

/// Continues `state` along the straight segment to `to`, subdividing so each
/// substep stays well inside the disc free of zeros.
pub fn continue_segment(p: &QDParams, state: BranchState, to: Complex64) -> Result<BranchState> {
    let mut z = state.z;
    let mut s = state.s;
    let total = (to - z).norm();
    if total == 0.0 {
        return Ok(state);
    }
    let dir = (to - z) / total;
    let mut done = 0.0;
    for _ in 0..MAX_SUBSTEPS {
        let d = zero_distance(p, z);
        if d == 0.0 {
            return Err(Error::NearCriticalPoint { point: z, distance: 0.0 });
        }
        let h = (STEP_FRACTION * d).min(total - done);
        done += h;
        z = if done >= total { to } else { state.z + dir * done };
        s = nearest_root(p.phi(z), s);
        if done >= total {
            return Ok(BranchState { z, s });
        }
    }
    Err(Error::NearCriticalPoint {
        point: z,
        distance: zero_distance(p, z),
    })
}

fn check_clearance(p: &QDParams, path: &PathPolyline, r_safe: f64) -> Result<()> {
    for (u, v) in path.segments() {
        for c in p.critical_points() {
            let d = point_segment_distance(c, u, v);
            if d < r_safe {
                return Err(Error::NearCriticalPoint { point: c, distance: d });
            }
        }
    }
    Ok(())
}

/// Continuation along a polyline whose first point is `start.z`; every
/// segment must keep distance `r_safe` from `a`, `b` and `±1`.
pub fn continue_along(
    p: &QDParams,
    start: BranchState,
    path: &PathPolyline,
    r_safe: f64,
) -> Result<BranchState> {
    Ok(*continue_samples(p, start, path, r_safe)?
        .last()
        .expect("nonempty samples"))
}

/// Like [`continue_along`] but returns the state at every vertex.
pub fn continue_samples(
    p: &QDParams,
    start: BranchState,
    path: &PathPolyline,
    r_safe: f64,
) -> Result<Vec<BranchState>> {
    path.require_points(1)?;
    let first = path.first().expect("nonempty path");
    if (first - start.z).norm() > 1e-12 * (1.0 + first.norm()) {
        return Err(Error::ArcEndpoints {
            gap: (first - start.z).norm(),
        });
    }
    check_clearance(p, path, r_safe)?;
    let mut out = Vec::with_capacity(path.len());
    let mut st = BranchState { z: first, s: start.s };
    out.push(st);
    for &z in &path.points()[1..] {
        st = continue_segment(p, st, z)?;
        out.push(st);
    }
    Ok(out)
}

/// Value at `q` of the branch on `ℂ∖arc` normalized at infinity.
pub fn value_off_arc(p: &QDParams, arc: &PathPolyline, q: Complex64, r_safe: f64) -> Result<Complex64> {
    let clearance = r_safe.min(0.5 * zero_distance(p, q));
    let radius = 2.0 * far_radius(p) + q.norm();
    let base = if q.norm() > 0.0 { q.arg() } else { 0.0 };
    for k in 0..64 {
        // Alternate around the outward radial direction.
        let step = ((k + 1) / 2) as f64 * 0.173;
        let theta = if k % 2 == 0 { base + step } else { base - step };
        let far = q + Complex64::from_polar(radius, theta);
        if [p.a(), p.b()]
            .iter()
            .any(|&c| point_segment_distance(c, far, q) < clearance)
        {
            continue;
        }
        let Some(n) = arc.crossings_with_segment(far, q) else {
            continue;
        };
        let st = continue_segment(p, root_at_infinity(p, far)?, q)?;
        return Ok(if n % 2 == 0 { st.s } else { -st.s });
    }
    Err(Error::NoClearPath)
}

fn unit_normal(arc: &PathPolyline, k: usize) -> Complex64 {
    let pts = arc.points();
    let t = pts[k + 1] - pts[k - 1];
    Complex64::new(0.0, 1.0) * t / t.norm()
}

/// Boundary value of the `ℂ∖arc` branch at interior vertex `k`, taken from
/// the left side of the arc's orientation.
pub fn plus_boundary_value(p: &QDParams, arc: &PathPolyline, k: usize, r_safe: f64) -> Result<Complex64> {
    let pts = arc.points();
    if k == 0 || k + 1 >= pts.len() {
        return Err(Error::PathTooShort {
            needed: k + 2,
            got: pts.len(),
        });
    }
    let z = pts[k];
    let local = (z - pts[k - 1])
        .norm()
        .min((pts[k + 1] - z).norm())
        .min(zero_distance(p, z));
    let q = z + unit_normal(arc, k) * (0.1 * local);
    let s = value_off_arc(p, arc, q, r_safe)?;
    Ok(continue_segment(p, BranchState { z: q, s }, z)?.s)
}

/// Branch values on the parallels at distance `offset` to the left (`+`) and
/// right (`−`) of the arc, at every interior vertex.
pub fn side_values(
    p: &QDParams,
    arc: &PathPolyline,
    offset: f64,
) -> Result<(Vec<BranchState>, Vec<BranchState>)> {
    arc.require_points(3)?;
    let r_safe = default_r_safe(p).min(0.5 * offset);
    let n = arc.len();
    let side = |sign: f64| -> Result<Vec<BranchState>> {
        let pts: Vec<Complex64> = (1..n - 1)
            .map(|k| arc.points()[k] + unit_normal(arc, k) * (sign * offset))
            .collect();
        let parallel = PathPolyline::new(pts);
        for (u, v) in parallel.segments().chain(std::iter::once((
            parallel.points()[0],
            parallel.points()[0],
        ))) {
            for c in p.critical_points() {
                if point_segment_distance(c, u, v) < 0.5 * offset {
                    return Err(Error::OffsetTooLarge { offset, point: c });
                }
            }
        }
        let first = parallel.points()[0];
        let s0 = value_off_arc(p, arc, first, r_safe)?;
        let mut st = BranchState { z: first, s: s0 };
        let mut out = vec![st];
        for &z in &parallel.points()[1..] {
            st = continue_segment(p, st, z)?;
            out.push(st);
        }
        Ok(out)
    };
    Ok((side(1.0)?, side(-1.0)?))
}
