//! Horizontal trajectories of `Q(z) dz²`, `Q = φ/(z²−1)²`.
//!
//! A trajectory is a level curve of `Im F`, `F(z) = ∫ √φ(t)/(t²−1) dt`. It is
//! integrated as the unit-speed ODE `dz/ds = σ·conj(g)/|g|`, `g = √φ/(z²−1)`,
//! with an embedded Runge–Kutta–Fehlberg 4(5) pair; after every step the point
//! is pulled back onto the level set by Newton steps on `Im F`, so the
//! defining equation holds to quadrature accuracy regardless of the step
//! error. The sign of `√φ` is carried by continuation and `σ` is fixed at
//! launch.

use std::f64::consts::TAU;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::branch::nearest_root;
use crate::error::{Error, Result};
use crate::geom::PathPolyline;
use crate::qdiff::{classify_poles, residues, PoleType, QDParams};
use crate::quad;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum ZeroId {
    A,
    B,
}

impl ZeroId {
    pub fn point(self, p: &QDParams) -> Complex64 {
        match self {
            ZeroId::A => p.a(),
            ZeroId::B => p.b(),
        }
    }

    pub fn other(self) -> ZeroId {
        match self {
            ZeroId::A => ZeroId::B,
            ZeroId::B => ZeroId::A,
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            ZeroId::A => "a",
            ZeroId::B => "b",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Fate {
    ToPoleMinus1,
    ToPolePlus1,
    ToInfinity,
    ToOtherZero,
    /// Returned to the zero it was launched from.
    ToSameZero,
    ClosedLoop,
    Truncated,
}

impl Fate {
    pub fn is_infinite(self) -> bool {
        matches!(self, Fate::ToPoleMinus1 | Fate::ToPolePlus1 | Fate::ToInfinity)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Origin {
    pub zero: ZeroId,
    pub angle_index: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrajectoryRecord {
    /// Launch zero and angle index; `None` for traces from regular points.
    pub origin: Option<Origin>,
    pub polyline: PathPolyline,
    pub fate: Fate,
    /// Distance to the terminal object (pole circle, zero, start point).
    pub terminal_gap: f64,
    pub arclength: f64,
    /// Sum of the local error estimates of accepted steps.
    pub est_error: f64,
    pub steps: usize,
    /// Largest `|Im F − target|` left after the level-set correction.
    pub level_drift: f64,
    /// Smallest distance to the other zero seen on a near miss.
    pub closest_miss: Option<f64>,
}

/// Step control, termination radii and limits. All lengths are absolute.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct StepLimits {
    pub max_steps: usize,
    pub max_arclength: f64,
    /// Local error tolerance per step.
    pub tol: f64,
    /// Smallest admissible step.
    pub h_min: f64,
    /// Step ceiling as a fraction of the distance to the nearest critical point.
    pub ceiling: f64,
    pub launch_offset: f64,
    pub r_pole: f64,
    pub delta_short: f64,
    /// Distance to a zero that counts as arrival.
    pub gap_target: f64,
    pub r_inf: f64,
    pub delta_loop: f64,
}

impl StepLimits {
    pub fn for_params(p: &QDParams) -> Self {
        let scale = p.scale();
        let gap = (p.a() - p.b()).norm();
        Self {
            max_steps: 1_000_000,
            max_arclength: 1e3 * scale,
            tol: 1e-10 * scale,
            h_min: 1e-15 * scale,
            ceiling: 0.1,
            launch_offset: 1e-6 * scale,
            r_pole: 1e-3 * scale,
            delta_short: (1e-2 * scale).min(0.25 * gap),
            gap_target: 1e-7 * scale,
            r_inf: 50.0 * scale,
            delta_loop: 1e-4 * scale,
        }
    }

    /// Tighter tolerances for re-tracing.
    pub fn refined(&self, factor: f64) -> Self {
        Self {
            tol: self.tol * factor,
            ceiling: self.ceiling * factor.sqrt().max(0.25),
            ..*self
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LaunchSpec {
    pub zero: Complex64,
    /// `θ_k = (2πk − arg Q′(zero))/3`.
    pub directions: [f64; 3],
}

pub fn launch_directions(p: &QDParams, zero: Complex64) -> Result<LaunchSpec> {
    let qp = p.q_prime(zero);
    if qp.norm() <= 1e-12 * p.lambda().norm_sqr() {
        return Err(Error::NonSimpleZero(zero));
    }
    let base = qp.arg();
    let mut directions = [0.0; 3];
    for (k, d) in directions.iter_mut().enumerate() {
        *d = (TAU * k as f64 - base) / 3.0;
    }
    Ok(LaunchSpec { zero, directions })
}

const I: Complex64 = Complex64::new(0.0, 1.0);

/// Oriented field along a trajectory.
struct Field<'a> {
    p: &'a QDParams,
    sigma: f64,
}

impl Field<'_> {
    fn g(&self, z: Complex64, s_ref: Complex64) -> (Complex64, Complex64) {
        let s = nearest_root(self.p.phi(z), s_ref);
        (s / (z * z - 1.0), s)
    }

    fn u(&self, z: Complex64, s_ref: Complex64) -> Complex64 {
        let (g, _) = self.g(z, s_ref);
        g.conj() / g.norm() * self.sigma
    }

    /// One RKF45 step; returns the fifth-order point and the error estimate.
    fn rkf45(&self, z: Complex64, s: Complex64, h: f64) -> (Complex64, f64) {
        let k1 = self.u(z, s);
        let k2 = self.u(z + k1 * (h / 4.0), s);
        let k3 = self.u(z + (k1 * 3.0 + k2 * 9.0) * (h / 32.0), s);
        let k4 = self.u(
            z + (k1 * 1932.0 - k2 * 7200.0 + k3 * 7296.0) * (h / 2197.0),
            s,
        );
        let k5 = self.u(
            z + (k1 * (439.0 / 216.0) - k2 * 8.0 + k3 * (3680.0 / 513.0) - k4 * (845.0 / 4104.0)) * h,
            s,
        );
        let k6 = self.u(
            z + (k1 * (-8.0 / 27.0) + k2 * 2.0 - k3 * (3544.0 / 2565.0) + k4 * (1859.0 / 4104.0)
                - k5 * (11.0 / 40.0))
                * h,
            s,
        );
        let z5 = z + (k1 * (16.0 / 135.0) + k3 * (6656.0 / 12825.0) + k4 * (28561.0 / 56430.0)
            - k5 * (9.0 / 50.0)
            + k6 * (2.0 / 55.0))
            * h;
        let z4 = z + (k1 * (25.0 / 216.0) + k3 * (1408.0 / 2565.0) + k4 * (2197.0 / 4104.0) - k5 * 0.2) * h;
        (z5, (z5 - z4).norm())
    }

    /// `∫_{z0}^{z1} g dt` along the chord, and `√φ(z1)`.
    fn chord(&self, z0: Complex64, z1: Complex64, s0: Complex64) -> (Complex64, Complex64) {
        let d = z1 - z0;
        let mut f = |t: f64| self.g(z0 + d * t, s0).0 * d;
        let v = quad::gauss(&mut f, 0.0, 1.0);
        (v, nearest_root(self.p.phi(z1), s0))
    }

    /// Moves `z1` onto `Im F = target`, where `Im F(z0) = f0`.
    fn project(
        &self,
        z0: Complex64,
        s0: Complex64,
        f0: f64,
        target: f64,
        mut z1: Complex64,
    ) -> (Complex64, Complex64, f64) {
        let (mut val, mut s1) = self.chord(z0, z1, s0);
        let mut resid = f0 + val.im - target;
        for _ in 0..4 {
            let (g, _) = self.g(z1, s1);
            if resid.abs() <= 1e-15 * (1.0 + f0.abs()) || g.norm() == 0.0 {
                break;
            }
            z1 -= I * resid / g;
            let (v, s) = self.chord(z0, z1, s0);
            val = v;
            s1 = s;
            resid = f0 + val.im - target;
        }
        (z1, s1, resid)
    }
}

/// `∫_{zero}^{z} g dt` along the straight segment from a zero, `√φ(z) = s`.
fn launch_integral(p: &QDParams, zero: Complex64, other: Complex64, z: Complex64, s: Complex64) -> Complex64 {
    let d = z - zero;
    let l2 = p.lambda() * p.lambda();
    let mut f = |u: f64| {
        let t = zero + d * (u * u);
        let psi = nearest_root(l2 * d * (t - other), s);
        psi * u * 2.0 * d * u / (t * t - 1.0)
    };
    quad::gauss(&mut f, 0.0, 1.0)
}

struct Targets {
    other: Option<(ZeroId, Complex64)>,
    own: Option<(ZeroId, Complex64)>,
    poles: [(Complex64, bool); 2],
    loop_start: Option<(Complex64, Complex64)>,
}

/// Per-target approach bookkeeping.
#[derive(Default, Clone, Copy)]
struct Approach {
    inside: bool,
    min: f64,
    armed: bool,
}

struct Tracer<'a> {
    field: Field<'a>,
    limits: StepLimits,
    critical: [Complex64; 4],
}

enum Event {
    None,
    Stop(Fate, f64, Complex64),
}

impl<'a> Tracer<'a> {
    fn new(p: &'a QDParams, sigma: f64, limits: StepLimits) -> Self {
        Self {
            field: Field { p, sigma },
            limits,
            critical: p.critical_points(),
        }
    }

    fn dist_critical(&self, z: Complex64) -> f64 {
        self.critical
            .iter()
            .map(|&c| (z - c).norm())
            .fold(f64::INFINITY, f64::min)
    }

    /// Trial step of length `h` from `(z, s)`, projected on the level set.
    fn step(&self, z: Complex64, s: Complex64, f: f64, target: f64, h: f64) -> (Complex64, Complex64, f64, f64) {
        let (z_rk, err) = self.field.rkf45(z, s, h);
        let (z1, s1, resid) = self.field.project(z, s, f, target, z_rk);
        (z1, s1, resid, err)
    }

    /// Sub-step length in `(0, h]` at which `dist(h') = 0`, by bisection on
    /// a function positive at `0` and non-positive at `h`.
    fn locate<D: Fn(Complex64) -> f64>(
        &self,
        z: Complex64,
        s: Complex64,
        f: f64,
        target: f64,
        h: f64,
        dist: D,
    ) -> (Complex64, f64) {
        let (mut lo, mut hi) = (0.0, h);
        let mut best = self.step(z, s, f, target, h);
        for _ in 0..60 {
            let mid = 0.5 * (lo + hi);
            let cand = self.step(z, s, f, target, mid);
            if dist(cand.0) > 0.0 {
                lo = mid;
            } else {
                hi = mid;
                best = cand;
            }
            if hi - lo <= 1e-15 * h.max(1e-300) {
                break;
            }
        }
        (best.0, best.2)
    }

    fn run(
        &self,
        origin: Option<Origin>,
        start_points: Vec<Complex64>,
        s_start: Complex64,
        f_start: f64,
        targets: Targets,
    ) -> Result<TrajectoryRecord> {
        let lim = &self.limits;
        let mut pts = start_points;
        let mut z = *pts.last().expect("start point");
        let mut s = s_start;
        let mut f = f_start;
        let target = 0.0;
        let mut arclength = if pts.len() > 1 { (pts[1] - pts[0]).norm() } else { 0.0 };
        let mut est_error = 0.0;
        let mut drift = f_start.abs();
        let mut steps = 0usize;
        let mut h = (lim.ceiling * self.dist_critical(z)).max(lim.h_min * 10.0);
        let mut other_state = Approach::default();
        let mut own_state = Approach::default();
        let mut loop_armed = false;
        let mut closest_miss: Option<f64> = None;

        let finish = |pts: Vec<Complex64>, fate, gap, arclength, est_error, steps, drift, closest_miss| {
            TrajectoryRecord {
                origin,
                polyline: PathPolyline::new(pts),
                fate,
                terminal_gap: gap,
                arclength,
                est_error,
                steps,
                level_drift: drift,
                closest_miss,
            }
        };

        loop {
            if steps >= lim.max_steps || arclength >= lim.max_arclength {
                let gap = targets
                    .other
                    .map(|(_, c)| (z - c).norm())
                    .unwrap_or(f64::INFINITY);
                return Ok(finish(pts, Fate::Truncated, gap, arclength, est_error, steps, drift, closest_miss));
            }
            let ceiling = lim.ceiling * self.dist_critical(z).min(z.norm().max(1.0));
            h = h.min(ceiling);
            if h < lim.h_min {
                return Err(Error::StepUnderflow { z, h });
            }
            let (z1, s1, resid, err) = self.step(z, s, f, target, h);
            steps += 1;
            if !(err <= lim.tol) || !z1.is_finite() {
                let fac = if err.is_finite() && err > 0.0 {
                    (0.9 * (lim.tol / err).powf(0.2)).clamp(0.1, 0.9)
                } else {
                    0.1
                };
                h *= fac;
                continue;
            }

            // Events on the accepted step z → z1.
            let mut event = Event::None;
            for &(pole, active) in &targets.poles {
                if active && (z1 - pole).norm() < lim.r_pole {
                    let (zp, r) = self.locate(z, s, f, target, h, |w| (w - pole).norm() - lim.r_pole);
                    let fate = if pole.re < 0.0 { Fate::ToPoleMinus1 } else { Fate::ToPolePlus1 };
                    drift = drift.max(r.abs());
                    event = Event::Stop(fate, ((zp - pole).norm() - lim.r_pole).abs(), zp);
                }
            }
            if matches!(event, Event::None) && z1.norm() > lim.r_inf {
                let (zp, r) = self.locate(z, s, f, target, h, |w| lim.r_inf - w.norm());
                let outward = (self.field.u(zp, s1) * zp.conj()).re > 0.0;
                drift = drift.max(r.abs());
                if outward {
                    event = Event::Stop(Fate::ToInfinity, (zp.norm() - lim.r_inf).abs(), zp);
                }
            }
            if matches!(event, Event::None) {
                for (which, state) in [(targets.other, &mut other_state), (targets.own, &mut own_state)] {
                    let Some((id, c)) = which else { continue };
                    let d = (z1 - c).norm();
                    let is_own = origin.map(|o| o.zero == id).unwrap_or(false);
                    if is_own && !state.armed {
                        if d > 2.0 * lim.delta_short {
                            state.armed = true;
                        }
                        continue;
                    }
                    if d < lim.delta_short {
                        if !state.inside {
                            state.inside = true;
                            state.min = d;
                        }
                        state.min = state.min.min(d);
                        if d <= lim.gap_target {
                            let fate = if is_own { Fate::ToSameZero } else { Fate::ToOtherZero };
                            event = Event::Stop(fate, d, z1);
                            break;
                        }
                    }
                    if state.inside && (d > 2.0 * state.min || d >= lim.delta_short) {
                        state.inside = false;
                        if !is_own {
                            closest_miss = Some(closest_miss.map_or(state.min, |m: f64| m.min(state.min)));
                        }
                    }
                }
            }
            if matches!(event, Event::None) {
                if let Some((start, dir)) = targets.loop_start {
                    if !loop_armed && (z1 - start).norm() > 4.0 * lim.delta_loop {
                        loop_armed = true;
                    } else if loop_armed {
                        // Crossing of the line through the start point normal
                        // to the initial direction, located on the trajectory.
                        let ahead = |w: Complex64| -((w - start) * dir.conj()).re;
                        if ahead(z) > 0.0 && ahead(z1) <= 0.0 && (z - start).norm() < 2.0 * h + lim.delta_loop {
                            let (zp, _) = self.locate(z, s, f, target, h, ahead);
                            let d = (zp - start).norm();
                            let align = (self.field.u(zp, s1) * dir.conj()).re;
                            if d < lim.delta_loop && align > 0.999 {
                                event = Event::Stop(Fate::ClosedLoop, d, zp);
                            }
                        }
                    }
                }
            }

            match event {
                Event::Stop(fate, gap, zp) => {
                    est_error += err;
                    arclength += (zp - z).norm();
                    pts.push(zp);
                    if fate == Fate::ClosedLoop {
                        let start = pts[0];
                        arclength += (start - zp).norm();
                        pts.push(start);
                    }
                    return Ok(finish(pts, fate, gap, arclength, est_error, steps, drift, closest_miss));
                }
                Event::None => {
                    arclength += (z1 - z).norm();
                    est_error += err;
                    drift = drift.max(resid.abs());
                    f = target + resid;
                    z = z1;
                    s = s1;
                    pts.push(z);
                    let grow = if err > 0.0 {
                        (0.9 * (lim.tol / err).powf(0.2)).clamp(1.0, 5.0)
                    } else {
                        5.0
                    };
                    h *= grow;
                }
            }
        }
    }
}

fn pole_targets(p: &QDParams) -> Result<[(Complex64, bool); 2]> {
    let types = classify_poles(&residues(p))?;
    Ok([
        (Complex64::new(-1.0, 0.0), types.minus1 != PoleType::Circle),
        (Complex64::new(1.0, 0.0), types.plus1 != PoleType::Circle),
    ])
}

/// Traces the critical trajectory leaving `zero` at angle index `k`.
pub fn trace_critical(p: &QDParams, zero: ZeroId, k: usize, limits: &StepLimits) -> Result<TrajectoryRecord> {
    let z0 = zero.point(p);
    let other = zero.other().point(p);
    let spec = launch_directions(p, z0)?;
    let dir = Complex64::from_polar(1.0, spec.directions[k % 3]);
    let start = z0 + dir * limits.launch_offset;
    let s = p.phi(start).sqrt();
    let probe = Field { p, sigma: 1.0 };
    let sigma = if (probe.u(start, s) * dir.conj()).re >= 0.0 { 1.0 } else { -1.0 };
    let f0 = launch_integral(p, z0, other, start, s).im;
    let tracer = Tracer::new(p, sigma, *limits);
    let targets = Targets {
        other: Some((zero.other(), other)),
        own: Some((zero, z0)),
        poles: pole_targets(p)?,
        loop_start: None,
    };
    tracer.run(
        Some(Origin { zero, angle_index: k % 3 }),
        vec![z0, start],
        s,
        f0,
        targets,
    )
}

/// Traces the trajectory through a regular point in the direction closest to
/// `dir`. Stops at poles, infinity, near either zero, or on closing up.
pub fn trace(p: &QDParams, start: Complex64, dir: Complex64, limits: &StepLimits) -> Result<TrajectoryRecord> {
    let s = p.phi(start).sqrt();
    if s.norm() == 0.0 || (start * start - 1.0).norm() == 0.0 {
        return Err(Error::NearCriticalPoint { point: start, distance: 0.0 });
    }
    let probe = Field { p, sigma: 1.0 };
    let u = probe.u(start, s);
    let sigma = if (u * dir.conj()).re >= 0.0 { 1.0 } else { -1.0 };
    let tracer = Tracer::new(p, sigma, *limits);
    let targets = Targets {
        other: Some((ZeroId::A, p.a())),
        own: Some((ZeroId::B, p.b())),
        poles: pole_targets(p)?,
        loop_start: Some((start, u * sigma)),
    };
    tracer.run(None, vec![start], s, 0.0, targets)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::periods::trajectory_integral;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn launch_angles_real_case() {
        let p = QDParams::from_jacobi(c(2., 0.), c(3., 0.)).unwrap();
        let spec = launch_directions(&p, p.a()).unwrap();
        assert!(spec
            .directions
            .iter()
            .any(|&t| (Complex64::from_polar(1.0, t) - c(-1., 0.)).norm() < 1e-12));
        for k in 0..2 {
            assert!((spec.directions[k + 1] - spec.directions[k] - TAU / 3.0).abs() < 1e-14);
        }
        // Oracle: Q > 0 on (ζ₋, ζ₊).
        for j in 1..20 {
            let t = p.b().re + (p.a().re - p.b().re) * j as f64 / 20.0;
            let q = p.q(c(t, 0.));
            assert!(q.re > 0.0 && q.im.abs() < 1e-12 * q.re);
        }
        // First-order positivity along each direction.
        for &t in &spec.directions {
            let e = Complex64::from_polar(1.0, t);
            let v = p.q(p.a() + e * 1e-7) * e * e;
            assert!(v.re > 0.0 && v.im.abs() < 1e-5 * v.re);
        }
    }

    #[test]
    fn conjugate_angles_negate() {
        let p = QDParams::validate(c(0.3, 0.7), c(-0.4, -1.1), c(1.2, 0.5)).unwrap();
        let q = p.conj();
        let d1 = launch_directions(&p, p.a()).unwrap().directions;
        let d2 = launch_directions(&q, q.a()).unwrap().directions;
        for t in d1 {
            let target = Complex64::from_polar(1.0, -t);
            assert!(d2.iter().any(|&u| (Complex64::from_polar(1.0, u) - target).norm() < 1e-12));
        }
    }

    #[test]
    fn real_short_segment() {
        let p = QDParams::from_jacobi(c(2., 0.), c(3., 0.)).unwrap();
        let lim = StepLimits::for_params(&p);
        let spec = launch_directions(&p, p.a()).unwrap();
        let k = spec
            .directions
            .iter()
            .position(|&t| Complex64::from_polar(1.0, t).re < -0.99)
            .unwrap();
        let rec = trace_critical(&p, ZeroId::A, k, &lim).unwrap();
        assert_eq!(rec.fate, Fate::ToOtherZero);
        assert!(rec.terminal_gap <= lim.gap_target);
        let max_im = rec.polyline.points().iter().map(|z| z.im.abs()).fold(0.0, f64::max);
        assert!(max_im < 1e-8, "{max_im}");
        let e = trajectory_integral(&p, &rec.polyline, true).unwrap();
        assert!(e.value.im.abs() < 1e-7 * p.scale() * (1.0 + rec.arclength));
    }

    #[test]
    fn circle_pole_gives_closed_loop() {
        // res at −1 is −9/… < 0 for the real Jacobi case.
        let p = QDParams::from_jacobi(c(2., 0.), c(3., 0.)).unwrap();
        let lim = StepLimits::for_params(&p);
        let rec = trace(&p, c(-1.1, 0.0), c(0., 1.), &lim).unwrap();
        assert_eq!(rec.fate, Fate::ClosedLoop);
        assert_eq!(rec.polyline.winding_number(c(-1., 0.)).abs(), 1);
        let e = trajectory_integral(&p, &rec.polyline, false).unwrap();
        assert!(e.value.im.abs() < 1e-9, "{}", e.value);
    }
}
