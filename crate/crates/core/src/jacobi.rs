//! Jacobi polynomials `P_n^{(α,β)}` with complex parameters: monomial
//! coefficients in double-double arithmetic, roots by Aberth iteration, the
//! Cauchy transform of the root-counting measure and its comparison with the
//! short trajectories of the critical graph.

use std::f64::consts::PI;

use num_complex::{Complex, Complex64};
use serde::{Deserialize, Serialize};
use twofloat::TwoFloat;

use crate::error::{Error, Result};
use crate::graph::CriticalGraph;
use crate::qdiff::JacobiClass;

type Cdd = Complex<TwoFloat>;

/// Unit roundoff of the double-double coefficient arithmetic.
pub const WORKING_EPS: f64 = 4.93e-32;
/// Relative size below which the leading coefficient counts as vanished.
pub const DEGREE_DROP_TOL: f64 = 1e-13;
pub const MAX_ITERATIONS: usize = 500;
pub const POLISH_STEPS: usize = 3;
pub const TOL_POLY: f64 = 1e-8;
/// Largest accepted rounding-induced root uncertainty.
pub const MAX_UNCERTAINTY: f64 = 1e-9;

fn dd(z: Complex64) -> Cdd {
    Complex::new(TwoFloat::from(z.re), TwoFloat::from(z.im))
}

fn hi(z: &Cdd) -> Complex64 {
    Complex64::new(z.re.hi(), z.im.hi())
}

fn lo(z: &Cdd) -> Complex64 {
    Complex64::new(z.re.lo(), z.im.lo())
}

fn join(h: Complex64, l: Complex64) -> Cdd {
    Complex::new(TwoFloat::new_add(h.re, l.re), TwoFloat::new_add(h.im, l.im))
}

/// Generalized binomial `γ(γ−1)…(γ−k+1)/k!`.
fn binom_dd(gamma: Complex64, k: usize) -> Cdd {
    let g = dd(gamma);
    let mut acc = Complex::new(TwoFloat::from(1.0), TwoFloat::from(0.0));
    for i in 0..k {
        let num = g - Complex::new(TwoFloat::from(i as f64), TwoFloat::from(0.0));
        let k = (i + 1) as f64;
        let prod = acc * num;
        acc = Complex::new(prod.re / k, prod.im / k);
    }
    acc
}

pub fn binom(gamma: Complex64, k: usize) -> Complex64 {
    hi(&binom_dd(gamma, k))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PolySpec {
    pub n: usize,
    pub alpha: Complex64,
    pub beta: Complex64,
    /// Monomial coefficients, constant term first.
    pub coeffs: Vec<Complex64>,
    /// Low-order parts of the double-double coefficients.
    pub coeffs_lo: Vec<Complex64>,
    /// Weights `w_k = C(n+α, n−k) C(n+β, k)` of the defining sum, split into
    /// high and low parts.
    pub weights: Vec<Complex64>,
    pub weights_lo: Vec<Complex64>,
    /// Degree after removing a vanished leading coefficient.
    pub degree: usize,
    pub degree_dropped: bool,
    /// Ratio of the absolute term sizes to the coefficient sizes.
    pub condition: f64,
}

impl PolySpec {
    pub fn norm1(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm()).sum()
    }

    /// `Σ |c_j||z|^j`.
    pub fn scale_at(&self, z: Complex64) -> f64 {
        let r = z.norm();
        self.coeffs.iter().rev().fold(0.0, |acc, c| acc * r + c.norm())
    }

    /// `2^{−n} Σ |w_k||z−1|^k|z+1|^{n−k}`, the size of the terms of the
    /// defining sum at `z`.
    pub fn term_scale(&self, z: Complex64) -> f64 {
        let (u, v) = ((z - 1.0).norm(), (z + 1.0).norm());
        let mut acc = 0.0;
        for (k, w) in self.weights.iter().enumerate() {
            acc += w.norm() * u.powi(k as i32) * v.powi((self.n - k) as i32);
        }
        acc * 0.5f64.powi(self.n as i32)
    }

    /// Horner evaluation of the monomial form with derivative, in
    /// double-double arithmetic.
    pub fn eval_monomial(&self, z: Complex64) -> (Complex64, Complex64) {
        let zd = dd(z);
        let mut p = dd(Complex64::new(0.0, 0.0));
        let mut dp = p;
        for (c, l) in self.coeffs.iter().zip(&self.coeffs_lo).rev() {
            dp = dp * zd + p;
            p = p * zd + join(*c, *l);
        }
        (hi(&p), hi(&dp))
    }

    /// Horner sums of the defining form in the ratio of smaller modulus:
    /// returns `(base, S, S′, flipped)` with `P = 2^{−n} baseⁿ S(t)`.
    fn ratio_sums(&self, z: Complex64) -> (Cdd, Cdd, Cdd, bool) {
        let one = dd(Complex64::new(1.0, 0.0));
        let (zm, zp) = (dd(z) - one, dd(z) + one);
        let flipped = (z + 1.0).norm() < (z - 1.0).norm();
        let (base, t) = if flipped { (zm, cdiv(zp, zm)) } else { (zp, cdiv(zm, zp)) };
        let mut s = dd(Complex64::new(0.0, 0.0));
        let mut ds = s;
        for k in (0..=self.n).rev() {
            // Coefficient of t^j is w_j, or w_{n−j} in the flipped form.
            let idx = if flipped { self.n - k } else { k };
            ds = ds * t + s;
            s = s * t + join(self.weights[idx], self.weights_lo[idx]);
        }
        (base, s, ds, flipped)
    }

    /// Value and derivative from the defining sum in double-double
    /// arithmetic.
    pub fn eval(&self, z: Complex64) -> (Complex64, Complex64) {
        let (base, s, ds, flipped) = self.ratio_sums(z);
        let n = self.n as i32;
        let half = TwoFloat::from(0.5f64.powi(n));
        let nn = TwoFloat::from(n as f64);
        let two = TwoFloat::from(if flipped { -2.0 } else { 2.0 });
        // d/dz [base^n S(t)] = base^{n−2} (n·base·S + ±2 S′).
        let p = powi_dd(base, n) * s * half;
        let dp = if n == 0 {
            dd(Complex64::new(0.0, 0.0))
        } else {
            cdiv(powi_dd(base, n - 1) * (base * s * nn + ds * two), base) * half
        };
        (hi(&p), hi(&dp))
    }

    /// Newton correction `P/P′` without forming powers of the base.
    pub fn newton_ratio(&self, z: Complex64) -> Complex64 {
        let (base, s, ds, flipped) = self.ratio_sums(z);
        let nn = TwoFloat::from(self.n as f64);
        let two = TwoFloat::from(if flipped { -2.0 } else { 2.0 });
        hi(&cdiv(base * base * s, base * s * nn + ds * two))
    }
}

/// Reciprocal with one Newton correction; the library's double-double
/// quotient drops the low word of the residual.
fn recip_dd(d: TwoFloat) -> TwoFloat {
    let x0 = 1.0 / d.hi();
    let e = TwoFloat::from(1.0) - d * x0;
    e * x0 + x0
}

fn cdiv(a: Cdd, b: Cdd) -> Cdd {
    let r = recip_dd(b.re * b.re + b.im * b.im);
    let num = a * b.conj();
    Complex::new(num.re * r, num.im * r)
}

fn powi_dd(z: Cdd, n: i32) -> Cdd {
    let mut acc = dd(Complex64::new(1.0, 0.0));
    let mut b = z;
    let mut e = n;
    while e > 0 {
        if e & 1 == 1 {
            acc *= b;
        }
        b = b * b;
        e >>= 1;
    }
    acc
}

/// Monomial coefficients of
/// `2^{−n} Σ_k C(n+α, n−k) C(n+β, k) (z−1)^k (z+1)^{n−k}`.
pub fn build(n: usize, alpha: Complex64, beta: Complex64) -> Result<PolySpec> {
    let zero = Complex::new(TwoFloat::from(0.0), TwoFloat::from(0.0));
    let nf = Complex64::new(n as f64, 0.0);
    let w: Vec<Cdd> = (0..=n)
        .map(|k| binom_dd(nf + alpha, n - k) * binom_dd(nf + beta, k))
        .collect();

    // Binomial rows (z+1)^m, m = 0..=n.
    let mut rows: Vec<Vec<TwoFloat>> = vec![vec![TwoFloat::from(1.0)]];
    for m in 1..=n {
        let prev = &rows[m - 1];
        let mut row = vec![TwoFloat::from(0.0); m + 1];
        for j in 0..=m {
            let mut v = TwoFloat::from(0.0);
            if j < m {
                v += prev[j];
            }
            if j > 0 {
                v += prev[j - 1];
            }
            row[j] = v;
        }
        rows.push(row);
    }

    // Horner in (z−1): H_k = (z−1) H_{k+1} + w_k (z+1)^{n−k}.
    let mut h: Vec<Cdd> = vec![w[n]];
    for k in (0..n).rev() {
        let mut next = vec![zero; h.len() + 1];
        for (j, c) in h.iter().enumerate() {
            next[j + 1] += *c;
            next[j] -= *c;
        }
        for (j, r) in rows[n - k].iter().enumerate() {
            next[j] += w[k] * *r;
        }
        h = next;
    }
    let scale = TwoFloat::from(0.5f64.powi(n as i32));
    let h: Vec<Cdd> = h.iter().map(|c| *c * scale).collect();
    let coeffs: Vec<Complex64> = h.iter().map(hi).collect();
    let coeffs_lo: Vec<Complex64> = h.iter().map(lo).collect();

    let norm: f64 = coeffs.iter().map(|c| c.norm()).sum();
    let terms: f64 = w.iter().map(|c| hi(c).norm()).sum();
    if norm == 0.0 {
        return Err(Error::ConstantPolynomial);
    }
    let condition = terms / norm;
    if (n as f64 + 1.0) * condition * WORKING_EPS > f64::EPSILON {
        return Err(Error::IllConditioned { condition });
    }
    // Coefficient j collects terms of total size at most 2^{−n} C(n, j) Σ|w_k|.
    let mut degree = n;
    while degree > 0 {
        let bound = rows[n][degree].hi() * 0.5f64.powi(n as i32) * terms;
        if coeffs[degree].norm() > DEGREE_DROP_TOL * bound {
            break;
        }
        degree -= 1;
    }
    Ok(PolySpec {
        n,
        alpha,
        beta,
        coeffs,
        coeffs_lo,
        weights: w.iter().map(hi).collect(),
        weights_lo: w.iter().map(lo).collect(),
        degree,
        degree_dropped: degree < n,
        condition,
    })
}

/// Parameters `α = nA`, `β = nB`.
pub fn build_varying(n: usize, big_a: Complex64, big_b: Complex64) -> Result<PolySpec> {
    build(n, big_a * n as f64, big_b * n as f64)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RootReport {
    pub iterations: usize,
    pub max_correction: f64,
    pub polish_steps: usize,
    pub init_radius: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RootSet {
    /// Sorted by real, then imaginary part.
    pub roots: Vec<Complex64>,
    /// `max |P(r)| / T(r)` with `T` the term scale of the defining sum.
    pub residual: f64,
    /// Largest root displacement that evaluation rounding could cause,
    /// relative to `1 + |r|`.
    pub uncertainty: f64,
    pub report: RootReport,
}

impl RootSet {
    pub fn len(&self) -> usize {
        self.roots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.roots.is_empty()
    }

    pub fn max_modulus(&self) -> f64 {
        self.roots.iter().map(|r| r.norm()).fold(0.0, f64::max)
    }
}

fn relative_residual(spec: &PolySpec, z: Complex64) -> f64 {
    let (p, _) = spec.eval(z);
    let s = spec.term_scale(z);
    if s > 0.0 { p.norm() / s } else { p.norm() }
}

/// All roots of the spec (its effective degree many) by Aberth iteration from
/// a circle, followed by Newton polishing.
pub fn roots(spec: &PolySpec) -> Result<RootSet> {
    let m = spec.degree;
    if m == 0 {
        return Ok(RootSet {
            roots: Vec::new(),
            residual: 0.0,
            uncertainty: 0.0,
            report: RootReport {
                iterations: 0,
                max_correction: 0.0,
                polish_steps: 0,
                init_radius: 0.0,
            },
        });
    }
    let lead = spec.coeffs[m].norm();
    let bound = (0..m)
        .map(|j| (spec.coeffs[j].norm() / lead).powf(1.0 / (m - j) as f64))
        .fold(0.0, f64::max);
    let radius = 1.0 + bound;
    let mut z: Vec<Complex64> = (0..m)
        .map(|k| Complex64::from_polar(radius, 2.0 * PI * k as f64 / m as f64 + 0.4))
        .collect();
    let mut done = vec![false; m];
    let mut iterations = 0;
    let mut max_correction = f64::INFINITY;
    while iterations < MAX_ITERATIONS && done.iter().any(|d| !d) {
        iterations += 1;
        max_correction = 0.0;
        for i in 0..m {
            if done[i] {
                continue;
            }
            let ratio = spec.newton_ratio(z[i]);
            if ratio.norm() == 0.0 {
                done[i] = true;
                continue;
            }
            let scale = 1.0 + z[i].norm();
            let crowded = (0..m).any(|j| j != i && (z[i] - z[j]).norm() < 1e-9 * scale);
            let sum: Complex64 = (0..m).filter(|&j| j != i).map(|j| 1.0 / (z[i] - z[j])).sum();
            let step = ratio / (1.0 - ratio * sum);
            if crowded || !step.re.is_finite() || !step.im.is_finite() {
                // Two approximations collapsed onto one root: push one away.
                let kick = Complex64::from_polar(1e-3 * scale, 1.0 + i as f64);
                z[i] += kick;
                max_correction = f64::INFINITY;
                continue;
            }
            z[i] -= step;
            let c = step.norm();
            max_correction = f64::max(max_correction, c);
            if c <= 1e-14 * (1.0 + z[i].norm()) {
                done[i] = true;
            }
        }
    }
    for r in z.iter_mut() {
        for _ in 0..POLISH_STEPS {
            let step = spec.newton_ratio(*r);
            if step.re.is_finite() && step.im.is_finite() {
                *r -= step;
            }
        }
    }
    let residual = z.iter().map(|&r| relative_residual(spec, r)).fold(0.0, f64::max);
    if done.iter().any(|d| !d) && residual > TOL_POLY {
        return Err(Error::RootFinder { iterations, residual });
    }
    let uncertainty = z
        .iter()
        .map(|&r| {
            let (_, dp) = spec.eval(r);
            (spec.n as f64 + 1.0) * WORKING_EPS * spec.term_scale(r) / (dp.norm() * (1.0 + r.norm()))
        })
        .fold(0.0, f64::max);
    if !(uncertainty <= MAX_UNCERTAINTY) {
        return Err(Error::RootsUnresolved { uncertainty });
    }
    z.sort_by(|x, y| x.re.total_cmp(&y.re).then(x.im.total_cmp(&y.im)));
    Ok(RootSet {
        roots: z,
        residual,
        uncertainty,
        report: RootReport {
            iterations,
            max_correction,
            polish_steps: POLISH_STEPS,
            init_radius: radius,
        },
    })
}

/// `(1/n) Σ 1/(z − r)` over the roots.
pub fn cauchy(rs: &RootSet, z: Complex64) -> Result<Complex64> {
    if rs.is_empty() {
        return Err(Error::ConstantPolynomial);
    }
    let nearest = rs.roots.iter().map(|r| (z - r).norm()).fold(f64::INFINITY, f64::min);
    if nearest < 1e-12 {
        return Err(Error::AtRoot { z, distance: nearest });
    }
    let sum: Complex64 = rs.roots.iter().map(|r| 1.0 / (z - r)).sum();
    Ok(sum / rs.len() as f64)
}

/// `P′(z)/(n P(z))` from the defining sum.
pub fn cauchy_ratio(spec: &PolySpec, z: Complex64) -> Complex64 {
    1.0 / (spec.newton_ratio(z) * spec.degree as f64)
}

pub fn quadratic_residual(big_a: Complex64, big_b: Complex64, z: Complex64, c: Complex64) -> f64 {
    let s = big_a + big_b;
    ((1.0 - z * z) * c * c - (s * z + big_a - big_b) * c + s + 1.0).norm()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MeasureComparison {
    pub n: usize,
    pub mean_dist: f64,
    pub max_dist: f64,
    /// Roots farther than three times the mean distance.
    pub outliers: usize,
    /// Short-trajectory period over `2π`; modulus 1 for a unit mass.
    pub mass_check: Complex64,
    pub mass_class: Option<JacobiClass>,
    pub ring_radius: f64,
    /// Quadratic residual of the discrete Cauchy transform on the far ring.
    pub cauchy_residuals: Vec<f64>,
}

/// Roots of `P_n^{(nA, nB)}` against the short trajectories of the graph.
pub fn compare(big_a: Complex64, big_b: Complex64, n: usize, graph: &CriticalGraph) -> Result<(RootSet, MeasureComparison)> {
    if graph.shorts.is_empty() {
        return Err(Error::NoShortTrajectory);
    }
    let spec = build_varying(n, big_a, big_b)?;
    let rs = roots(&spec)?;
    if rs.is_empty() {
        return Err(Error::ConstantPolynomial);
    }
    let dists: Vec<f64> = rs
        .roots
        .iter()
        .map(|&r| graph.shorts.iter().map(|s| s.polyline.distance_to(r)).fold(f64::INFINITY, f64::min))
        .collect();
    let mean_dist = dists.iter().sum::<f64>() / dists.len() as f64;
    let max_dist = dists.iter().copied().fold(0.0, f64::max);
    let outliers = dists.iter().filter(|&&d| d > 3.0 * mean_dist).count();

    // Prefer the short of class 1, which carries the unit mass.
    let short = graph
        .shorts
        .iter()
        .find(|s| s.period.matched.as_ref().and_then(|m| m.class) == Some(JacobiClass::One))
        .unwrap_or(&graph.shorts[0]);
    let mass_check = short.period.value / (2.0 * PI);
    let mass_class = short.period.matched.as_ref().and_then(|m| m.class);

    let ring_radius = 3.0f64.max(2.0 * rs.max_modulus());
    let cauchy_residuals = (0..8)
        .map(|k| {
            let z = Complex64::from_polar(ring_radius, 2.0 * PI * k as f64 / 8.0 + 0.1);
            cauchy(&rs, z).map(|c| quadratic_residual(big_a, big_b, z, c))
        })
        .collect::<Result<_>>()?;
    Ok((
        rs,
        MeasureComparison {
            n,
            mean_dist,
            max_dist,
            outliers,
            mass_check,
            mass_class,
            ring_radius,
            cauchy_residuals,
        },
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn double_double_division() {
        let q = cdiv(dd(c(1.0, 0.0)), dd(c(3.0, 0.0)));
        let back = q * dd(c(3.0, 0.0)) - dd(c(1.0, 0.0));
        assert!(back.re.hi().abs() < 1e-31 && back.im.hi().abs() < 1e-31);
        let (x, y) = (dd(c(0.7, -1.3)), dd(c(-2.1, 0.4)));
        let back = cdiv(x, y) * y - x;
        assert!(hi(&back).norm() < 1e-30);
    }

    #[test]
    fn low_degree_closed_forms() {
        let p = build(0, c(0.3, 1.0), c(-2.0, 0.5)).unwrap();
        assert_eq!(p.coeffs, vec![c(1.0, 0.0)]);
        assert_eq!(p.coeffs_lo, vec![c(0.0, 0.0)]);
        assert!(roots(&p).unwrap().is_empty());

        let (al, be) = (c(0.7, -0.2), c(-1.3, 0.4));
        let p = build(1, al, be).unwrap();
        assert!((p.coeffs[1] - (al + be + 2.0) / 2.0).norm() < 1e-15);
        assert!((p.coeffs[0] - (al - be) / 2.0).norm() < 1e-15);
        let r = roots(&p).unwrap();
        assert!((r.roots[0] - (be - al) / (al + be + 2.0)).norm() < 1e-14);

        let p = build(2, c(0.0, 0.0), c(0.0, 0.0)).unwrap();
        for (x, y) in p.coeffs.iter().zip([c(-0.5, 0.0), c(0.0, 0.0), c(1.5, 0.0)]) {
            assert!((x - y).norm() < 1e-15);
        }
        let r = roots(&p).unwrap();
        let s = 1.0 / 3f64.sqrt();
        assert!((r.roots[0] - c(-s, 0.0)).norm() < 1e-14);
        assert!((r.roots[1] - c(s, 0.0)).norm() < 1e-14);
    }

    #[test]
    fn sum_form_matches_coefficients() {
        let p = build_varying(12, c(1.0, 0.1), c(-1.0, 0.1)).unwrap();
        for z in [c(0.3, 0.2), c(-2.0, 1.0), c(3.0, 0.0), c(-1.0, 0.0), c(1.0, 0.0)] {
            let (a, da) = p.eval(z);
            let (b, db) = p.eval_monomial(z);
            assert!((a - b).norm() < 1e-13 * p.scale_at(z));
            assert!((da - db).norm() < 1e-12 * p.scale_at(z) * 12.0);
            if a.norm() > 0.0 {
                assert!((p.newton_ratio(z) - a / da).norm() < 1e-12 * (a / da).norm());
            }
        }
    }

    #[test]
    fn conjugate_parameters_conjugate_roots() {
        let p = build_varying(10, c(1.0, 0.3), c(-0.5, 0.2)).unwrap();
        let q = build_varying(10, c(1.0, -0.3), c(-0.5, -0.2)).unwrap();
        let rp = roots(&p).unwrap();
        let rq = roots(&q).unwrap();
        for r in &rp.roots {
            let d = rq.roots.iter().map(|s| (s - r.conj()).norm()).fold(f64::INFINITY, f64::min);
            assert!(d < 1e-10);
        }
    }

    #[test]
    fn degree_drop_is_reported() {
        // Leading coefficient 2^{-n} C(2n+α+β, n) vanishes when 2n+α+β ∈ {0,…,n−1}.
        let p = build(3, c(-2.5, 0.5), c(-2.5, -0.5)).unwrap();
        assert!(p.degree_dropped);
        assert!(p.degree < 3);
        assert_eq!(roots(&p).unwrap().len(), p.degree);
    }

    #[test]
    fn real_parameters_give_interval_roots() {
        let p = build(20, c(2.0, 0.0), c(3.0, 0.0)).unwrap();
        let r = roots(&p).unwrap();
        assert_eq!(r.len(), 20);
        assert!(r.residual < TOL_POLY);
        for z in &r.roots {
            assert!(z.im.abs() < 1e-8 && z.re.abs() < 1.0);
        }
    }

    #[test]
    fn cauchy_forms_agree() {
        let p = build_varying(16, c(1.0, 0.1), c(-1.0, 0.1)).unwrap();
        let r = roots(&p).unwrap();
        for z in [c(3.0, 0.0), c(0.0, 2.0), c(-1.5, -0.7)] {
            let a = cauchy(&r, z).unwrap();
            let b = cauchy_ratio(&p, z);
            assert!((a - b).norm() <= 1e-9 * a.norm());
        }
        assert!(matches!(cauchy(&r, r.roots[3]), Err(Error::AtRoot { .. })));
        let big = c(1e4, 1e4);
        assert!((big * cauchy(&r, big).unwrap() - 1.0).norm() <= 2.0 * r.max_modulus() / big.norm());
    }

    #[test]
    fn quadratic_residual_vanishes_on_exact_root() {
        let (a, b, z) = (c(1.0, 0.1), c(-1.0, 0.1), c(0.4, 2.0));
        let s = a + b;
        let qa = 1.0 - z * z;
        let qb = -(s * z + a - b);
        let qc = s + 1.0;
        let root = (-qb + (qb * qb - 4.0 * qa * qc).sqrt()) / (2.0 * qa);
        assert!(quadratic_residual(a, b, z, root) < 1e-13);
    }

    #[test]
    fn rodrigues_agreement() {
        // (1−z)^α (1+z)^β P_n(z) = (−1)^n / (2^n n!) dⁿ/dzⁿ [(1−z)^{n+α} (1+z)^{n+β}],
        // derivative by the Cauchy integral on a small circle.
        let (al, be) = (c(0.6, 0.3), c(-0.4, 0.8));
        for n in 1..=6usize {
            let p = build(n, al, be).unwrap();
            for z0 in [c(0.1, 0.05), c(-0.3, 0.2), c(0.25, -0.1), c(0.0, 0.3), c(-0.1, -0.2)] {
                let f = |t: Complex64| (1.0 - t).powc(al + n as f64) * (1.0 + t).powc(be + n as f64);
                let m = 256;
                let rho = 0.3;
                let mut sum = c(0.0, 0.0);
                for k in 0..m {
                    let u = Complex64::from_polar(1.0, 2.0 * PI * k as f64 / m as f64);
                    sum += f(z0 + rho * u) / (rho * u).powi(n as i32);
                }
                let fact: f64 = (1..=n).map(|i| i as f64).product();
                let deriv = sum / m as f64 * fact;
                let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
                let rhs = deriv * sign / (2f64.powi(n as i32) * fact);
                let lhs = (1.0 - z0).powc(al) * (1.0 + z0).powc(be) * p.eval_monomial(z0).0;
                assert!((lhs - rhs).norm() <= 1e-6 * lhs.norm(), "n={n} z={z0}");
            }
        }
    }
}
