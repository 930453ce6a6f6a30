//! Parameters of the quadratic differential
//! `λ²(z−a)(z−b)/(z²−1)² dz²` and its closed-form quantities: residues at the
//! three double poles, their local trajectory structure, and the four
//! period values that decide whether a short trajectory exists.

use std::f64::consts::PI;
use std::fmt;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

const I: Complex64 = Complex64::new(0.0, 1.0);

/// Numerical tolerances shared by the closed-form checks.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Tolerances {
    /// Relative tolerance for algebraic identities.
    pub root: f64,
    /// Realness test: `|Im r| <= imag * (1 + |r|)`.
    pub imag: f64,
    /// Property P: `|Im v| <= p * (1 + |v|)`.
    pub p: f64,
    /// Minimum separation used by parameter validation.
    pub coincide: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            root: 1e-10,
            imag: 1e-9,
            p: 1e-8,
            coincide: 1e-12,
        }
    }
}

/// Jacobi parametrization `(A, B)` the parameters were derived from.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct JacobiOrigin {
    #[serde(rename = "A")]
    pub a: Complex64,
    #[serde(rename = "B")]
    pub b: Complex64,
}

/// Validated triple `(a, b, λ)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QDParams {
    a: Complex64,
    b: Complex64,
    lambda: Complex64,
    origin: Option<JacobiOrigin>,
}

impl QDParams {
    pub fn validate(a: Complex64, b: Complex64, lambda: Complex64) -> Result<Self> {
        Self::validate_with(a, b, lambda, &Tolerances::default())
    }

    pub fn validate_with(
        a: Complex64,
        b: Complex64,
        lambda: Complex64,
        tol: &Tolerances,
    ) -> Result<Self> {
        if !(a.is_finite() && b.is_finite() && lambda.is_finite()) {
            return Err(Error::NonFinite);
        }
        if lambda.norm() <= tol.coincide {
            return Err(Error::ZeroLambda);
        }
        let sep = tol.coincide * (1.0 + a.norm().max(b.norm()));
        if (a - b).norm() <= sep {
            return Err(Error::CoincidentZeros(a));
        }
        for zero in [a, b] {
            for pole in [-1.0, 1.0] {
                if (zero - pole).norm() <= tol.coincide {
                    return Err(Error::ZeroOnPole { zero, pole });
                }
            }
        }
        Ok(Self {
            a,
            b,
            lambda,
            origin: None,
        })
    }

    /// Parameters of `-R_{A,B}(z)/(z²−1)² dz²`: `a = ζ₊`, `b = ζ₋`,
    /// `λ = i(A+B+2)`.
    pub fn from_jacobi(big_a: Complex64, big_b: Complex64) -> Result<Self> {
        Self::from_jacobi_with(big_a, big_b, &Tolerances::default())
    }

    pub fn from_jacobi_with(big_a: Complex64, big_b: Complex64, tol: &Tolerances) -> Result<Self> {
        let s1 = big_a + big_b + 1.0;
        let s2 = big_a + big_b + 2.0;
        if s1.norm() <= tol.coincide {
            return Err(Error::DegenerateSumPlusOne);
        }
        if s2.norm() <= tol.coincide {
            return Err(Error::DegenerateSumPlusTwo);
        }
        let (zp, zm) = jacobi_zeros(big_a, big_b);
        let mut p = Self::validate_with(zp, zm, I * s2, tol)?;
        p.origin = Some(JacobiOrigin { a: big_a, b: big_b });
        Ok(p)
    }

    pub fn a(&self) -> Complex64 {
        self.a
    }

    pub fn b(&self) -> Complex64 {
        self.b
    }

    pub fn lambda(&self) -> Complex64 {
        self.lambda
    }

    pub fn origin(&self) -> Option<JacobiOrigin> {
        self.origin
    }

    pub fn zeros(&self) -> [Complex64; 2] {
        [self.a, self.b]
    }

    /// Finite critical points: the zeros and the two finite poles.
    pub fn critical_points(&self) -> [Complex64; 4] {
        [self.a, self.b, Complex64::new(-1.0, 0.0), Complex64::new(1.0, 0.0)]
    }

    /// Largest pairwise distance among `{a, b, −1, 1}`.
    pub fn scale(&self) -> f64 {
        let pts = self.critical_points();
        let mut m: f64 = 0.0;
        for i in 0..4 {
            for j in i + 1..4 {
                m = m.max((pts[i] - pts[j]).norm());
            }
        }
        m
    }

    /// `φ(z) = λ²(z−a)(z−b)`.
    pub fn phi(&self, z: Complex64) -> Complex64 {
        self.lambda * self.lambda * (z - self.a) * (z - self.b)
    }

    /// `Q(z) = φ(z)/(z²−1)²`, the full coefficient of the differential.
    pub fn q(&self, z: Complex64) -> Complex64 {
        let d = z * z - 1.0;
        self.phi(z) / (d * d)
    }

    /// `Q'(z)`.
    pub fn q_prime(&self, z: Complex64) -> Complex64 {
        let l2 = self.lambda * self.lambda;
        let d = z * z - 1.0;
        let phi = self.phi(z);
        let dphi = l2 * (2.0 * z - self.a - self.b);
        (dphi * d - phi * 4.0 * z) / (d * d * d)
    }

    pub fn conj(&self) -> Self {
        Self {
            a: self.a.conj(),
            b: self.b.conj(),
            lambda: self.lambda.conj(),
            origin: self.origin.map(|o| JacobiOrigin {
                a: o.a.conj(),
                b: o.b.conj(),
            }),
        }
    }

    pub fn swapped(&self) -> Self {
        Self {
            a: self.b,
            b: self.a,
            lambda: self.lambda,
            origin: None,
        }
    }

    pub fn with_lambda(&self, lambda: Complex64) -> Result<Self> {
        Self::validate(self.a, self.b, lambda)
    }
}

impl fmt::Display for QDParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "a={} b={} lambda={}", self.a, self.b, self.lambda)?;
        if let Some(o) = self.origin {
            write!(f, " (A={} B={})", o.a, o.b)?;
        }
        Ok(())
    }
}

/// `R_{A,B}(z) = (A+B+2)²z² + 2(A²−B²)z + (A−B)² − 4(A+B+1)`.
pub fn r_ab(big_a: Complex64, big_b: Complex64, z: Complex64) -> Complex64 {
    let s = big_a + big_b + 2.0;
    s * s * z * z + 2.0 * (big_a * big_a - big_b * big_b) * z + (big_a - big_b) * (big_a - big_b)
        - 4.0 * (big_a + big_b + 1.0)
}

/// Sum of the moduli of the terms of `R_{A,B}(z)`; the scale for relative checks.
pub fn r_ab_scale(big_a: Complex64, big_b: Complex64, z: Complex64) -> f64 {
    let s = big_a + big_b + 2.0;
    (s * s * z * z).norm()
        + (2.0 * (big_a * big_a - big_b * big_b) * z).norm()
        + ((big_a - big_b) * (big_a - big_b)).norm()
        + (4.0 * (big_a + big_b + 1.0)).norm()
}

/// Zeros `(ζ₊, ζ₋)` of `R_{A,B}` with the principal square root.
pub fn jacobi_zeros(big_a: Complex64, big_b: Complex64) -> (Complex64, Complex64) {
    let s = big_a + big_b + 2.0;
    let disc = 4.0 * ((big_a + 1.0) * (big_b + 1.0) * (big_a + big_b + 1.0)).sqrt();
    let num = big_b * big_b - big_a * big_a;
    ((num + disc) / (s * s), (num - disc) / (s * s))
}

/// Residues (leading coefficients of `(z−p)⁻²`, resp. `u⁻²` with `z = 1/u`)
/// at `−1`, `+1` and `∞`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ResidueSet {
    pub minus1: Complex64,
    pub plus1: Complex64,
    pub inf: Complex64,
}

pub fn residues(p: &QDParams) -> ResidueSet {
    let l2 = p.lambda * p.lambda;
    ResidueSet {
        minus1: l2 * (1.0 + p.a) * (1.0 + p.b) / 4.0,
        plus1: l2 * (1.0 - p.a) * (1.0 - p.b) / 4.0,
        inf: l2,
    }
}

/// Local trajectory structure at a double pole.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum PoleType {
    Circle,
    Radial,
    LogSpiral,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct PoleTypes {
    pub minus1: PoleType,
    pub plus1: PoleType,
    pub inf: PoleType,
}

pub fn classify_residue(r: Complex64, name: &'static str, tol: &Tolerances) -> Result<PoleType> {
    if r.norm() <= tol.coincide {
        return Err(Error::VanishingResidue { pole: name, value: r });
    }
    if r.im.abs() > tol.imag * (1.0 + r.norm()) {
        return Ok(PoleType::LogSpiral);
    }
    if r.re.abs() <= tol.root * r.norm() {
        return Err(Error::VanishingResidue { pole: name, value: r });
    }
    Ok(if r.re < 0.0 {
        PoleType::Circle
    } else {
        PoleType::Radial
    })
}

pub fn classify_poles(r: &ResidueSet) -> Result<PoleTypes> {
    classify_poles_with(r, &Tolerances::default())
}

pub fn classify_poles_with(r: &ResidueSet, tol: &Tolerances) -> Result<PoleTypes> {
    Ok(PoleTypes {
        minus1: classify_residue(r.minus1, "-1", tol)?,
        plus1: classify_residue(r.plus1, "+1", tol)?,
        inf: classify_residue(r.inf, "inf", tol)?,
    })
}

/// One of the four period classes of an arc joining the zeros, in the Jacobi
/// normalization `±2πi·{1, A+1, B+1, A+B+1}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum JacobiClass {
    #[serde(rename = "1")]
    One,
    #[serde(rename = "A+1")]
    APlusOne,
    #[serde(rename = "B+1")]
    BPlusOne,
    #[serde(rename = "A+B+1")]
    ABPlusOne,
}

impl JacobiClass {
    pub fn value(self, origin: &JacobiOrigin) -> Complex64 {
        match self {
            JacobiClass::One => Complex64::new(1.0, 0.0),
            JacobiClass::APlusOne => origin.a + 1.0,
            JacobiClass::BPlusOne => origin.b + 1.0,
            JacobiClass::ABPlusOne => origin.a + origin.b + 1.0,
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            JacobiClass::One => "1",
            JacobiClass::APlusOne => "A+1",
            JacobiClass::BPlusOne => "B+1",
            JacobiClass::ABPlusOne => "A+B+1",
        }
    }
}

impl fmt::Display for JacobiClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

/// Sign pair `(s₁, s₂)` selecting one of the four closed-form periods.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SignPair(pub i8, pub i8);

impl SignPair {
    pub const ALL: [SignPair; 4] = [
        SignPair(1, 1),
        SignPair(1, -1),
        SignPair(-1, 1),
        SignPair(-1, -1),
    ];
}

impl fmt::Display for SignPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = |s: i8| if s > 0 { '+' } else { '-' };
        write!(f, "({},{})", c(self.0), c(self.1))
    }
}

/// Principal roots `√((1−a)(1−b))` and `√((1+a)(1+b))`.
pub fn pole_roots(p: &QDParams) -> (Complex64, Complex64) {
    (
        ((1.0 - p.a) * (1.0 - p.b)).sqrt(),
        ((1.0 + p.a) * (1.0 + p.b)).sqrt(),
    )
}

/// `v(s₁,s₂) = iπ(λ/2)(s₁√((1−a)(1−b)) + s₂√((1+a)(1+b)) − 2)`.
pub fn period_value(p: &QDParams, signs: SignPair) -> Complex64 {
    let (x, y) = pole_roots(p);
    I * PI * p.lambda / 2.0 * (x * f64::from(signs.0) + y * f64::from(signs.1) - 2.0)
}

/// Jacobi class of the sign pair, for origin-bearing parameters.
pub fn jacobi_class(p: &QDParams, signs: SignPair) -> Option<JacobiClass> {
    let o = p.origin?;
    let (x, y) = pole_roots(p);
    let half = (o.a + o.b + 2.0) / 2.0;
    let sx = half * x * f64::from(signs.0);
    let sy = half * y * f64::from(signs.1);
    let e1 = (sx - o.a).norm() <= (sx + o.a).norm();
    let e2 = (sy - o.b).norm() <= (sy + o.b).norm();
    Some(match (e1, e2) {
        (true, true) => JacobiClass::One,
        (false, true) => JacobiClass::APlusOne,
        (true, false) => JacobiClass::BPlusOne,
        (false, false) => JacobiClass::ABPlusOne,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PeriodCandidate {
    pub signs: SignPair,
    pub value: Complex64,
    pub im: f64,
    pub vanishes: bool,
    pub class: Option<JacobiClass>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PropertyPReport {
    pub values: Vec<PeriodCandidate>,
    pub satisfied: bool,
    pub satisfied_classes: Vec<SignPair>,
}

impl PropertyPReport {
    pub fn im_parts(&self) -> Vec<f64> {
        self.values.iter().map(|c| c.im).collect()
    }

    pub fn satisfied_jacobi_classes(&self) -> Vec<JacobiClass> {
        self.values
            .iter()
            .filter(|c| c.vanishes)
            .filter_map(|c| c.class)
            .collect()
    }
}

pub fn property_p(p: &QDParams) -> PropertyPReport {
    property_p_with(p, &Tolerances::default())
}

pub fn property_p_with(p: &QDParams, tol: &Tolerances) -> PropertyPReport {
    let values: Vec<PeriodCandidate> = SignPair::ALL
        .iter()
        .map(|&signs| {
            let value = period_value(p, signs);
            let vanishes = value.im.abs() <= tol.p * (1.0 + value.norm());
            PeriodCandidate {
                signs,
                value,
                im: value.im,
                vanishes,
                class: jacobi_class(p, signs),
            }
        })
        .collect();
    let satisfied_classes: Vec<SignPair> =
        values.iter().filter(|c| c.vanishes).map(|c| c.signs).collect();
    PropertyPReport {
        satisfied: !satisfied_classes.is_empty(),
        satisfied_classes,
        values,
    }
}
