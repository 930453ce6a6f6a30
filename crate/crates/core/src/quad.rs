//! Adaptive Gauss–Legendre quadrature of complex-valued integrands on real
//! parameter intervals. The error estimate compares one panel with its two
//! halves (step halving).

use std::num::NonZeroUsize;
use std::sync::OnceLock;

use gauss_quad::GaussLegendre;
use num_complex::Complex64;

const ORDER: usize = 12;

fn nodes() -> &'static [(f64, f64)] {
    static NODES: OnceLock<Vec<(f64, f64)>> = OnceLock::new();
    NODES.get_or_init(|| {
        let n = NonZeroUsize::new(ORDER).expect("nonzero order");
        GaussLegendre::new(n)
            .as_node_weight_pairs()
            .to_vec()
    })
}

/// Fixed-order Gauss–Legendre rule on `[s0, s1]`.
pub fn gauss<F: FnMut(f64) -> Complex64>(f: &mut F, s0: f64, s1: f64) -> Complex64 {
    let half = 0.5 * (s1 - s0);
    let mid = 0.5 * (s1 + s0);
    nodes()
        .iter()
        .map(|&(x, w)| f(mid + half * x) * (w * half))
        .sum()
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Estimate {
    pub value: Complex64,
    pub error: f64,
}

impl std::ops::Add for Estimate {
    type Output = Estimate;
    fn add(self, o: Estimate) -> Estimate {
        Estimate {
            value: self.value + o.value,
            error: self.error + o.error,
        }
    }
}

impl Estimate {
    pub const ZERO: Estimate = Estimate {
        value: Complex64::new(0.0, 0.0),
        error: 0.0,
    };
}

/// Recursive bisection until the panel and its halves agree to `tol`.
/// Panels still above tolerance at `max_depth` contribute their discrepancy
/// to the returned error instead of failing.
pub fn adaptive<F: FnMut(f64) -> Complex64>(
    f: &mut F,
    s0: f64,
    s1: f64,
    tol: f64,
    max_depth: u32,
) -> Estimate {
    let whole = gauss(f, s0, s1);
    refine(f, s0, s1, whole, tol, max_depth)
}

fn refine<F: FnMut(f64) -> Complex64>(
    f: &mut F,
    s0: f64,
    s1: f64,
    whole: Complex64,
    tol: f64,
    depth: u32,
) -> Estimate {
    let mid = 0.5 * (s0 + s1);
    let left = gauss(f, s0, mid);
    let right = gauss(f, mid, s1);
    let err = (left + right - whole).norm();
    if err <= tol || depth == 0 {
        return Estimate {
            value: left + right,
            error: err,
        };
    }
    refine(f, s0, mid, left, 0.5 * tol, depth - 1) + refine(f, mid, s1, right, 0.5 * tol, depth - 1)
}
