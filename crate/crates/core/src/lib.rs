//! Critical graphs of the quadratic differential
//! `λ²(z−a)(z−b)/(z²−1)² dz²`, their short trajectories and periods, and the
//! comparison with zeros of Jacobi polynomials `P_n^{(nA, nB)}`.

// `!(x <= tol)` is used deliberately so that NaN counts as a failure.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod branch;
pub mod cli;
pub mod error;
pub mod geom;
pub mod graph;
pub mod jacobi;
pub mod periods;
pub mod qdiff;
pub mod quad;
pub mod tracer;
pub mod verify;

pub use error::{Error, Result};
pub use geom::PathPolyline;
pub use qdiff::{JacobiClass, PoleType, QDParams};
