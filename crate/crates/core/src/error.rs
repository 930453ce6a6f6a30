use num_complex::Complex64;
use thiserror::Error;

/// Errors raised by parameter validation, continuation, tracing, quadrature
/// and root finding.
#[derive(Debug, Clone, Error)]
pub enum Error {
    #[error("zeros coincide: a = b = {0}")]
    CoincidentZeros(Complex64),
    #[error("zero {zero} coincides with the pole {pole}")]
    ZeroOnPole { zero: Complex64, pole: f64 },
    #[error("parameters must be finite")]
    NonFinite,
    #[error("lambda must be nonzero")]
    ZeroLambda,
    #[error("degenerate Jacobi parameters: A+B+1 = 0")]
    DegenerateSumPlusOne,
    #[error("degenerate Jacobi parameters: A+B+2 = 0")]
    DegenerateSumPlusTwo,
    #[error("residue at {pole} vanishes ({value}); the zeros cannot be simple and off the poles")]
    VanishingResidue { pole: &'static str, value: Complex64 },
    #[error("point {z} is too close to the zeros for the branch at infinity (need |z| >= {min_radius})")]
    NotFarEnough { z: Complex64, min_radius: f64 },
    #[error("path passes within {distance:e} of critical point {point}")]
    NearCriticalPoint { point: Complex64, distance: f64 },
    #[error("offset {offset:e} too large: parallel arc meets critical point {point}")]
    OffsetTooLarge { offset: f64, point: Complex64 },
    #[error("path must have at least {needed} points, got {got}")]
    PathTooShort { needed: usize, got: usize },
    #[error("zero derivative of Q at {0}: the zero is not simple")]
    NonSimpleZero(Complex64),
    #[error("step size underflow at {z} (h = {h:e})")]
    StepUnderflow { z: Complex64, h: f64 },
    #[error("trajectories are not a matched pair: Hausdorff distance {distance:e} >= {limit:e}")]
    UnmatchedTraces { distance: f64, limit: f64 },
    #[error("arc endpoints must be a and b (gap {gap:e})")]
    ArcEndpoints { gap: f64 },
    #[error("quadrature did not converge: estimated error {est:e}")]
    Quadrature { est: f64 },
    #[error("root finder did not converge after {iterations} iterations (worst residual {residual:e})")]
    RootFinder { iterations: usize, residual: f64 },
    #[error("polynomial has no roots (effective degree 0)")]
    ConstantPolynomial,
    #[error("coefficient cancellation ratio {condition:e} exceeds working precision")]
    IllConditioned { condition: f64 },
    #[error("roots are only determined to {uncertainty:e} in double-double arithmetic")]
    RootsUnresolved { uncertainty: f64 },
    #[error("point {z} coincides with a root (distance {distance:e})")]
    AtRoot { z: Complex64, distance: f64 },
    #[error("critical graph has no short trajectory")]
    NoShortTrajectory,
    #[error("parameters carry no Jacobi origin (A, B)")]
    NoJacobiOrigin,
    #[error("could not find a far path avoiding the arc and critical points")]
    NoClearPath,
}

pub type Result<T> = std::result::Result<T, Error>;
