//! Error type shared across the crate.

use thiserror::Error;

/// Errors raised by construction, decomposition and stepping routines.
#[derive(Debug, Clone, Error)]
pub enum Error {
    /// Rational function construction violated a structural invariant.
    #[error("invalid rational function: {0}")]
    InvalidRational(String),
    /// A pole `1/w` lies in the closed right half-plane in `z`, i.e. `Re(w) <= 0`.
    #[error("pole with Re(w) <= 0: w = {re} + {im}i")]
    PoleInRightHalfClosure { re: f64, im: f64 },
    /// Denominator roots could not be resolved to tolerance, or the
    /// reconstructed simple-fraction form does not reproduce the function.
    #[error("root finding failed: {0}")]
    RootFindingFailure(String),
    /// Taylor coefficients keep matching the exponential past the configured cap.
    #[error("approximation order exceeds cap {cap}; input may be the exact exponential")]
    OrderExceedsCap { cap: usize },
    /// The function does not satisfy r(0) = 1, so no approximation order exists.
    #[error("r(0) = 1 violated (relative deviation {deviation:.3e})")]
    NotConsistentAtZero { deviation: f64 },
    /// A stepper requires order >= 1 but the function only matches e^z at z = 0.
    #[error("approximation order is 0; a stepping function needs order >= 1")]
    OrderBelowOne,
    /// Evaluation requested at (or numerically on top of) a denominator root.
    #[error("evaluation at a pole: z = {re} + {im}i")]
    EvaluationAtPole { re: f64, im: f64 },
    /// Vector length does not match the operator dimension.
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    /// Factorization of (I - tau w A) failed.
    #[error("singular shifted system for w = {re} + {im}i, tau = {tau}")]
    SingularShift { re: f64, im: f64, tau: f64 },
    /// Requested step size is not below the threshold for the operator's growth bound.
    #[error("step size {tau} >= threshold {threshold}")]
    StepSizeAboveThreshold { tau: f64, threshold: f64 },
    /// The Vandermonde solve did not meet its verified residual tolerance.
    #[error("ill-conditioned interpolation nodes (residual {residual:.3e})")]
    IllConditionedNodes { residual: f64 },
    /// A nominally real integration accumulated a non-negligible imaginary part.
    #[error("imaginary residue too large: {residue:.3e} relative")]
    ImaginaryResidueTooLarge { residue: f64 },
    /// Convergence-order estimation was fed a non-positive error.
    #[error("non-positive error value in order estimation: {value}")]
    NonPositiveError { value: f64 },
    /// Unknown problem/method/scheme/table identifier.
    #[error("unknown identifier: {0}")]
    UnknownId(String),
    /// Malformed report or config text.
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
