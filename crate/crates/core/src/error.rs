use thiserror::Error;

/// Failures reported by the numerical routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("quadrature on [{a}, {b}] stopped at error estimate {err_est:e} (tolerance {tol:e})")]
    AccuracyNotReached {
        a: f64,
        b: f64,
        tol: f64,
        err_est: f64,
    },

    #[error("eigensolver did not converge within {sweeps} sweeps (off-diagonal norm {off_norm:e})")]
    NoConvergence { sweeps: usize, off_norm: f64 },

    #[error("matrix is not positive definite: pivot {index} is {pivot:e}")]
    NotPositiveDefinite { index: usize, pivot: f64 },

    #[error("weight polynomial is not positive on [0, 1]: P({at}) = {value:e}")]
    NotPositive { at: f64, value: f64 },

    #[error("profile support exceeds [-{limit}, {limit}]")]
    SupportViolation { limit: f64 },

    #[error("inequality violated: value {value:e} below -{tol:e}")]
    InequalityViolated { value: f64, tol: f64 },

    #[error("found {found} roots, {requested} requested")]
    TooFewRoots { found: usize, requested: usize },

    #[error("zero denominator in quotient")]
    ZeroDenominator,
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidArgument(msg.into())
}
