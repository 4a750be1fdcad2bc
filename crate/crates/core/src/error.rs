use thiserror::Error;

/// Errors raised while building or combining states, observables and channels.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("matrix is not square: {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("matrix is not Hermitian (max deviation {deviation:.3e})")]
    NotHermitian { deviation: f64 },

    #[error("operator is not positive semidefinite (min eigenvalue {min_eigenvalue:.3e})")]
    NotPositive { min_eigenvalue: f64 },

    #[error("state is not normalized (norm^2 = {norm_sq})")]
    NotNormalized { norm_sq: f64 },

    #[error("trace is {trace}, expected 1")]
    BadTrace { trace: f64 },

    #[error("{what} does not sum to the identity (max deviation {deviation:.3e})")]
    Incomplete { what: &'static str, deviation: f64 },

    #[error("invalid projector {index}: {reason}")]
    InvalidProjector { index: usize, reason: String },

    #[error("invalid probability distribution: {0}")]
    InvalidDistribution(String),

    #[error("non-finite entry in {0}")]
    NonFinite(&'static str),

    #[error("empty {0}")]
    Empty(&'static str),

    #[error("{0} is not prime")]
    NotPrime(usize),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("malformed input at `{field}`: {reason}")]
    Malformed { field: String, reason: String },
}

pub type Result<T> = std::result::Result<T, Error>;
