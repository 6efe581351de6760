//! Error type shared by every module of the crate.

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("matrix is not square: {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },

    #[error("non-finite matrix entry")]
    NonFinite,

    #[error("operator is not hermitian (max deviation {0:e})")]
    NotHermitian(f64),

    #[error("operator is not unitary (max deviation {0:e})")]
    NotUnitary(f64),

    #[error("invalid density matrix: {0}")]
    InvalidState(String),

    #[error("invalid factorization: product of {dims:?} does not equal {dim}")]
    InvalidFactorization { dims: Vec<usize>, dim: usize },

    #[error("parameter out of domain: {0}")]
    Domain(String),

    #[error("divergence: {0}")]
    Divergence(String),

    #[error("numerical accuracy not reached: {what} (estimate {estimate:e}, error {error:e})")]
    Accuracy { what: String, estimate: f64, error: f64 },

    #[error("steady state is not unique: null space has dimension {0}")]
    AmbiguousSteadyState(usize),

    #[error("operating point outside the required regime: {0}")]
    Regime(String),

    #[error("undefined ratio: {0}")]
    Undefined(String),

    #[error("outcome space too large: {0} atoms")]
    TooLarge(usize),

    #[error("io: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
