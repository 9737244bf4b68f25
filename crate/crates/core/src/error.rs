use thiserror::Error;

/// Contract violations raised by the numerical routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("matrix is not square: {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },

    #[error("matrix is not Hermitian (max asymmetry {0:e})")]
    NotHermitian(f64),

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("operator is not positive semidefinite (eigenvalue {0:e})")]
    NotPositive(f64),

    #[error("trace is {0}, expected 1")]
    InvalidTrace(f64),

    #[error("Schatten exponent must satisfy p >= 1, got {0}")]
    InvalidExponent(f64),

    #[error("invalid spin: {0}")]
    InvalidSpin(String),

    #[error("quantum number out of range: {0}")]
    OutOfRange(String),

    #[error("Choi matrix is not positive semidefinite (min eigenvalue {0:e}); not a channel")]
    NotAChannel(f64),

    #[error("matrix is not unitary (residual {0:e})")]
    NotUnitary(f64),

    #[error("constraint violated: {0}")]
    Constraint(String),

    #[error("map spectrum has imaginary part {0:e} above tolerance")]
    ComplexSpectrum(f64),

    #[error("eigensolver failed to converge")]
    NoConvergence,
}

pub type Result<T> = std::result::Result<T, Error>;
