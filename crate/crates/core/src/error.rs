use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: String, found: String },

    #[error("invalid Hilbert space dimension {dim} (requires {requirement})")]
    InvalidDimension { dim: usize, requirement: &'static str },

    #[error("matrix is not Hermitian (max |m - m†| = {residual:e})")]
    NotHermitian { residual: f64 },

    #[error("operator is not non-negative (min eigenvalue {min_eigenvalue:e})")]
    NotPositive { min_eigenvalue: f64 },

    #[error("input state is not pure (purity constraint off by {residual:e})")]
    NotPure { residual: f64 },

    #[error("Bloch coefficients violate m_ij* = m_ji (residual {residual:e})")]
    NotConjugateSymmetric { residual: f64 },

    #[error("state is not supported on the antisymmetric subspace (residual {residual:e})")]
    NotAntisymmetric { residual: f64 },

    #[error("{name} = {value} is out of range ({range})")]
    OutOfRange { name: &'static str, value: f64, range: &'static str },

    #[error("projection outcome has zero probability")]
    ZeroProbability,

    #[error("malformed serialized data: {0}")]
    Schema(String),
}

impl Error {
    pub(crate) fn dims(expected: impl ToString, found: impl ToString) -> Self {
        Error::DimensionMismatch { expected: expected.to_string(), found: found.to_string() }
    }
}
