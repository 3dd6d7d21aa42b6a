use thiserror::Error;

/// Crate-wide error type.
#[derive(Debug, Clone, Error)]
pub enum Error {
    /// An operation that requires a Hermitian matrix received one that is not.
    #[error("matrix not Hermitian: max |H - H^dag| entry {deviation:.3e} exceeds tolerance {tolerance:.3e}")]
    NotHermitian { deviation: f64, tolerance: f64 },

    /// Incompatible shapes or layouts.
    #[error("dimension mismatch: {0}")]
    Dimension(String),

    /// An argument outside its documented domain.
    #[error("invalid argument: {0}")]
    Validation(String),

    /// The instance exceeds a documented size budget.
    #[error("instance too large: {0}")]
    Capacity(String),

    /// The operation is not defined for these inputs.
    #[error("unsupported: {0}")]
    Unsupported(String),

    /// A numerical routine failed to reach its accuracy target.
    #[error("numerical failure: {0}")]
    Numerical(String),
}

pub type Result<T> = std::result::Result<T, Error>;
