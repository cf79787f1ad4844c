use thiserror::Error;

/// Errors raised by the library.
#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("matrix is not hermitian (max deviation {0:.3e})")]
    NotHermitian(f64),
    #[error("matrix is not unitary (max deviation {0:.3e})")]
    NotUnitary(f64),
    #[error("not a valid density matrix: {0}")]
    InvalidDensity(String),
    #[error("not a valid state: {0}")]
    InvalidState(String),
    #[error("linearly dependent seed vectors")]
    DependentSeeds,
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("did not converge within {0} iterations")]
    NoConvergence(usize),
    #[error("non-finite entry encountered")]
    NonFinite,
}
