use thiserror::Error;

/// Errors raised by the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("inconsistent sizes: {0}")]
    SizeMismatch(String),
    #[error("ambient dimension mismatch: {left} vs {right}")]
    AmbientMismatch { left: usize, right: usize },
    #[error("{0} is not a supported prime")]
    NotPrime(u32),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("operator is not nilpotent")]
    NotNilpotent,
    #[error("operator is not self-adjoint for the form")]
    NotSelfAdjoint,
    #[error("form is not a nondegenerate alternating form: {0}")]
    BadForm(String),
    #[error("invariance violated: {0}")]
    InvarianceViolated(String),
    #[error("not an exotic point / theorem inconsistency: {0}")]
    NotExotic(String),
    #[error("bitableau content does not match the composition")]
    ContentMismatch,
    #[error("flag is not in the fiber: {0}")]
    NotInFiber(String),
    #[error("size guard exceeded: estimated {estimated} flags, guard {guard}")]
    GuardExceeded { estimated: u128, guard: u64 },
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
