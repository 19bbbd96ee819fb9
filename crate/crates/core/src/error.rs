use thiserror::Error;

/// Crate-wide error type.
///
/// Resource guards and unsupported closed forms are expected, recoverable
/// conditions (callers fall back or refuse); invalid input covers malformed
/// domain objects such as a matrix that is not a signed permutation.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// A computation was refused because it exceeds a documented size guard.
    #[error("resource guard: {0}")]
    ResourceGuard(String),

    /// No closed form is available for these parameters.
    #[error("unsupported: {0}")]
    Unsupported(String),

    /// Matrices of different sizes were mixed in one operation.
    #[error("size mismatch: expected {expected}, got {got}")]
    SizeMismatch { expected: usize, got: usize },

    /// A value failed structural validation.
    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// A generator list failed the defining relations where they are required.
    #[error("relation check failed: {0}")]
    RelationsViolated(String),
}

impl Error {
    pub fn guard(msg: impl Into<String>) -> Self {
        Error::ResourceGuard(msg.into())
    }

    pub fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidInput(msg.into())
    }
}
