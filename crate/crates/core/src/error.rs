use thiserror::Error;

/// Errors shared by every solver and construction in this crate.
#[derive(Debug, Error)]
pub enum Error {
    /// Matrix shapes, vector lengths or index ranges do not line up.
    #[error("dimension error: {0}")]
    Dimension(String),

    /// A precondition on the input values is violated.
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// The instance exceeds a configured size or node budget.
    #[error("size cap exceeded: {0}")]
    SizeCap(String),

    /// A checked integer operation overflowed.
    #[error("arithmetic overflow while computing costs")]
    Overflow,

    /// An internal consistency check failed; this indicates a bug.
    #[error("internal invariant violated: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
