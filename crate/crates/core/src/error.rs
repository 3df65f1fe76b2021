use thiserror::Error;

/// Errors produced by the library.
#[derive(Debug, Error)]
pub enum Error {
    /// An argument violates a documented precondition.
    #[error("invalid input: {0}")]
    Input(String),

    /// A tensor-power space would exceed the supported dimension.
    #[error("dimension {dim}^{power} exceeds the supported limit of {limit}")]
    Size { dim: usize, power: usize, limit: usize },

    /// A design, grouping or state file could not be read.
    #[error("failed to load {what}: {reason}")]
    Load { what: String, reason: String },

    /// A block of a POVM grouping does not resolve the identity.
    #[error("block {block} of the grouping is not a POVM: {reason}")]
    Assignment { block: usize, reason: String },

    /// The root solver did not converge.
    #[error("root solver failed: {0}")]
    Solver(String),

    /// A numerical identity that must hold exactly was violated.
    #[error("identity check failed: {0}")]
    Identity(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn input<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Input(msg.into()))
}
