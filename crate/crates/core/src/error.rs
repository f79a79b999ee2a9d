use crate::matrix::IntMatrix;

/// Errors raised by the classification engine.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// A configured exhaustion or streaming bound was exceeded.
    #[error("capacity exceeded: {0}")]
    Capacity(String),

    /// A mathematical invariant that must hold did not. Always a bug or corrupt input.
    #[error("internal consistency violated: {0}")]
    Consistency(String),

    #[error("block of size {} matches no primitive class in the library", block.rows())]
    UnknownPrimitive { block: IntMatrix },

    #[error("incomplete data: {0}")]
    Incomplete(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("database schema: {0}")]
    Schema(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
