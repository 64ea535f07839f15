use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// A record at `row` (1-based line number in the source) failed to parse.
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    /// A record parsed but violates the frame invariants.
    #[error("row {row}: {reason}")]
    InvalidFrame { row: usize, reason: String },

    #[error("no data: {0}")]
    NoData(String),

    #[error("schema error: {0}")]
    Schema(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidArgument(msg.into())
    }
}
