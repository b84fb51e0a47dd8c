use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AugError {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("size limit exceeded: {what} is {actual}, limit is {limit}")]
    SizeLimit {
        what: &'static str,
        actual: u64,
        limit: u64,
    },
    #[error("integrity error: {0}")]
    Integrity(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T, E = AugError> = std::result::Result<T, E>;

impl AugError {
    pub(crate) fn parse(line: usize, message: impl Into<String>) -> Self {
        AugError::Parse {
            line,
            message: message.into(),
        }
    }
}
