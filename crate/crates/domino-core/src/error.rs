use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DominoError {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("rank mismatch: {0} vs {1}")]
    RankMismatch(usize, usize),
    #[error("limit exceeded: {0}")]
    Limit(String),
    #[error("i/o error: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, DominoError>;

impl From<serde_json::Error> for DominoError {
    fn from(e: serde_json::Error) -> Self {
        DominoError::Parse(e.to_string())
    }
}

impl From<std::io::Error> for DominoError {
    fn from(e: std::io::Error) -> Self {
        DominoError::Io(e.to_string())
    }
}
