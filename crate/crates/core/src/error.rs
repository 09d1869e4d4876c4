use thiserror::Error;

/// Errors raised by hypergraph construction, matrix algebra and the search routines.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("invalid index: {0}")]
    InvalidIndex(String),
    #[error("invalid vertex: {0}")]
    InvalidVertex(String),
    #[error("unsupported structure: {0}")]
    UnsupportedStructure(String),
    #[error("invalid induce set: {0}")]
    InvalidInduceSet(String),
    #[error("numeric input: {0}")]
    NumericInput(String),
    #[error("scalar kind: {0}")]
    Kind(String),
    #[error("size cap exceeded: {0}")]
    SizeCap(String),
    #[error("result truncated: exact count {count} exceeds limit {limit}")]
    Truncated { count: String, limit: usize },
    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },
}

pub type Result<T> = std::result::Result<T, Error>;
