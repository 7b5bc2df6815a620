use thiserror::Error;

/// Errors produced across the toolkit.
#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("syntax error at line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),
    #[error("invalid generator name `{0}`")]
    InvalidGeneratorName(String),
    #[error("duplicate generator `{0}`")]
    DuplicateGenerator(String),
    #[error("generator index {index} outside an alphabet of size {size}")]
    Domain { index: usize, size: usize },
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("unknown catalog entry `{0}`")]
    UnknownCatalogEntry(String),
    #[error("bad parameters for `{name}`: {reason}")]
    BadParameters { name: String, reason: String },
    #[error("group is not perfect (abelianization {0})")]
    NotPerfect(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("budget exhausted: {0}")]
    Exhausted(String),
    #[error("map is not well defined on the quotient: {0}")]
    IllDefinedMap(String),
    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),
    #[error("internal error: {0}")]
    Internal(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
