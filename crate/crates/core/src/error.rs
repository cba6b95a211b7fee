use thiserror::Error;

/// Errors produced by the engine.
///
/// Input problems (bad files, invalid sub-hypergraphs, bad options) are kept
/// apart from internal consistency failures so the CLI can map them to exit
/// codes.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("parse error in {field}: {message}")]
    ParseField { field: String, message: String },

    #[error("not a sub-hypergraph: {0}")]
    NotContained(String),

    #[error("invalid morphism: {0}")]
    InvalidMorphism(String),

    #[error("size limit exceeded: {what} has {actual} elements, limit is {limit}")]
    SizeLimit {
        what: String,
        actual: usize,
        limit: usize,
    },

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("internal consistency failure: {0}")]
    Integrity(String),
}

impl Error {
    /// True for errors caused by the caller's input rather than the engine.
    pub fn is_input_error(&self) -> bool {
        !matches!(self, Error::Integrity(_))
    }
}

pub type Result<T> = std::result::Result<T, Error>;
