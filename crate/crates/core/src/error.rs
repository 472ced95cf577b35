use thiserror::Error;

/// Errors produced by graph, word, tour and solver operations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid vertex label {label:?}: {reason}")]
    InvalidLabel { label: String, reason: &'static str },

    #[error("unknown vertex {0}")]
    UnknownVertex(String),

    #[error("unknown vertex {vertex} at position {position}")]
    UnknownVertexAt { vertex: String, position: usize },

    #[error("letter {letter} occurs {count} times (expected exactly 2)")]
    MalformedWord { letter: String, count: usize },

    #[error("graph has {0} vertices; at most 64 are supported")]
    TooManyVertices(usize),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("resource limit reached in {what} after {count} items")]
    ResourceLimit { what: &'static str, count: u64 },

    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("invalid input at line {line}: {message}")]
    InvalidInput { line: usize, message: String },

    #[error("validation error at step {step}: {message}")]
    Validation { step: usize, message: String },

    #[error("soundness violation: {0}")]
    Soundness(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
