use std::path::PathBuf;
use thiserror::Error;

/// Errors shared across the crate.
#[derive(Debug, Error)]
pub enum Error {
    #[error("row {row} has l2 norm below 1e-300 and cannot be normalized")]
    ZeroRow { row: usize },

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("n = {n} exceeds the exhaustive enumeration limit {max}; 2^n vertices is too many")]
    DimensionTooLarge { n: usize, max: usize },

    #[error("{what} = {value} exceeds the supported maximum {max}")]
    SizeGuard {
        what: &'static str,
        value: usize,
        max: usize,
    },

    #[error("orthogonal sampling hit a near-zero pivot on every retry")]
    DegenerateSample,

    #[error("unknown catalog entry `{0}`")]
    UnknownEntry(String),

    #[error("domain error: {0}")]
    DomainError(String),

    #[error("non-finite entry at row {row}, column {col}")]
    NonFinite { row: usize, col: usize },

    #[error("ragged row {row}: expected {expected} entries, got {got}")]
    RaggedRow {
        row: usize,
        expected: usize,
        got: usize,
    },

    #[error("matrix parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("io error on {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

pub type Result<T> = std::result::Result<T, Error>;
