//! Crate-wide error type.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("I/O error: {0}")]
    Io(#[from] std::io::Error),

    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("invalid matrix: {0}")]
    InvalidMatrix(String),

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("interval division by an interval containing zero")]
    DivisionByZero,

    #[error("invalid interval encountered: {0}")]
    InvalidInterval(String),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("certification failed in {stage}: {detail}")]
    CertificationFailed { stage: &'static str, detail: String },

    #[error("linear solve failed: {0}")]
    SolveFailed(String),

    #[error("verification failed: {0}")]
    VerificationFailed(String),

    #[error("invalid configuration: {0}")]
    Config(String),
}

pub type Result<T> = std::result::Result<T, Error>;
