use thiserror::Error;

use crate::bicomplex::{Bidegree, ValidationReport};

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error(
        "subspace violation: column {column} of the smaller space is not in the span of the larger"
    )]
    SubspaceViolation { column: usize },

    #[error("invalid double complex:\n{0}")]
    InvalidComplex(ValidationReport),

    #[error("zigzag shape cannot be realized: {0}")]
    BadShape(String),

    #[error("bad generator spec: {0}")]
    BadSpec(String),

    #[error("bad bidegree {0}: both indices must be at least 1")]
    BadBidegree(Bidegree),

    #[error("the complex declares no complex dimension `n`")]
    MissingDimension,

    #[error("q = {q} is outside 1..={n}")]
    BadQ { q: i64, n: usize },

    #[error("model dimension {0} is outside the supported range")]
    BadDimension(usize),

    #[error("unsupported natural map {source_kind} -> {target_kind}")]
    UnsupportedPair {
        source_kind: String,
        target_kind: String,
    },

    #[error("unknown statement `{0}`")]
    UnknownStatement(String),

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("Frölicher inequality violated in degree {degree}: b = {betti} > {dolbeault_sum}")]
    InequalityViolated {
        degree: i64,
        betti: usize,
        dolbeault_sum: usize,
    },
}
