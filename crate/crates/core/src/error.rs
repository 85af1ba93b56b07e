use thiserror::Error;

/// Errors raised by the `multisupp` library.
///
/// Mathematical verdicts (axiom violations, Ingleton failures, `M != Q`) are
/// returned as data; this type covers malformed input and violated
/// preconditions only.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("parse error on line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("classes live in different ambient spaces")]
    AmbientMismatch,

    #[error("invalid ambient space: {0}")]
    InvalidAmbient(String),

    #[error("basis rows are linearly dependent (rank {rank} < {rows} rows)")]
    DependentBasis { rank: usize, rows: usize },

    #[error("not a polymatroid rank function ({0} axiom violations)")]
    InvalidRankFunction(usize),

    #[error("ground set of size {0} exceeds the supported maximum of {1}")]
    GroundSetTooLarge(usize, usize),

    #[error("support set is empty")]
    EmptySupport,

    #[error("point set is not homogeneous (coordinate sums {0} and {1})")]
    NonHomogeneous(u64, u64),

    #[error("coordinate {coordinate} = {value} exceeds bound {bound}")]
    CoordinateOverflow { coordinate: usize, value: u64, bound: u64 },

    #[error("subspaces do not span the ambient space (span has dimension {span} < {ambient})")]
    SpanCondition { span: usize, ambient: usize },

    #[error("subspace {0} is zero")]
    ZeroSubspace(usize),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("matroid embedding failed verification after {0} attempts")]
    EmbeddingFailed(usize),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn parse_err(line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        message: message.into(),
    }
}
