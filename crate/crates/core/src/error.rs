use thiserror::Error;

/// Errors produced anywhere in the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("matrix is not square: {rows} rows, {cols} columns")]
    NotSquare { rows: usize, cols: usize },

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: String, found: String },

    /// The conditioning block of a covariance matrix is singular, so the
    /// matrix is not positive definite on that block.
    #[error("singular conditioning block on indices {indices:?}")]
    SingularConditioning { indices: Vec<usize> },

    #[error("index {index} out of range 1..={n}")]
    IndexOutOfRange { index: usize, n: usize },

    #[error("invalid statement: {0}")]
    InvalidStatement(String),

    #[error("unsupported model size n={n}; need n >= {min}")]
    UnsupportedSize { n: usize, min: usize },

    #[error("statement {0} is outside binomial scope (needs singleton A, B, C)")]
    NotBinomial(String),

    #[error("rows are not a lattice basis: rank {rank} < {rows} rows")]
    NotABasis { rank: usize, rows: usize },

    #[error("lattice spanned by the basis is not saturated")]
    NotSaturated,

    #[error("candidate search too large: {columns} columns exceeds cap {cap}")]
    SearchTooLarge { columns: usize, cap: usize },

    #[error("accepted component {smaller} is strictly contained in {larger}")]
    ContainmentViolation { smaller: String, larger: String },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("matrix is not positive definite")]
    NotPositiveDefinite,

    #[error("parse error at position {position}: {message}")]
    Parse { position: usize, message: String },

    #[error("invalid matrix document: {0}")]
    Document(String),

    #[error("internal inconsistency: {0}")]
    Internal(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
