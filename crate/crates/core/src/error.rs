use thiserror::Error;

/// Errors raised while reading input or evaluating the algebraic machinery.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },

    #[error("line {line}: unknown label `{label}`")]
    UnknownLabel { line: usize, label: String },

    #[error("line {line}: non-composable relation `{relation}`")]
    NonComposable { line: usize, relation: String },

    #[error("relation `{0}` has length < 2")]
    ShortRelation(String),

    #[error("non-minimal relation set: `{divisor}` divides `{relation}`")]
    NonMinimal { divisor: String, relation: String },

    #[error("basis not finite within cap {cap}: witness path `{witness}`")]
    InfiniteBasis { cap: usize, witness: String },

    #[error("degree {requested} exceeds the computed resolution (max degree {available})")]
    DegreeOverflow { requested: usize, available: usize },

    #[error("tie between AP_{degree} elements `{first}` and `{second}` at offset {offset}")]
    AmbiguousMinimum {
        degree: usize,
        offset: usize,
        first: String,
        second: String,
    },

    /// Vertices are numbered from 1, as in quiver files.
    #[error("precondition violated: dim e_{from} A e_{to} = {dim}, expected 1")]
    ArrowSpace { from: usize, to: usize, dim: usize },

    #[error("invalid argument: {0}")]
    Invalid(String),

    #[error("verification failed: {0}")]
    Verification(String),
}

pub type Result<T> = std::result::Result<T, Error>;
