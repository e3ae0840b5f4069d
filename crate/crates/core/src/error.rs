use thiserror::Error;

/// Errors raised by permutation construction and the operations built on it.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("duplicate symbol {0}")]
    DuplicateSymbol(String),

    #[error("malformed permutation text {text:?}: {reason}")]
    Parse { text: String, reason: String },

    #[error("{what} {value} out of range {lo}..={hi}")]
    OutOfRange {
        what: &'static str,
        value: i64,
        lo: i64,
        hi: i64,
    },

    #[error("length mismatch: {0}")]
    LengthMismatch(String),

    /// Blocks of an interleaving are not value-separated as required.
    #[error("level separation violated: {0}")]
    LevelSeparation(String),

    /// The medium block of an interleaving contains a square.
    #[error("medium block is not square-free (square at {start} with half length {half_len})")]
    MediumNotSquareFree { start: usize, half_len: usize },

    #[error("wrapper symbols do not dominate the permutation: {0}")]
    Dominance(String),

    #[error("permutation was not produced by {expected}")]
    WrongProvenance { expected: &'static str },

    #[error("permutation is not square-free")]
    NotSquareFree,

    #[error("position set is over length {set_n} but permutation has length {perm_n}")]
    PositionSetLength { set_n: usize, perm_n: usize },

    #[error("invalid position pattern {0:?}")]
    PositionPattern(String),

    #[error("length {n} is above the search ceiling {ceiling}; pass an explicit override")]
    AboveCeiling { n: usize, ceiling: usize },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("duplicate hit {0} across shards")]
    DuplicateHit(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
