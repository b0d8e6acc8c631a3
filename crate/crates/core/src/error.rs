use thiserror::Error;

#[derive(Debug, Error)]
pub enum BmfError {
    #[error("dimension mismatch: {op} got {left:?} and {right:?}")]
    DimensionMismatch {
        op: &'static str,
        left: (usize, usize),
        right: (usize, usize),
    },

    #[error("{axis} index {index} out of range (size {size})")]
    IndexOutOfRange {
        axis: &'static str,
        index: usize,
        size: usize,
    },

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error("requested {requested} factors but only {available} are available")]
    PrefixTooLong { requested: usize, available: usize },

    #[error("product A∘B is not contained in the input matrix")]
    NotFromBelow,

    #[error("pair is not a formal concept of the matrix")]
    NotAConcept,

    #[error("interval is empty: generators do not form a rectangle of ones")]
    EmptyInterval,

    #[error("concept count exceeds the cap of {cap}; use a smaller input or raise the cap")]
    ConceptCapExceeded { cap: usize },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("greedy search stalled with {uncovered} uncovered cells")]
    Stalled { uncovered: usize },
}

pub type Result<T> = std::result::Result<T, BmfError>;
