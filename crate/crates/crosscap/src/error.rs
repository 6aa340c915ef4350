use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SchemeError {
    #[error("empty permutation")]
    Empty,
    #[error("0 is not a valid edge label")]
    Zero,
    #[error("edge {0} appears more than once")]
    DuplicateElement(u32),
    #[error("label {value} is out of range for {n} edges")]
    OutOfRange { value: i32, n: usize },
    #[error("cannot parse token {0:?} as a signed integer")]
    InvalidToken(String),
    #[error("edge {0} does not exist")]
    InvalidEdge(u32),
    #[error("the two edges of a cycle must differ")]
    SameEdge,
    #[error(
        "interval (start {start}, length {len}) is not a proper nonempty interval of {n} positions"
    )]
    InvalidInterval { start: usize, len: usize, n: usize },
    #[error("map is disconnected")]
    Disconnected,
    #[error("malformed map: {0}")]
    Malformed(String),
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum HpError {
    #[error("reversal sorting needs a non-orientable permutation without non-trivial blocks: {0}")]
    PreconditionViolated(String),
    #[error("pair ({0}, {1}) is not reversible")]
    NotReversible(u32, u32),
    #[error("internal invariant violated: {0}")]
    InternalInvariantViolated(String),
    #[error("search budget of {0} states exceeded")]
    SearchBudgetExceeded(usize),
    #[error("{0} cannot be sorted by reversals")]
    Unsortable(String),
    #[error("maximal-score sorting of {start} stalls at {at} after {steps} steps")]
    Stalled {
        start: String,
        at: String,
        steps: usize,
    },
    #[error(transparent)]
    Scheme(#[from] SchemeError),
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DrawingError {
    #[error("drawing is invalid: {0}")]
    Invalid(String),
    #[error("malformed drawing: {0}")]
    Malformed(String),
    #[error("reversal path does not end at the prefix boundary: {0}")]
    BoundaryMismatch(String),
    #[error("json: {0}")]
    Json(String),
    #[error(transparent)]
    Scheme(#[from] SchemeError),
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SynthesisError {
    #[error("{0} has no fantastic drawing")]
    FantasticException(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("edge {0} enters no cross-cap")]
    NoTransit(u32),
    #[error("no base drawing for {0}")]
    AssetMissing(String),
    #[error("search gave up after {0} nodes")]
    BudgetExhausted(usize),
    #[error("construction failed verification: {0}")]
    InternalInvariantViolated(String),
    #[error(transparent)]
    Hp(#[from] HpError),
    #[error(transparent)]
    Drawing(#[from] DrawingError),
    #[error(transparent)]
    Scheme(#[from] SchemeError),
    #[error(transparent)]
    Asset(#[from] AssetError),
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AssetError {
    #[error("cannot read asset {path}: {reason}")]
    Io { path: String, reason: String },
    #[error("cannot parse asset {path}: {reason}")]
    Parse { path: String, reason: String },
}
