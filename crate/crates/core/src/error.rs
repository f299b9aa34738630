use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FieldError {
    #[error("{0} is not a prime")]
    NotPrime(u32),
}

/// Errors from reading or validating a signed PD code.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PdError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("edge {edge} appears {count} times (expected exactly 2)")]
    EdgeMultiplicity { edge: u32, count: usize },
    #[error("edge ids must be exactly 1..{edge_count}; {edge} is missing")]
    EdgeGap { edge: u32, edge_count: u32 },
    #[error("edge {edge} does not close up: entered {heads} time(s), left {tails} time(s)")]
    OpenComponent { edge: u32, heads: usize, tails: usize },
    #[error("declared {declared} component(s) but the crossings already form {found}")]
    ComponentCount { declared: usize, found: usize },
    #[error("unknown link {name:?}; available: {available}")]
    UnknownLink { name: String, available: String },
}

/// Quandle axiom violations. Element indices are 1-based, as in printed
/// quandle matrices.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum QuandleError {
    #[error("table is empty")]
    Empty,
    #[error("table is not square: row {row} has {len} entries, expected {n}")]
    NotSquare { row: usize, len: usize, n: usize },
    #[error("entry {value} at ({row},{col}) is outside 1..{n}")]
    EntryOutOfRange {
        row: usize,
        col: usize,
        value: usize,
        n: usize,
    },
    #[error("not idempotent: {0}▷{0} ≠ {0}")]
    NotIdempotent(usize),
    #[error("column {0} is not a permutation")]
    ColumnNotPermutation(usize),
    #[error("not self-distributive at ({0},{1},{2})")]
    NotSelfDistributive(usize, usize, usize),
    #[error("Alexander parameter t={t} is not a unit mod {p}")]
    AlexanderNotUnit { p: u32, t: i64 },
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error("quandle matrix file: line {line}: {message}")]
    Parse { line: usize, message: String },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroupError {
    #[error("Cayley table is empty")]
    Empty,
    #[error("Cayley table is not square")]
    NotSquare,
    #[error("entry at ({0},{1}) is out of range")]
    OutOfRange(usize, usize),
    #[error("no two-sided identity element")]
    NoIdentity,
    #[error("element {0} has no inverse")]
    NoInverse(usize),
    #[error("not associative at ({0},{1},{2})")]
    NotAssociative(usize, usize, usize),
    #[error("unknown group {0:?}")]
    Unknown(String),
    #[error("group file: line {line}: {message}")]
    Parse { line: usize, message: String },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("not associative on basis triple ({0},{1},{2})")]
    NotAssociative(usize, usize, usize),
    #[error("given unity is not a two-sided identity")]
    BadUnity,
    #[error("enumerating {size} elements exceeds the bound {bound}; embed explicit generators instead")]
    BoundExceeded { size: u128, bound: u128 },
    #[error("generator {0} is not a unit")]
    NotAUnit(String),
    #[error("no embedding of the quandle into the quandle of units was found")]
    NoEmbedding,
    #[error("invalid algebra spec {spec:?}: {message}")]
    BadSpec { spec: String, message: String },
}

/// Umbrella error for callers that mix modules (the CLI, reports).
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error(transparent)]
    Pd(#[from] PdError),
    #[error(transparent)]
    Quandle(#[from] QuandleError),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Field(#[from] FieldError),
}

impl Error {
    /// True when the failure is a resource bound rather than bad input.
    pub fn is_bound_exceeded(&self) -> bool {
        matches!(self, Error::Algebra(AlgebraError::BoundExceeded { .. }))
    }
}
