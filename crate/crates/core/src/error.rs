use thiserror::Error;

/// Every failure the library can report.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid interval [{lo}, {hi}] with cost {cost}")]
    InvalidInterval { lo: String, hi: String, cost: String },

    #[error("instance invariant violated: {0}")]
    InvariantViolation(String),

    #[error("parse error at line {line}, column {column}: {message}")]
    ParseError {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("interval {0} is trivial; the delta-shrink transform requires none")]
    TrivialInterval(usize),

    #[error("intervals {0} and {1} are still dependent")]
    UnresolvedDependency(usize, usize),

    #[error("forced precedence digraph contains a cycle through {0:?}")]
    CycleDetected(Vec<usize>),

    #[error("vertex {0} is not simplicial in the right-endpoint ordering")]
    NotSimplicial(usize),

    #[error("graph is not chordal")]
    NotChordal,

    #[error("component containing vertex {0} is not a tree")]
    NotTree(usize),

    #[error("instance has no realization values")]
    MissingRealization,

    #[error("instance too large for exhaustive search ({size} > {limit})")]
    TooLarge { size: u128, limit: u128 },

    #[error("expected-cost enumeration exceeded {0} branches")]
    TooManyBranches(usize),

    #[error("algorithm requires delta = 0, got {0}")]
    DeltaNotZero(String),

    #[error("algorithm requires uniform query costs")]
    NonUniformCosts,

    #[error("interval {0} was already queried")]
    AlreadyQueried(usize),

    #[error("refinement script of interval {0} is exhausted")]
    ScriptExhausted(usize),

    #[error("unsupported probability rule for this algorithm: {0}")]
    UnsupportedRule(String),

    #[error("invalid generator parameters: {0}")]
    InvalidParameters(String),
}

pub type Result<T> = std::result::Result<T, Error>;
