use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("extension degree {0} outside 1..=32")]
    FieldDegree(u32),
    #[error("division by zero")]
    DivisionByZero,
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("system is not uniquely decodable (rank {rank} < {unknowns} unknowns)")]
    Underdetermined { rank: usize, unknowns: usize },
    #[error("system has no solution")]
    Inconsistent,
    #[error("invalid parameters: {0}")]
    Params(String),
    #[error("{erased} erasures exceed the budget of {budget}")]
    BeyondBudget { erased: usize, budget: usize },
    #[error("input is not a codeword: {0}")]
    NotCodeword(String),
    #[error("node index {index} out of range for n={n}")]
    NodeIndex { index: usize, n: usize },
    #[error("erasure pattern does not match a node failure: {0}")]
    ErasurePattern(String),
    #[error("peeling stalled with {} unknown cells", .0.len())]
    NotPeelable(Vec<(usize, usize)>),
    #[error("decoder scheduler deadlocked: {0}")]
    Deadlock(String),
    #[error("decoder invariant violated: {0}")]
    Invariant(String),
    #[error("parse error: {0}")]
    Parse(String),
}
