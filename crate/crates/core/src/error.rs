use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("unknown theory `{0}` (expected list, mset, clist or set)")]
    UnknownTheory(String),
    #[error("syntax error at line {line}, column {column}: {message}")]
    Syntax { line: usize, column: usize, message: String },
    #[error("substitution did not stabilize within {cap} iterations")]
    NotStabilizing { cap: usize },
    #[error("term is not ground: {0}")]
    NotGround(String),
    #[error("branch limit of {limit} alternatives exceeded")]
    BranchLimitExceeded { limit: usize },
    #[error("rule-application limit of {limit} exceeded on one branch")]
    StepLimitExceeded { limit: usize },
    #[error("constraint is not in solved form: {0}")]
    NotSolvedForm(String),
    #[error("unsafe disequation: {0}")]
    UnsafeDisequation(String),
    #[error("witness failed ground verification: {0}")]
    VerificationFailed(String),
    #[error("oracle bound exceeded after {steps} steps")]
    BoundExceeded { steps: usize },
}
