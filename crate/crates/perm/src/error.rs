use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PermError {
    #[error("values are not a permutation of 1..={0}")]
    NotPermutation(usize),
    #[error("sequence has repeated entries")]
    Duplicate,
    #[error("sequence has incomparable entries")]
    Incomparable,
    #[error("index {index} out of range for size {n}")]
    IndexOutOfRange { index: usize, n: usize },
    #[error("index set is not strictly increasing")]
    NotIncreasing,
    #[error("expected {expected} blocks, got {got}")]
    Arity { expected: usize, got: usize },
    #[error("empty block in substitution")]
    EmptyBlock,
    #[error("parse error: {0}")]
    Parse(String),
    #[error("size {n} exceeds enumeration cap {cap}")]
    CapExceeded { n: usize, cap: usize },
}
