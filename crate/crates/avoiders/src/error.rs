use permlab_perm::PermError;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AvoidError {
    #[error("permutation contains {pattern} at positions {positions:?}")]
    Contains { pattern: &'static str, positions: [usize; 3] },
    #[error("size must be at least 1")]
    EmptySize,
    #[error("malformed tree: {0}")]
    Malformed(String),
    #[error(transparent)]
    Perm(#[from] PermError),
}
