use permlab_perm::PermError;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SquareError {
    #[error("permutation is not square")]
    NotSquare,
    #[error("anchored pair is not good")]
    NotGood,
    #[error("anchored pair is not regular: {0}")]
    NotRegular(String),
    #[error("construction failed: {0}")]
    ConstructionFailure(String),
    #[error("anchor window [{lo}, {hi}] is empty")]
    EmptyWindow { lo: usize, hi: usize },
    #[error("no accepted proposal after {0} tries")]
    RejectionCap(u64),
    #[error("size {n} below threshold {min}")]
    TooSmall { n: usize, min: usize },
    #[error("parse error: {0}")]
    Parse(String),
    #[error(transparent)]
    Perm(#[from] PermError),
}
