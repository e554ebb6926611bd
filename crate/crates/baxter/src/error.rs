use permlab_perm::PermError;
use permlab_permuton::PermutonError;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum BaxterError {
    #[error("increment ({0}, {1}) after point {2} is not in A")]
    NotInA(i64, i64, usize),
    #[error("not a tandem walk: {0}")]
    NotTandem(String),
    #[error("malformed map: {0}")]
    Malformed(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("no accepted proposal after {0} tries")]
    RejectionCap(u64),
    #[error("inconsistent coalescent order: {0}")]
    Inconsistent(String),
    #[error("diagram mismatch on {walk}: bobp = {bobp}, cpbp = {cpbp}")]
    DiagramMismatch { walk: String, bobp: String, cpbp: String },
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error("size {n} below threshold {min}")]
    TooSmall { n: usize, min: usize },
    #[error("non-finite increment at step {0}")]
    NonFinite(usize),
    #[error(transparent)]
    Perm(#[from] PermError),
    #[error(transparent)]
    Permuton(#[from] PermutonError),
}
