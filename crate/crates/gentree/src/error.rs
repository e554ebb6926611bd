use permlab_perm::PermError;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GenTreeError {
    #[error("label {label} exceeds the cap {cap}")]
    LabelCap { label: u64, cap: u32 },
    #[error("label {0} has no children entry")]
    UnknownLabel(u32),
    #[error("inconsistent path: {0}")]
    Inconsistent(String),
    #[error("not in the class: {0}")]
    NotInClass(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("need at least {min} repetitions, got {reps}")]
    TooFewReps { reps: usize, min: usize },
    #[error(transparent)]
    Perm(#[from] PermError),
}
