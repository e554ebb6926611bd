use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FeasibleError {
    #[error("k = {k} outside 2..={max}")]
    KOutOfRange { k: usize, max: usize },
    #[error("more than {0} simple cycles")]
    CycleCeiling(usize),
    #[error("vector has {got} coordinates, expected {expected}")]
    Length { got: usize, expected: usize },
    #[error("permutation of size {n} is shorter than k = {k}")]
    TooShort { n: usize, k: usize },
    #[error("csv: {0}")]
    Csv(String),
}
