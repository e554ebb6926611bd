use std::collections::BTreeMap;

use num_rational::Ratio;
use permlab_perm::{pattern_at, Perm, PermError};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LocalError {
    #[error("root {root} out of range for size {n}")]
    RootOutOfRange { root: usize, n: usize },
    #[error(transparent)]
    Perm(#[from] PermError),
    #[error("need at least {0} replicates")]
    TooFewReps(usize),
    #[error("sampler failed: {0}")]
    Sampler(String),
}

/// A permutation with a distinguished 1-based position.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RootedPerm {
    perm: Perm,
    root: usize,
}

impl RootedPerm {
    pub fn new(perm: Perm, root: usize) -> Result<Self, LocalError> {
        if root == 0 || root > perm.len() {
            return Err(LocalError::RootOutOfRange { root, n: perm.len() });
        }
        Ok(RootedPerm { perm, root })
    }

    pub fn perm(&self) -> &Perm {
        &self.perm
    }

    pub fn root(&self) -> usize {
        self.root
    }

    pub fn len(&self) -> usize {
        self.perm.len()
    }

    pub fn is_empty(&self) -> bool {
        self.perm.is_empty()
    }

    /// `r_h` of this rooted permutation.
    pub fn restrict(&self, h: usize) -> RootedPerm {
        restrict(&self.perm, self.root, h).expect("root is valid")
    }

    /// Radius beyond which `r_h` stops changing.
    pub fn full_radius(&self) -> usize {
        (self.root - 1).max(self.len() - self.root)
    }
}

/// `r_h(σ, i) = (pat_[a,b](σ), i − a + 1)` with `a = max(1, i − h)`, `b = min(n, i + h)`.
pub fn restrict(sigma: &Perm, i: usize, h: usize) -> Result<RootedPerm, LocalError> {
    let n = sigma.len();
    if i == 0 || i > n {
        return Err(LocalError::RootOutOfRange { root: i, n });
    }
    let a = i.saturating_sub(h).max(1);
    let b = (i + h).min(n);
    let idx: Vec<usize> = (a..=b).collect();
    Ok(RootedPerm { perm: pattern_at(sigma, &idx)?, root: i - a + 1 })
}

/// `2^{-s}` where `s` is the largest `h ≥ 1` with equal `h`-restrictions.
///
/// For equal inputs the supremum is capped at the larger full radius of the
/// two (at least 1), past which restrictions no longer change.
pub fn local_distance(x: &RootedPerm, y: &RootedPerm) -> Ratio<u64> {
    let cap = x.full_radius().max(y.full_radius()).max(1);
    let mut s = 0;
    for h in 1..=cap {
        if x.restrict(h) != y.restrict(h) {
            break;
        }
        s = h;
    }
    Ratio::new(1, 1u64 << s.min(63))
}

/// Counts of `r_h(σ, i)` over `i ∈ [n]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Histogram {
    pub n: usize,
    pub counts: BTreeMap<RootedPerm, u64>,
}

impl Histogram {
    pub fn freq(&self, r: &RootedPerm) -> Ratio<u64> {
        Ratio::new(self.counts.get(r).copied().unwrap_or(0), self.n as u64)
    }
}

pub fn restriction_histogram(sigma: &Perm, h: usize) -> Histogram {
    let mut counts = BTreeMap::new();
    for i in 1..=sigma.len() {
        *counts.entry(restrict(sigma, i, h).expect("in range")).or_insert(0) += 1;
    }
    Histogram { n: sigma.len(), counts }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(s: &str, i: usize) -> RootedPerm {
        RootedPerm::new(Perm::parse(s).unwrap(), i).unwrap()
    }

    #[test]
    fn restriction_examples() {
        let s = Perm::parse("752934861").unwrap();
        assert_eq!(restrict(&s, 4, 2).unwrap(), r("41523", 3));
        assert_eq!(restrict(&s, 4, 9).unwrap(), r("752934861", 4));
        assert_eq!(restrict(&Perm::parse("321").unwrap(), 2, 1).unwrap(), r("321", 2));
        assert_eq!(restrict(&s, 1, 0).unwrap(), r("1", 1));
        assert!(restrict(&s, 10, 1).is_err());
    }

    #[test]
    fn distance_examples() {
        assert_eq!(local_distance(&r("1", 1), &r("12", 1)), Ratio::new(1, 1));
        assert_eq!(local_distance(&r("123", 2), &r("132", 2)), Ratio::new(1, 1));
        assert_eq!(local_distance(&r("12345", 3), &r("12345", 3)), Ratio::new(1, 4));
        assert_eq!(local_distance(&r("21345", 3), &r("12345", 3)), Ratio::new(1, 2));
        assert_eq!(local_distance(&r("1", 1), &r("1", 1)), Ratio::new(1, 2));
    }

    #[test]
    fn histogram_examples() {
        let h = restriction_histogram(&Perm::identity(5), 1);
        assert_eq!(h.freq(&r("123", 2)), Ratio::new(3, 5));
        assert_eq!(h.freq(&r("12", 1)), Ratio::new(1, 5));
        assert_eq!(h.freq(&r("12", 2)), Ratio::new(1, 5));
        let one = restriction_histogram(&Perm::identity(1), 3);
        assert_eq!(one.freq(&r("1", 1)), Ratio::new(1, 1));
        let zero = restriction_histogram(&Perm::parse("2413").unwrap(), 0);
        assert_eq!(zero.freq(&r("1", 1)), Ratio::new(1, 1));
    }
}
