use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::PermError;

/// A permutation of `1..=n`, stored as its one-line notation.
#[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "crate::io::PermJson", into = "crate::io::PermJson")]
pub struct Perm {
    v: Vec<usize>,
}

impl Perm {
    pub fn new(v: Vec<usize>) -> Result<Self, PermError> {
        let n = v.len();
        let mut seen = vec![false; n + 1];
        for &x in &v {
            if x == 0 || x > n || seen[x] {
                return Err(PermError::NotPermutation(n));
            }
            seen[x] = true;
        }
        Ok(Perm { v })
    }

    /// Wraps `v` without checking it. `v` must be a permutation of `1..=v.len()`.
    pub fn from_vec_unchecked(v: Vec<usize>) -> Self {
        debug_assert!(Perm::new(v.clone()).is_ok());
        Perm { v }
    }

    pub fn empty() -> Self {
        Perm { v: Vec::new() }
    }

    pub fn identity(n: usize) -> Self {
        Perm { v: (1..=n).collect() }
    }

    pub fn decreasing(n: usize) -> Self {
        Perm { v: (1..=n).rev().collect() }
    }

    pub fn len(&self) -> usize {
        self.v.len()
    }

    pub fn is_empty(&self) -> bool {
        self.v.is_empty()
    }

    pub fn values(&self) -> &[usize] {
        &self.v
    }

    pub fn into_values(self) -> Vec<usize> {
        self.v
    }

    /// `σ(i)` for 1-based `i`.
    pub fn at(&self, i: usize) -> usize {
        self.v[i - 1]
    }

    pub fn inverse(&self) -> Perm {
        let mut w = vec![0; self.len()];
        for (i, &x) in self.v.iter().enumerate() {
            w[x - 1] = i + 1;
        }
        Perm { v: w }
    }

    pub fn reverse(&self) -> Perm {
        Perm { v: self.v.iter().rev().copied().collect() }
    }

    pub fn complement(&self) -> Perm {
        let n = self.len();
        Perm { v: self.v.iter().map(|&x| n + 1 - x).collect() }
    }

    /// Diagram turned a quarter turn clockwise: `j ↦ n + 1 - σ⁻¹(j)`.
    pub fn rotate_cw(&self) -> Perm {
        let n = self.len();
        let inv = self.inverse();
        Perm { v: inv.v.iter().map(|&x| n + 1 - x).collect() }
    }

    pub fn rotate_ccw(&self) -> Perm {
        self.inverse().reverse()
    }

    /// Digit string such as `13254`, only for sizes up to 9.
    pub fn compact(&self) -> Option<String> {
        if self.len() > 9 {
            return None;
        }
        Some(self.v.iter().map(|x| char::from(b'0' + *x as u8)).collect())
    }

    pub fn points(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.v.iter().enumerate().map(|(i, &x)| (i + 1, x))
    }
}

impl fmt::Display for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for x in &self.v {
            if !first {
                f.write_str(" ")?;
            }
            write!(f, "{x}")?;
            first = false;
        }
        Ok(())
    }
}

impl fmt::Debug for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.compact() {
            Some(s) if !s.is_empty() => write!(f, "Perm({s})"),
            _ => write!(f, "Perm[{self}]"),
        }
    }
}

impl TryFrom<Vec<usize>> for Perm {
    type Error = PermError;
    fn try_from(v: Vec<usize>) -> Result<Self, PermError> {
        Perm::new(v)
    }
}

/// The permutation with the same relative order as `seq`.
pub fn standardize<T: PartialOrd>(seq: &[T]) -> Result<Perm, PermError> {
    let n = seq.len();
    let mut idx: Vec<usize> = (0..n).collect();
    let mut bad = false;
    idx.sort_by(|&a, &b| {
        seq[a].partial_cmp(&seq[b]).unwrap_or_else(|| {
            bad = true;
            Ordering::Equal
        })
    });
    if bad || seq.iter().any(|x| x.partial_cmp(x).is_none()) {
        return Err(PermError::Incomparable);
    }
    let mut v = vec![0; n];
    for (r, w) in idx.windows(2).enumerate() {
        if seq[w[0]].partial_cmp(&seq[w[1]]) != Some(Ordering::Less) {
            return Err(PermError::Duplicate);
        }
        v[w[0]] = r + 1;
    }
    if let Some(&last) = idx.last() {
        v[last] = n;
    }
    Ok(Perm { v })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn standardize_words() {
        assert_eq!(standardize(&[30, 10, 20]).unwrap(), Perm::new(vec![3, 1, 2]).unwrap());
        assert_eq!(standardize(&[0.5, 2.5, -1.0]).unwrap().values(), &[2, 3, 1]);
        assert_eq!(standardize(&[1, 1]), Err(PermError::Duplicate));
        assert_eq!(standardize(&[1.0, f64::NAN]), Err(PermError::Incomparable));
        assert!(standardize::<u8>(&[]).unwrap().is_empty());
    }

    #[test]
    fn rejects_bad_values() {
        assert!(Perm::new(vec![1, 1]).is_err());
        assert!(Perm::new(vec![0, 1]).is_err());
        assert!(Perm::new(vec![2, 3]).is_err());
    }

    #[test]
    fn symmetries() {
        let s = Perm::new(vec![2, 4, 1, 3]).unwrap();
        assert_eq!(s.inverse().values(), &[3, 1, 4, 2]);
        assert_eq!(s.reverse().values(), &[3, 1, 4, 2]);
        assert_eq!(s.complement().values(), &[3, 1, 4, 2]);
        let r = Perm::new(vec![1, 3, 2]).unwrap();
        assert_eq!(r.rotate_cw().values(), &[3, 1, 2]);
        assert_eq!(r.rotate_cw().rotate_ccw(), r);
        assert_eq!(r.rotate_cw().rotate_cw(), r.reverse().complement());
    }
}
