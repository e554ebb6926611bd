use crate::{Perm, PermError};

pub const CAP_ENV: &str = "PERMLAB_CAP";

/// Largest size brute-force enumeration will accept: `$PERMLAB_CAP`, else 10.
pub fn default_cap() -> usize {
    std::env::var(CAP_ENV).ok().and_then(|s| s.trim().parse().ok()).unwrap_or(10)
}

pub fn factorial(n: usize) -> u128 {
    (1..=n as u128).product()
}

/// All permutations of size `n` in lexicographic order.
pub struct NextPerm {
    cur: Option<Vec<usize>>,
}

impl Iterator for NextPerm {
    type Item = Perm;

    fn next(&mut self) -> Option<Perm> {
        let v = self.cur.as_mut()?;
        let out = Perm::from_vec_unchecked(v.clone());
        let n = v.len();
        match (1..n).rev().find(|&i| v[i - 1] < v[i]) {
            None => self.cur = None,
            Some(i) => {
                let j = (i..n).rev().find(|&j| v[j] > v[i - 1]).unwrap();
                v.swap(i - 1, j);
                v[i..].reverse();
            }
        }
        Some(out)
    }
}

pub fn enumerate_all(n: usize) -> NextPerm {
    NextPerm { cur: Some((1..=n).collect()) }
}

/// Members of size `n` satisfying `pred`, lexicographically ordered.
pub fn enumerate_class<F: FnMut(&Perm) -> bool>(n: usize, cap: usize, mut pred: F) -> Result<Vec<Perm>, PermError> {
    if n > cap {
        return Err(PermError::CapExceeded { n, cap });
    }
    Ok(enumerate_all(n).filter(|p| pred(p)).collect())
}
