use num_bigint::BigUint;
use permlab_perm::{enumerate_class, internal_points, is_square, PermError};

use crate::{AnchoredPair, SquareError, XLabel, YLabel};

fn binomial(n: u64, k: u64) -> BigUint {
    (0..k).fold(BigUint::from(1u32), |acc, i| acc * (n - i) / (i + 1))
}

/// Closed form `2(n+2)4^{n-3} - 4(2n-5) C(2n-6, n-3)` for `n >= 3`.
pub fn count_square(n: usize) -> Result<BigUint, SquareError> {
    if n < 3 {
        return Err(SquareError::TooSmall { n, min: 3 });
    }
    let n = n as u64;
    let pos = BigUint::from(2 * (n + 2)) * BigUint::from(4u32).pow((n - 3) as u32);
    let neg = BigUint::from(4 * (2 * n - 5)) * binomial(2 * n - 6, n - 3);
    Ok(pos - neg)
}

pub fn count_square_brute(n: usize, cap: usize) -> Result<usize, SquareError> {
    Ok(enumerate_class(n, cap, is_square)?.len())
}

/// Permutations of size `n + k` with exactly `k` internal points.
pub fn count_almost_square(n: usize, k: usize, cap: usize) -> Result<usize, SquareError> {
    Ok(enumerate_class(n + k, cap, |s| internal_points(s) == k)?.len())
}

/// `2(n+2)4^{n-3}` for `n >= 3`.
pub fn count_good_pairs(n: usize) -> Result<BigUint, SquareError> {
    if n < 3 {
        return Err(SquareError::TooSmall { n, min: 3 });
    }
    Ok(BigUint::from(2 * (n as u64 + 2)) * BigUint::from(4u32).pow(n as u32 - 3))
}

/// Direct enumeration of the `4^n n` labelled triples; `n <= cap`.
pub fn count_good_pairs_brute(n: usize, cap: usize) -> Result<usize, SquareError> {
    if n == 0 || n > cap {
        return Err(PermError::CapExceeded { n, cap }.into());
    }
    let mut count = 0;
    for bits in 0..1usize << (2 * n) {
        let x: Vec<XLabel> = (0..n).map(|i| if bits >> i & 1 == 1 { XLabel::D } else { XLabel::U }).collect();
        let y: Vec<YLabel> = (0..n).map(|i| if bits >> (n + i) & 1 == 1 { YLabel::L } else { YLabel::R }).collect();
        for z0 in 1..=n {
            if (AnchoredPair { x: x.clone(), y: y.clone(), z0 }).is_good() {
                count += 1;
            }
        }
    }
    Ok(count)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_values() {
        assert_eq!(count_square(5).unwrap(), 104u32.into());
        assert_eq!(count_square(4).unwrap(), 24u32.into());
        assert_eq!(count_good_pairs(5).unwrap(), 224u32.into());
        assert_eq!(count_good_pairs_brute(5, 10).unwrap(), 224);
        assert!(count_square(2).is_err());
    }
}
