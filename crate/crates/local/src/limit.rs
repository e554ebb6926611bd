use std::collections::BTreeMap;

use num_rational::Ratio;
use permlab_perm::Perm;
use rand::{Rng, RngCore};

use crate::RootedPerm;

/// Limiting local orders on `ℤ` driven by i.i.d. fair `±` labels.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LimitVariant {
    /// Local limit of uniform Av(321): minus labels increasing, then plus labels increasing.
    Av321,
    /// Square order `≼_j` with fixed `j ∈ {1, 2, 3, 4}`.
    Square(u8),
    /// Square order with `j = J(u, v)` for independent uniform `u, v`.
    SquareAnnealed,
}

/// The region of `[0,1]²` that selects the local order at a point of the square permuton.
pub fn square_j(u: f64, v: f64) -> u8 {
    if u < 0.5 && u <= v && v <= 1.0 - u {
        1
    } else if v < u.min(1.0 - u) {
        2
    } else if v > u.max(1.0 - u) {
        3
    } else {
        4
    }
}

/// Restriction to `[-h, h]` of the order `≼_j` for the given labels (`true` is `+`).
///
/// Minus-labelled sites precede plus-labelled ones. `j = 2` reverses the minus
/// class, `j = 3` the plus class, `j = 4` both.
pub fn order_window(j: u8, plus: &[bool]) -> RootedPerm {
    assert!((1..=4).contains(&j), "order index must be in 1..=4");
    let m = plus.len();
    assert!(m % 2 == 1, "window must have odd length");
    let mut minus: Vec<usize> = (0..m).filter(|&i| !plus[i]).collect();
    let mut pl: Vec<usize> = (0..m).filter(|&i| plus[i]).collect();
    if j == 2 || j == 4 {
        minus.reverse();
    }
    if j == 3 || j == 4 {
        pl.reverse();
    }
    let mut v = vec![0; m];
    for (rank, &i) in minus.iter().chain(&pl).enumerate() {
        v[i] = rank + 1;
    }
    RootedPerm::new(Perm::from_vec_unchecked(v), m / 2 + 1).expect("centre is in range")
}

pub fn sample_limit_restriction<R: RngCore + ?Sized>(variant: LimitVariant, h: usize, rng: &mut R) -> RootedPerm {
    let plus: Vec<bool> = (0..2 * h + 1).map(|_| rng.random::<bool>()).collect();
    let j = match variant {
        LimitVariant::Av321 => 1,
        LimitVariant::Square(j) => j,
        LimitVariant::SquareAnnealed => {
            let u: f64 = rng.random();
            let v: f64 = rng.random();
            square_j(u, v)
        }
    };
    order_window(j, &plus)
}

/// Law of `r_h` of the limiting object, by enumerating every label vector.
pub fn exact_law(variant: LimitVariant, h: usize) -> BTreeMap<RootedPerm, Ratio<u64>> {
    let m = 2 * h + 1;
    assert!(m <= 25, "window too large to enumerate");
    let js: Vec<u8> = match variant {
        LimitVariant::Av321 => vec![1],
        LimitVariant::Square(j) => vec![j],
        LimitVariant::SquareAnnealed => vec![1, 2, 3, 4],
    };
    let denom = (1u64 << m) * js.len() as u64;
    let mut law = BTreeMap::new();
    for &j in &js {
        for mask in 0u64..(1 << m) {
            let plus: Vec<bool> = (0..m).map(|i| mask >> i & 1 == 1).collect();
            *law.entry(order_window(j, &plus)).or_insert(Ratio::new(0, 1)) += Ratio::new(1, denom);
        }
    }
    law
}
