//! Seeded random streams.
//!
//! Every stochastic routine draws from `substream(seed, name, index)`, so a
//! replicate depends only on its own coordinates and not on scheduling.

use num_bigint::BigUint;
use rand::{Rng as _, RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub type Rng = ChaCha8Rng;

fn splitmix(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

fn fnv1a(s: &str) -> u64 {
    s.bytes().fold(0xcbf2_9ce4_8422_2325, |h, b| (h ^ b as u64).wrapping_mul(0x0100_0000_01b3))
}

pub fn substream(seed: u64, name: &str, index: u64) -> Rng {
    let k = splitmix(splitmix(seed) ^ fnv1a(name));
    Rng::seed_from_u64(splitmix(k ^ splitmix(index)))
}

/// Uniform integer in `[0, bound)`. `bound` must be positive.
pub fn random_below<R: RngCore + ?Sized>(bound: &BigUint, rng: &mut R) -> BigUint {
    assert!(bound.bits() > 0, "empty range");
    let bits = bound.bits();
    let bytes = bits.div_ceil(8) as usize;
    let extra = bytes as u64 * 8 - bits;
    let mut buf = vec![0u8; bytes];
    loop {
        rng.fill_bytes(&mut buf);
        buf[bytes - 1] &= 0xff >> extra;
        let x = BigUint::from_bytes_le(&buf);
        if &x < bound {
            return x;
        }
    }
}

/// Uniform real in `[0, 1)`.
pub fn unit<R: RngCore + ?Sized>(rng: &mut R) -> f64 {
    rng.random::<f64>()
}
