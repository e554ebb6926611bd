use num_bigint::BigUint;
use num_traits::One;
use permlab_perm::rng::random_below;
use permlab_perm::Perm;
use rand::{Rng, RngCore};

use crate::AvoidError;

/// Exact counts of separable permutations: `f[n]` total, `p[n]` ⊕-indecomposable.
#[derive(Clone, Debug)]
pub struct SeparableCounts {
    f: Vec<BigUint>,
    p: Vec<BigUint>,
}

impl SeparableCounts {
    pub fn new(n_max: usize) -> Self {
        let mut f = vec![BigUint::default(), BigUint::one()];
        let mut p = f.clone();
        for n in 2..=n_max.max(1) {
            let r: BigUint = (1..n).map(|j| &p[j] * &f[n - j]).sum();
            f.push(&r * 2u32);
            p.push(r);
        }
        SeparableCounts { f, p }
    }

    pub fn max_size(&self) -> usize {
        self.f.len() - 1
    }

    pub fn total(&self, n: usize) -> &BigUint {
        &self.f[n]
    }

    pub fn plus_indecomposable(&self, n: usize) -> &BigUint {
        &self.p[n]
    }

    /// Uniform separable permutation of size `n`.
    pub fn sample<R: RngCore + ?Sized>(&self, n: usize, rng: &mut R) -> Result<Perm, AvoidError> {
        if n == 0 {
            return Err(AvoidError::EmptySize);
        }
        assert!(n <= self.max_size(), "counts built up to {}", self.max_size());
        let mut v = Vec::with_capacity(n);
        self.any(n, rng, &mut v);
        Ok(Perm::from_vec_unchecked(v))
    }

    fn any<R: RngCore + ?Sized>(&self, n: usize, rng: &mut R, out: &mut Vec<usize>) {
        if n == 1 {
            out.push(1);
            return;
        }
        let start = out.len();
        self.plus_dec(n, rng, out);
        if rng.random::<bool>() {
            reverse_block(&mut out[start..]);
        }
    }

    fn plus_dec<R: RngCore + ?Sized>(&self, n: usize, rng: &mut R, out: &mut Vec<usize>) {
        let mut offset = 0;
        let mut m = n;
        loop {
            let mut x = random_below(&self.p[m], rng);
            let mut j = 1;
            loop {
                let w = &self.p[j] * &self.f[m - j];
                if x < w {
                    break;
                }
                x -= w;
                j += 1;
            }
            let start = out.len();
            if j == 1 {
                out.push(1);
            } else {
                self.plus_dec(j, rng, out);
                reverse_block(&mut out[start..]);
            }
            out[start..].iter_mut().for_each(|x| *x += offset);
            offset += j;
            m -= j;
            let start = out.len();
            if m == 1 {
                out.push(offset + 1);
                return;
            }
            if rng.random::<bool>() {
                continue;
            }
            self.plus_dec(m, rng, out);
            reverse_block(&mut out[start..]);
            out[start..].iter_mut().for_each(|x| *x += offset);
            return;
        }
    }
}

fn reverse_block(v: &mut [usize]) {
    v.reverse();
}

pub fn sample_separable<R: RngCore + ?Sized>(n: usize, rng: &mut R) -> Result<Perm, AvoidError> {
    SeparableCounts::new(n).sample(n, rng)
}

#[cfg(test)]
mod tests {
    use super::*;
    use permlab_perm::rng::substream;

    #[test]
    fn counts() {
        let c = SeparableCounts::new(8);
        let f: Vec<u64> = (1..=8).map(|n| c.total(n).try_into().unwrap()).collect();
        assert_eq!(f, [1, 2, 6, 22, 90, 394, 1806, 8558]);
    }

    #[test]
    fn samples_are_permutations() {
        let c = SeparableCounts::new(40);
        let mut rng = substream(1, "sep", 0);
        for n in 1..=40 {
            let p = c.sample(n, &mut rng).unwrap();
            assert!(Perm::new(p.values().to_vec()).is_ok());
        }
    }
}
