use permlab_perm::rng::substream;
use permlab_perm::{cocc, Perm};

use crate::av1423::realize_1423_4123;
use crate::count::PathSampler;
use crate::rule::SuccessionRule;
use crate::GenTreeError;

pub const MIN_REPS: usize = 30;

#[derive(Clone, Debug, PartialEq)]
pub struct CltRow {
    pub n: usize,
    pub reps: usize,
    pub mean: f64,
    /// Unbiased sample variance.
    pub var: f64,
    pub mean_over_n: f64,
    pub var_over_n: f64,
}

/// Mean and variance of `cocc(pi, ·)` over `reps` draws of `sample(n, rep)`
/// at each size.
pub fn clt_scan<F>(mut sample: F, pi: &Perm, sizes: &[usize], reps: usize) -> Result<Vec<CltRow>, GenTreeError>
where
    F: FnMut(usize, usize) -> Result<Perm, GenTreeError>,
{
    if reps < MIN_REPS {
        return Err(GenTreeError::TooFewReps { reps, min: MIN_REPS });
    }
    let mut out = Vec::with_capacity(sizes.len());
    for &n in sizes {
        let mut xs = Vec::with_capacity(reps);
        for r in 0..reps {
            xs.push(cocc(pi, &sample(n, r)?) as f64);
        }
        let mean = xs.iter().sum::<f64>() / reps as f64;
        let var = xs.iter().map(|x| (x - mean) * (x - mean)).sum::<f64>() / (reps - 1) as f64;
        out.push(CltRow { n, reps, mean, var, mean_over_n: mean / n as f64, var_over_n: var / n as f64 });
    }
    Ok(out)
}

/// [`clt_scan`] for uniform permutations of `Av(1423, 4123)`; draw `r` at
/// size `n` uses the stream `(seed, "gentree-clt", n * 2^32 + r)`.
pub fn clt_scan_1423_4123(pi: &Perm, sizes: &[usize], reps: usize, seed: u64) -> Result<Vec<CltRow>, GenTreeError> {
    let rule = SuccessionRule::av1423_4123();
    let mut cached: Option<PathSampler> = None;
    clt_scan(
        |n, r| {
            if cached.as_ref().is_none_or(|s| s.n() != n) {
                cached = Some(PathSampler::new(&rule, n)?);
            }
            let mut rng = substream(seed, "gentree-clt", ((n as u64) << 32) | r as u64);
            realize_1423_4123(&cached.as_ref().unwrap().sample(&mut rng)?)
        },
        pi,
        sizes,
        reps,
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_point_pattern() {
        let rows = clt_scan_1423_4123(&Perm::identity(1), &[10, 50], 30, 3).unwrap();
        for r in rows {
            assert_eq!(r.mean, r.n as f64);
            assert_eq!(r.var, 0.0);
        }
    }

    #[test]
    fn needs_reps() {
        assert!(matches!(clt_scan_1423_4123(&Perm::identity(1), &[10], 29, 3), Err(GenTreeError::TooFewReps { .. })));
    }
}
