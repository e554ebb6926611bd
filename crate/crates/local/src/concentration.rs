use std::io::Write;

use permlab_perm::rng::{substream, Rng};
use permlab_perm::{Matcher, Perm};
use serde::Serialize;

use crate::LocalError;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ConcentrationRow {
    pub family: String,
    pub pi: String,
    pub n: usize,
    pub rep_count: usize,
    pub mean: f64,
    pub variance: f64,
    pub seed: u64,
}

/// Sample mean and unbiased variance of `cocc(π, σ)/n` over `reps` draws.
///
/// Replicate `r` draws from `substream(seed, family, r)`.
pub fn concentration_experiment<F, E>(
    family: &str,
    mut sampler: F,
    pis: &[Perm],
    n: usize,
    reps: usize,
    seed: u64,
) -> Result<Vec<ConcentrationRow>, LocalError>
where
    F: FnMut(usize, &mut Rng) -> Result<Perm, E>,
    E: std::fmt::Display,
{
    if reps < 2 {
        return Err(LocalError::TooFewReps(2));
    }
    let matchers: Vec<Matcher> = pis.iter().map(Matcher::new).collect();
    let mut samples = vec![Vec::with_capacity(reps); pis.len()];
    for r in 0..reps {
        let mut rng = substream(seed, family, r as u64);
        let s = sampler(n, &mut rng).map_err(|e| LocalError::Sampler(e.to_string()))?;
        for (m, out) in matchers.iter().zip(samples.iter_mut()) {
            out.push(m.count_consecutive(s.values()) as f64 / s.len().max(1) as f64);
        }
    }
    Ok(pis
        .iter()
        .zip(samples)
        .map(|(pi, xs)| {
            let mean = xs.iter().sum::<f64>() / reps as f64;
            let variance = xs.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (reps - 1) as f64;
            ConcentrationRow { family: family.into(), pi: pi.to_string(), n, rep_count: reps, mean, variance, seed }
        })
        .collect())
}

pub fn write_csv<W: Write>(rows: &[ConcentrationRow], w: W) -> csv::Result<()> {
    let mut wr = csv::Writer::from_writer(w);
    for r in rows {
        wr.serialize(r)?;
    }
    wr.flush()?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn degenerate_sampler() {
        let rows = concentration_experiment(
            "id",
            |n, _| Ok::<_, String>(Perm::identity(n)),
            &[Perm::parse("12").unwrap()],
            10,
            3,
            0,
        )
        .unwrap();
        assert!((rows[0].mean - 0.9).abs() < 1e-12);
        assert_eq!(rows[0].variance, 0.0);
        let mut out = Vec::new();
        write_csv(&rows, &mut out).unwrap();
        let text = String::from_utf8(out).unwrap();
        assert_eq!(text.lines().next().unwrap(), "family,pi,n,rep_count,mean,variance,seed");
    }

    #[test]
    fn needs_two_reps() {
        let r = concentration_experiment("id", |n, _| Ok::<_, String>(Perm::identity(n)), &[], 3, 1, 0);
        assert_eq!(r, Err(LocalError::TooFewReps(2)));
    }
}
