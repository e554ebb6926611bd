use permlab_perm::{is_square, Perm};
use rand::{Rng, RngCore};

use crate::{delta, in_omega, project_phi, rho_unchecked, AnchoredPair, SquareError, XLabel, YLabel};

/// Acceptance rule for proposals.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Acceptance {
    /// Membership in the regular set, Petrov conditions evaluated literally.
    Literal,
    /// The matching succeeds, the output is square and projects back to the proposal.
    Operational,
}

#[derive(Clone, Copy, Debug)]
pub struct SquareSampler {
    pub delta_exp: f64,
    pub acceptance: Acceptance,
    pub max_tries: u64,
    pub min_n: usize,
}

impl Default for SquareSampler {
    fn default() -> Self {
        SquareSampler { delta_exp: 0.9, acceptance: Acceptance::Literal, max_tries: 100_000, min_n: 64 }
    }
}

#[derive(Clone, Debug)]
pub struct SquareSample {
    pub perm: Perm,
    pub pair: AnchoredPair,
    pub tries: u64,
}

/// Uniform good pair with anchor in `[lo, hi]`.
pub fn uniform_good_pair<R: RngCore + ?Sized>(n: usize, lo: usize, hi: usize, rng: &mut R) -> AnchoredPair {
    assert!(n >= 1 && 1 <= lo && lo <= hi && hi <= n);
    let z0 = loop {
        let z = rng.random_range(lo..=hi);
        if z == 1 || z == n || rng.random::<bool>() {
            break z;
        }
    };
    let mut x: Vec<XLabel> = (0..n).map(|_| if rng.random::<bool>() { XLabel::D } else { XLabel::U }).collect();
    let mut y: Vec<YLabel> = (0..n).map(|_| if rng.random::<bool>() { YLabel::L } else { YLabel::R }).collect();
    x[0] = XLabel::D;
    x[n - 1] = XLabel::D;
    x[z0 - 1] = XLabel::D;
    y[0] = YLabel::L;
    y[n - 1] = YLabel::L;
    AnchoredPair { x, y, z0 }
}

/// Good pair built from two-letter blocks `DU`/`UD` and `LR`/`RL`, end blocks fixed; `n` even.
pub fn balanced_regular_pair<R: RngCore + ?Sized>(n: usize, delta_exp: f64, rng: &mut R) -> Result<AnchoredPair, SquareError> {
    if n < 4 || n % 2 == 1 {
        return Err(SquareError::TooSmall { n, min: 4 });
    }
    let b = n / 2;
    let mut x = Vec::with_capacity(n);
    let mut y = Vec::with_capacity(n);
    for k in 0..b {
        let flip = if k == 0 { false } else if k == b - 1 { true } else { rng.random() };
        if flip {
            x.extend([XLabel::U, XLabel::D]);
            y.extend([YLabel::R, YLabel::L]);
        } else {
            x.extend([XLabel::D, XLabel::U]);
            y.extend([YLabel::L, YLabel::R]);
        }
    }
    let d = delta(n, delta_exp);
    let window: Vec<usize> = (d.max(1)..=n.saturating_sub(d)).filter(|&z| x[z - 1] == XLabel::D).collect();
    if window.is_empty() {
        return Err(SquareError::EmptyWindow { lo: d, hi: n.saturating_sub(d) });
    }
    let z0 = window[rng.random_range(0..window.len())];
    Ok(AnchoredPair { x, y, z0 })
}

/// Rejection sampler over good pairs followed by the matching.
pub fn sample_square<R: RngCore + ?Sized>(n: usize, cfg: &SquareSampler, rng: &mut R) -> Result<SquareSample, SquareError> {
    if n < cfg.min_n {
        return Err(SquareError::TooSmall { n, min: cfg.min_n });
    }
    let d = delta(n, cfg.delta_exp).max(1);
    if d + d > n {
        return Err(SquareError::EmptyWindow { lo: d, hi: n.saturating_sub(d) });
    }
    for tries in 1..=cfg.max_tries {
        let pair = uniform_good_pair(n, d, n - d, rng);
        let out = match cfg.acceptance {
            Acceptance::Literal => {
                if in_omega(&pair, cfg.delta_exp).is_err() {
                    continue;
                }
                Some(rho_unchecked(&pair)?.perm)
            }
            Acceptance::Operational => match rho_unchecked(&pair) {
                Ok(r) if is_square(&r.perm) && project_phi(&r.perm).as_ref() == Ok(&pair) => Some(r.perm),
                _ => None,
            },
        };
        if let Some(perm) = out {
            return Ok(SquareSample { perm, pair, tries });
        }
    }
    Err(SquareError::RejectionCap(cfg.max_tries))
}
