use anyhow::{anyhow, bail, Context, Result};
use permlab_avoiders::{sample_av231, sample_av321, SeparableCounts};
use permlab_baxter::{skew_permuton_simulate, DriveMode, SkewDriveConfig, TandemSampler};
use permlab_gentree::{realize_1423_4123, Children, PathSampler, SuccessionRule};
use permlab_perm::rng::{substream, Rng};
use permlab_perm::{avoids, is_baxter, is_square, Perm};
use permlab_permuton::GridPermuton;
use permlab_square::{sample_square, Acceptance, SquareSampler};
use rayon::prelude::*;

use crate::args::{Family, ModelArgs, SquareAcceptance};

pub const DEFAULT_SKEW_CAP: u64 = 10_000_000;

#[derive(Clone, Debug)]
pub enum Draw {
    Perm(Perm),
    Permuton(GridPermuton),
}

enum Inner {
    Plain,
    Separable(SeparableCounts),
    Square(SquareSampler),
    Baxter(TandemSampler),
    Gentree(PathSampler),
    Skew(SkewDriveConfig),
}

/// A family sampler with its tables built once for size `n`.
pub struct Prepared {
    pub family: Family,
    pub n: usize,
    inner: Inner,
}

fn pats(list: &[&str]) -> Vec<Perm> {
    list.iter().map(|s| Perm::parse(s).expect("pattern literal")).collect()
}

pub fn load_rule(path: Option<&std::path::Path>) -> Result<SuccessionRule> {
    match path {
        None => Ok(SuccessionRule::av1423_4123()),
        Some(p) => {
            let s = std::fs::read_to_string(p).with_context(|| format!("reading {}", p.display()))?;
            Ok(SuccessionRule::from_json(&s)?)
        }
    }
}

impl Prepared {
    pub fn new(family: Family, n: usize, model: &ModelArgs) -> Result<Self> {
        if n == 0 {
            bail!("size must be at least 1");
        }
        let inner = match family {
            Family::Av231 | Family::Av321 => Inner::Plain,
            Family::Separable => Inner::Separable(SeparableCounts::new(n)),
            Family::Square => {
                let mut cfg = SquareSampler {
                    delta_exp: model.delta_exp,
                    acceptance: match model.acceptance {
                        SquareAcceptance::Literal => Acceptance::Literal,
                        SquareAcceptance::Operational => Acceptance::Operational,
                    },
                    ..SquareSampler::default()
                };
                if let Some(c) = model.cap {
                    cfg.max_tries = c;
                }
                Inner::Square(cfg)
            }
            Family::Baxter => Inner::Baxter(TandemSampler::new(n)?),
            Family::Gentree1423 => {
                let rule = load_rule(model.rule.as_deref())?;
                if !matches!(rule.children, Children::Builtin(_)) {
                    bail!("family gentree1423 needs the rule builtin:av1423_4123");
                }
                Inner::Gentree(PathSampler::new(&rule, n)?)
            }
            Family::SkewPermuton => {
                let mut cfg = SkewDriveConfig::new(model.rho, model.q, n);
                cfg.mode = DriveMode::GaussianExcursion { cap: model.cap.unwrap_or(DEFAULT_SKEW_CAP) };
                Inner::Skew(cfg)
            }
        };
        Ok(Prepared { family, n, inner })
    }

    /// One draw, checked against the family predicate.
    pub fn draw(&self, rng: &mut Rng) -> Result<Draw> {
        let n = self.n;
        let d = match &self.inner {
            Inner::Plain => Draw::Perm(match self.family {
                Family::Av231 => sample_av231(n, rng)?,
                _ => sample_av321(n, rng)?,
            }),
            Inner::Separable(c) => Draw::Perm(c.sample(n, rng)?),
            Inner::Square(cfg) => Draw::Perm(sample_square(n, cfg, rng)?.perm),
            Inner::Baxter(s) => Draw::Perm(s.sample_baxter(rng)),
            Inner::Gentree(s) => Draw::Perm(realize_1423_4123(&s.sample(rng)?)?),
            Inner::Skew(cfg) => Draw::Permuton(skew_permuton_simulate(cfg, rng)?.grid),
        };
        check(self.family, &d)?;
        Ok(d)
    }

    pub fn draw_perm(&self, rng: &mut Rng) -> Result<Perm> {
        match self.draw(rng)? {
            Draw::Perm(p) => Ok(p),
            Draw::Permuton(_) => Err(anyhow!("family {} yields permutons", self.family.name())),
        }
    }

    /// Draw `r` uses `substream(seed, family, r)`; order is by `r`.
    pub fn draw_many(&self, seed: u64, reps: usize, jobs: usize) -> Result<Vec<Draw>> {
        let name = self.family.name();
        let one = |r: usize| self.draw(&mut substream(seed, name, r as u64));
        if jobs <= 1 {
            return (0..reps).map(one).collect();
        }
        let pool = rayon::ThreadPoolBuilder::new().num_threads(jobs).build()?;
        pool.install(|| (0..reps).into_par_iter().map(one).collect())
    }
}

/// The family predicate.
pub fn check(family: Family, d: &Draw) -> Result<()> {
    let ok = match (family, d) {
        (Family::Av231, Draw::Perm(p)) => avoids(p, &pats(&["231"])),
        (Family::Av321, Draw::Perm(p)) => avoids(p, &pats(&["321"])),
        (Family::Separable, Draw::Perm(p)) => avoids(p, &pats(&["2413", "3142"])),
        (Family::Square, Draw::Perm(p)) => is_square(p),
        (Family::Baxter, Draw::Perm(p)) => is_baxter(p),
        (Family::Gentree1423, Draw::Perm(p)) => avoids(p, &pats(&["1423", "4123"])),
        (Family::SkewPermuton, Draw::Permuton(g)) => uniform_marginals(g),
        _ => false,
    };
    if !ok {
        bail!("sampled object fails the {} predicate", family.name());
    }
    Ok(())
}

/// Every row and column of the grid carries mass `1/m`.
pub fn uniform_marginals(g: &GridPermuton) -> bool {
    let m = g.resolution();
    let mut rows = vec![0u64; m];
    let mut cols = vec![0u64; m];
    for &(i, j, w) in g.cells() {
        rows[i - 1] += w;
        cols[j - 1] += w;
    }
    let target = g.denom() / m as u64;
    g.denom().is_multiple_of(m as u64) && rows.iter().chain(&cols).all(|&s| s == target)
}
