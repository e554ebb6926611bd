use permlab_perm::Perm;
use permlab_permuton::GridPermuton;
use rand::{Rng, RngCore};
use rand_distr::StandardNormal;

use crate::sample::TandemSampler;
use crate::BaxterError;

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum DriveMode {
    /// Free Gaussian walk.
    Gaussian,
    /// Gaussian bridge conditioned by rejection to stay in the quadrant.
    GaussianExcursion { cap: u64 },
    /// Uniform tandem walk from the exact sampler.
    Tandem,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum CrossingRule {
    /// New sign `+` with probability `q`, magnitude the overshoot.
    #[default]
    Resample,
    /// Coalescent-walk dynamics, with the sign of each new excursion flipped
    /// with probability `max(0, 1 - 2q)` if positive, `max(0, 2q - 1)` if
    /// negative. Equals `wcp` at `q = 1/2` on tandem drivers.
    Thinned,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SkewDriveConfig {
    pub rho: f64,
    pub q: f64,
    pub n: usize,
    pub mode: DriveMode,
    pub rule: CrossingRule,
    /// Output resolution; `0` means `n`. Must divide `n`.
    pub grid: usize,
}

impl SkewDriveConfig {
    pub fn new(rho: f64, q: f64, n: usize) -> Self {
        SkewDriveConfig { rho, q, n, mode: DriveMode::GaussianExcursion { cap: 10_000_000 }, rule: CrossingRule::Resample, grid: 0 }
    }

    fn check(&self) -> Result<(), BaxterError> {
        if !(-1.0..=1.0).contains(&self.rho) {
            return Err(BaxterError::Config(format!("rho = {} outside [-1, 1]", self.rho)));
        }
        if !(0.0..=1.0).contains(&self.q) {
            return Err(BaxterError::Config(format!("q = {} outside [0, 1]", self.q)));
        }
        let m = if self.grid == 0 { self.n } else { self.grid };
        if self.n == 0 || !self.n.is_multiple_of(m) {
            return Err(BaxterError::Config(format!("grid {m} does not divide n = {}", self.n)));
        }
        Ok(())
    }
}

#[derive(Clone, Debug)]
pub struct SkewOutcome {
    pub perm: Perm,
    pub grid: GridPermuton,
    /// Whether the sign relation of the family was transitive.
    pub total_order: bool,
}

/// `n` correlated standard Gaussian increment pairs.
pub fn gaussian_increments<R: RngCore + ?Sized>(n: usize, rho: f64, rng: &mut R) -> Vec<(f64, f64)> {
    let c = (1.0 - rho * rho).max(0.0).sqrt();
    (0..n)
        .map(|_| {
            let a: f64 = rng.sample(StandardNormal);
            let b: f64 = rng.sample(StandardNormal);
            (a, rho * a + c * b)
        })
        .collect()
}

/// `n` points of a Gaussian bridge of `n + 1` steps from and to the origin,
/// recentered linearly and kept only if both coordinates stay non-negative.
pub fn gaussian_excursion<R: RngCore + ?Sized>(n: usize, rho: f64, cap: u64, rng: &mut R) -> Result<Vec<(f64, f64)>, BaxterError> {
    let steps = n + 1;
    for _ in 0..cap {
        let inc = gaussian_increments(steps, rho, rng);
        let (sx, sy) = inc.iter().fold((0.0, 0.0), |a, d| (a.0 + d.0, a.1 + d.1));
        let (mut x, mut y) = (0.0, 0.0);
        let mut pts = Vec::with_capacity(n);
        let mut ok = true;
        for (k, d) in inc[..n].iter().enumerate() {
            x += d.0;
            y += d.1;
            let f = (k + 1) as f64 / steps as f64;
            let p = (x - f * sx, y - f * sy);
            if p.0 < 0.0 || p.1 < 0.0 {
                ok = false;
                break;
            }
            pts.push(p);
        }
        if ok {
            return Ok(pts);
        }
    }
    Err(BaxterError::RejectionCap(cap))
}

/// One step of the discrete skew rule with shared uniform `u`.
pub fn skew_step(z: f64, (dx, dy): (f64, f64), u: f64, q: f64) -> f64 {
    let prop = if z > 0.0 { z + dy } else { z - dx };
    let crosses = (z > 0.0 && prop < 0.0) || (z < 0.0 && prop > 0.0) || (z == 0.0 && prop != 0.0);
    if crosses {
        if u < q {
            prop.abs()
        } else {
            -prop.abs()
        }
    } else {
        prop
    }
}

/// One step of the thinned rule with shared uniform `u`.
pub fn thinned_step(z: f64, (dx, dy): (f64, f64), u: f64, q: f64) -> f64 {
    let p = if z >= 0.0 {
        z + dy
    } else if z - dx < 0.0 {
        z - dx
    } else {
        dy
    };
    if p == 0.0 || (p > 0.0) == (z > 0.0) && z != 0.0 {
        return p;
    }
    let flip = if p > 0.0 { 1.0 - 2.0 * q } else { 2.0 * q - 1.0 };
    if u < flip {
        -p
    } else {
        p
    }
}

impl CrossingRule {
    pub fn step(self, z: f64, d: (f64, f64), u: f64, q: f64) -> f64 {
        match self {
            CrossingRule::Resample => skew_step(z, d, u, q),
            CrossingRule::Thinned => thinned_step(z, d, u, q),
        }
    }
}

/// Single trajectory started at 0 before the first increment.
pub fn skew_trajectory<R: RngCore + ?Sized>(inc: &[(f64, f64)], q: f64, rule: CrossingRule, rng: &mut R) -> Vec<f64> {
    let mut z = vec![0.0];
    for &d in inc {
        let u = rng.random::<f64>();
        z.push(rule.step(*z.last().unwrap(), d, u, q));
    }
    z
}

/// Runs the family started at every point of `points`, one shared coin per
/// step, and ranks the starts by the sign relation.
pub fn skew_from_points<R: RngCore + ?Sized>(
    points: &[(f64, f64)],
    q: f64,
    rule: CrossingRule,
    grid: usize,
    rng: &mut R,
) -> Result<SkewOutcome, BaxterError> {
    let n = points.len();
    if let Some(k) = points.iter().position(|p| !p.0.is_finite() || !p.1.is_finite()) {
        return Err(BaxterError::NonFinite(k));
    }
    let m = if grid == 0 { n } else { grid };
    if n == 0 || !n.is_multiple_of(m) {
        return Err(BaxterError::Config(format!("grid {m} does not divide n = {n}")));
    }
    let inc: Vec<(f64, f64)> = points.windows(2).map(|w| (w[1].0 - w[0].0, w[1].1 - w[0].1)).collect();
    let coins: Vec<f64> = inc.iter().map(|_| rng.random::<f64>()).collect();
    let mut score = vec![0usize; n];
    for i in 0..n {
        let mut z = 0.0;
        for t in i + 1..n {
            z = rule.step(z, inc[t - 1], coins[t - 1], q);
            if z < 0.0 {
                score[t] += 1;
            } else {
                score[i] += 1;
            }
        }
    }
    let mut idx: Vec<usize> = (0..n).collect();
    idx.sort_by_key(|&i| (score[i], i));
    let total_order = idx.iter().enumerate().all(|(r, &i)| score[i] == r);
    let mut v = vec![0; n];
    for (r, &i) in idx.iter().enumerate() {
        v[i] = r + 1;
    }
    let perm = Perm::from_vec_unchecked(v);
    let k = n / m;
    let cells = perm.points().map(|(i, j)| ((i - 1) / k + 1, (j - 1) / k + 1, 1)).collect();
    let grid = GridPermuton::new(m, n as u64, cells)?;
    Ok(SkewOutcome { perm, grid, total_order })
}

pub fn skew_permuton_simulate<R: RngCore + ?Sized>(cfg: &SkewDriveConfig, rng: &mut R) -> Result<SkewOutcome, BaxterError> {
    cfg.check()?;
    if cfg.n < 64 {
        return Err(BaxterError::TooSmall { n: cfg.n, min: 64 });
    }
    let points = match cfg.mode {
        DriveMode::Gaussian => {
            let mut p = vec![(0.0, 0.0)];
            for d in gaussian_increments(cfg.n - 1, cfg.rho, rng) {
                let l = *p.last().unwrap();
                p.push((l.0 + d.0, l.1 + d.1));
            }
            p
        }
        DriveMode::GaussianExcursion { cap } => gaussian_excursion(cfg.n, cfg.rho, cap, rng)?,
        DriveMode::Tandem => {
            let w = TandemSampler::new(cfg.n)?.sample(rng);
            w.points.iter().map(|&(x, y)| (x as f64, y as f64)).collect()
        }
    };
    skew_from_points(&points, cfg.q, cfg.rule, cfg.grid, rng)
}

#[cfg(test)]
mod tests {
    use super::*;
    use permlab_perm::rng::substream;

    #[test]
    fn step_rule() {
        assert_eq!(skew_step(2.0, (0.5, -1.0), 0.9, 0.5), 1.0);
        assert_eq!(skew_step(-2.0, (0.5, -1.0), 0.9, 0.5), -2.5);
        assert_eq!(skew_step(1.0, (0.0, -3.0), 0.1, 0.5), 2.0);
        assert_eq!(skew_step(1.0, (0.0, -3.0), 0.9, 0.5), -2.0);
        assert_eq!(skew_step(0.0, (1.0, 0.0), 0.1, 0.5), 1.0);
        assert_eq!(skew_step(0.0, (0.0, 5.0), 0.1, 0.5), 0.0);
    }

    #[test]
    fn thinned_rule() {
        assert_eq!(thinned_step(-1.0, (-1.0, 3.0), 0.0, 0.5), 3.0);
        assert_eq!(thinned_step(-1.0, (-1.0, 3.0), 0.0, 0.25), -3.0);
        assert_eq!(thinned_step(-1.0, (-1.0, 3.0), 0.6, 0.25), 3.0);
        assert_eq!(thinned_step(2.0, (0.0, -3.0), 0.1, 0.75), 1.0);
        assert_eq!(thinned_step(2.0, (0.0, -3.0), 0.1, 0.25), -1.0);
        assert_eq!(thinned_step(-3.0, (-1.0, 3.0), 0.0, 0.0), -2.0);
    }

    #[test]
    fn q_one_gives_decreasing() {
        let mut rng = substream(5, "skew", 0);
        let mut cfg = SkewDriveConfig::new(-0.5, 1.0, 64);
        cfg.mode = DriveMode::Gaussian;
        let out = skew_permuton_simulate(&cfg, &mut rng).unwrap();
        assert_eq!(out.perm, Perm::decreasing(64));
        assert!(out.total_order);
    }

    #[test]
    fn config_errors() {
        let mut rng = substream(5, "skew", 1);
        assert!(skew_permuton_simulate(&SkewDriveConfig::new(1.5, 0.5, 64), &mut rng).is_err());
        assert!(skew_permuton_simulate(&SkewDriveConfig::new(0.0, 0.5, 10), &mut rng).is_err());
        let mut g = SkewDriveConfig::new(0.0, 0.5, 64);
        g.grid = 5;
        assert!(skew_permuton_simulate(&g, &mut rng).is_err());
        assert!(matches!(skew_from_points(&[(0.0, 0.0), (f64::NAN, 1.0)], 0.5, CrossingRule::Resample, 0, &mut rng), Err(BaxterError::NonFinite(1))));
    }

    #[test]
    fn coarse_grid() {
        let mut rng = substream(5, "skew", 2);
        let mut cfg = SkewDriveConfig::new(0.0, 0.5, 64);
        cfg.mode = DriveMode::Gaussian;
        cfg.grid = 8;
        let out = skew_permuton_simulate(&cfg, &mut rng).unwrap();
        assert_eq!(out.grid.resolution(), 8);
    }
}
