use permlab_perm::Perm;
use rand::{Rng, RngCore};

use crate::coal::{cpbp, wcp_steps};
use crate::walk::{Step, Walk};
use crate::BaxterError;

fn geometric<R: RngCore + ?Sized>(rng: &mut R) -> i64 {
    // P(k) = 2^{-k-1}
    let mut k = 0;
    loop {
        let bits = rng.next_u64();
        if bits != 0 {
            return k + bits.trailing_zeros() as i64;
        }
        k += 64;
    }
}

/// One step of `ν = ½δ_{(1,-1)} + Σ 2^{-i-j-3} δ_{(-i,j)}`.
pub fn sample_nu_step<R: RngCore + ?Sized>(rng: &mut R) -> Step {
    if rng.random::<bool>() {
        Step::Diag
    } else {
        Step::Face { i: geometric(rng), j: geometric(rng) }
    }
}

/// Unconditioned `ν`-walk from `(0, 0)` with `steps` increments.
pub fn nu_walk<R: RngCore + ?Sized>(steps: usize, rng: &mut R) -> Walk {
    let s: Vec<Step> = (0..steps).map(|_| sample_nu_step(rng)).collect();
    Walk::from_steps((0, 0), &s)
}

/// Uniform element of `𝒲_n` by rejection and the number of proposals used.
pub fn sample_tandem_counted<R: RngCore + ?Sized>(n: usize, cap: u64, rng: &mut R) -> Result<(Walk, u64), BaxterError> {
    if n == 0 {
        return Err(BaxterError::TooSmall { n, min: 1 });
    }
    'outer: for tries in 1..=cap {
        let mut pts = Vec::with_capacity(n + 2);
        let (mut x, mut y) = (0i64, 0i64);
        pts.push((x, y));
        for _ in 0..=n {
            let (dx, dy) = sample_nu_step(rng).delta();
            x += dx;
            y += dy;
            if x < 0 || y < 0 {
                continue 'outer;
            }
            pts.push((x, y));
        }
        if (x, y) == (0, 0) {
            pts.pop();
            pts.remove(0);
            return Ok((Walk { points: pts }, tries));
        }
    }
    Err(BaxterError::RejectionCap(cap))
}

pub fn sample_tandem<R: RngCore + ?Sized>(n: usize, cap: u64, rng: &mut R) -> Result<Walk, BaxterError> {
    sample_tandem_counted(n, cap, rng).map(|r| r.0)
}

/// `cpbp(wcp(W))` for `W ∈ 𝒲_n`.
pub fn baxter_of_walk(w: &Walk) -> Result<Perm, BaxterError> {
    cpbp(&wcp_steps(&w.steps()?))
}

pub fn sample_baxter<R: RngCore + ?Sized>(n: usize, cap: u64, rng: &mut R) -> Result<Perm, BaxterError> {
    baxter_of_walk(&sample_tandem(n, cap, rng)?)
}

/// Exact sampler for quadrant excursions of the `ν`-walk, by backward
/// counting on the box `[0, m]²`. With `m ≥ n + 1` the box is never binding
/// and the output is exactly uniform on `𝒲_n`.
pub struct TandemSampler {
    n: usize,
    m: usize,
    block: usize,
    /// Normalized layer `h_t` at every `t` divisible by `block`, plus the last.
    checkpoints: Vec<(usize, Vec<f64>)>,
    log_prob: f64,
}

impl TandemSampler {
    pub fn default_box(n: usize) -> usize {
        (n + 1).min((8.0 * (n as f64).sqrt()).ceil() as usize + 20)
    }

    pub fn new(n: usize) -> Result<Self, BaxterError> {
        Self::with_box(n, Self::default_box(n))
    }

    pub fn with_box(n: usize, m: usize) -> Result<Self, BaxterError> {
        if n == 0 {
            return Err(BaxterError::TooSmall { n, min: 1 });
        }
        let steps = n + 1;
        let block = ((steps as f64).sqrt().ceil() as usize).max(1);
        let w = m + 1;
        let mut h = vec![0.0; w * w];
        h[0] = 1.0;
        let mut log = 0.0;
        let mut checkpoints = vec![(steps, h.clone())];
        for t in (0..steps).rev() {
            h = back_step(&h, m);
            let mx = h.iter().cloned().fold(0.0, f64::max);
            if mx > 0.0 {
                h.iter_mut().for_each(|v| *v /= mx);
                log += mx.ln();
            }
            if t % block == 0 {
                checkpoints.push((t, h.clone()));
            }
        }
        checkpoints.reverse();
        let log_prob = log + h[0].ln();
        Ok(TandemSampler { n, m, block, checkpoints, log_prob })
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_exact(&self) -> bool {
        self.m > self.n
    }

    /// `ln P(ν-walk of n + 1 steps is a quadrant excursion)` within the box.
    pub fn log_excursion_probability(&self) -> f64 {
        self.log_prob
    }

    pub fn sample<R: RngCore + ?Sized>(&self, rng: &mut R) -> Walk {
        self.sample_many(1, rng).pop().unwrap()
    }

    /// Independent samples sharing one recomputation pass.
    pub fn sample_many<R: RngCore + ?Sized>(&self, count: usize, rng: &mut R) -> Vec<Walk> {
        let steps = self.n + 1;
        let m = self.m;
        let w = m + 1;
        let mut pos = vec![(0i64, 0i64); count];
        let mut paths: Vec<Vec<(i64, i64)>> = vec![Vec::with_capacity(steps + 1); count];
        for p in paths.iter_mut() {
            p.push((0, 0));
        }
        let mut start = 0;
        while start < steps {
            let end = (start + self.block).min(steps);
            // layers start + 1 ..= end
            let ck = self.checkpoints.iter().find(|c| c.0 == end).expect("checkpoint");
            let mut layers = vec![ck.1.clone()];
            for _ in start + 1..end {
                let next = back_step(layers.last().unwrap(), m);
                let mx = next.iter().cloned().fold(0.0, f64::max);
                layers.push(if mx > 0.0 { next.into_iter().map(|v| v / mx).collect() } else { next });
            }
            layers.reverse();
            for t in start..end {
                let h = &layers[t - start];
                for (k, p) in pos.iter_mut().enumerate() {
                    *p = forward_step(h, w, *p, rng);
                    paths[k].push(*p);
                }
            }
            start = end;
        }
        paths
            .into_iter()
            .map(|mut p| {
                debug_assert_eq!(p.last(), Some(&(0, 0)));
                p.pop();
                p.remove(0);
                Walk { points: p }
            })
            .collect()
    }

    pub fn sample_baxter<R: RngCore + ?Sized>(&self, rng: &mut R) -> Perm {
        baxter_of_walk(&self.sample(rng)).expect("tandem walks give total orders")
    }
}

/// `h_t` from `h_{t+1}` on the box, row-major in `x`.
fn back_step(next: &[f64], m: usize) -> Vec<f64> {
    let w = m + 1;
    let mut g = vec![0.0; w * w];
    for x in 0..w {
        let mut acc = 0.0;
        for y in (0..w).rev() {
            acc = next[x * w + y] + 0.5 * acc;
            g[x * w + y] = acc;
        }
    }
    let mut h = vec![0.0; w * w];
    let mut s = vec![0.0; w];
    for x in 0..w {
        for y in 0..w {
            s[y] = g[x * w + y] + 0.5 * s[y];
            let diag = if y >= 1 && x < m { 0.5 * next[(x + 1) * w + y - 1] } else { 0.0 };
            h[x * w + y] = diag + s[y] / 8.0;
        }
    }
    h
}

fn pick<R: RngCore + ?Sized>(weights: impl Iterator<Item = f64> + Clone, rng: &mut R) -> usize {
    let total: f64 = weights.clone().sum();
    let mut u = rng.random::<f64>() * total;
    let mut last = 0;
    for (k, wt) in weights.enumerate() {
        if wt > 0.0 {
            last = k;
            if u < wt {
                return k;
            }
            u -= wt;
        }
    }
    last
}

fn forward_step<R: RngCore + ?Sized>(h: &[f64], w: usize, (x, y): (i64, i64), rng: &mut R) -> (i64, i64) {
    let (xu, yu) = (x as usize, y as usize);
    let at = |a: usize, b: usize| h[a * w + b];
    let diag = if yu >= 1 && xu + 1 < w { 0.5 * at(xu + 1, yu - 1) } else { 0.0 };
    let col = |a: usize| (yu..w).map(move |b| at(a, b) * 0.5f64.powi((b - yu) as i32));
    let faces: Vec<f64> = (0..=xu).map(|i| 0.5f64.powi(i as i32 + 3) * col(xu - i).sum::<f64>()).collect();
    let k = pick(std::iter::once(diag).chain(faces.iter().copied()), rng);
    if k == 0 {
        return (x + 1, y - 1);
    }
    let i = k - 1;
    let j = pick(col(xu - i), rng);
    (x - i as i64, y + j as i64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use permlab_perm::rng::substream;

    #[test]
    fn step_law() {
        let mut rng = substream(2, "nu", 0);
        let (mut diag, mut zero) = (0, 0);
        let n = 200_000;
        for _ in 0..n {
            match sample_nu_step(&mut rng) {
                Step::Diag => diag += 1,
                Step::Face { i: 0, j: 0 } => zero += 1,
                _ => {}
            }
        }
        assert!((diag as f64 / n as f64 - 0.5).abs() < 0.005);
        assert!((zero as f64 / n as f64 - 0.125).abs() < 0.004);
    }

    #[test]
    fn dp_probability_matches_enumeration() {
        // P(excursion) = |𝒲_n| 2^{-3(n+1)}
        for (n, c) in [(1usize, 1.0f64), (2, 2.0), (3, 6.0), (4, 22.0), (5, 92.0)] {
            let s = TandemSampler::new(n).unwrap();
            assert!(s.is_exact());
            let expect = c.ln() - 3.0 * (n as f64 + 1.0) * 2f64.ln();
            assert!((s.log_excursion_probability() - expect).abs() < 1e-9, "n={n}");
        }
    }

    #[test]
    fn samples_are_tandem() {
        let mut rng = substream(3, "dp", 0);
        for n in [1, 2, 7, 50, 300] {
            let s = TandemSampler::new(n).unwrap();
            for w in s.sample_many(5, &mut rng) {
                assert_eq!(w.len(), n);
                w.check_tandem().unwrap();
            }
        }
    }

    #[test]
    fn rejection_cap() {
        let mut rng = substream(4, "rej", 0);
        assert_eq!(sample_tandem(40, 3, &mut rng), Err(BaxterError::RejectionCap(3)));
        let (w, _) = sample_tandem_counted(3, 1_000_000, &mut rng).unwrap();
        w.check_tandem().unwrap();
    }
}
