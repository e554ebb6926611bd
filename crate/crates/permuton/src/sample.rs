use permlab_perm::{standardize, Perm};
use rand::{Rng, RngCore};

use crate::{GridPermuton, RectanglePermuton};

/// Drawing i.i.d. points from a permuton.
pub trait SamplePoints {
    fn sample_points<R: RngCore + ?Sized>(&self, k: usize, rng: &mut R) -> Vec<(f64, f64)>;
}

impl SamplePoints for GridPermuton {
    fn sample_points<R: RngCore + ?Sized>(&self, k: usize, rng: &mut R) -> Vec<(f64, f64)> {
        let cells = self.cells();
        let mut cum = Vec::with_capacity(cells.len());
        let mut acc = 0u64;
        for c in cells {
            acc += c.2;
            cum.push(acc);
        }
        let n = self.resolution() as f64;
        (0..k)
            .map(|_| {
                let t = rng.random_range(0..self.denom());
                let c = cells[cum.partition_point(|&s| s <= t)];
                let x = (c.0 as f64 - 1.0 + rng.random::<f64>()) / n;
                let y = (c.1 as f64 - 1.0 + rng.random::<f64>()) / n;
                (x, y)
            })
            .collect()
    }
}

impl SamplePoints for RectanglePermuton {
    fn sample_points<R: RngCore + ?Sized>(&self, k: usize, rng: &mut R) -> Vec<(f64, f64)> {
        let segs = self.segments();
        (0..k)
            .map(|_| {
                let mut u = rng.random::<f64>();
                let mut s = segs[3];
                for cand in segs {
                    if u < cand.mass() {
                        s = cand;
                        break;
                    }
                    u -= cand.mass();
                }
                let x = s.lo + rng.random::<f64>() * (s.hi - s.lo);
                (x, s.y(x).clamp(0.0, 1.0))
            })
            .collect()
    }
}

/// The permutation formed by a point set with distinct coordinates.
pub fn induced_perm(points: &[(f64, f64)]) -> Option<Perm> {
    let mut pts = points.to_vec();
    pts.sort_by(|a, b| a.0.total_cmp(&b.0));
    if pts.windows(2).any(|w| w[0].0 == w[1].0) {
        return None;
    }
    let ys: Vec<f64> = pts.iter().map(|p| p.1).collect();
    standardize(&ys).ok()
}

/// `Perm_k(μ)`: the permutation induced by `k` i.i.d. points of `μ`.
pub fn sample_induced<M: SamplePoints, R: RngCore + ?Sized>(mu: &M, k: usize, rng: &mut R) -> Perm {
    loop {
        if let Some(p) = induced_perm(&mu.sample_points(k, rng)) {
            return p;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use permlab_perm::rng::substream;

    #[test]
    fn diagonal_blocks_are_ordered() {
        let n = 6;
        let g = GridPermuton::of_perm(&Perm::identity(n)).unwrap();
        let mut rng = substream(0, "diag", 0);
        for _ in 0..200 {
            let pts = g.sample_points(30, &mut rng);
            let p = induced_perm(&pts).unwrap();
            let mut sorted = pts.clone();
            sorted.sort_by(|a, b| a.0.total_cmp(&b.0));
            for i in 0..30 {
                for j in i + 1..30 {
                    let (ci, cj) = ((sorted[i].0 * n as f64) as usize, (sorted[j].0 * n as f64) as usize);
                    if ci < cj {
                        assert!(p.values()[i] < p.values()[j]);
                    }
                }
            }
        }
        let fine = GridPermuton::of_perm(&Perm::identity(1 << 20)).unwrap();
        assert_eq!(sample_induced(&fine, 5, &mut rng), Perm::identity(5));
    }

    #[test]
    fn decreasing_two_gives_three_quarters() {
        let g = GridPermuton::of_perm(&Perm::parse("21").unwrap()).unwrap();
        let mut rng = substream(0, "twoone", 0);
        let reps = 40_000;
        let hits = (0..reps).filter(|_| sample_induced(&g, 2, &mut rng) == Perm::parse("21").unwrap()).count();
        let f = hits as f64 / reps as f64;
        assert!((f - 0.75).abs() < 0.012, "{f}");
    }

    #[test]
    fn rectangle_points_lie_on_sides() {
        let r = RectanglePermuton::new(0.3).unwrap();
        let mut rng = substream(0, "rect", 0);
        for (x, y) in r.sample_points(1000, &mut rng) {
            let on = [(x + y - 0.3).abs(), (y - x - 0.3).abs(), (x - y - 0.3).abs(), (x + y - 1.7).abs()];
            assert!(on.iter().any(|d| *d < 1e-12));
        }
    }
}
