use num_integer::Integer;
use num_rational::Ratio;
use permlab_perm::Perm;
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PermutonError {
    #[error("resolution must be positive")]
    EmptyGrid,
    #[error("cell ({0}, {1}) outside the grid")]
    CellOutOfRange(usize, usize),
    #[error("row or column {0} does not carry mass 1/n")]
    Marginal(usize),
    #[error("degenerate or out-of-range rectangle")]
    DegenerateRect,
    #[error("parameter z must lie in (0, 1)")]
    BadZ,
    #[error("denominator overflow")]
    Overflow,
    #[error("parse error: {0}")]
    Parse(String),
}

/// Axis-parallel rectangle `[x0, x1] × [y0, y1]` inside the unit square.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Rect {
    pub x0: f64,
    pub x1: f64,
    pub y0: f64,
    pub y1: f64,
}

impl Rect {
    pub fn new(x0: f64, x1: f64, y0: f64, y1: f64) -> Result<Rect, PermutonError> {
        let ok = |a: f64, b: f64| (0.0..=1.0).contains(&a) && (0.0..=1.0).contains(&b) && a < b;
        if !ok(x0, x1) || !ok(y0, y1) {
            return Err(PermutonError::DegenerateRect);
        }
        Ok(Rect { x0, x1, y0, y1 })
    }

    pub fn full() -> Rect {
        Rect { x0: 0.0, x1: 1.0, y0: 0.0, y1: 1.0 }
    }
}

/// Piecewise-uniform permuton on an `n × n` grid.
///
/// Cell `(i, j)` (1-based) is `[(i-1)/n, i/n] × [(j-1)/n, j/n]` and carries
/// mass `num / denom`, spread uniformly.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GridPermuton {
    n: usize,
    denom: u64,
    cells: Vec<(usize, usize, u64)>,
}

impl GridPermuton {
    pub fn new(n: usize, denom: u64, mut cells: Vec<(usize, usize, u64)>) -> Result<Self, PermutonError> {
        if n == 0 || denom == 0 {
            return Err(PermutonError::EmptyGrid);
        }
        cells.retain(|c| c.2 > 0);
        cells.sort_unstable();
        let mut merged: Vec<(usize, usize, u64)> = Vec::with_capacity(cells.len());
        for c in cells {
            if c.0 == 0 || c.0 > n || c.1 == 0 || c.1 > n {
                return Err(PermutonError::CellOutOfRange(c.0, c.1));
            }
            match merged.last_mut() {
                Some(l) if (l.0, l.1) == (c.0, c.1) => l.2 = l.2.checked_add(c.2).ok_or(PermutonError::Overflow)?,
                _ => merged.push(c),
            }
        }
        let mut rows = vec![0u128; n + 1];
        let mut cols = vec![0u128; n + 1];
        for &(i, j, w) in &merged {
            rows[i] += w as u128;
            cols[j] += w as u128;
        }
        for k in 1..=n {
            if rows[k] * n as u128 != denom as u128 {
                return Err(PermutonError::Marginal(k));
            }
            if cols[k] * n as u128 != denom as u128 {
                return Err(PermutonError::Marginal(k));
            }
        }
        Ok(GridPermuton { n, denom, cells: merged })
    }

    /// `μ_σ`: mass `1/n` on each cell `(i, σ(i))`.
    pub fn of_perm(sigma: &Perm) -> Result<Self, PermutonError> {
        let n = sigma.len();
        if n == 0 {
            return Err(PermutonError::EmptyGrid);
        }
        let cells = sigma.points().map(|(i, j)| (i, j, 1)).collect();
        Ok(GridPermuton { n, denom: n as u64, cells })
    }

    /// Grid with rational cell masses `(i, j, num, den)`.
    pub fn from_rationals(n: usize, cells: &[(usize, usize, u64, u64)]) -> Result<Self, PermutonError> {
        let mut d = 1u64;
        for c in cells {
            if c.3 == 0 {
                return Err(PermutonError::Parse("zero denominator".into()));
            }
            d = d.lcm(&c.3);
            if d > 1 << 40 {
                return Err(PermutonError::Overflow);
            }
        }
        let scaled = cells.iter().map(|c| (c.0, c.1, c.2 * (d / c.3))).collect();
        GridPermuton::new(n, d, scaled)
    }

    pub fn resolution(&self) -> usize {
        self.n
    }

    pub fn denom(&self) -> u64 {
        self.denom
    }

    pub fn cells(&self) -> &[(usize, usize, u64)] {
        &self.cells
    }

    pub fn cell_mass(&self, i: usize, j: usize) -> Ratio<u64> {
        let w = self.cells.binary_search_by(|c| (c.0, c.1).cmp(&(i, j))).map(|k| self.cells[k].2).unwrap_or(0);
        Ratio::new(w, self.denom)
    }

    pub fn rect_mass(&self, r: Rect) -> f64 {
        let n = self.n as f64;
        let over = |lo: f64, hi: f64, k: usize| {
            let (a, b) = ((k - 1) as f64 / n, k as f64 / n);
            (hi.min(b) - lo.max(a)).max(0.0) * n
        };
        self.cells.iter().map(|&(i, j, w)| w as f64 * over(r.x0, r.x1, i) * over(r.y0, r.y1, j)).sum::<f64>() / self.denom as f64
    }

    /// Exact mass of `[x0, x1] × [y0, y1]` for rational corners.
    pub fn rect_mass_exact(&self, x0: Ratio<i64>, x1: Ratio<i64>, y0: Ratio<i64>, y1: Ratio<i64>) -> Result<Ratio<i128>, PermutonError> {
        let zero = Ratio::from_integer(0);
        let one = Ratio::from_integer(1);
        if !(zero <= x0 && x0 < x1 && x1 <= one && zero <= y0 && y0 < y1 && y1 <= one) {
            return Err(PermutonError::DegenerateRect);
        }
        let up = |r: Ratio<i64>| Ratio::new(*r.numer() as i128, *r.denom() as i128);
        let (x0, x1, y0, y1) = (up(x0), up(x1), up(y0), up(y1));
        let n = self.n as i128;
        let over = |lo: Ratio<i128>, hi: Ratio<i128>, k: usize| {
            let a = Ratio::new(k as i128 - 1, n);
            let b = Ratio::new(k as i128, n);
            let len = hi.min(b) - lo.max(a);
            if len > Ratio::from_integer(0) {
                len * n
            } else {
                Ratio::from_integer(0)
            }
        };
        let mut total = Ratio::from_integer(0i128);
        for &(i, j, w) in &self.cells {
            total += Ratio::new(w as i128, self.denom as i128) * over(x0, x1, i) * over(y0, y1, j);
        }
        Ok(total)
    }

    pub fn to_json(&self) -> String {
        let cells: Vec<[u64; 4]> = self
            .cells
            .iter()
            .map(|&(i, j, w)| {
                let r = Ratio::new(w, self.denom);
                [i as u64, j as u64, *r.numer(), *r.denom()]
            })
            .collect();
        serde_json::to_string(&GridJson { n: self.n, cells }).expect("plain struct")
    }

    pub fn from_json(s: &str) -> Result<Self, PermutonError> {
        let g: GridJson = serde_json::from_str(s).map_err(|e| PermutonError::Parse(e.to_string()))?;
        let cells: Vec<(usize, usize, u64, u64)> = g.cells.iter().map(|c| (c[0] as usize, c[1] as usize, c[2], c[3])).collect();
        GridPermuton::from_rationals(g.n, &cells)
    }
}

#[derive(Serialize, Deserialize)]
struct GridJson {
    n: usize,
    cells: Vec<[u64; 4]>,
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn of_perm_cells() {
        let g = GridPermuton::of_perm(&Perm::parse("2413").unwrap()).unwrap();
        for (i, j) in [(1, 2), (2, 4), (3, 1), (4, 3)] {
            assert_eq!(g.cell_mass(i, j), Ratio::new(1, 4));
        }
        assert_eq!(g.cell_mass(1, 1), Ratio::new(0, 1));
        let one = GridPermuton::of_perm(&Perm::identity(1)).unwrap();
        assert_eq!(one.cell_mass(1, 1), Ratio::new(1, 1));
    }

    #[test]
    fn marginals_are_checked() {
        assert!(GridPermuton::new(2, 2, vec![(1, 1, 1), (2, 1, 1)]).is_err());
        assert!(GridPermuton::new(2, 4, vec![(1, 1, 1), (1, 2, 1), (2, 1, 1), (2, 2, 1)]).is_ok());
        assert!(GridPermuton::new(2, 2, vec![(3, 1, 1)]).is_err());
    }

    #[test]
    fn masses() {
        let g = GridPermuton::of_perm(&Perm::identity(2)).unwrap();
        assert!((g.rect_mass(Rect::full()) - 1.0).abs() < 1e-15);
        assert!((g.rect_mass(Rect::new(0.0, 0.5, 0.0, 0.5).unwrap()) - 0.5).abs() < 1e-15);
        let h = Ratio::new(1, 2);
        let z = Ratio::from_integer(0);
        assert_eq!(g.rect_mass_exact(z, h, z, h).unwrap(), Ratio::new(1, 2));
        let q = Ratio::new(1, 4);
        assert_eq!(g.rect_mass_exact(z, q, z, h).unwrap(), Ratio::new(1, 4));
        assert!(Rect::new(0.5, 0.5, 0.0, 1.0).is_err());
    }

    #[test]
    fn json_round_trip() {
        let g = GridPermuton::of_perm(&Perm::parse("312").unwrap()).unwrap();
        assert_eq!(g.to_json(), r#"{"n":3,"cells":[[1,3,1,3],[2,1,1,3],[3,2,1,3]]}"#);
        assert_eq!(GridPermuton::from_json(&g.to_json()).unwrap(), g);
        assert!(GridPermuton::from_json(r#"{"n":2,"cells":[[1,1,1,2]]}"#).is_err());
    }
}
