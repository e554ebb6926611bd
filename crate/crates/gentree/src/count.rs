use std::ops::{AddAssign, Sub};

use num_bigint::BigUint;
use num_traits::{One, Zero};
use permlab_perm::rng::random_below;
use rand::{Rng, RngCore};

use crate::rule::{ChildItem, ColoredLabel, LabelPath, SuccessionRule};
use crate::GenTreeError;

/// Paths up to this length are sampled with exact integer weights.
pub const EXACT_LIMIT: usize = 256;

trait Weight: Clone + Zero + One + for<'a> AddAssign<&'a Self> + for<'a> Sub<&'a Self, Output = Self> {}
impl Weight for BigUint {}
impl Weight for f64 {}

fn at<W: Weight>(row: &[W], v: u32) -> W {
    row.get(v as usize).cloned().unwrap_or_else(W::zero)
}

/// `c_m(k)` for `k ≤ len - 1` from `c_{m-1}`.
fn next_row<W: Weight>(rule: &SuccessionRule, items: Option<&[ChildItem]>, prev: &[W], len: usize) -> Result<Vec<W>, GenTreeError> {
    let mut row = vec![W::zero(); len];
    match items {
        Some(items) => {
            let mut prefix = Vec::with_capacity(prev.len() + 1);
            prefix.push(W::zero());
            for w in prev {
                let mut s = prefix.last().unwrap().clone();
                s += w;
                prefix.push(s);
            }
            let pre = |v: u64| prefix[(v as usize).min(prev.len())].clone();
            for (k, slot) in row.iter_mut().enumerate() {
                let k = k as u32;
                for it in items {
                    match *it {
                        ChildItem::Single { value, .. } => {
                            let v = value.eval(k)?;
                            *slot += &at(prev, v);
                        }
                        ChildItem::Range { lo, hi } => {
                            let (a, b) = (lo.eval(k)? as u64, hi.eval(k)? as u64);
                            if a <= b {
                                *slot += &(pre(b + 1) - &pre(a));
                            }
                        }
                    }
                }
            }
        }
        None => {
            for (k, slot) in row.iter_mut().enumerate() {
                let kids = match rule.children_of(k as u32) {
                    Ok(k) => k,
                    Err(GenTreeError::UnknownLabel(_)) => continue,
                    Err(e) => return Err(e),
                };
                for c in kids {
                    *slot += &at(prev, c.value);
                }
            }
        }
    }
    Ok(row)
}

/// Rows `c_1, ..., c_m` where row `r` covers labels up to `lens[r - 1] - 1`.
fn build<W: Weight>(rule: &SuccessionRule, lens: &[usize], normalize: impl Fn(&mut [W])) -> Result<Vec<Vec<W>>, GenTreeError> {
    let items = rule.ranges();
    let mut rows: Vec<Vec<W>> = Vec::with_capacity(lens.len());
    for (r, &len) in lens.iter().enumerate() {
        let mut row = if r == 0 { vec![W::one(); len] } else { next_row(rule, items.as_deref(), &rows[r - 1], len)? };
        normalize(&mut row);
        rows.push(row);
    }
    Ok(rows)
}

/// Exact `c_m(k)`: the number of paths of `m` labels starting at `k`.
#[derive(Clone, Debug)]
pub struct CountTable {
    root: u32,
    rows: Vec<Vec<BigUint>>,
}

impl CountTable {
    pub fn n_max(&self) -> usize {
        self.rows.len()
    }

    pub fn get(&self, m: usize, k: u32) -> BigUint {
        if m == 0 || m > self.rows.len() {
            return BigUint::zero();
        }
        at(&self.rows[m - 1], k)
    }

    /// Number of paths with `n` labels from the root.
    pub fn level_total(&self, n: usize) -> BigUint {
        self.get(n, self.root)
    }
}

pub fn count_table(rule: &SuccessionRule, n_max: usize) -> Result<CountTable, GenTreeError> {
    let bounds = rule.level_bounds(n_max)?;
    let len = bounds.iter().copied().max().unwrap_or(0) as usize + 1;
    let rows = build::<BigUint>(rule, &vec![len; n_max], |_| {})?;
    Ok(CountTable { root: rule.root, rows })
}

#[derive(Clone, Debug)]
enum Rows {
    Exact(Vec<Vec<BigUint>>),
    Float(Vec<Vec<f64>>),
}

/// Uniform sampler over paths of `n` labels. Weights are exact integers up
/// to [`EXACT_LIMIT`] and row-normalized floats beyond.
#[derive(Clone, Debug)]
pub struct PathSampler {
    rule: SuccessionRule,
    n: usize,
    rows: Rows,
}

impl PathSampler {
    pub fn new(rule: &SuccessionRule, n: usize) -> Result<Self, GenTreeError> {
        Self::with_mode(rule, n, n <= EXACT_LIMIT)
    }

    pub fn with_mode(rule: &SuccessionRule, n: usize, exact: bool) -> Result<Self, GenTreeError> {
        let bounds = rule.level_bounds(n.max(1))?;
        // row r is read at level n - r, for children at level n - r + 1
        let lens: Vec<usize> = (1..n).map(|r| bounds[n - r] as usize + 1).collect();
        let rows = if exact {
            Rows::Exact(build::<BigUint>(rule, &lens, |_| {})?)
        } else {
            Rows::Float(build::<f64>(rule, &lens, |row| {
                let m = row.iter().copied().fold(0.0, f64::max);
                if m > 0.0 {
                    row.iter_mut().for_each(|x| *x /= m);
                }
            })?)
        };
        Ok(PathSampler { rule: rule.clone(), n, rows })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn is_exact(&self) -> bool {
        matches!(self.rows, Rows::Exact(_))
    }

    pub fn rule(&self) -> &SuccessionRule {
        &self.rule
    }

    pub fn sample<R: RngCore + ?Sized>(&self, rng: &mut R) -> Result<LabelPath, GenTreeError> {
        let mut path = Vec::with_capacity(self.n);
        if self.n == 0 {
            return Ok(LabelPath(path));
        }
        path.push(ColoredLabel::plain(self.rule.root));
        for level in 1..self.n {
            let r = self.n - level;
            let kids = self.rule.children_of(path.last().unwrap().value)?;
            let pick = match &self.rows {
                Rows::Exact(rows) => {
                    let w: Vec<BigUint> = kids.iter().map(|c| at(&rows[r - 1], c.value)).collect();
                    let total: BigUint = w.iter().sum();
                    if total.is_zero() {
                        return Err(GenTreeError::Inconsistent(format!("no path of length {} continues", self.n)));
                    }
                    let mut x = random_below(&total, rng);
                    let mut i = 0;
                    while x >= w[i] {
                        x -= &w[i];
                        i += 1;
                    }
                    i
                }
                Rows::Float(rows) => {
                    let w: Vec<f64> = kids.iter().map(|c| at(&rows[r - 1], c.value)).collect();
                    let total: f64 = w.iter().sum();
                    if total <= 0.0 {
                        return Err(GenTreeError::Inconsistent(format!("no path of length {} continues", self.n)));
                    }
                    let mut x = rng.random::<f64>() * total;
                    let last = w.iter().rposition(|&v| v > 0.0).unwrap();
                    let mut i = 0;
                    while i < last && (w[i] == 0.0 || x >= w[i]) {
                        x -= w[i];
                        i += 1;
                    }
                    i
                }
            };
            path.push(kids[pick]);
        }
        Ok(LabelPath(path))
    }
}

pub fn sample_path<R: RngCore + ?Sized>(rule: &SuccessionRule, n: usize, rng: &mut R) -> Result<LabelPath, GenTreeError> {
    PathSampler::new(rule, n)?.sample(rng)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rule::enumerate_paths;
    use permlab_perm::rng::substream;

    #[test]
    fn schroder_counts() {
        let t = count_table(&SuccessionRule::av1423_4123(), 10).unwrap();
        let got: Vec<u64> = (1..=10).map(|n| t.level_total(n).try_into().unwrap()).collect();
        assert_eq!(got, [1, 2, 6, 22, 90, 394, 1806, 8558, 41586, 206098]);
        assert!(t.level_total(11).is_zero());
    }

    #[test]
    fn table_rule_counts() {
        // Fibonacci: (1) -> (2), (2) -> (1)(2)
        let r = SuccessionRule::from_json(r#"{"root": 1, "children": {"1": [2], "2": [1, 2]}}"#).unwrap();
        let t = count_table(&r, 8).unwrap();
        let got: Vec<u64> = (1..=8).map(|n| t.level_total(n).try_into().unwrap()).collect();
        assert_eq!(got, [1, 1, 2, 3, 5, 8, 13, 21]);
        for n in 1..=8 {
            assert_eq!(enumerate_paths(&r, n, 100).unwrap().len() as u64, got[n - 1]);
        }
    }

    #[test]
    fn float_rows_match_exact() {
        let r = SuccessionRule::av1423_4123();
        let (a, b) = (PathSampler::with_mode(&r, 30, true).unwrap(), PathSampler::with_mode(&r, 30, false).unwrap());
        let mut g = substream(1, "gentree", 0);
        let mut h = substream(1, "gentree", 0);
        for _ in 0..20 {
            a.sample(&mut g).unwrap().check(&r).unwrap();
            b.sample(&mut h).unwrap().check(&r).unwrap();
        }
        assert!(a.is_exact() && !b.is_exact());
    }

    #[test]
    fn trivial_paths() {
        let r = SuccessionRule::av1423_4123();
        let mut g = substream(1, "gentree", 1);
        assert_eq!(sample_path(&r, 1, &mut g).unwrap(), LabelPath(vec![ColoredLabel::plain(2)]));
        assert!(sample_path(&r, 0, &mut g).unwrap().is_empty());
    }
}
