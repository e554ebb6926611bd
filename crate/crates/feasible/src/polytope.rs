use std::io::Write;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use permlab_perm::Perm;

use crate::graph::{build_overlap_graph, pattern_rank, simple_cycles, OverlapGraph};
use crate::lp::{solve, LpOutcome, Q};
use crate::FeasibleError;

pub const DEFAULT_CYCLE_CEILING: usize = 1_000_000;

fn q(n: u64, d: u64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

/// `e_C`: `1/|C|` on the edges of `C`.
pub fn cycle_vertex(g: &OverlapGraph, c: &[usize]) -> Vec<Q> {
    let mut v = vec![Q::zero(); g.edges.len()];
    for &e in c {
        v[e] = q(1, c.len() as u64);
    }
    v
}

#[derive(Clone, Debug)]
pub struct CyclePolytope {
    pub graph: OverlapGraph,
    pub cycles: Vec<Vec<usize>>,
    pub vertices: Vec<Vec<Q>>,
}

impl CyclePolytope {
    pub fn new(k: usize) -> Result<Self, FeasibleError> {
        Self::with_ceiling(k, DEFAULT_CYCLE_CEILING)
    }

    pub fn with_ceiling(k: usize, ceiling: usize) -> Result<Self, FeasibleError> {
        let graph = build_overlap_graph(k)?;
        let cycles = simple_cycles(&graph, ceiling)?;
        let vertices = cycles.iter().map(|c| cycle_vertex(&graph, c)).collect();
        Ok(CyclePolytope { graph, cycles, vertices })
    }

    pub fn k(&self) -> usize {
        self.graph.k
    }

    /// Affine dimension of the convex hull of the vertices.
    pub fn dimension(&self) -> usize {
        let Some(base) = self.vertices.first() else {
            return 0;
        };
        let diffs: Vec<Vec<Q>> = self.vertices[1..].iter().map(|v| v.iter().zip(base).map(|(a, b)| a - b).collect()).collect();
        rank(diffs)
    }

    /// L∞ distance from `v` to the polytope, exact.
    pub fn linf_distance(&self, v: &[Q]) -> Result<Q, FeasibleError> {
        self.distance(v, Norm::Linf)
    }

    /// L1 distance from `v` to the polytope, exact.
    pub fn l1_distance(&self, v: &[Q]) -> Result<Q, FeasibleError> {
        self.distance(v, Norm::L1)
    }

    fn distance(&self, v: &[Q], norm: Norm) -> Result<Q, FeasibleError> {
        let d = self.graph.edges.len();
        if v.len() != d {
            return Err(FeasibleError::Length { got: v.len(), expected: d });
        }
        let nc = self.vertices.len();
        // columns: λ (nc), then per coordinate p, m (2d), then t for L∞
        let extra = if norm == Norm::Linf { 1 } else { 0 };
        let cols = nc + 2 * d + extra;
        let mut a = Vec::with_capacity(d + 1);
        let mut b = Vec::with_capacity(d + 1);
        for (e, ve) in v.iter().enumerate() {
            let mut row = vec![Q::zero(); cols];
            for (c, vert) in self.vertices.iter().enumerate() {
                row[c] = vert[e].clone();
            }
            // Σ λ e_C - v = m - p
            row[nc + 2 * e] = Q::one();
            row[nc + 2 * e + 1] = -Q::one();
            a.push(row);
            b.push(ve.clone());
        }
        let mut row = vec![Q::zero(); cols];
        row[..nc].iter_mut().for_each(|x| *x = Q::one());
        a.push(row);
        b.push(Q::one());
        let mut cost = vec![Q::zero(); cols];
        match norm {
            Norm::L1 => cost[nc..].iter_mut().for_each(|x| *x = Q::one()),
            Norm::Linf => {
                // p_e + s_e = t, m_e + s'_e = t with fresh slacks
                let t = nc + 2 * d;
                cost[t] = Q::one();
                let total = cols + 2 * d;
                for r in a.iter_mut() {
                    r.resize(total, Q::zero());
                }
                cost.resize(total, Q::zero());
                for j in 0..2 * d {
                    let mut r = vec![Q::zero(); total];
                    r[nc + j] = Q::one();
                    r[cols + j] = Q::one();
                    r[t] = -Q::one();
                    a.push(r);
                    b.push(Q::zero());
                }
            }
        }
        match solve(&a, &b, &cost) {
            LpOutcome::Optimal { value, .. } => Ok(value),
            o => unreachable!("distance program is feasible and bounded: {o:?}"),
        }
    }

    /// Whether `v` lies within L∞ distance `eps` of the polytope.
    pub fn membership(&self, v: &[Q], eps: &Q) -> Result<Membership, FeasibleError> {
        let distance = self.linf_distance(v)?;
        Ok(if &distance <= eps { Membership::Inside { distance } } else { Membership::Outside { distance } })
    }

    /// One row per vertex: cycle id then one `num/den` cell per pattern.
    pub fn write_csv<W: Write>(&self, w: W) -> Result<(), FeasibleError> {
        let err = |e: csv::Error| FeasibleError::Csv(e.to_string());
        let mut out = csv::Writer::from_writer(w);
        let mut header = vec!["cycle".to_string()];
        header.extend(self.graph.edges.iter().map(|e| e.label.compact().unwrap_or_else(|| e.label.to_string())));
        out.write_record(&header).map_err(err)?;
        for (i, v) in self.vertices.iter().enumerate() {
            let mut rec = vec![i.to_string()];
            rec.extend(v.iter().map(|x| format!("{}/{}", x.numer(), x.denom())));
            out.write_record(&rec).map_err(err)?;
        }
        out.flush().map_err(|e| FeasibleError::Csv(e.to_string()))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Norm {
    L1,
    Linf,
}

#[derive(Clone, Debug, PartialEq)]
pub enum Membership {
    Inside { distance: Q },
    /// `distance` exceeds the slack.
    Outside { distance: Q },
}

impl Membership {
    pub fn is_inside(&self) -> bool {
        matches!(self, Membership::Inside { .. })
    }
}

/// Rank by exact Gaussian elimination.
pub fn rank(rows: Vec<Vec<Q>>) -> usize {
    let mut basis: Vec<(usize, Vec<Q>)> = Vec::new();
    for mut r in rows {
        for (p, b) in &basis {
            if !r[*p].is_zero() {
                let f = r[*p].clone();
                for (x, y) in r.iter_mut().zip(b) {
                    *x -= &f * y;
                }
            }
        }
        if let Some(p) = r.iter().position(|x| !x.is_zero()) {
            let inv = Q::one() / &r[p];
            for x in r.iter_mut() {
                *x *= &inv;
            }
            for (_, b) in basis.iter_mut() {
                if !b[p].is_zero() {
                    let f = b[p].clone();
                    for (x, y) in b.iter_mut().zip(&r) {
                        *x -= &f * y;
                    }
                }
            }
            basis.push((p, r));
        }
    }
    basis.len()
}

pub fn polytope_dimension(k: usize) -> Result<usize, FeasibleError> {
    Ok(CyclePolytope::new(k)?.dimension())
}

/// `cocc(π, σ)` for every `π ∈ S_k`, indexed lexicographically.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoccVector {
    pub k: usize,
    pub n: usize,
    pub counts: Vec<u64>,
}

pub fn cocc_vector(sigma: &Perm, k: usize) -> Result<CoccVector, FeasibleError> {
    let n = sigma.len();
    if n < k || k == 0 {
        return Err(FeasibleError::TooShort { n, k });
    }
    let mut counts = vec![0u64; (1..=k).product()];
    for w in sigma.values().windows(k) {
        counts[pattern_rank(w)] += 1;
    }
    Ok(CoccVector { k, n, counts })
}

impl CoccVector {
    pub fn over_n(&self) -> Vec<Q> {
        self.counts.iter().map(|&c| q(c, self.n as u64)).collect()
    }

    /// Divided by the number of windows `n - k + 1`.
    pub fn over_windows(&self) -> Vec<Q> {
        let w = (self.n - self.k + 1) as u64;
        self.counts.iter().map(|&c| q(c, w)).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rank_basics() {
        let r = |v: &[i64]| v.iter().map(|&x| Q::from_integer(x.into())).collect::<Vec<_>>();
        assert_eq!(rank(vec![r(&[1, 2]), r(&[2, 4])]), 1);
        assert_eq!(rank(vec![r(&[1, 2, 0]), r(&[0, 1, 1]), r(&[1, 3, 1])]), 2);
        assert_eq!(rank(vec![]), 0);
    }

    #[test]
    fn identity_vector() {
        let v = cocc_vector(&Perm::identity(10), 3).unwrap();
        assert_eq!(v.counts, [8, 0, 0, 0, 0, 0]);
        assert!(cocc_vector(&Perm::identity(2), 3).is_err());
    }
}
