use permlab_perm::Perm;

use crate::walk::{Step, Walk};
use crate::BaxterError;

/// `Z^{(i)}` for every start `i` of `[n]`, stored 0-based: `z[i][k]` is the
/// value at time `i + k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoalescentWalk {
    z: Vec<Vec<i64>>,
}

impl CoalescentWalk {
    pub fn from_trajectories(z: Vec<Vec<i64>>) -> Result<Self, BaxterError> {
        let n = z.len();
        for (i, t) in z.iter().enumerate() {
            if t.len() != n - i || t[0] != 0 {
                return Err(BaxterError::Inconsistent(format!("trajectory {} has the wrong shape", i + 1)));
            }
        }
        Ok(CoalescentWalk { z })
    }

    pub fn len(&self) -> usize {
        self.z.len()
    }

    pub fn is_empty(&self) -> bool {
        self.z.is_empty()
    }

    /// `Z^{(i)}_t` for `1 ≤ i ≤ t ≤ n`.
    pub fn get(&self, i: usize, t: usize) -> i64 {
        self.z[i - 1][t - i]
    }

    /// `Z^{(i)}_i, ..., Z^{(i)}_n`.
    pub fn trajectory(&self, i: usize) -> &[i64] {
        &self.z[i - 1]
    }

    /// `i <_Z j` for `i ≠ j`.
    pub fn less(&self, i: usize, j: usize) -> bool {
        if i < j {
            self.get(i, j) < 0
        } else {
            self.get(j, i) >= 0
        }
    }

    /// Trajectories never cross and stay together once they meet.
    pub fn preserves_order(&self) -> bool {
        let n = self.len();
        for a in 1..=n {
            for b in a + 1..=n {
                let mut prev: Option<std::cmp::Ordering> = None;
                for t in b..=n {
                    let c = self.get(a, t).cmp(&self.get(b, t));
                    if let Some(p) = prev {
                        if c.is_ne() && c != p {
                            return false;
                        }
                    }
                    prev = Some(c);
                }
            }
        }
        true
    }
}

/// One increment of a coalescent trajectory.
pub fn wcp_step(z: i64, s: Step) -> i64 {
    match s {
        Step::Diag => z - 1,
        Step::Face { i, j } => {
            if z >= 0 {
                z + j
            } else if z < -i {
                z + i
            } else {
                j
            }
        }
    }
}

pub fn wcp_steps(steps: &[Step]) -> CoalescentWalk {
    let n = steps.len() + 1;
    let z = (0..n)
        .map(|i| wcp_trajectory(steps, i + 1))
        .collect();
    CoalescentWalk { z }
}

/// `Z^{(i)}` alone, for a start `i` (1-based) of a walk with `steps`.
pub fn wcp_trajectory(steps: &[Step], i: usize) -> Vec<i64> {
    let mut t = Vec::with_capacity(steps.len() + 2 - i);
    t.push(0);
    for &s in &steps[i - 1..] {
        t.push(wcp_step(*t.last().unwrap(), s));
    }
    t
}

/// `WC(W)`.
pub fn wcp(w: &Walk) -> Result<CoalescentWalk, BaxterError> {
    Ok(wcp_steps(&w.steps()?))
}

/// Ranks by the number of smaller elements, whether or not `<_Z` is
/// transitive. The second value reports whether it is a total order.
pub fn order_by_score(z: &CoalescentWalk) -> (Perm, bool) {
    let n = z.len();
    let mut score = vec![0usize; n];
    for i in 1..=n {
        for j in i + 1..=n {
            if z.get(i, j) < 0 {
                score[j - 1] += 1;
            } else {
                score[i - 1] += 1;
            }
        }
    }
    let mut idx: Vec<usize> = (0..n).collect();
    idx.sort_by_key(|&i| (score[i], i));
    let mut v = vec![0; n];
    for (r, &i) in idx.iter().enumerate() {
        v[i] = r + 1;
    }
    let total = idx.iter().enumerate().all(|(r, &i)| score[i] == r);
    (Perm::from_vec_unchecked(v), total)
}

/// `cpbp(Z)`: `σ(i) < σ(j)` iff `i <_Z j`.
pub fn cpbp(z: &CoalescentWalk) -> Result<Perm, BaxterError> {
    match order_by_score(z) {
        (p, true) => Ok(p),
        _ => Err(BaxterError::Inconsistent("relation is not a total order".into())),
    }
}

/// `L^{(i)}_Z(j)`: zeros of `Z^{(i)}` on `[i, j]`.
pub fn local_time(z: &CoalescentWalk, i: usize, j: usize) -> usize {
    z.trajectory(i)[..=j - i].iter().filter(|&&v| v == 0).count()
}

/// Planted forest on `[n]`: `j` is the parent of `i` when it is the first
/// time after `i` at which `Z^{(i)}` hits 0. Siblings and roots are sorted
/// by `<_Z`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Forest {
    pub parent: Vec<Option<usize>>,
    pub children: Vec<Vec<usize>>,
    pub roots: Vec<usize>,
    /// Final height `Z^{(i)}_n` of each root edge.
    pub root_index: Vec<i64>,
}

impl Forest {
    /// Pre-order on edges, 1-based.
    pub fn exploration(&self) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.parent.len());
        let mut stack: Vec<usize> = self.roots.iter().rev().copied().collect();
        while let Some(v) = stack.pop() {
            out.push(v);
            stack.extend(self.children[v - 1].iter().rev());
        }
        out
    }
}

pub fn fortree(z: &CoalescentWalk) -> Forest {
    let n = z.len();
    let mut parent = vec![None; n];
    let mut children = vec![Vec::new(); n + 1];
    for i in 1..=n {
        let p = z.trajectory(i)[1..].iter().position(|&v| v == 0).map(|k| i + 1 + k);
        parent[i - 1] = p;
        children[p.unwrap_or(0)].push(i);
    }
    let sort = |v: &mut Vec<usize>| v.sort_by(|&a, &b| if z.less(a, b) { std::cmp::Ordering::Less } else { std::cmp::Ordering::Greater });
    for c in children.iter_mut() {
        sort(c);
    }
    let roots = children.remove(0);
    let root_index = roots.iter().map(|&r| z.get(r, n)).collect();
    Forest { parent, children, roots, root_index }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn last_start_is_a_point() {
        let w = Walk::new(vec![(0, 1), (1, 0), (0, 0)]);
        let z = wcp(&w).unwrap();
        assert_eq!(z.trajectory(3), [0]);
        assert_eq!(z.trajectory(1), [0, -1, 0]);
        assert_eq!(local_time(&z, 2, 2), 1);
        let single = wcp(&Walk::new(vec![(0, 0)])).unwrap();
        assert_eq!(cpbp(&single).unwrap(), Perm::identity(1));
    }

    #[test]
    fn three_cases() {
        assert_eq!(wcp_step(2, Step::Diag), 1);
        assert_eq!(wcp_step(2, Step::Face { i: 1, j: 3 }), 5);
        assert_eq!(wcp_step(-3, Step::Face { i: 1, j: 3 }), -2);
        assert_eq!(wcp_step(-1, Step::Face { i: 1, j: 3 }), 3);
        assert_eq!(wcp_step(-1, Step::Face { i: 0, j: 2 }), -1);
    }

    #[test]
    fn score_detects_cycles() {
        // 1 < 2, 2 < 3, 3 < 1
        let z = CoalescentWalk::from_trajectories(vec![vec![0, -1, 0], vec![0, -1], vec![0]]).unwrap();
        let (_, total) = order_by_score(&z);
        assert!(!total);
        assert!(cpbp(&z).is_err());
        assert!(CoalescentWalk::from_trajectories(vec![vec![1]]).is_err());
    }
}
