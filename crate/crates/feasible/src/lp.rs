use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub type Q = BigRational;

#[derive(Clone, Debug, PartialEq)]
pub enum LpOutcome {
    Optimal { x: Vec<Q>, value: Q },
    Infeasible,
    Unbounded,
}

struct Tableau {
    /// `m` rows of `cols + 1` entries, the last being the right-hand side.
    t: Vec<Vec<Q>>,
    /// Reduced costs, last entry minus the objective value.
    z: Vec<Q>,
    basis: Vec<usize>,
}

impl Tableau {
    fn pivot(&mut self, r: usize, c: usize) {
        let p = self.t[r][c].clone();
        for x in self.t[r].iter_mut() {
            *x /= &p;
        }
        let row = self.t[r].clone();
        for (i, other) in self.t.iter_mut().enumerate() {
            if i != r && !other[c].is_zero() {
                let f = other[c].clone();
                for (x, y) in other.iter_mut().zip(&row) {
                    *x -= &f * y;
                }
            }
        }
        if !self.z[c].is_zero() {
            let f = self.z[c].clone();
            for (x, y) in self.z.iter_mut().zip(&row) {
                *x -= &f * y;
            }
        }
        self.basis[r] = c;
    }

    /// Bland's rule over columns `< usable`. Returns `false` if unbounded.
    fn run(&mut self, usable: usize) -> bool {
        loop {
            let Some(c) = (0..usable).find(|&j| self.z[j].is_negative()) else {
                return true;
            };
            let rhs = self.t[0].len() - 1;
            let mut best: Option<(usize, Q)> = None;
            for (i, row) in self.t.iter().enumerate() {
                if row[c].is_positive() {
                    let ratio = &row[rhs] / &row[c];
                    let better = match &best {
                        None => true,
                        Some((b, q)) => ratio < *q || (ratio == *q && self.basis[i] < self.basis[*b]),
                    };
                    if better {
                        best = Some((i, ratio));
                    }
                }
            }
            match best {
                None => return false,
                Some((r, _)) => self.pivot(r, c),
            }
        }
    }
}

/// Minimizes `c·x` subject to `a x = b`, `x ≥ 0`, by the two-phase simplex
/// method with Bland's rule.
pub fn solve(a: &[Vec<Q>], b: &[Q], c: &[Q]) -> LpOutcome {
    let m = a.len();
    let n = c.len();
    let mut t = Vec::with_capacity(m);
    for (i, row) in a.iter().enumerate() {
        let neg = b[i].is_negative();
        let mut r: Vec<Q> = row.iter().map(|x| if neg { -x } else { x.clone() }).collect();
        r.extend((0..m).map(|j| if j == i { Q::one() } else { Q::zero() }));
        r.push(if neg { -&b[i] } else { b[i].clone() });
        t.push(r);
    }
    let mut z = vec![Q::zero(); n + m + 1];
    for row in &t {
        for (j, x) in row.iter().enumerate() {
            if j < n || j == n + m {
                z[j] -= x;
            }
        }
    }
    let mut tab = Tableau { t, z, basis: (n..n + m).collect() };
    tab.run(n + m);
    if !tab.z[n + m].is_zero() {
        return LpOutcome::Infeasible;
    }
    // drive artificial variables out of the basis
    let mut r = 0;
    while r < tab.t.len() {
        if tab.basis[r] >= n {
            match (0..n).find(|&j| !tab.t[r][j].is_zero()) {
                Some(j) => tab.pivot(r, j),
                None => {
                    tab.t.remove(r);
                    tab.basis.remove(r);
                    continue;
                }
            }
        }
        r += 1;
    }
    for row in tab.t.iter_mut() {
        row.drain(n..n + m);
    }
    let mut z: Vec<Q> = c.to_vec();
    z.push(Q::zero());
    for (i, row) in tab.t.iter().enumerate() {
        let cb = &c[tab.basis[i]];
        if !cb.is_zero() {
            for (x, y) in z.iter_mut().zip(row) {
                *x -= cb * y;
            }
        }
    }
    tab.z = z;
    if !tab.run(n) {
        return LpOutcome::Unbounded;
    }
    let mut x = vec![Q::zero(); n];
    for (i, &j) in tab.basis.iter().enumerate() {
        x[j] = tab.t[i][n].clone();
    }
    let value = -tab.z[n].clone();
    LpOutcome::Optimal { x, value }
}
