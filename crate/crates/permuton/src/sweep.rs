use std::ops::{Add, Sub};

pub(crate) trait Val: Copy + PartialOrd + Add<Output = Self> + Sub<Output = Self> + Default {}
impl Val for f64 {}
impl Val for i128 {}

/// Range-add tree over `F(0..size)`, suffix updates, global max and min.
struct Tree<T> {
    size: usize,
    mx: Vec<T>,
    mn: Vec<T>,
    tag: Vec<T>,
}

fn pmax<T: Val>(a: T, b: T) -> T {
    if a > b {
        a
    } else {
        b
    }
}

fn pmin<T: Val>(a: T, b: T) -> T {
    if a < b {
        a
    } else {
        b
    }
}

impl<T: Val> Tree<T> {
    fn new(len: usize) -> Self {
        let size = len.next_power_of_two();
        Tree { size, mx: vec![T::default(); 2 * size], mn: vec![T::default(); 2 * size], tag: vec![T::default(); 2 * size] }
    }

    fn clear(&mut self) {
        self.mx.fill(T::default());
        self.mn.fill(T::default());
        self.tag.fill(T::default());
    }

    fn suffix_add(&mut self, from: usize, v: T) {
        self.add(1, 0, self.size, from, v);
    }

    fn add(&mut self, node: usize, lo: usize, hi: usize, from: usize, v: T) {
        if from <= lo {
            self.tag[node] = self.tag[node] + v;
            self.mx[node] = self.mx[node] + v;
            self.mn[node] = self.mn[node] + v;
            return;
        }
        let mid = (lo + hi) / 2;
        if from < mid {
            self.add(2 * node, lo, mid, from, v);
        }
        self.add(2 * node + 1, mid, hi, from, v);
        let t = self.tag[node];
        self.mx[node] = pmax(self.mx[2 * node], self.mx[2 * node + 1]) + t;
        self.mn[node] = pmin(self.mn[2 * node], self.mn[2 * node + 1]) + t;
    }
}

/// `max |Σ_{a∈[p,q), b∈[r,s)} δ(a, b)|` over all grid rectangles.
///
/// `columns[a]` lists the nonzero `(b, δ(a, b))` of column `a`; `b < m_y`.
pub(crate) fn max_discrepancy<T: Val>(m_y: usize, columns: &[Vec<(usize, T)>]) -> T {
    let m_x = columns.len();
    let mut tree = Tree::new(m_y + 1);
    let mut best = T::default();
    for p in 0..m_x {
        tree.clear();
        for col in &columns[p..] {
            for &(b, d) in col {
                tree.suffix_add(b + 1, d);
            }
            best = pmax(best, tree.mx[1] - tree.mn[1]);
        }
    }
    best
}

#[cfg(test)]
mod tests {
    use super::*;

    fn brute(m_y: usize, cols: &[Vec<(usize, i128)>]) -> i128 {
        let m_x = cols.len();
        let mut dense = vec![vec![0i128; m_y]; m_x];
        for (a, c) in cols.iter().enumerate() {
            for &(b, d) in c {
                dense[a][b] += d;
            }
        }
        let mut best = 0;
        for p in 0..m_x {
            for q in p + 1..=m_x {
                for r in 0..m_y {
                    for s in r + 1..=m_y {
                        let t: i128 = (p..q).map(|a| (r..s).map(|b| dense[a][b]).sum::<i128>()).sum();
                        best = best.max(t.abs());
                    }
                }
            }
        }
        best
    }

    #[test]
    fn matches_brute_force() {
        let mut state = 12345u64;
        let mut next = || {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            (state >> 33) as i128
        };
        for _ in 0..30 {
            let m_x = (next() % 6 + 1) as usize;
            let m_y = (next() % 6 + 1) as usize;
            let cols: Vec<Vec<(usize, i128)>> =
                (0..m_x).map(|_| (0..(next() % 4)).map(|_| ((next() as usize) % m_y, next() % 11 - 5)).collect()).collect();
            assert_eq!(max_discrepancy(m_y, &cols), brute(m_y, &cols));
        }
    }
}
