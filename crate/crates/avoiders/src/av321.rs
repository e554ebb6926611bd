use permlab_perm::Perm;
use rand::RngCore;

use crate::av231::cycle_lemma_start;
use crate::AvoidError;

/// Rooted plane tree; node 0 is the root, children listed left to right.
#[derive(Clone, Debug)]
pub struct PlaneTree {
    pub children: Vec<Vec<usize>>,
}

impl PlaneTree {
    pub fn single() -> Self {
        PlaneTree { children: vec![Vec::new()] }
    }

    pub fn len(&self) -> usize {
        self.children.len()
    }

    pub fn is_empty(&self) -> bool {
        self.children.is_empty()
    }

    pub fn pre_order(&self) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.len());
        let mut stack = vec![0];
        while let Some(v) = stack.pop() {
            out.push(v);
            stack.extend(self.children[v].iter().rev());
        }
        out
    }

    pub fn post_order(&self) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.len());
        let mut stack = vec![0];
        while let Some(v) = stack.pop() {
            out.push(v);
            stack.extend(self.children[v].iter());
        }
        out.reverse();
        out
    }

    /// Out-degrees in pre-order.
    pub fn degree_word(&self) -> Vec<usize> {
        self.pre_order().into_iter().map(|v| self.children[v].len()).collect()
    }

    /// Tree with the given pre-order out-degree sequence, if it is one.
    pub fn from_degrees(deg: &[usize]) -> Option<PlaneTree> {
        if deg.is_empty() {
            return None;
        }
        let mut children = vec![Vec::new(); deg.len()];
        let mut open: Vec<(usize, usize)> = Vec::new();
        for (v, &d) in deg.iter().enumerate() {
            if v > 0 {
                let (p, left) = open.last_mut()?;
                children[*p].push(v);
                *left -= 1;
                if *left == 0 {
                    open.pop();
                }
            }
            if d > 0 {
                open.push((v, d));
            }
            if open.is_empty() && v + 1 < deg.len() {
                return None;
            }
        }
        open.is_empty().then_some(PlaneTree { children })
    }
}

impl PartialEq for PlaneTree {
    fn eq(&self, other: &Self) -> bool {
        self.degree_word() == other.degree_word()
    }
}

impl Eq for PlaneTree {}

/// `σ_T(q_i) = s_i` on leaves, other values filled increasingly.
///
/// `s_i` are pre-order labels from 0 and `q_i` post-order labels from 1,
/// leaves taken left to right.
pub fn plane_tree_to_av321(t: &PlaneTree) -> Perm {
    let m = t.len();
    let n = m - 1;
    let mut pre = vec![0; m];
    for (k, v) in t.pre_order().into_iter().enumerate() {
        pre[v] = k;
    }
    let mut post = vec![0; m];
    for (k, v) in t.post_order().into_iter().enumerate() {
        post[v] = k + 1;
    }
    let mut val = vec![0; n + 1];
    let mut used = vec![false; n + 2];
    for v in t.pre_order() {
        if t.children[v].is_empty() && v != 0 {
            val[post[v]] = pre[v];
            used[pre[v]] = true;
        }
    }
    let mut free = (1..=n).filter(|&y| !used[y]);
    for x in 1..=n {
        if val[x] == 0 {
            val[x] = free.next().expect("counts agree");
        }
    }
    Perm::from_vec_unchecked(val[1..].to_vec())
}

fn witness_321(v: &[usize]) -> Option<[usize; 3]> {
    let n = v.len();
    let mut sufmin = vec![usize::MAX; n + 1];
    let mut sufarg = vec![n; n + 1];
    for i in (0..n).rev() {
        (sufmin[i], sufarg[i]) = if v[i] < sufmin[i + 1] { (v[i], i) } else { (sufmin[i + 1], sufarg[i + 1]) };
    }
    let (mut pmax, mut parg) = (0, 0);
    for j in 0..n {
        if pmax > v[j] && sufmin[j + 1] < v[j] {
            return Some([parg + 1, j + 1, sufarg[j + 1] + 1]);
        }
        if v[j] > pmax {
            pmax = v[j];
            parg = j;
        }
    }
    None
}

/// The plane tree `T` with `Q(T) = E⁺(σ)` and `S(T) = σ(E⁺(σ))`.
pub fn av321_to_plane_tree(sigma: &Perm) -> Result<PlaneTree, AvoidError> {
    let v = sigma.values();
    if let Some(w) = witness_321(v) {
        return Err(AvoidError::Contains { pattern: "321", positions: w });
    }
    let n = v.len();
    let q: Vec<usize> = (1..=n).filter(|&i| v[i - 1] >= i).collect();
    let s: Vec<usize> = q.iter().map(|&i| v[i - 1]).collect();
    let mut children = vec![Vec::new()];
    let mut stack = vec![0usize];
    let bad = || AvoidError::Malformed("leaf labels do not describe a tree".into());
    let push_chain = |stack: &mut Vec<usize>, children: &mut Vec<Vec<usize>>, internal: usize| {
        for _ in 0..=internal {
            let id = children.len();
            children.push(Vec::new());
            children[*stack.last().unwrap()].push(id);
            stack.push(id);
        }
    };
    if q.is_empty() {
        return if n == 0 { Ok(PlaneTree::single()) } else { Err(bad()) };
    }
    if q[0] != 1 || s[0] == 0 {
        return Err(bad());
    }
    push_chain(&mut stack, &mut children, s[0] - 1);
    for i in 1..q.len() {
        let (up, down) = (s[i].checked_sub(s[i - 1] + 1).ok_or_else(bad)?, q[i].checked_sub(q[i - 1] + 1).ok_or_else(bad)?);
        for _ in 0..=down {
            stack.pop();
        }
        if stack.is_empty() {
            return Err(bad());
        }
        push_chain(&mut stack, &mut children, up);
    }
    if children.len() != n + 1 || q.last().unwrap() + stack.len() != n + 2 {
        return Err(bad());
    }
    let t = PlaneTree { children };
    if plane_tree_to_av321(&t) != *sigma {
        return Err(bad());
    }
    Ok(t)
}

fn geometric_half<R: RngCore + ?Sized>(rng: &mut R) -> usize {
    let mut k = 0;
    loop {
        let x = rng.next_u64();
        if x != 0 {
            return k + x.trailing_zeros() as usize;
        }
        k += 64;
    }
}

/// Geom(1/2) Galton–Watson tree conditioned on `m` vertices, and the number of proposals used.
pub fn sample_gw_plane_tree<R: RngCore + ?Sized>(m: usize, rng: &mut R) -> (PlaneTree, u64) {
    assert!(m >= 1);
    let mut tries = 0;
    loop {
        tries += 1;
        let mut deg = Vec::with_capacity(m);
        let mut total = 0;
        for _ in 0..m {
            let d = geometric_half(rng);
            total += d;
            deg.push(d);
            if total >= m {
                break;
            }
        }
        if deg.len() != m || total != m - 1 {
            continue;
        }
        let start = cycle_lemma_start(deg.iter().map(|&d| d as i64 - 1)) % m;
        deg.rotate_left(start);
        return (PlaneTree::from_degrees(&deg).expect("cycle lemma rotation"), tries);
    }
}

pub fn sample_av321_counted<R: RngCore + ?Sized>(n: usize, rng: &mut R) -> Result<(Perm, u64), AvoidError> {
    if n == 0 {
        return Err(AvoidError::EmptySize);
    }
    let (t, tries) = sample_gw_plane_tree(n + 1, rng);
    Ok((plane_tree_to_av321(&t), tries))
}

pub fn sample_av321<R: RngCore + ?Sized>(n: usize, rng: &mut R) -> Result<Perm, AvoidError> {
    sample_av321_counted(n, rng).map(|r| r.0)
}

/// Every plane tree with `m` vertices.
pub fn enumerate_plane_trees(m: usize) -> Vec<PlaneTree> {
    fn rec(left: usize, open: i64, cur: &mut Vec<usize>, out: &mut Vec<PlaneTree>) {
        if left == 0 {
            if open == 0 {
                out.push(PlaneTree::from_degrees(cur).unwrap());
            }
            return;
        }
        for d in 0..left {
            let o = open - 1 + d as i64;
            let rest = left as i64 - 1;
            if o > rest || (rest > 0 && o < 1) || (rest == 0 && o != 0) {
                continue;
            }
            cur.push(d);
            rec(left - 1, o, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if m > 0 {
        rec(m, 1, &mut Vec::new(), &mut out);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn star_gives_identity() {
        let t = PlaneTree { children: vec![vec![1, 2, 3], vec![], vec![], vec![]] };
        assert_eq!(plane_tree_to_av321(&t), Perm::identity(3));
        let edge = PlaneTree { children: vec![vec![1], vec![]] };
        assert_eq!(plane_tree_to_av321(&edge), Perm::identity(1));
    }

    #[test]
    fn witness_on_321() {
        let e = av321_to_plane_tree(&Perm::parse("2431").unwrap()).unwrap_err();
        assert_eq!(e, AvoidError::Contains { pattern: "321", positions: [2, 3, 4] });
    }

    #[test]
    fn plane_tree_counts() {
        let c: Vec<usize> = (1..=7).map(|m| enumerate_plane_trees(m).len()).collect();
        assert_eq!(c, [1, 1, 2, 5, 14, 42, 132]);
    }
}
