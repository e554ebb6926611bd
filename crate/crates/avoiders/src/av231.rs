use std::hash::{Hash, Hasher};

use permlab_perm::Perm;
use rand::{Rng, RngCore};

use crate::AvoidError;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct BNode {
    pub left: Option<usize>,
    pub right: Option<usize>,
}

/// Arena binary tree; left and right children are distinguished.
#[derive(Clone, Debug, Default)]
pub struct BinaryTree {
    pub nodes: Vec<BNode>,
    pub root: Option<usize>,
}

impl BinaryTree {
    pub fn empty() -> Self {
        BinaryTree::default()
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// Pre-order shape code: two bits per node (has left, has right).
    pub fn shape(&self) -> Vec<u8> {
        let mut out = Vec::with_capacity(self.len());
        let mut stack: Vec<usize> = self.root.into_iter().collect();
        while let Some(v) = stack.pop() {
            let n = self.nodes[v];
            out.push(n.left.is_some() as u8 | (n.right.is_some() as u8) << 1);
            stack.extend(n.right);
            stack.extend(n.left);
        }
        out
    }

    /// Nodes in in-order.
    pub fn in_order(&self) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.len());
        let mut stack = Vec::new();
        let mut cur = self.root;
        while cur.is_some() || !stack.is_empty() {
            while let Some(v) = cur {
                stack.push(v);
                cur = self.nodes[v].left;
            }
            let v = stack.pop().unwrap();
            out.push(v);
            cur = self.nodes[v].right;
        }
        out
    }

    /// Nodes in post-order.
    pub fn post_order(&self) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.len());
        let mut stack: Vec<usize> = self.root.into_iter().collect();
        while let Some(v) = stack.pop() {
            out.push(v);
            stack.extend(self.nodes[v].left);
            stack.extend(self.nodes[v].right);
        }
        out.reverse();
        out
    }

    /// Length of the path root, left child, left child, ...
    pub fn left_spine(&self) -> usize {
        let mut k = 0;
        let mut cur = self.root;
        while let Some(v) = cur {
            k += 1;
            cur = self.nodes[v].left;
        }
        k
    }
}

impl PartialEq for BinaryTree {
    fn eq(&self, other: &Self) -> bool {
        self.shape() == other.shape()
    }
}

impl Eq for BinaryTree {}

impl Hash for BinaryTree {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.shape().hash(state);
    }
}

/// `ψ(T)`: value of the `i`-th in-order node is its post-order label.
pub fn binary_to_av231(t: &BinaryTree) -> Perm {
    let mut post = vec![0; t.len()];
    for (k, v) in t.post_order().into_iter().enumerate() {
        post[v] = k + 1;
    }
    Perm::from_vec_unchecked(t.in_order().into_iter().map(|v| post[v]).collect())
}

/// Range arg-max / arg-min over a fixed slice.
pub(crate) struct Sparse {
    mx: Vec<Vec<usize>>,
    mn: Vec<Vec<usize>>,
}

impl Sparse {
    pub fn new(v: &[usize]) -> Self {
        let n = v.len();
        let mut mx = vec![(0..n).collect::<Vec<_>>()];
        let mut mn = mx.clone();
        let mut k = 1;
        while 2 * k <= n {
            let (pmx, pmn) = (mx.last().unwrap(), mn.last().unwrap());
            let nmx = (0..=n - 2 * k).map(|i| if v[pmx[i]] > v[pmx[i + k]] { pmx[i] } else { pmx[i + k] }).collect();
            let nmn = (0..=n - 2 * k).map(|i| if v[pmn[i]] < v[pmn[i + k]] { pmn[i] } else { pmn[i + k] }).collect();
            mx.push(nmx);
            mn.push(nmn);
            k *= 2;
        }
        Sparse { mx, mn }
    }

    /// Arg-max on `[lo, hi)`, nonempty.
    pub fn argmax(&self, v: &[usize], lo: usize, hi: usize) -> usize {
        let j = (usize::BITS - 1 - (hi - lo).leading_zeros()) as usize;
        let (a, b) = (self.mx[j][lo], self.mx[j][hi - (1 << j)]);
        if v[a] > v[b] {
            a
        } else {
            b
        }
    }

    pub fn argmin(&self, v: &[usize], lo: usize, hi: usize) -> usize {
        let j = (usize::BITS - 1 - (hi - lo).leading_zeros()) as usize;
        let (a, b) = (self.mn[j][lo], self.mn[j][hi - (1 << j)]);
        if v[a] < v[b] {
            a
        } else {
            b
        }
    }
}

/// `φ(σ)`: root at the maximum, left and right subtrees from the two sides.
pub fn av231_to_binary(sigma: &Perm) -> Result<BinaryTree, AvoidError> {
    let v = sigma.values();
    let n = v.len();
    let mut t = BinaryTree { nodes: vec![BNode::default(); n], root: None };
    if n == 0 {
        return Ok(t);
    }
    let sp = Sparse::new(v);
    // (lo, hi, parent, is_left)
    let mut stack = vec![(0usize, n, usize::MAX, false)];
    while let Some((lo, hi, parent, is_left)) = stack.pop() {
        let l = sp.argmax(v, lo, hi);
        if l > lo && l + 1 < hi {
            let i = sp.argmax(v, lo, l);
            let k = sp.argmin(v, l + 1, hi);
            if v[i] > v[k] {
                return Err(AvoidError::Contains { pattern: "231", positions: [i + 1, l + 1, k + 1] });
            }
        }
        if parent == usize::MAX {
            t.root = Some(l);
        } else if is_left {
            t.nodes[parent].left = Some(l);
        } else {
            t.nodes[parent].right = Some(l);
        }
        if l > lo {
            stack.push((lo, l, l, true));
        }
        if l + 1 < hi {
            stack.push((l + 1, hi, l, false));
        }
    }
    Ok(t)
}

/// Decodes the pre-order word of a full binary tree (`true` = internal node).
fn decode_full(word: &[bool]) -> BinaryTree {
    let mut t = BinaryTree::empty();
    // (node, next slot: 0 = left, 1 = right)
    let mut stack: Vec<(usize, u8)> = Vec::new();
    for &internal in word {
        let id = if internal {
            t.nodes.push(BNode::default());
            Some(t.nodes.len() - 1)
        } else {
            None
        };
        match stack.last_mut() {
            None => t.root = id,
            Some((p, slot)) => {
                if *slot == 0 {
                    t.nodes[*p].left = id;
                    *slot = 1;
                } else {
                    t.nodes[*p].right = id;
                    stack.pop();
                }
            }
        }
        if let Some(id) = id {
            stack.push((id, 0));
        }
    }
    t
}

/// Start index of the unique rotation of `steps` (total `-1`) whose partial
/// sums stay non-negative before the final step.
pub(crate) fn cycle_lemma_start(steps: impl Iterator<Item = i64>) -> usize {
    let (mut s, mut best, mut at) = (0i64, i64::MAX, 0usize);
    for (k, d) in steps.enumerate() {
        s += d;
        if s < best {
            best = s;
            at = k + 1;
        }
    }
    at
}

/// Uniform binary tree with `n` nodes via a uniform word and the cycle lemma.
pub fn uniform_binary_tree<R: RngCore + ?Sized>(n: usize, rng: &mut R) -> BinaryTree {
    let mut word: Vec<bool> = (0..2 * n + 1).map(|i| i < n).collect();
    for i in (1..word.len()).rev() {
        word.swap(i, rng.random_range(0..=i));
    }
    let start = cycle_lemma_start(word.iter().map(|&b| if b { 1 } else { -1 })) % word.len();
    word.rotate_left(start);
    decode_full(&word)
}

pub fn sample_av231<R: RngCore + ?Sized>(n: usize, rng: &mut R) -> Result<Perm, AvoidError> {
    if n == 0 {
        return Err(AvoidError::EmptySize);
    }
    Ok(binary_to_av231(&uniform_binary_tree(n, rng)))
}

/// Every binary tree with `n` nodes.
pub fn enumerate_binary_trees(n: usize) -> Vec<BinaryTree> {
    fn words(n: usize) -> Vec<Vec<bool>> {
        if n == 0 {
            return vec![vec![false]];
        }
        let mut out = Vec::new();
        for l in 0..n {
            for a in words(l) {
                for b in words(n - 1 - l) {
                    let mut w = vec![true];
                    w.extend(&a);
                    w.extend(&b);
                    out.push(w);
                }
            }
        }
        out
    }
    words(n).iter().map(|w| decode_full(w)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use permlab_perm::rng::substream;

    #[test]
    fn single_node() {
        let t = enumerate_binary_trees(1).pop().unwrap();
        assert_eq!(binary_to_av231(&t), Perm::identity(1));
        assert!(binary_to_av231(&BinaryTree::empty()).is_empty());
    }

    #[test]
    fn left_spine_is_increasing() {
        let mut t = BinaryTree::empty();
        for i in 0..5 {
            t.nodes.push(BNode { left: (i < 4).then_some(i + 1), right: None });
        }
        t.root = Some(0);
        assert_eq!(binary_to_av231(&t), Perm::identity(5));
    }

    #[test]
    fn witness_on_231() {
        let e = av231_to_binary(&Perm::parse("2431").unwrap()).unwrap_err();
        assert_eq!(e, AvoidError::Contains { pattern: "231", positions: [1, 2, 4] });
    }

    #[test]
    fn random_trees_have_n_nodes() {
        let mut rng = substream(0, "bt", 0);
        for n in [1, 2, 10, 300] {
            let t = uniform_binary_tree(n, &mut rng);
            assert_eq!(t.len(), n);
            assert_eq!(t.in_order().len(), n);
        }
    }
}
