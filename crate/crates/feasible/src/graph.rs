use std::collections::BTreeSet;

use permlab_perm::{enumerate_all, factorial, Perm};

use crate::FeasibleError;

pub const MAX_K: usize = 5;

/// Lexicographic rank of the pattern of `w` among `S_{|w|}`.
pub fn pattern_rank(w: &[usize]) -> usize {
    let k = w.len();
    let mut r = 0;
    for i in 0..k {
        let smaller = w[i + 1..].iter().filter(|&&x| x < w[i]).count();
        r = r * (k - i) + smaller;
    }
    r
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Edge {
    pub label: Perm,
    pub from: usize,
    pub to: usize,
}

/// `Ov(k)`: vertices are `S_{k-1}` and edges `S_k`, both in lexicographic
/// order, so edge `e` is coordinate `e` of a vector over `S_k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OverlapGraph {
    pub k: usize,
    pub vertices: Vec<Perm>,
    pub edges: Vec<Edge>,
    out: Vec<Vec<usize>>,
}

pub fn build_overlap_graph(k: usize) -> Result<OverlapGraph, FeasibleError> {
    build_overlap_graph_capped(k, MAX_K)
}

pub fn build_overlap_graph_capped(k: usize, max_k: usize) -> Result<OverlapGraph, FeasibleError> {
    if !(2..=max_k).contains(&k) {
        return Err(FeasibleError::KOutOfRange { k, max: max_k });
    }
    let vertices: Vec<Perm> = enumerate_all(k - 1).collect();
    let mut out = vec![Vec::new(); vertices.len()];
    let edges: Vec<Edge> = enumerate_all(k)
        .enumerate()
        .map(|(e, label)| {
            let v = label.values();
            let (from, to) = (pattern_rank(&v[..k - 1]), pattern_rank(&v[1..]));
            out[from].push(e);
            Edge { label, from, to }
        })
        .collect();
    Ok(OverlapGraph { k, vertices, edges, out })
}

impl OverlapGraph {
    pub fn out_edges(&self, v: usize) -> &[usize] {
        &self.out[v]
    }

    pub fn in_degree(&self, v: usize) -> usize {
        self.edges.iter().filter(|e| e.to == v).count()
    }

    pub fn edge_of(&self, pi: &Perm) -> Option<usize> {
        (pi.len() == self.k).then(|| pattern_rank(pi.values()))
    }

    /// Every vertex has `k` outgoing and `k` incoming edges.
    pub fn check_degrees(&self) -> bool {
        self.vertices.len() as u128 == factorial(self.k - 1)
            && self.edges.len() as u128 == factorial(self.k)
            && (0..self.vertices.len()).all(|v| self.out[v].len() == self.k && self.in_degree(v) == self.k)
    }

    /// Edges form a closed walk.
    pub fn is_closed_walk(&self, c: &[usize]) -> bool {
        !c.is_empty() && (0..c.len()).all(|i| self.edges[c[i]].to == self.edges[c[(i + 1) % c.len()]].from)
    }

    /// Vertex-simple closed walk.
    pub fn is_simple_cycle(&self, c: &[usize]) -> bool {
        let vs: BTreeSet<usize> = c.iter().map(|&e| self.edges[e].from).collect();
        self.is_closed_walk(c) && vs.len() == c.len()
    }
}

fn canonical(mut c: Vec<usize>) -> Vec<usize> {
    let p = (0..c.len()).min_by_key(|&i| c[i]).unwrap();
    c.rotate_left(p);
    c
}

struct Johnson<'a> {
    g: &'a OverlapGraph,
    s: usize,
    blocked: Vec<bool>,
    b: Vec<BTreeSet<usize>>,
    stack: Vec<usize>,
    out: Vec<Vec<usize>>,
    ceiling: usize,
}

impl Johnson<'_> {
    fn unblock(&mut self, u: usize) {
        self.blocked[u] = false;
        for w in std::mem::take(&mut self.b[u]) {
            if self.blocked[w] {
                self.unblock(w);
            }
        }
    }

    fn circuit(&mut self, v: usize) -> Result<bool, FeasibleError> {
        let mut found = false;
        self.blocked[v] = true;
        for &e in self.g.out_edges(v) {
            let w = self.g.edges[e].to;
            if w < self.s {
                continue;
            }
            if w == self.s {
                if self.out.len() == self.ceiling {
                    return Err(FeasibleError::CycleCeiling(self.ceiling));
                }
                let mut c = self.stack.clone();
                c.push(e);
                self.out.push(canonical(c));
                found = true;
            } else if !self.blocked[w] {
                self.stack.push(e);
                if self.circuit(w)? {
                    found = true;
                }
                self.stack.pop();
            }
        }
        if found {
            self.unblock(v);
        } else {
            for &e in self.g.out_edges(v) {
                let w = self.g.edges[e].to;
                if w >= self.s {
                    self.b[w].insert(v);
                }
            }
        }
        Ok(found)
    }
}

/// All vertex-simple cycles as edge lists, each rotated to start at its
/// smallest edge, sorted.
pub fn simple_cycles(g: &OverlapGraph, ceiling: usize) -> Result<Vec<Vec<usize>>, FeasibleError> {
    let nv = g.vertices.len();
    let mut j = Johnson { g, s: 0, blocked: vec![false; nv], b: vec![BTreeSet::new(); nv], stack: Vec::new(), out: Vec::new(), ceiling };
    for s in 0..nv {
        j.s = s;
        j.blocked.iter_mut().for_each(|x| *x = false);
        j.b.iter_mut().for_each(BTreeSet::clear);
        j.circuit(s)?;
    }
    let mut out = j.out;
    out.sort();
    Ok(out)
}

/// Same set as [`simple_cycles`] by unpruned depth-first search, starting
/// from the largest vertex of each cycle.
pub fn simple_cycles_dfs(g: &OverlapGraph, ceiling: usize) -> Result<Vec<Vec<usize>>, FeasibleError> {
    fn go(g: &OverlapGraph, s: usize, v: usize, on: &mut [bool], path: &mut Vec<usize>, out: &mut Vec<Vec<usize>>, ceiling: usize) -> Result<(), FeasibleError> {
        for &e in g.out_edges(v) {
            let w = g.edges[e].to;
            if w == s {
                if out.len() == ceiling {
                    return Err(FeasibleError::CycleCeiling(ceiling));
                }
                path.push(e);
                out.push(canonical(path.clone()));
                path.pop();
            } else if w < s && !on[w] {
                on[w] = true;
                path.push(e);
                go(g, s, w, on, path, out, ceiling)?;
                path.pop();
                on[w] = false;
            }
        }
        Ok(())
    }
    let nv = g.vertices.len();
    let mut out = Vec::new();
    for s in (0..nv).rev() {
        let mut on = vec![false; nv];
        on[s] = true;
        go(g, s, s, &mut on, &mut Vec::new(), &mut out, ceiling)?;
    }
    out.sort();
    Ok(out)
}
