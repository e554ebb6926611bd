use permlab_perm::Perm;
use serde::{Deserialize, Serialize};

use crate::walk::{Step, Walk};
use crate::BaxterError;

/// Plane bipolar orientation drawn upward. Out- and in-edges of each vertex
/// are listed left to right; this fixes the rotation system. `label` is
/// `Some` exactly on explored edges of a marked map.
#[derive(Clone, Debug)]
pub struct BipolarMap {
    pub tail: Vec<usize>,
    pub head: Vec<usize>,
    pub out: Vec<Vec<usize>>,
    pub inc: Vec<Vec<usize>>,
    pub source: usize,
    pub sink: usize,
    pub label: Vec<Option<usize>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Face {
    pub bottom: usize,
    pub top: usize,
    /// Bottom to top.
    pub left: Vec<usize>,
    pub right: Vec<usize>,
}

/// Inner faces are `0..inner.len()`, then the left and right outer faces.
#[derive(Clone, Debug)]
pub struct Faces {
    pub inner: Vec<Face>,
    pub left_of: Vec<usize>,
    pub right_of: Vec<usize>,
    pub leftmost: Vec<usize>,
    pub rightmost: Vec<usize>,
}

impl Faces {
    pub fn left_outer(&self) -> usize {
        self.inner.len()
    }

    pub fn right_outer(&self) -> usize {
        self.inner.len() + 1
    }
}

/// Vertices and edges renumbered by exploration order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CanonicalMap {
    pub ends: Vec<(usize, usize)>,
    pub out: Vec<Vec<usize>>,
    pub inc: Vec<Vec<usize>>,
    pub label: Vec<Option<usize>>,
}

impl BipolarMap {
    pub fn single_edge() -> Self {
        BipolarMap {
            tail: vec![0],
            head: vec![1],
            out: vec![vec![0], vec![]],
            inc: vec![vec![], vec![0]],
            source: 0,
            sink: 1,
            label: vec![Some(1)],
        }
    }

    pub fn edge_count(&self) -> usize {
        self.tail.len()
    }

    pub fn vertex_count(&self) -> usize {
        self.out.len()
    }

    pub fn explored(&self) -> usize {
        self.label.iter().filter(|l| l.is_some()).count()
    }

    fn add_vertex(&mut self) -> usize {
        self.out.push(Vec::new());
        self.inc.push(Vec::new());
        self.out.len() - 1
    }

    fn add_edge(&mut self, u: usize, v: usize, label: Option<usize>) -> usize {
        self.tail.push(u);
        self.head.push(v);
        self.label.push(label);
        self.tail.len() - 1
    }

    fn topological(&self) -> Result<Vec<usize>, BaxterError> {
        let nv = self.vertex_count();
        let mut indeg: Vec<usize> = self.inc.iter().map(Vec::len).collect();
        let mut stack: Vec<usize> = (0..nv).filter(|&v| indeg[v] == 0).collect();
        let mut order = Vec::with_capacity(nv);
        while let Some(v) = stack.pop() {
            order.push(v);
            for &e in &self.out[v] {
                let h = self.head[e];
                indeg[h] -= 1;
                if indeg[h] == 0 {
                    stack.push(h);
                }
            }
        }
        if order.len() != nv {
            return Err(BaxterError::Malformed("orientation has a cycle".into()));
        }
        Ok(order)
    }

    fn check_incidence(&self) -> Result<(), BaxterError> {
        let (ne, nv) = (self.edge_count(), self.vertex_count());
        if self.head.len() != ne || self.label.len() != ne || self.inc.len() != nv {
            return Err(BaxterError::Malformed("inconsistent table sizes".into()));
        }
        if ne == 0 || self.source >= nv || self.sink >= nv || self.source == self.sink {
            return Err(BaxterError::Malformed("missing poles or edges".into()));
        }
        let mut seen = vec![[0u8; 2]; ne];
        for v in 0..nv {
            for (side, lists) in [(0, &self.out), (1, &self.inc)] {
                for &e in &lists[v] {
                    let end = if side == 0 { self.tail.get(e) } else { self.head.get(e) };
                    if end != Some(&v) {
                        return Err(BaxterError::Malformed(format!("edge {e} listed at vertex {v}")));
                    }
                    seen[e][side] += 1;
                }
            }
            let poles = (v == self.source, v == self.sink);
            let ok = match poles {
                (true, _) => self.inc[v].is_empty() && !self.out[v].is_empty(),
                (_, true) => self.out[v].is_empty() && !self.inc[v].is_empty(),
                _ => !self.inc[v].is_empty() && !self.out[v].is_empty(),
            };
            if !ok {
                return Err(BaxterError::Malformed(format!("vertex {v} breaks the bipolar condition")));
            }
        }
        if seen.iter().any(|s| *s != [1, 1]) {
            return Err(BaxterError::Malformed("edge not listed exactly once at each end".into()));
        }
        Ok(())
    }

    fn chain(&self, mut e: usize, leftward: bool) -> Vec<usize> {
        let mut c = vec![e];
        loop {
            let h = self.head[e];
            let pivot = if leftward { self.inc[h].first() } else { self.inc[h].last() };
            let next = if leftward { self.out[h].first() } else { self.out[h].last() };
            match (pivot, next) {
                (Some(&p), Some(&n)) if p == e => {
                    c.push(n);
                    e = n;
                }
                _ => return c,
            }
        }
    }

    /// Traces every face; fails on maps that are not plane bipolar.
    pub fn faces(&self) -> Result<Faces, BaxterError> {
        self.check_incidence()?;
        self.topological()?;
        let ne = self.edge_count();
        let mut left_of = vec![usize::MAX; ne];
        let mut right_of = vec![usize::MAX; ne];
        let mut inner = Vec::new();
        for u in 0..self.vertex_count() {
            for w in self.out[u].windows(2) {
                let left = self.chain(w[0], false);
                let right = self.chain(w[1], true);
                let (tl, tr) = (self.head[*left.last().unwrap()], self.head[*right.last().unwrap()]);
                if tl != tr {
                    return Err(BaxterError::Malformed(format!("face above vertex {u} does not close")));
                }
                inner.push(Face { bottom: u, top: tl, left, right });
            }
        }
        let leftmost = self.chain(self.out[self.source][0], true);
        let rightmost = self.chain(*self.out[self.source].last().unwrap(), false);
        let (lo, ro) = (inner.len(), inner.len() + 1);
        let assign = |slot: &mut Vec<usize>, e: usize, f: usize| -> Result<(), BaxterError> {
            if slot[e] != usize::MAX {
                return Err(BaxterError::Malformed(format!("edge {e} borders two faces on one side")));
            }
            slot[e] = f;
            Ok(())
        };
        for (f, face) in inner.iter().enumerate() {
            for &e in &face.left {
                assign(&mut right_of, e, f)?;
            }
            for &e in &face.right {
                assign(&mut left_of, e, f)?;
            }
        }
        for &e in &rightmost {
            assign(&mut right_of, e, ro)?;
        }
        for &e in &leftmost {
            assign(&mut left_of, e, lo)?;
        }
        if left_of.iter().chain(&right_of).any(|&f| f == usize::MAX) {
            return Err(BaxterError::Malformed("edge without a bordering face".into()));
        }
        if self.head[*leftmost.last().unwrap()] != self.sink || self.head[*rightmost.last().unwrap()] != self.sink {
            return Err(BaxterError::Malformed("outer boundary misses the sink".into()));
        }
        if inner.len() + self.vertex_count() != ne + 1 {
            return Err(BaxterError::Malformed("Euler relation fails".into()));
        }
        Ok(Faces { inner, left_of, right_of, leftmost, rightmost })
    }

    pub fn validate(&self) -> Result<(), BaxterError> {
        self.faces().map(|_| ())
    }

    /// `m*`: one vertex per face, each edge crossed from its right face to
    /// its left face. Edge ids and labels are kept.
    pub fn dual(&self) -> Result<BipolarMap, BaxterError> {
        let f = self.faces()?;
        let nf = f.inner.len() + 2;
        let mut out = vec![Vec::new(); nf];
        let mut inc = vec![Vec::new(); nf];
        for (k, face) in f.inner.iter().enumerate() {
            out[k] = face.left.clone();
            inc[k] = face.right.clone();
        }
        out[f.right_outer()] = f.rightmost.clone();
        inc[f.left_outer()] = f.leftmost.clone();
        Ok(BipolarMap {
            tail: f.right_of.clone(),
            head: f.left_of.clone(),
            out,
            inc,
            source: f.right_outer(),
            sink: f.left_outer(),
            label: self.label.clone(),
        })
    }

    /// Orientation reversed, drawn upward again (rotated by a half turn).
    pub fn reverse(&self) -> BipolarMap {
        let rev = |l: &Vec<Vec<usize>>| l.iter().map(|v| v.iter().rev().copied().collect()).collect();
        BipolarMap {
            tail: self.head.clone(),
            head: self.tail.clone(),
            out: rev(&self.inc),
            inc: rev(&self.out),
            source: self.sink,
            sink: self.source,
            label: self.label.clone(),
        }
    }

    /// Reflection across a vertical line.
    pub fn mirror(&self) -> BipolarMap {
        let rev = |l: &Vec<Vec<usize>>| l.iter().map(|v| v.iter().rev().copied().collect()).collect();
        BipolarMap { out: rev(&self.out), inc: rev(&self.inc), ..self.clone() }
    }

    /// Contour exploration of `T(m)`: edges in visiting order, and the height
    /// in `T(m)` of each edge's tail.
    pub fn exploration(&self) -> (Vec<usize>, Vec<usize>) {
        let ne = self.edge_count();
        let mut order = Vec::with_capacity(ne);
        let mut depth = vec![0; ne];
        let mut stack = vec![(self.source, 0usize, 0usize)];
        while let Some(top) = stack.last_mut() {
            let (v, k, d) = *top;
            if k == self.out[v].len() {
                stack.pop();
                continue;
            }
            top.1 += 1;
            let e = self.out[v][k];
            order.push(e);
            depth[e] = d;
            let h = self.head[e];
            if self.inc[h].last() == Some(&e) {
                stack.push((h, 0, d + 1));
            }
        }
        (order, depth)
    }

    /// `bow(m)`.
    pub fn bow(&self) -> Result<Walk, BaxterError> {
        let topo = self.topological()?;
        let mut ydist = vec![0i64; self.vertex_count()];
        for &v in topo.iter().rev() {
            if let Some(&e) = self.out[v].first() {
                ydist[v] = 1 + ydist[self.head[e]];
            }
        }
        let (order, depth) = self.exploration();
        Ok(Walk { points: order.iter().map(|&e| (depth[e] as i64, ydist[self.head[e]])).collect() })
    }

    /// `bobp(m)`: the `i`-th edge of `T(m)` is the `π(i)`-th of `T(m*)`.
    pub fn bobp(&self) -> Result<Perm, BaxterError> {
        let d = self.dual()?;
        let (dorder, _) = d.exploration();
        let mut drank = vec![0; self.edge_count()];
        for (r, &e) in dorder.iter().enumerate() {
            drank[e] = r + 1;
        }
        let (order, _) = self.exploration();
        Ok(Perm::from_vec_unchecked(order.iter().map(|&e| drank[e]).collect()))
    }

    pub fn canonical(&self) -> CanonicalMap {
        let (order, _) = self.exploration();
        let mut erank = vec![usize::MAX; self.edge_count()];
        for (r, &e) in order.iter().enumerate() {
            erank[e] = r;
        }
        let mut vid = vec![usize::MAX; self.vertex_count()];
        let mut next = 1;
        vid[self.source] = 0;
        for &e in &order {
            if vid[self.head[e]] == usize::MAX {
                vid[self.head[e]] = next;
                next += 1;
            }
        }
        let mut out = vec![Vec::new(); next];
        let mut inc = vec![Vec::new(); next];
        for v in 0..self.vertex_count() {
            if vid[v] != usize::MAX {
                out[vid[v]] = self.out[v].iter().map(|&e| erank[e]).collect();
                inc[vid[v]] = self.inc[v].iter().map(|&e| erank[e]).collect();
            }
        }
        CanonicalMap {
            ends: order.iter().map(|&e| (vid[self.tail[e]], vid[self.head[e]])).collect(),
            out,
            inc,
            label: order.iter().map(|&e| self.label[e]).collect(),
        }
    }
}

impl PartialEq for BipolarMap {
    fn eq(&self, other: &Self) -> bool {
        self.canonical() == other.canonical()
    }
}

/// `Θ`: incremental construction of the marked map of a walk with increments
/// in `A`. Edge `e_t` carries label `first + t`.
pub fn theta_from(steps: &[Step], first: usize) -> BipolarMap {
    let mut m = BipolarMap::single_edge();
    m.label[0] = Some(first);
    let mut active = 0;
    for (t, s) in steps.iter().enumerate() {
        let lab = Some(first + t + 1);
        match *s {
            Step::Diag => {
                let v = m.head[active];
                active = match m.out[v].last() {
                    Some(&e) => e,
                    None => {
                        let w = m.add_vertex();
                        let e = m.add_edge(v, w, None);
                        m.out[v].push(e);
                        m.inc[w].push(e);
                        m.sink = w;
                        e
                    }
                };
                m.label[active] = lab;
            }
            Step::Face { i, j } => {
                let b = m.head[active];
                let mut cur = active;
                for _ in 0..i {
                    let u = m.tail[cur];
                    cur = match m.inc[u].last() {
                        Some(&e) => e,
                        None => {
                            let s = m.add_vertex();
                            let e = m.add_edge(s, u, None);
                            m.out[s].push(e);
                            m.inc[u].push(e);
                            m.source = s;
                            e
                        }
                    };
                }
                let c = m.tail[cur];
                let mut prev = c;
                let mut first_new = usize::MAX;
                for k in 0..=j {
                    let next = if k == j { b } else { m.add_vertex() };
                    let e = m.add_edge(prev, next, None);
                    m.out[prev].push(e);
                    m.inc[next].push(e);
                    if k == 0 {
                        first_new = e;
                    }
                    prev = next;
                }
                active = first_new;
                m.label[active] = lab;
            }
        }
    }
    m
}

/// `Θ(W)` with labels `1..=n`.
pub fn theta(w: &Walk) -> Result<BipolarMap, BaxterError> {
    if w.is_empty() {
        return Err(BaxterError::NotTandem("empty walk".into()));
    }
    Ok(theta_from(&w.steps()?, 1))
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct DartJson {
    vertex: usize,
    twin: usize,
    next: usize,
    orient: String,
    label: Option<usize>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct MapJson {
    source: usize,
    sink: usize,
    first: Vec<usize>,
    darts: Vec<DartJson>,
}

impl BipolarMap {
    /// Dart `2e` sits at the tail of edge `e`, `2e + 1` at its head. `next`
    /// is the clockwise successor at the vertex, `first[v]` the dart after
    /// the face that separates the lists (left face, or outer face at poles).
    pub fn to_json(&self) -> String {
        let ne = self.edge_count();
        let mut darts: Vec<DartJson> = (0..2 * ne)
            .map(|d| DartJson {
                vertex: if d % 2 == 0 { self.tail[d / 2] } else { self.head[d / 2] },
                twin: d ^ 1,
                next: d,
                orient: if d % 2 == 0 { "out" } else { "in" }.into(),
                label: self.label[d / 2],
            })
            .collect();
        let mut first = Vec::with_capacity(self.vertex_count());
        for v in 0..self.vertex_count() {
            let cyc: Vec<usize> =
                self.out[v].iter().map(|&e| 2 * e).chain(self.inc[v].iter().rev().map(|&e| 2 * e + 1)).collect();
            for k in 0..cyc.len() {
                darts[cyc[k]].next = cyc[(k + 1) % cyc.len()];
            }
            first.push(cyc.first().copied().unwrap_or(usize::MAX));
        }
        serde_json::to_string(&MapJson { source: self.source, sink: self.sink, first, darts }).unwrap()
    }

    pub fn from_json(s: &str) -> Result<BipolarMap, BaxterError> {
        let bad = |m: &str| BaxterError::Malformed(m.into());
        let j: MapJson = serde_json::from_str(s).map_err(|e| BaxterError::Parse(e.to_string()))?;
        let nd = j.darts.len();
        let nv = j.first.len();
        for (d, x) in j.darts.iter().enumerate() {
            if x.twin >= nd || x.next >= nd || x.vertex >= nv {
                return Err(bad("dart index out of range"));
            }
            let t = &j.darts[x.twin];
            let opposite = matches!((x.orient.as_str(), t.orient.as_str()), ("out", "in") | ("in", "out"));
            if x.twin == d || t.twin != d || !opposite || t.label != x.label {
                return Err(bad("twin pairing is not an oriented involution"));
            }
        }
        let mut edge_of = vec![usize::MAX; nd];
        let (mut tail, mut head, mut label) = (Vec::new(), Vec::new(), Vec::new());
        for (d, x) in j.darts.iter().enumerate() {
            if x.orient == "out" {
                edge_of[d] = tail.len();
                edge_of[x.twin] = tail.len();
                tail.push(x.vertex);
                head.push(j.darts[x.twin].vertex);
                label.push(x.label);
            }
        }
        let mut out = vec![Vec::new(); nv];
        let mut inc = vec![Vec::new(); nv];
        let mut visited = vec![false; nd];
        for v in 0..nv {
            let f = j.first[v];
            if f >= nd || j.darts[f].vertex != v {
                return Err(bad("first dart is not at its vertex"));
            }
            let mut d = f;
            let mut in_phase = false;
            loop {
                let x = &j.darts[d];
                if visited[d] || x.vertex != v {
                    return Err(bad("rotation is not a vertex cycle"));
                }
                visited[d] = true;
                if x.orient == "out" {
                    if in_phase {
                        return Err(bad("out dart after in dart in rotation"));
                    }
                    out[v].push(edge_of[d]);
                } else {
                    in_phase = true;
                    inc[v].push(edge_of[d]);
                }
                d = x.next;
                if d == f {
                    break;
                }
            }
            inc[v].reverse();
        }
        if visited.iter().any(|&b| !b) {
            return Err(bad("dart outside every rotation"));
        }
        let m = BipolarMap { tail, head, out, inc, source: j.source, sink: j.sink, label };
        m.validate()?;
        Ok(m)
    }

    pub fn parse_bytes(data: &[u8]) -> Result<BipolarMap, BaxterError> {
        let s = std::str::from_utf8(data).map_err(|e| BaxterError::Parse(e.to_string()))?;
        BipolarMap::from_json(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn triangle() -> BipolarMap {
        // s -> a -> t on the left, s -> t on the right
        BipolarMap {
            tail: vec![0, 1, 0],
            head: vec![1, 2, 2],
            out: vec![vec![0, 2], vec![1], vec![]],
            inc: vec![vec![], vec![0], vec![1, 2]],
            source: 0,
            sink: 2,
            label: vec![None; 3],
        }
    }

    #[test]
    fn single_edge_basics() {
        let m = BipolarMap::single_edge();
        assert_eq!(m.bow().unwrap().points, [(0, 0)]);
        let d = m.dual().unwrap();
        assert_eq!(d.edge_count(), 1);
        assert_eq!(d, m);
        assert_eq!(m.bobp().unwrap(), Perm::identity(1));
    }

    #[test]
    fn triangle_faces_and_dual() {
        let m = triangle();
        let f = m.faces().unwrap();
        assert_eq!(f.inner, [Face { bottom: 0, top: 2, left: vec![0, 1], right: vec![2] }]);
        assert_eq!(f.leftmost, [0, 1]);
        assert_eq!(f.rightmost, [2]);
        let d = m.dual().unwrap();
        assert_eq!(d.out[d.source], [2]);
        assert_eq!(d.out[0], [0, 1]);
        assert_eq!(d.dual().unwrap(), m.reverse());
        assert_eq!(m.bow().unwrap().points, [(0, 1), (1, 0), (0, 0)]);
    }

    #[test]
    fn malformed_maps_are_rejected() {
        let mut m = triangle();
        m.inc[2].swap(0, 1);
        m.out[0].swap(0, 1);
        assert!(m.validate().is_ok());
        let mut c = triangle();
        c.head[1] = 0;
        assert!(c.validate().is_err());
        let mut p = triangle();
        p.source = 1;
        assert!(p.validate().is_err());
    }

    #[test]
    fn json_round_trip() {
        let m = triangle();
        let s = m.to_json();
        let back = BipolarMap::from_json(&s).unwrap();
        assert_eq!(back, m);
        assert_eq!(back.out, m.out);
        assert!(BipolarMap::from_json(&s.replace("\"twin\":1", "\"twin\":2")).is_err());
        assert!(BipolarMap::from_json("{}").is_err());
    }

    #[test]
    fn theta_builds_one_face() {
        let w = Walk::new(vec![(0, 1), (1, 0), (0, 0)]);
        let m = theta(&w).unwrap();
        assert_eq!(m.edge_count(), 3);
        assert_eq!(m.explored(), 3);
        assert_eq!(m.bow().unwrap(), w);
    }
}
