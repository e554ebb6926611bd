use permlab_perm::{direct_sum, is_simple, skew_sum, standardize, substitute, Perm};
use serde_json::Value;

use crate::AvoidError;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Decoration {
    Plus(usize),
    Minus(usize),
    Simple(Perm),
}

impl Decoration {
    pub fn arity(&self) -> usize {
        match self {
            Decoration::Plus(d) | Decoration::Minus(d) => *d,
            Decoration::Simple(p) => p.len(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CNode {
    Leaf,
    Internal { dec: Decoration, children: Vec<usize> },
}

/// Substitution decomposition tree.
#[derive(Clone, Debug)]
pub struct CanonicalTree {
    pub nodes: Vec<CNode>,
    pub root: usize,
}

impl PartialEq for CanonicalTree {
    fn eq(&self, other: &Self) -> bool {
        self.to_json() == other.to_json()
    }
}

impl Eq for CanonicalTree {}

impl CanonicalTree {
    pub fn leaves(&self) -> usize {
        self.nodes.iter().filter(|n| matches!(n, CNode::Leaf)).count()
    }

    pub fn validate(&self) -> Result<(), AvoidError> {
        let bad = |s: String| Err(AvoidError::Malformed(s));
        if self.root >= self.nodes.len() {
            return bad("root out of range".into());
        }
        let mut seen = vec![false; self.nodes.len()];
        let mut stack = vec![self.root];
        while let Some(v) = stack.pop() {
            if std::mem::replace(&mut seen[v], true) {
                return bad(format!("node {v} reached twice"));
            }
            let CNode::Internal { dec, children } = &self.nodes[v] else { continue };
            if children.len() != dec.arity() {
                return bad(format!("node {v} has {} children for arity {}", children.len(), dec.arity()));
            }
            match dec {
                Decoration::Plus(d) | Decoration::Minus(d) if *d < 2 => return bad(format!("node {v}: sum of arity {d}")),
                Decoration::Simple(p) if !is_simple(p) => return bad(format!("node {v}: {p} is not simple")),
                _ => {}
            }
            for &c in children {
                if c >= self.nodes.len() {
                    return bad(format!("child {c} out of range"));
                }
                if let CNode::Internal { dec: cd, .. } = &self.nodes[c] {
                    let clash =
                        matches!((dec, cd), (Decoration::Plus(_), Decoration::Plus(_)) | (Decoration::Minus(_), Decoration::Minus(_)));
                    if clash {
                        return bad(format!("nodes {v} and {c} are both the same sum"));
                    }
                }
                stack.push(c);
            }
        }
        if seen.iter().any(|s| !s) {
            return bad("unreachable nodes".into());
        }
        Ok(())
    }

    pub fn to_json(&self) -> String {
        enum Step {
            Open(usize),
            Sep,
            Close,
        }
        let mut out = String::new();
        let mut stack = vec![Step::Open(self.root)];
        while let Some(s) = stack.pop() {
            match s {
                Step::Sep => out.push(','),
                Step::Close => out.push_str("]}"),
                Step::Open(v) => match &self.nodes[v] {
                    CNode::Leaf => out.push_str("{}"),
                    CNode::Internal { dec, children } => {
                        let d = match dec {
                            Decoration::Plus(_) => "+".to_string(),
                            Decoration::Minus(_) => "-".to_string(),
                            Decoration::Simple(p) => p.to_string(),
                        };
                        out.push_str(&format!("{{\"dec\":\"{d}\",\"children\":["));
                        stack.push(Step::Close);
                        for (k, &c) in children.iter().enumerate().rev() {
                            stack.push(Step::Open(c));
                            if k > 0 {
                                stack.push(Step::Sep);
                            }
                        }
                    }
                },
            }
        }
        out
    }

    /// Parses the nested JSON form. Nesting deeper than 128 levels is rejected by the parser.
    pub fn from_json(s: &str) -> Result<Self, AvoidError> {
        let v: Value = serde_json::from_str(s).map_err(|e| AvoidError::Malformed(e.to_string()))?;
        let mut nodes = Vec::new();
        let mut stack = vec![(&v, usize::MAX)];
        while let Some((val, parent)) = stack.pop() {
            let obj = val.as_object().ok_or_else(|| AvoidError::Malformed("node is not an object".into()))?;
            let id = nodes.len();
            if obj.is_empty() {
                nodes.push(CNode::Leaf);
            } else {
                let dec = obj.get("dec").and_then(Value::as_str).ok_or_else(|| AvoidError::Malformed("missing dec".into()))?;
                let ch = obj.get("children").and_then(Value::as_array).ok_or_else(|| AvoidError::Malformed("missing children".into()))?;
                let dec = match dec {
                    "+" => Decoration::Plus(ch.len()),
                    "-" => Decoration::Minus(ch.len()),
                    s => Decoration::Simple(Perm::parse(s)?),
                };
                nodes.push(CNode::Internal { dec, children: Vec::with_capacity(ch.len()) });
                for c in ch.iter().rev() {
                    stack.push((c, id));
                }
            }
            if parent != usize::MAX {
                if let CNode::Internal { children, .. } = &mut nodes[parent] {
                    children.push(id);
                }
            }
        }
        let t = CanonicalTree { nodes, root: 0 };
        t.validate()?;
        Ok(t)
    }
}

fn sum_split(v: &[usize], lo: usize, hi: usize, vlo: usize, plus: bool) -> Vec<usize> {
    let len = hi - lo;
    let vhi = vlo + len - 1;
    let mut cuts = Vec::new();
    let (mut mx, mut mn) = (0, usize::MAX);
    for p in lo..hi {
        mx = mx.max(v[p]);
        mn = mn.min(v[p]);
        let done = if plus { mx - vlo == p - lo } else { vhi - mn == p - lo };
        if done {
            cuts.push(p + 1);
        }
    }
    cuts
}

/// Canonical tree of `ν`; leaves appear in one-line order.
pub fn decompose(nu: &Perm) -> Result<CanonicalTree, AvoidError> {
    let v = nu.values();
    let n = v.len();
    if n == 0 {
        return Err(AvoidError::EmptySize);
    }
    let mut nodes = vec![CNode::Leaf];
    // (lo, hi, node id)
    let mut stack = vec![(0usize, n, 0usize)];
    while let Some((lo, hi, id)) = stack.pop() {
        if hi - lo == 1 {
            continue;
        }
        let vlo = *v[lo..hi].iter().min().unwrap();
        let mut bounds = vec![lo];
        let dec;
        let plus = sum_split(v, lo, hi, vlo, true);
        let minus = sum_split(v, lo, hi, vlo, false);
        if plus.len() >= 2 {
            bounds.extend(plus);
            dec = Decoration::Plus(bounds.len() - 1);
        } else if minus.len() >= 2 {
            bounds.extend(minus);
            dec = Decoration::Minus(bounds.len() - 1);
        } else {
            let mut a = lo;
            let mut reps = Vec::new();
            while a < hi {
                let (mut mn, mut mx) = (v[a], v[a]);
                let mut end = a + 1;
                for b in a + 1..hi {
                    mn = mn.min(v[b]);
                    mx = mx.max(v[b]);
                    if mx - mn == b - a && b - a + 1 < hi - lo {
                        end = b + 1;
                    }
                }
                reps.push(v[a]);
                bounds.push(end);
                a = end;
            }
            dec = Decoration::Simple(standardize(&reps)?);
        }
        let mut children = Vec::new();
        for w in bounds.windows(2) {
            let c = nodes.len();
            nodes.push(CNode::Leaf);
            children.push(c);
            stack.push((w[0], w[1], c));
        }
        nodes[id] = CNode::Internal { dec, children };
    }
    Ok(CanonicalTree { nodes, root: 0 })
}

/// Permutation encoded by a valid canonical tree.
pub fn compose(t: &CanonicalTree) -> Result<Perm, AvoidError> {
    t.validate()?;
    let mut order = Vec::with_capacity(t.nodes.len());
    let mut stack = vec![t.root];
    while let Some(v) = stack.pop() {
        order.push(v);
        if let CNode::Internal { children, .. } = &t.nodes[v] {
            stack.extend(children);
        }
    }
    let mut built: Vec<Option<Perm>> = vec![None; t.nodes.len()];
    for &v in order.iter().rev() {
        let p = match &t.nodes[v] {
            CNode::Leaf => Perm::identity(1),
            CNode::Internal { dec, children } => {
                let mut parts: Vec<Perm> = children.iter().map(|&c| built[c].take().expect("child built")).collect();
                match dec {
                    Decoration::Plus(_) => parts.into_iter().reduce(|a, b| direct_sum(&a, &b)).unwrap(),
                    Decoration::Minus(_) => {
                        let last = parts.pop().unwrap();
                        parts.into_iter().rev().fold(last, |acc, a| skew_sum(&a, &acc))
                    }
                    Decoration::Simple(theta) => substitute(theta, &parts)?,
                }
            }
        };
        built[v] = Some(p);
    }
    Ok(built[t.root].take().unwrap())
}
