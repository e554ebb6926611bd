use std::fmt;
use std::str::FromStr;

use permlab_perm::{is_square, records, Perm};

use crate::SquareError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum XLabel {
    U,
    D,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum YLabel {
    L,
    R,
}

/// `(X, Y, z0)` with `z0` 1-based.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AnchoredPair {
    pub x: Vec<XLabel>,
    pub y: Vec<YLabel>,
    pub z0: usize,
}

impl AnchoredPair {
    pub fn new(x: Vec<XLabel>, y: Vec<YLabel>, z0: usize) -> Result<Self, SquareError> {
        if x.len() != y.len() || x.is_empty() {
            return Err(SquareError::Parse(format!("lengths {} and {}", x.len(), y.len())));
        }
        if z0 == 0 || z0 > x.len() {
            return Err(SquareError::Parse(format!("anchor {z0} out of range")));
        }
        Ok(AnchoredPair { x, y, z0 })
    }

    pub fn len(&self) -> usize {
        self.x.len()
    }

    pub fn is_empty(&self) -> bool {
        self.x.is_empty()
    }

    pub fn is_good(&self) -> bool {
        let n = self.len();
        let d = XLabel::D;
        self.x[0] == d && self.x[n - 1] == d && self.x[self.z0 - 1] == d && self.y[0] == YLabel::L && self.y[n - 1] == YLabel::L
    }

    pub fn parse_bytes(b: &[u8]) -> Result<Self, SquareError> {
        std::str::from_utf8(b).map_err(|e| SquareError::Parse(e.to_string()))?.parse()
    }
}

impl FromStr for AnchoredPair {
    type Err = SquareError;

    fn from_str(s: &str) -> Result<Self, SquareError> {
        let parts: Vec<&str> = s.trim().split('/').collect();
        let [xs, ys, zs] = parts[..] else {
            return Err(SquareError::Parse("expected X/Y/z0".into()));
        };
        let x = xs
            .chars()
            .map(|c| match c {
                'U' => Ok(XLabel::U),
                'D' => Ok(XLabel::D),
                _ => Err(SquareError::Parse(format!("bad X label {c:?}"))),
            })
            .collect::<Result<_, _>>()?;
        let y = ys
            .chars()
            .map(|c| match c {
                'L' => Ok(YLabel::L),
                'R' => Ok(YLabel::R),
                _ => Err(SquareError::Parse(format!("bad Y label {c:?}"))),
            })
            .collect::<Result<_, _>>()?;
        let z0 = zs.trim().parse().map_err(|_| SquareError::Parse(format!("bad anchor {zs:?}")))?;
        AnchoredPair::new(x, y, z0)
    }
}

impl fmt::Display for AnchoredPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let x: String = self.x.iter().map(|l| if *l == XLabel::U { 'U' } else { 'D' }).collect();
        let y: String = self.y.iter().map(|l| if *l == YLabel::L { 'L' } else { 'R' }).collect();
        write!(f, "{x}/{y}/{}", self.z0)
    }
}

/// `φ(σ)`: minima are `D`, left records are `L`; doubly typed points get `D` and `L`.
pub fn project_phi(sigma: &Perm) -> Result<AnchoredPair, SquareError> {
    if sigma.is_empty() || !is_square(sigma) {
        return Err(SquareError::NotSquare);
    }
    let n = sigma.len();
    let r = records(sigma);
    let v = sigma.values();
    let mut x = vec![XLabel::U; n];
    let mut y = vec![YLabel::R; n];
    let mut z0 = 0;
    for i in 0..n {
        if r.lr_min[i] || r.rl_min[i] {
            x[i] = XLabel::D;
        }
        if r.lr_min[i] || r.lr_max[i] {
            y[v[i] - 1] = YLabel::L;
        }
        if v[i] == 1 {
            z0 = i + 1;
        }
    }
    x[0] = XLabel::D;
    x[n - 1] = XLabel::D;
    y[0] = YLabel::L;
    y[n - 1] = YLabel::L;
    Ok(AnchoredPair { x, y, z0 })
}
