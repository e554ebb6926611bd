use permlab_perm::PermError;
use serde::{Deserialize, Serialize};

use crate::BaxterError;

/// An increment in `A`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Step {
    /// `(+1, -1)`
    Diag,
    /// `(-i, +j)`
    Face { i: i64, j: i64 },
}

impl Step {
    pub fn classify(dx: i64, dy: i64) -> Option<Step> {
        if (dx, dy) == (1, -1) {
            Some(Step::Diag)
        } else if dx <= 0 && dy >= 0 {
            Some(Step::Face { i: -dx, j: dy })
        } else {
            None
        }
    }

    pub fn delta(self) -> (i64, i64) {
        match self {
            Step::Diag => (1, -1),
            Step::Face { i, j } => (-i, j),
        }
    }
}

/// A two-dimensional walk `W_1, ..., W_n`, stored from index 0.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Walk {
    pub points: Vec<(i64, i64)>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct WalkJson {
    points: Vec<[i64; 2]>,
}

impl Walk {
    pub fn new(points: Vec<(i64, i64)>) -> Self {
        Walk { points }
    }

    /// Walk starting at `start` with the given increments.
    pub fn from_steps(start: (i64, i64), steps: &[Step]) -> Self {
        let mut points = Vec::with_capacity(steps.len() + 1);
        points.push(start);
        for s in steps {
            let (x, y) = *points.last().unwrap();
            let (dx, dy) = s.delta();
            points.push((x + dx, y + dy));
        }
        Walk { points }
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn steps(&self) -> Result<Vec<Step>, BaxterError> {
        self.points
            .windows(2)
            .enumerate()
            .map(|(t, w)| {
                let (dx, dy) = (w[1].0 - w[0].0, w[1].1 - w[0].1);
                Step::classify(dx, dy).ok_or(BaxterError::NotInA(dx, dy, t + 1))
            })
            .collect()
    }

    /// Member of `𝒲_n`: increments in `A`, starts on the y-axis, ends on the
    /// x-axis, stays in the quadrant.
    pub fn check_tandem(&self) -> Result<(), BaxterError> {
        if self.is_empty() {
            return Err(BaxterError::NotTandem("empty walk".into()));
        }
        self.steps()?;
        if let Some(t) = self.points.iter().position(|p| p.0 < 0 || p.1 < 0) {
            return Err(BaxterError::NotTandem(format!("point {} leaves the quadrant", t + 1)));
        }
        if self.points[0].0 != 0 {
            return Err(BaxterError::NotTandem("does not start on the y-axis".into()));
        }
        if self.points.last().unwrap().1 != 0 {
            return Err(BaxterError::NotTandem("does not end on the x-axis".into()));
        }
        Ok(())
    }

    pub fn is_tandem(&self) -> bool {
        self.check_tandem().is_ok()
    }

    pub fn to_json(&self) -> String {
        let j = WalkJson { points: self.points.iter().map(|&(x, y)| [x, y]).collect() };
        serde_json::to_string(&j).unwrap()
    }

    pub fn from_json(s: &str) -> Result<Walk, BaxterError> {
        let j: WalkJson = serde_json::from_str(s).map_err(|e| BaxterError::Parse(e.to_string()))?;
        Ok(Walk { points: j.points.into_iter().map(|[x, y]| (x, y)).collect() })
    }

    pub fn parse_bytes(data: &[u8]) -> Result<Walk, BaxterError> {
        let s = std::str::from_utf8(data).map_err(|e| BaxterError::Parse(e.to_string()))?;
        Walk::from_json(s)
    }
}

/// `(Y_{n+1-t}, X_{n+1-t})`.
pub fn reverse_walk(w: &Walk) -> Walk {
    Walk { points: w.points.iter().rev().map(|&(x, y)| (y, x)).collect() }
}

/// Every tandem walk of length `n`, lexicographic in (start height, steps).
pub fn enumerate_tandem(n: usize, cap: usize) -> Result<Vec<Walk>, BaxterError> {
    if n > cap {
        return Err(PermError::CapExceeded { n, cap }.into());
    }
    let mut out = Vec::new();
    if n == 0 {
        return Ok(out);
    }
    fn rec(pts: &mut Vec<(i64, i64)>, n: usize, out: &mut Vec<Walk>) {
        let (x, y) = *pts.last().unwrap();
        let rem = (n - pts.len()) as i64;
        if rem == 0 {
            if y == 0 {
                out.push(Walk { points: pts.clone() });
            }
            return;
        }
        if y >= 1 {
            pts.push((x + 1, y - 1));
            rec(pts, n, out);
            pts.pop();
        }
        for i in 0..=x {
            for j in 0..=(rem - 1 - y).max(-1) {
                pts.push((x - i, y + j));
                rec(pts, n, out);
                pts.pop();
            }
        }
    }
    for h in 0..n as i64 {
        let mut pts = vec![(0, h)];
        rec(&mut pts, n, &mut out);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn classify_steps() {
        assert_eq!(Step::classify(1, -1), Some(Step::Diag));
        assert_eq!(Step::classify(0, 0), Some(Step::Face { i: 0, j: 0 }));
        assert_eq!(Step::classify(-2, 3), Some(Step::Face { i: 2, j: 3 }));
        assert_eq!(Step::classify(1, 0), None);
        assert_eq!(Step::classify(2, -2), None);
    }

    #[test]
    fn tandem_counts() {
        let counts: Vec<usize> = (1..=7).map(|n| enumerate_tandem(n, 10).unwrap().len()).collect();
        assert_eq!(counts, [1, 2, 6, 22, 92, 422, 2074]);
        assert!(enumerate_tandem(11, 10).is_err());
    }

    #[test]
    fn json_round_trip() {
        let w = Walk::new(vec![(0, 2), (0, 3), (1, 2)]);
        let s = w.to_json();
        assert_eq!(s, r#"{"points":[[0,2],[0,3],[1,2]]}"#);
        assert_eq!(Walk::from_json(&s).unwrap(), w);
        assert!(Walk::from_json(r#"{"points":[[0]]}"#).is_err());
        assert!(Walk::from_json(r#"{"pts":[]}"#).is_err());
    }

    #[test]
    fn reverse_is_involution() {
        let w = Walk::new(vec![(0, 1), (1, 0)]);
        assert_eq!(reverse_walk(&w).points, [(0, 1), (1, 0)]);
        let v = Walk::new(vec![(0, 2), (0, 3), (1, 2), (0, 0)]);
        assert_eq!(reverse_walk(&reverse_walk(&v)), v);
    }

    #[test]
    fn tandem_check() {
        assert!(Walk::new(vec![(0, 0)]).is_tandem());
        assert!(!Walk::new(vec![(0, 1)]).is_tandem());
        assert!(matches!(Walk::new(vec![(0, 0), (1, 0)]).check_tandem(), Err(BaxterError::NotInA(1, 0, 1))));
    }
}
