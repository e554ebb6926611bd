use crate::{PermutonError, Rect};

/// One of the four slope-±1 sides carrying `μ^z`: `y = slope·x + icpt` for `x ∈ [lo, hi]`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub(crate) struct Segment {
    pub lo: f64,
    pub hi: f64,
    pub slope: f64,
    pub icpt: f64,
}

impl Segment {
    pub fn mass(&self) -> f64 {
        0.5 * (self.hi - self.lo)
    }

    /// `x`-interval of points of the segment inside `[x0, x1] × [y0, y1]`.
    pub fn clip(&self, x0: f64, x1: f64, y0: f64, y1: f64) -> Option<(f64, f64)> {
        let (a, b) = if self.slope > 0.0 { (y0 - self.icpt, y1 - self.icpt) } else { (self.icpt - y1, self.icpt - y0) };
        let lo = self.lo.max(x0).max(a);
        let hi = self.hi.min(x1).min(b);
        (hi > lo).then_some((lo, hi))
    }

    pub fn y(&self, x: f64) -> f64 {
        self.slope * x + self.icpt
    }
}

/// `μ^z`: Lebesgue measure of total mass 1 on the boundary of the rectangle
/// with corners `(z,0), (0,z), (1-z,1), (1,1-z)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RectanglePermuton {
    z: f64,
    exact: Option<(u64, u64)>,
}

impl RectanglePermuton {
    pub fn new(z: f64) -> Result<Self, PermutonError> {
        if !(z > 0.0 && z < 1.0) {
            return Err(PermutonError::BadZ);
        }
        Ok(RectanglePermuton { z, exact: None })
    }

    /// `μ^{num/den}`, remembering the exact parameter.
    pub fn from_ratio(num: u64, den: u64) -> Result<Self, PermutonError> {
        if num == 0 || num >= den {
            return Err(PermutonError::BadZ);
        }
        Ok(RectanglePermuton { z: num as f64 / den as f64, exact: Some((num, den)) })
    }

    pub fn z(&self) -> f64 {
        self.z
    }

    pub fn exact_z(&self) -> Option<(u64, u64)> {
        self.exact
    }

    pub(crate) fn segments(&self) -> [Segment; 4] {
        let z = self.z;
        [
            Segment { lo: 0.0, hi: z, slope: -1.0, icpt: z },
            Segment { lo: 0.0, hi: 1.0 - z, slope: 1.0, icpt: z },
            Segment { lo: z, hi: 1.0, slope: 1.0, icpt: -z },
            Segment { lo: 1.0 - z, hi: 1.0, slope: -1.0, icpt: 2.0 - z },
        ]
    }

    /// Masses of the four sides, in the order lower-left, upper-left, lower-right, upper-right.
    pub fn segment_masses(&self, r: Rect) -> [f64; 4] {
        self.segments().map(|s| s.clip(r.x0, r.x1, r.y0, r.y1).map_or(0.0, |(a, b)| 0.5 * (b - a)))
    }

    pub fn rect_mass(&self, r: Rect) -> f64 {
        self.segment_masses(r).iter().sum()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn closed_form_masses() {
        let m = RectanglePermuton::new(0.5).unwrap();
        assert!((m.rect_mass(Rect::new(0.0, 0.5, 0.0, 0.5).unwrap()) - 0.25).abs() < 1e-12);
        assert!((m.rect_mass(Rect::full()) - 1.0).abs() < 1e-12);
        let m = RectanglePermuton::new(0.3).unwrap();
        let s = m.segment_masses(Rect::full());
        for (a, b) in s.iter().zip([0.15, 0.35, 0.35, 0.15]) {
            assert!((a - b).abs() < 1e-12);
        }
        let strip = m.rect_mass(Rect::new(0.2, 0.45, 0.0, 1.0).unwrap());
        assert!((strip - 0.25).abs() < 1e-12);
        let band = m.rect_mass(Rect::new(0.0, 1.0, 0.6, 0.7).unwrap());
        assert!((band - 0.1).abs() < 1e-12);
        assert!(RectanglePermuton::new(1.0).is_err());
        assert!(RectanglePermuton::from_ratio(0, 4).is_err());
    }
}
