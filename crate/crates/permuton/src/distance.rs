use num_integer::Integer;
use num_rational::Ratio;

use crate::sweep::max_discrepancy;
use crate::{GridPermuton, RectanglePermuton};

/// Certified enclosure `lower ≤ d_□ ≤ upper`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Bracket {
    pub lower: f64,
    pub upper: f64,
}

impl Bracket {
    pub fn is_exact(&self) -> bool {
        self.lower == self.upper
    }
}

/// Largest common refinement handled by the exact integer sweep.
const MAX_LCM: u64 = 1 << 24;

/// Exact `d_□` between grid permutons.
///
/// Both densities are constant on the cells of the merged grid, so the
/// supremum is attained at merged-grid corners.
pub fn d_square_exact(a: &GridPermuton, b: &GridPermuton) -> Ratio<i128> {
    let (n1, n2) = (a.resolution() as u64, b.resolution() as u64);
    let l = n1.lcm(&n2);
    assert!(l <= MAX_LCM, "grid resolutions too far from commensurable");
    let (w1, w2) = ((l / n1) as i128, (l / n2) as i128);
    let (d1, d2) = (a.denom() as i128, b.denom() as i128);
    let f1 = d2.checked_mul(w2 * w2).expect("scale overflow");
    let f2 = d1.checked_mul(w1 * w1).expect("scale overflow");
    let scale = f1.checked_mul(d1 * w1 * w1).expect("scale overflow");

    let mut lines: Vec<u64> = (0..=n1).map(|i| i * (l / n1)).chain((0..=n2).map(|j| j * (l / n2))).collect();
    lines.sort_unstable();
    lines.dedup();
    let m = lines.len() - 1;
    let index = |x: u64| lines.binary_search(&x).expect("grid line");

    let mut columns: Vec<Vec<(usize, i128)>> = vec![Vec::new(); m];
    for (g, w, f, sign) in [(a, w1 as u64, f1, 1i128), (b, w2 as u64, f2, -1i128)] {
        for &(i, j, mass) in g.cells() {
            let (xa, xb) = (index((i as u64 - 1) * w), index(i as u64 * w));
            let (ya, yb) = (index((j as u64 - 1) * w), index(j as u64 * w));
            for xc in xa..xb {
                let dx = (lines[xc + 1] - lines[xc]) as i128;
                for yc in ya..yb {
                    let dy = (lines[yc + 1] - lines[yc]) as i128;
                    columns[xc].push((yc, sign * mass as i128 * dx * dy * f));
                }
            }
        }
    }
    Ratio::new(max_discrepancy(m, &columns), scale)
}

pub fn d_square(a: &GridPermuton, b: &GridPermuton) -> f64 {
    let r = d_square_exact(a, b);
    *r.numer() as f64 / *r.denom() as f64
}

/// Mass of each cell of a mesh in one column.
pub(crate) trait MeshMass {
    fn column(&self, x0: f64, x1: f64, ys: &[f64], out: &mut Vec<(usize, f64)>);
}

fn first_cell(ys: &[f64], y: f64) -> usize {
    ys.partition_point(|&v| v <= y).saturating_sub(1).min(ys.len() - 2)
}

impl MeshMass for GridPermuton {
    fn column(&self, x0: f64, x1: f64, ys: &[f64], out: &mut Vec<(usize, f64)>) {
        let n = self.resolution() as f64;
        let lo = ((x0 * n).floor() as usize).min(self.resolution() - 1) + 1;
        let start = self.cells().partition_point(|c| c.0 < lo);
        for &(i, j, w) in &self.cells()[start..] {
            let (ca, cb) = ((i - 1) as f64 / n, i as f64 / n);
            if ca >= x1 {
                break;
            }
            let fx = (cb.min(x1) - ca.max(x0)).max(0.0) * n;
            if fx <= 0.0 {
                continue;
            }
            let (ra, rb) = ((j - 1) as f64 / n, j as f64 / n);
            let mass = w as f64 / self.denom() as f64 * fx;
            let mut b = first_cell(ys, ra);
            while b + 1 < ys.len() && ys[b] < rb {
                let fy = (rb.min(ys[b + 1]) - ra.max(ys[b])).max(0.0) * n;
                if fy > 0.0 {
                    out.push((b, mass * fy));
                }
                b += 1;
            }
        }
    }
}

impl MeshMass for RectanglePermuton {
    fn column(&self, x0: f64, x1: f64, ys: &[f64], out: &mut Vec<(usize, f64)>) {
        for s in self.segments() {
            let (lo, hi) = (s.lo.max(x0), s.hi.min(x1));
            if hi <= lo {
                continue;
            }
            let (ya, yb) = {
                let (p, q) = (s.y(lo), s.y(hi));
                (p.min(q), p.max(q))
            };
            let mut b = first_cell(ys, ya);
            while b + 1 < ys.len() && ys[b] < yb {
                let len = yb.min(ys[b + 1]) - ya.max(ys[b]);
                if len > 0.0 {
                    out.push((b, 0.5 * len));
                }
                b += 1;
            }
        }
    }
}

fn mesh_sup<A: MeshMass, B: MeshMass>(a: &A, b: &B, lines: &[f64]) -> f64 {
    let m = lines.len() - 1;
    let mut columns = Vec::with_capacity(m);
    let mut buf = Vec::new();
    for c in 0..m {
        let mut col = Vec::new();
        buf.clear();
        a.column(lines[c], lines[c + 1], lines, &mut buf);
        col.extend(buf.iter().copied());
        buf.clear();
        b.column(lines[c], lines[c + 1], lines, &mut buf);
        col.extend(buf.iter().map(|&(y, w)| (y, -w)));
        columns.push(col);
    }
    max_discrepancy(m, &columns)
}

fn normalize_lines(lines: &[f64]) -> Vec<f64> {
    let mut v: Vec<f64> = lines.iter().copied().filter(|x| (0.0..=1.0).contains(x)).chain([0.0, 1.0]).collect();
    v.sort_by(f64::total_cmp);
    v.dedup_by(|x, y| (*x - *y).abs() < 1e-15);
    v
}

/// Supremum over rectangles with corners on `lines` (both axes), widened by
/// four times the largest gap to a certified enclosure of `d_□(μ_grid, μ^z)`.
pub fn d_square_mesh(g: &GridPermuton, r: &RectanglePermuton, lines: &[f64]) -> Bracket {
    let v = normalize_lines(lines);
    let gap = v.windows(2).map(|w| w[1] - w[0]).fold(0.0, f64::max);
    let lower = mesh_sup(g, r, &v);
    Bracket { lower, upper: (lower + 4.0 * gap).min(1.0) }
}

/// `d_□(μ_grid, μ^z)` enclosed using the grid lines and the side endpoints.
///
/// Grid mass is bilinear in the corners while `μ^z` lives on slope-±1 lines,
/// so the supremum need not sit on any finite lattice; the result is a bracket.
pub fn d_square_rect(g: &GridPermuton, r: &RectanglePermuton) -> Bracket {
    let n = g.resolution();
    let z = r.z();
    let lines: Vec<f64> = (0..=n).map(|i| i as f64 / n as f64).chain([z, 1.0 - z]).collect();
    d_square_mesh(g, r, &lines)
}
