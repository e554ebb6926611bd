use permlab_perm::Perm;

use crate::{in_omega, AnchoredPair, SquareError, XLabel, YLabel};

/// Output of the matching: the permutation, the four point sets and `[z0, z1, z2, z3]`.
#[derive(Clone, Debug)]
pub struct Reconstruction {
    pub perm: Perm,
    pub lambda: [Vec<(usize, usize)>; 4],
    pub z: [usize; 4],
}

impl Reconstruction {
    /// Largest distance of a point of each set from its line, in index units.
    pub fn band_deviation(&self) -> [usize; 4] {
        let n = self.perm.len() as i64;
        let z0 = self.z[0] as i64;
        let lines: [&dyn Fn(i64, i64) -> i64; 4] =
            [&|s, t| s + t - z0, &|s, t| t - s - z0, &|s, t| s - t - z0, &|s, t| 2 * n - s - t - z0];
        std::array::from_fn(|k| self.lambda[k].iter().map(|&(s, t)| lines[k](s as i64, t as i64).unsigned_abs() as usize).max().unwrap_or(0))
    }
}

fn positions<T: PartialEq>(seq: &[T], label: &T) -> Vec<usize> {
    (0..seq.len()).filter(|&i| seq[i] == *label).map(|i| i + 1).collect()
}

/// Runs the four matchings without checking regularity; fails if a row is used twice or an index is undefined.
pub fn rho_unchecked(pair: &AnchoredPair) -> Result<Reconstruction, SquareError> {
    let n = pair.len();
    let fail = |s: String| Err(SquareError::ConstructionFailure(s));
    if !pair.is_good() {
        return Err(SquareError::NotGood);
    }
    let pd = positions(&pair.x, &XLabel::D);
    let pu = positions(&pair.x, &XLabel::U);
    let pl = positions(&pair.y, &YLabel::L);
    let pr = positions(&pair.y, &YLabel::R);
    let pos = |p: &[usize], i: usize| if i >= 1 && i <= p.len() { p[i - 1] } else { n };
    let ct_upto = |p: &[usize], i: usize| p.partition_point(|&q| q <= i);
    let z0 = pair.z0;
    let c = ct_upto(&pd, z0);
    if c > pl.len() {
        return fail(format!("{c} minima before the anchor but only {} left labels", pl.len()));
    }
    let k2 = pl.len() - c;
    if k2 == 0 || k2 > pu.len() {
        return fail(format!("{k2} remaining left labels for {} maxima", pu.len()));
    }
    let k3 = pd.len() - c;
    if k3 == 0 || k3 > pr.len() {
        return fail(format!("{k3} minima after the anchor for {} right labels", pr.len()));
    }
    let z1 = pos(&pl, c);
    let z2 = pos(&pu, k2);
    let z3 = pos(&pr, k3);
    let cu2 = ct_upto(&pu, z2);
    let l1: Vec<_> = (1..=c).map(|i| (pos(&pd, i), pos(&pl, c + 1 - i))).collect();
    let l2: Vec<_> = (1..=cu2).map(|i| (pos(&pu, i), pos(&pl, c + i))).collect();
    let l3: Vec<_> = (c + 1..=pd.len()).map(|i| (pos(&pd, i), pos(&pr, i - c))).collect();
    let l4: Vec<_> = (cu2 + 1..=pu.len()).map(|i| (pos(&pu, i), pos(&pr, n - c + 1 - i))).collect();
    let mut val = vec![0; n];
    let mut row_used = vec![false; n];
    for (k, set) in [&l1, &l2, &l3, &l4].into_iter().enumerate() {
        for &(s, t) in set {
            if val[s - 1] != 0 {
                return fail(format!("column {s} matched twice"));
            }
            if std::mem::replace(&mut row_used[t - 1], true) {
                return fail(format!("row {t} matched twice (set {})", k + 1));
            }
            val[s - 1] = t;
        }
    }
    Ok(Reconstruction { perm: Perm::new(val)?, lambda: [l1, l2, l3, l4], z: [z0, z1, z2, z3] })
}

/// `ρ` on the regular set with anchor margin `⌈n^delta_exp⌉`.
pub fn reconstruct_rho(pair: &AnchoredPair, delta_exp: f64) -> Result<Reconstruction, SquareError> {
    in_omega(pair, delta_exp)?;
    rho_unchecked(pair)
}
