use crate::{AnchoredPair, SquareError, XLabel, YLabel};

/// Outcome of conditions 1 to 6 for one label; `pass` is conditions 1 to 4.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PetrovReport {
    pub conditions: [bool; 6],
    pub pass: bool,
}

struct Range {
    mx: Vec<Vec<i64>>,
    mn: Vec<Vec<i64>>,
}

impl Range {
    fn new(g: &[i64]) -> Self {
        let mut mx = vec![g.to_vec()];
        let mut mn = vec![g.to_vec()];
        let mut w = 1;
        while 2 * w <= g.len() {
            let (a, b) = (mx.last().unwrap(), mn.last().unwrap());
            let nx = (0..=g.len() - 2 * w).map(|i| a[i].max(a[i + w])).collect();
            let nn = (0..=g.len() - 2 * w).map(|i| b[i].min(b[i + w])).collect();
            mx.push(nx);
            mn.push(nn);
            w *= 2;
        }
        Range { mx, mn }
    }

    /// Max and min over `lo..=hi`.
    fn query(&self, lo: usize, hi: usize) -> (i64, i64) {
        let k = (usize::BITS - 1 - (hi - lo + 1).leading_zeros()) as usize;
        let r = hi + 1 - (1 << k);
        (self.mx[k][lo].max(self.mx[k][r]), self.mn[k][lo].min(self.mn[k][r]))
    }
}

/// `|g(i) - g(j)| < thr` whenever `0 < |i - j| <= dmax`.
fn near_ok(g: &[i64], rq: &Range, dmax: usize, thr: f64) -> bool {
    if dmax == 0 {
        return true;
    }
    (0..g.len().saturating_sub(1)).all(|i| {
        let (mx, mn) = rq.query(i + 1, (i + dmax).min(g.len() - 1));
        (((mx - g[i]).abs().max((mn - g[i]).abs())) as f64) < thr
    })
}

/// `|g(i) - g(j)| < coef * |i - j|^0.6` whenever `|i - j| >= dmin`.
fn far_ok(g: &[i64], rq: &Range, dmin: usize, coef: f64) -> bool {
    let len = g.len();
    (0..len).all(|i| {
        let mut d = dmin.max(1);
        while i + d < len {
            let hi = (i + 2 * d - 1).min(len - 1);
            let (mx, mn) = rq.query(i + d, hi);
            let worst = (mx - g[i]).abs().max((mn - g[i]).abs()) as f64;
            if worst >= coef * (d as f64).powf(0.6) {
                for j in i + d..=hi {
                    if ((g[j] - g[i]).abs() as f64) >= coef * ((j - i) as f64).powf(0.6) {
                        return false;
                    }
                }
            }
            d *= 2;
        }
        true
    })
}

/// Evaluates the windowed count and position conditions literally, with `n = seq.len()`.
pub fn petrov_check<T: PartialEq>(seq: &[T], label: &T) -> PetrovReport {
    let n = seq.len();
    let nf = n as f64;
    let dmax = (nf.powf(0.6).ceil() as usize).saturating_sub(1);
    let dmin = nf.powf(0.3).floor() as usize + 1;
    // doubled count deviation 2 ct(i) - i
    let mut gc = vec![0i64; n + 1];
    let mut gp = vec![0i64];
    let mut ct = 0;
    for (i, s) in seq.iter().enumerate() {
        if s == label {
            ct += 1;
            gp.push((i + 1) as i64 - 2 * ct);
        }
        gc[i + 1] = 2 * ct - (i as i64 + 1);
    }
    let rc = Range::new(&gc);
    let rp = Range::new(&gp);
    let c = [
        near_ok(&gc, &rc, dmax, 2.0 * nf.powf(0.4)),
        far_ok(&gc, &rc, dmin, 1.0),
        near_ok(&gp, &rp, dmax, nf.powf(0.4)),
        far_ok(&gp, &rp, dmin, 2.0),
        gc.iter().all(|&v| (v.abs() as f64) < 2.0 * nf.powf(0.6)),
        gp.iter().all(|&v| (v.abs() as f64) < 2.0 * nf.powf(0.6)),
    ];
    PetrovReport { conditions: c, pass: c[..4].iter().all(|&b| b) }
}

/// Reports for `D`, `U` in `X` and `L`, `R` in `Y`.
pub fn petrov_pair(pair: &AnchoredPair) -> [PetrovReport; 4] {
    [
        petrov_check(&pair.x, &XLabel::D),
        petrov_check(&pair.x, &XLabel::U),
        petrov_check(&pair.y, &YLabel::L),
        petrov_check(&pair.y, &YLabel::R),
    ]
}

/// `⌈n^exp⌉`.
pub fn delta(n: usize, exp: f64) -> usize {
    (n as f64).powf(exp).ceil() as usize
}

/// Membership in the regular set with anchor margin `⌈n^delta_exp⌉`.
pub fn in_omega(pair: &AnchoredPair, delta_exp: f64) -> Result<(), SquareError> {
    if !pair.is_good() {
        return Err(SquareError::NotGood);
    }
    let n = pair.len();
    let d = delta(n, delta_exp);
    if pair.z0 < d || pair.z0 + d > n {
        return Err(SquareError::NotRegular(format!("anchor {} outside [{d}, {}]", pair.z0, n as i64 - d as i64)));
    }
    for (r, name) in petrov_pair(pair).iter().zip(["D", "U", "L", "R"]) {
        if !r.pass {
            return Err(SquareError::NotRegular(format!("label {name} fails {:?}", r.conditions)));
        }
    }
    Ok(())
}
