use crate::{Perm, PermError};

/// `pat_I(σ)` for a strictly increasing 1-based index set `I`.
pub fn pattern_at(sigma: &Perm, idx: &[usize]) -> Result<Perm, PermError> {
    let n = sigma.len();
    for (t, &i) in idx.iter().enumerate() {
        if i == 0 || i > n {
            return Err(PermError::IndexOutOfRange { index: i, n });
        }
        if t > 0 && idx[t - 1] >= i {
            return Err(PermError::NotIncreasing);
        }
    }
    let vals: Vec<usize> = idx.iter().map(|&i| sigma.at(i)).collect();
    crate::standardize(&vals)
}

/// Order constraints of a pattern, checked entry by entry from the left.
///
/// Entry `t` of a match must lie strictly between the matched values of
/// `lo[t]` and `hi[t]`, the closest earlier entries below and above `π(t)`.
#[derive(Clone, Debug)]
pub struct Matcher {
    k: usize,
    lo: Vec<Option<usize>>,
    hi: Vec<Option<usize>>,
}

impl Matcher {
    pub fn new(pi: &Perm) -> Self {
        let p = pi.values();
        let k = p.len();
        let mut lo = vec![None; k];
        let mut hi = vec![None; k];
        for t in 0..k {
            for s in 0..t {
                if p[s] < p[t] && lo[t].is_none_or(|l: usize| p[l] < p[s]) {
                    lo[t] = Some(s);
                }
                if p[s] > p[t] && hi[t].is_none_or(|h: usize| p[h] > p[s]) {
                    hi[t] = Some(s);
                }
            }
        }
        Matcher { k, lo, hi }
    }

    pub fn len(&self) -> usize {
        self.k
    }

    pub fn is_empty(&self) -> bool {
        self.k == 0
    }

    #[inline]
    fn fits(&self, t: usize, x: usize, chosen: &[usize]) -> bool {
        self.lo[t].is_none_or(|l| chosen[l] < x) && self.hi[t].is_none_or(|h| chosen[h] > x)
    }

    /// Whether `w` (same length as the pattern) is order-isomorphic to it.
    pub fn matches(&self, w: &[usize]) -> bool {
        w.len() == self.k && (0..self.k).all(|t| self.fits(t, w[t], w))
    }

    pub fn count_consecutive(&self, sigma: &[usize]) -> u64 {
        if self.k > sigma.len() {
            return 0;
        }
        if self.k == 0 {
            return 1;
        }
        sigma.windows(self.k).filter(|w| self.matches(w)).count() as u64
    }

    pub fn count(&self, sigma: &[usize]) -> u128 {
        if self.k == 0 {
            return 1;
        }
        if self.k > sigma.len() {
            return 0;
        }
        let mut chosen = vec![0; self.k];
        let mut total = 0u128;
        self.walk(sigma, 0, 0, &mut chosen, &mut total, false);
        total
    }

    pub fn occurs(&self, sigma: &[usize]) -> bool {
        if self.k == 0 {
            return true;
        }
        if self.k > sigma.len() {
            return false;
        }
        let mut chosen = vec![0; self.k];
        let mut total = 0u128;
        self.walk(sigma, 0, 0, &mut chosen, &mut total, true)
    }

    fn walk(&self, s: &[usize], t: usize, from: usize, chosen: &mut [usize], total: &mut u128, stop: bool) -> bool {
        let n = s.len();
        let need = self.k - t;
        for p in from..=n - need {
            let x = s[p];
            if !self.fits(t, x, chosen) {
                continue;
            }
            chosen[t] = x;
            if t + 1 == self.k {
                *total += 1;
                if stop {
                    return true;
                }
            } else if self.walk(s, t + 1, p + 1, chosen, total, stop) && stop {
                return true;
            }
        }
        false
    }
}

/// Pattern statistics of `π` in `σ`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PatternCounts {
    pub n: usize,
    pub k: usize,
    pub occ: u128,
    pub cocc: u64,
}

impl PatternCounts {
    /// `occ / C(n, k)`.
    pub fn pocc(&self) -> f64 {
        if self.k > self.n {
            return 0.0;
        }
        self.occ as f64 / binomial_f64(self.n, self.k)
    }

    /// `cocc / n`, the normalization used for local limits.
    pub fn cocc_freq(&self) -> f64 {
        if self.n == 0 {
            return if self.k == 0 { 1.0 } else { 0.0 };
        }
        self.cocc as f64 / self.n as f64
    }

    /// `cocc / (n - k + 1)`, the share of windows matching `π`.
    pub fn cocc_window_freq(&self) -> f64 {
        if self.k > self.n {
            return 0.0;
        }
        self.cocc as f64 / (self.n - self.k + 1) as f64
    }
}

pub fn binomial_f64(n: usize, k: usize) -> f64 {
    if k > n {
        return 0.0;
    }
    let k = k.min(n - k);
    let mut r = 1.0f64;
    for i in 0..k {
        r = r * (n - i) as f64 / (i + 1) as f64;
    }
    r
}

pub fn pattern_counts(pi: &Perm, sigma: &Perm) -> PatternCounts {
    let m = Matcher::new(pi);
    PatternCounts {
        n: sigma.len(),
        k: pi.len(),
        occ: m.count(sigma.values()),
        cocc: m.count_consecutive(sigma.values()),
    }
}

pub fn occ(pi: &Perm, sigma: &Perm) -> u128 {
    Matcher::new(pi).count(sigma.values())
}

pub fn cocc(pi: &Perm, sigma: &Perm) -> u64 {
    Matcher::new(pi).count_consecutive(sigma.values())
}

pub fn contains(sigma: &Perm, pi: &Perm) -> bool {
    Matcher::new(pi).occurs(sigma.values())
}

pub fn avoids(sigma: &Perm, patterns: &[Perm]) -> bool {
    patterns.iter().all(|p| !contains(sigma, p))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Perm {
        Perm::parse(s).unwrap()
    }

    fn brute_occ(pi: &Perm, sigma: &Perm) -> u128 {
        let (k, n) = (pi.len(), sigma.len());
        let mut total = 0;
        for mask in 0u32..(1 << n) {
            if mask.count_ones() as usize != k {
                continue;
            }
            let idx: Vec<usize> = (1..=n).filter(|i| mask >> (i - 1) & 1 == 1).collect();
            if pattern_at(sigma, &idx).unwrap() == *pi {
                total += 1;
            }
        }
        total
    }

    #[test]
    fn pattern_at_examples() {
        assert_eq!(pattern_at(&p("752934861"), &[2, 3, 4, 5, 6]).unwrap(), p("41523"));
        assert_eq!(pattern_at(&p("2413"), &[1, 3]).unwrap(), p("21"));
        assert_eq!(pattern_at(&p("2413"), &[3, 1]), Err(PermError::NotIncreasing));
        assert!(matches!(pattern_at(&p("2413"), &[5]), Err(PermError::IndexOutOfRange { .. })));
    }

    #[test]
    fn counts_small() {
        let c = pattern_counts(&p("12"), &p("1324"));
        assert_eq!((c.occ, c.cocc), (5, 2));
        assert_eq!(occ(&Perm::empty(), &p("21")), 1);
        assert_eq!(cocc(&Perm::empty(), &p("21")), 1);
        assert_eq!(occ(&p("123"), &p("21")), 0);
        assert_eq!(cocc(&p("123"), &p("21")), 0);
        assert!((pattern_counts(&p("21"), &p("321")).pocc() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn matcher_agrees_with_brute_force() {
        let sigmas = ["31524", "2413", "654321", "1432765", "35142"];
        let pis = ["1", "12", "21", "132", "231", "2413", "3142", "321"];
        for s in sigmas {
            for q in pis {
                let (s, q) = (p(s), p(q));
                assert_eq!(occ(&q, &s), brute_occ(&q, &s), "{q:?} in {s:?}");
                assert_eq!(contains(&s, &q), brute_occ(&q, &s) > 0);
            }
        }
    }
}
