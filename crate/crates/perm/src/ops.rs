use crate::{Perm, PermError};

/// `τ ⊕ σ`.
pub fn direct_sum(tau: &Perm, sigma: &Perm) -> Perm {
    let m = tau.len();
    let mut v = tau.values().to_vec();
    v.extend(sigma.values().iter().map(|x| x + m));
    Perm::from_vec_unchecked(v)
}

/// `τ ⊖ σ`.
pub fn skew_sum(tau: &Perm, sigma: &Perm) -> Perm {
    let m = sigma.len();
    let mut v: Vec<usize> = tau.values().iter().map(|x| x + m).collect();
    v.extend_from_slice(sigma.values());
    Perm::from_vec_unchecked(v)
}

/// `θ[ν_1, ..., ν_k]`: each entry of `θ` inflated to a block order-isomorphic to `ν_i`.
pub fn substitute(theta: &Perm, blocks: &[Perm]) -> Result<Perm, PermError> {
    let k = theta.len();
    if blocks.len() != k {
        return Err(PermError::Arity { expected: k, got: blocks.len() });
    }
    if blocks.iter().any(Perm::is_empty) {
        return Err(PermError::EmptyBlock);
    }
    let inv = theta.inverse();
    let mut offset = vec![0; k];
    let mut acc = 0;
    for &i in inv.values() {
        offset[i - 1] = acc;
        acc += blocks[i - 1].len();
    }
    let mut v = Vec::with_capacity(acc);
    for (b, off) in blocks.iter().zip(&offset) {
        v.extend(b.values().iter().map(|x| x + off));
    }
    Ok(Perm::from_vec_unchecked(v))
}

pub fn is_plus_decomposable(sigma: &Perm) -> bool {
    let v = sigma.values();
    let mut mx = 0;
    for (p, &x) in v.iter().enumerate().take(v.len().saturating_sub(1)) {
        mx = mx.max(x);
        if mx == p + 1 {
            return true;
        }
    }
    false
}

pub fn is_minus_decomposable(sigma: &Perm) -> bool {
    is_plus_decomposable(&sigma.reverse())
}

/// Size above 2 and no interval of size strictly between 1 and `n`.
pub fn is_simple(sigma: &Perm) -> bool {
    let v = sigma.values();
    let n = v.len();
    if n <= 2 {
        return false;
    }
    for a in 0..n {
        let (mut lo, mut hi) = (v[a], v[a]);
        for b in a + 1..n {
            lo = lo.min(v[b]);
            hi = hi.max(v[b]);
            let len = b - a + 1;
            if len < n && hi - lo + 1 == len {
                return false;
            }
        }
    }
    true
}

/// Avoids the vincular patterns 2-41-3 and 3-14-2.
pub fn is_baxter(sigma: &Perm) -> bool {
    let v = sigma.values();
    let n = v.len();
    for j in 0..n.saturating_sub(1) {
        let (a, b) = (v[j].min(v[j + 1]), v[j].max(v[j + 1]));
        let inside = |x: usize| a < x && x < b;
        let left = v[..j].iter().copied().filter(|&x| inside(x));
        let right = v[j + 2..].iter().copied().filter(|&x| inside(x));
        if v[j] > v[j + 1] {
            if let (Some(l), Some(r)) = (left.min(), right.max()) {
                if l < r {
                    return false;
                }
            }
        } else if let (Some(l), Some(r)) = (left.max(), right.min()) {
            if l > r {
                return false;
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Perm {
        Perm::parse(s).unwrap()
    }

    #[test]
    fn sums() {
        assert_eq!(skew_sum(&p("12"), &p("1")), p("231"));
        assert_eq!(direct_sum(&p("21"), &p("1")), p("213"));
        assert_eq!(direct_sum(&Perm::empty(), &p("1")), p("1"));
    }

    #[test]
    fn substitution() {
        assert_eq!(substitute(&p("2413"), &[p("21"), p("1"), p("12"), p("1")]).unwrap(), p("436125"));
        assert_eq!(substitute(&p("12"), &[p("1")]), Err(PermError::Arity { expected: 2, got: 1 }));
        assert_eq!(substitute(&p("1"), &[Perm::empty()]), Err(PermError::EmptyBlock));
    }

    #[test]
    fn simple_and_decomposable() {
        assert!(is_simple(&p("2413")));
        assert!(is_simple(&p("3142")));
        assert!(!is_simple(&p("12")));
        assert!(!is_simple(&p("1")));
        assert!(is_simple(&p("24153")));
        assert!(!is_simple(&p("21453")));
        assert!(is_plus_decomposable(&p("2134")));
        assert!(!is_plus_decomposable(&p("2413")));
        assert!(is_minus_decomposable(&p("231")));
    }

    #[test]
    fn baxter_examples() {
        assert!(!is_baxter(&p("2413")));
        assert!(!is_baxter(&p("3142")));
        assert!(is_baxter(&p("2143")));
        assert!(is_baxter(&Perm::parse("8 6 5 7 9 1 2 4 10 3").unwrap()));
        assert!(is_baxter(&Perm::parse("8 9 10 7 6 1 4 5 2 3").unwrap()));
    }
}
