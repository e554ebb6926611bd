use permlab_perm::{avoids, Perm};

use crate::rule::{ColoredLabel, LabelPath, SuccessionRule};
use crate::GenTreeError;

const BLUE: u8 = 1;
const TANGERINE: u8 = 2;

/// Growth state of `Av(1423, 4123)`: the permutation so far and its active
/// sites `i_1 = 1 < i_2 = 2 < ... < i_k = n + 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Growth {
    values: Vec<usize>,
    sites: Vec<usize>,
}

impl Default for Growth {
    fn default() -> Self {
        Growth::new()
    }
}

impl Growth {
    /// The permutation `1`.
    pub fn new() -> Self {
        Growth { values: vec![1], sites: vec![1, 2] }
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn sites(&self) -> &[usize] {
        &self.sites
    }

    pub fn perm(&self) -> Perm {
        Perm::from_vec_unchecked(self.values.clone())
    }

    fn append(&mut self, m: usize) {
        for v in self.values.iter_mut() {
            if *v >= m {
                *v += 1;
            }
        }
        self.values.push(m);
    }

    /// Appends the final value of the child labelled `c`.
    pub fn push(&mut self, c: ColoredLabel) -> Result<(), GenTreeError> {
        let n = self.len();
        let k = self.sites.len();
        let s = &self.sites;
        let mid: &[usize] = if k > 3 { &s[2..k - 1] } else { &[] };
        let (m, mut next) = match c.color {
            BLUE if c.value as usize == k + 1 => {
                let mut v = vec![1, 2, 3];
                v.extend(mid.iter().map(|&i| i + 1));
                v.push(n + 2);
                (1, v)
            }
            TANGERINE if c.value as usize == k + 1 => {
                let mut v = vec![1, 2];
                v.extend_from_slice(mid);
                v.extend([n + 1, n + 2]);
                (n + 1, v)
            }
            0 if (3..=k).contains(&(c.value as usize)) => {
                let j = c.value as usize - 1;
                let mut v = s[..j].to_vec();
                v.push(n + 2);
                (s[j - 1], v)
            }
            _ => return Err(GenTreeError::Inconsistent(format!("label {}:{} is not a child of {k}", c.value, c.color))),
        };
        next.dedup();
        self.append(m);
        self.sites = next;
        Ok(())
    }

    /// The child label that appends final value `m`, if `m` is active.
    pub fn label_of_site(&self, m: usize) -> Option<ColoredLabel> {
        let n = self.len();
        let k = self.sites.len() as u32;
        if m == 1 {
            Some(ColoredLabel { value: k + 1, color: BLUE })
        } else if m == n + 1 {
            Some(ColoredLabel { value: k + 1, color: TANGERINE })
        } else {
            let j = self.sites.binary_search(&m).ok()?;
            Some(ColoredLabel::plain(j as u32 + 2))
        }
    }
}

/// The permutation with generating-tree path `path`.
pub fn realize_1423_4123(path: &LabelPath) -> Result<Perm, GenTreeError> {
    let labels = path.labels();
    match labels.first() {
        Some(&c) if c == ColoredLabel::plain(2) => {}
        _ => return Err(GenTreeError::Inconsistent("path must start at the root label 2".into())),
    }
    let mut g = Growth::new();
    for &c in &labels[1..] {
        g.push(c)?;
    }
    Ok(g.perm())
}

/// Inverse of [`realize_1423_4123`].
pub fn read_path_1423_4123(sigma: &Perm) -> Result<LabelPath, GenTreeError> {
    let v = sigma.values();
    if v.is_empty() {
        return Err(GenTreeError::NotInClass("empty permutation".into()));
    }
    let mut g = Growth::new();
    let mut out = vec![ColoredLabel::plain(2)];
    for t in 1..v.len() {
        let m = 1 + v[..t].iter().filter(|&&x| x < v[t]).count();
        let c = g.label_of_site(m).ok_or_else(|| GenTreeError::NotInClass(format!("{sigma} has an occurrence ending at position {}", t + 1)))?;
        g.push(c)?;
        out.push(c);
    }
    Ok(LabelPath(out))
}

/// Sites `m` such that appending final value `m` stays in the class.
pub fn active_sites_brute(sigma: &Perm) -> Vec<usize> {
    let pats = [Perm::new(vec![1, 4, 2, 3]).unwrap(), Perm::new(vec![4, 1, 2, 3]).unwrap()];
    let n = sigma.len();
    (1..=n + 1)
        .filter(|&m| {
            let mut v: Vec<usize> = sigma.values().iter().map(|&x| if x >= m { x + 1 } else { x }).collect();
            v.push(m);
            avoids(&Perm::from_vec_unchecked(v), &pats)
        })
        .collect()
}

pub fn rule() -> SuccessionRule {
    SuccessionRule::av1423_4123()
}
