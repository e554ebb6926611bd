use crate::Perm;

/// Strict records, as 0-based position flags.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Records {
    pub lr_max: Vec<bool>,
    pub lr_min: Vec<bool>,
    pub rl_max: Vec<bool>,
    pub rl_min: Vec<bool>,
}

impl Records {
    pub fn is_record(&self, i: usize) -> bool {
        self.lr_max[i] || self.lr_min[i] || self.rl_max[i] || self.rl_min[i]
    }
}

pub fn records(sigma: &Perm) -> Records {
    let v = sigma.values();
    let n = v.len();
    let mut r = Records {
        lr_max: vec![false; n],
        lr_min: vec![false; n],
        rl_max: vec![false; n],
        rl_min: vec![false; n],
    };
    let (mut mx, mut mn) = (0, usize::MAX);
    for i in 0..n {
        if v[i] > mx {
            mx = v[i];
            r.lr_max[i] = true;
        }
        if v[i] < mn {
            mn = v[i];
            r.lr_min[i] = true;
        }
    }
    let (mut mx, mut mn) = (0, usize::MAX);
    for i in (0..n).rev() {
        if v[i] > mx {
            mx = v[i];
            r.rl_max[i] = true;
        }
        if v[i] < mn {
            mn = v[i];
            r.rl_min[i] = true;
        }
    }
    r
}

/// Number of entries that are not records of any kind.
pub fn internal_points(sigma: &Perm) -> usize {
    let r = records(sigma);
    (0..sigma.len()).filter(|&i| !r.is_record(i)).count()
}

pub fn is_square(sigma: &Perm) -> bool {
    internal_points(sigma) == 0
}
