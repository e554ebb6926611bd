use permlab_perm::rng::substream;

use crate::coal::{cpbp, wcp};
use crate::map::theta;
use crate::sample::TandemSampler;
use crate::walk::{enumerate_tandem, Walk};
use crate::BaxterError;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DiagramMode {
    /// Every orientation of size `n`; needs `n ≤ 7`.
    Exhaustive,
    Sampled { count: usize, seed: u64 },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiagramReport {
    pub n: usize,
    pub checked: usize,
}

/// Checks `bow(Θ(W)) = W` and `bobp(m) = cpbp(wcp(bow(m)))` on one walk.
pub fn check_walk(w: &Walk) -> Result<(), BaxterError> {
    let m = theta(w)?;
    let back = m.bow()?;
    let left = m.bobp()?;
    let right = cpbp(&wcp(&back)?)?;
    if back != *w || left != right {
        return Err(BaxterError::DiagramMismatch { walk: w.to_json(), bobp: left.to_string(), cpbp: right.to_string() });
    }
    Ok(())
}

pub fn diagram_check(n: usize, mode: DiagramMode) -> Result<DiagramReport, BaxterError> {
    let walks = match mode {
        DiagramMode::Exhaustive => enumerate_tandem(n, 7)?,
        DiagramMode::Sampled { count, seed } => {
            let s = TandemSampler::new(n)?;
            s.sample_many(count, &mut substream(seed, "diagram", n as u64))
        }
    };
    for w in &walks {
        check_walk(w)?;
    }
    Ok(DiagramReport { n, checked: walks.len() })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_sizes() {
        assert_eq!(diagram_check(1, DiagramMode::Exhaustive).unwrap().checked, 1);
        assert_eq!(diagram_check(3, DiagramMode::Exhaustive).unwrap().checked, 6);
        assert!(diagram_check(8, DiagramMode::Exhaustive).is_err());
    }
}
