use num_rational::Ratio;
use permlab_local::*;
use permlab_perm::rng::substream;
use permlab_perm::{avoids, cocc, enumerate_all, Perm};
use proptest::prelude::*;

fn perm_strategy(lo: usize, hi: usize) -> impl Strategy<Value = Perm> {
    (lo..=hi).prop_flat_map(|n| Just((1..=n).collect::<Vec<_>>()).prop_shuffle()).prop_map(Perm::from_vec_unchecked)
}

fn inverse_descents(p: &Perm) -> usize {
    let inv = p.inverse();
    inv.values().windows(2).filter(|w| w[0] > w[1]).count()
}

#[test]
fn av321_law_matches_closed_form() {
    for h in 0..=4 {
        let m = 2 * h + 1;
        let law = exact_law(LimitVariant::Av321, h);
        let total: Ratio<u64> = law.values().copied().sum();
        assert_eq!(total, Ratio::new(1, 1));
        let p321 = Perm::parse("321").unwrap();
        for pi in enumerate_all(m) {
            let r = RootedPerm::new(pi.clone(), h + 1).unwrap();
            let got = law.get(&r).copied().unwrap_or(Ratio::new(0, 1));
            let want = if pi == Perm::identity(m) {
                Ratio::new(m as u64 + 1, 1 << m)
            } else if avoids(&pi, std::slice::from_ref(&p321)) && inverse_descents(&pi) == 1 {
                Ratio::new(1, 1 << m)
            } else {
                Ratio::new(0, 1)
            };
            assert_eq!(got, want, "h={h} pi={pi:?}");
        }
    }
}

#[test]
fn square_laws_are_probability_measures() {
    for h in 0..=3 {
        for v in [1, 2, 3, 4].map(LimitVariant::Square).into_iter().chain([LimitVariant::SquareAnnealed]) {
            let total: Ratio<u64> = exact_law(v, h).values().copied().sum();
            assert_eq!(total, Ratio::new(1, 1));
        }
    }
}

#[test]
fn sampler_follows_exact_law() {
    let h = 1;
    let law = exact_law(LimitVariant::SquareAnnealed, h);
    let mut rng = substream(3, "limit", 0);
    let reps = 40_000;
    let mut hist = std::collections::BTreeMap::new();
    for _ in 0..reps {
        *hist.entry(sample_limit_restriction(LimitVariant::SquareAnnealed, h, &mut rng)).or_insert(0u32) += 1;
    }
    for (r, p) in &law {
        let p = *p.numer() as f64 / *p.denom() as f64;
        let f = hist.get(r).copied().unwrap_or(0) as f64 / reps as f64;
        assert!((f - p).abs() < 5.0 * (p * (1.0 - p) / reps as f64).sqrt() + 1e-9, "{r:?}: {f} vs {p}");
    }
    assert!(hist.keys().all(|r| law.contains_key(r)));
}

#[test]
fn all_minus_labels_give_identity_under_av321() {
    let w = order_window(1, &[false; 7]);
    assert_eq!((w.perm().clone(), w.root()), (Perm::identity(7), 4));
}

proptest! {
    #[test]
    fn interior_windows_count_consecutive_occurrences(s in perm_strategy(1, 12), h in 0usize..3) {
        let hist = restriction_histogram(&s, h);
        for pi in enumerate_all(2 * h + 1) {
            let r = RootedPerm::new(pi.clone(), h + 1).unwrap();
            let c = hist.counts.get(&r).copied().unwrap_or(0);
            prop_assert_eq!(c, cocc(&pi, &s));
            prop_assert_eq!(hist.freq(&r), Ratio::new(cocc(&pi, &s), s.len() as u64));
        }
        prop_assert_eq!(hist.counts.values().sum::<u64>(), s.len() as u64);
    }

    #[test]
    fn restrictions_are_consistent(s in perm_strategy(1, 12), i in 1usize..13, h in 0usize..6, d in 0usize..6) {
        prop_assume!(i <= s.len());
        let big = restrict(&s, i, h + d).unwrap();
        prop_assert_eq!(big.restrict(h), restrict(&s, i, h).unwrap());
    }

    #[test]
    fn ultrametric(a in perm_strategy(5, 5), b in perm_strategy(5, 5), c in perm_strategy(5, 5), i in 1usize..6) {
        let x = RootedPerm::new(a, i).unwrap();
        let y = RootedPerm::new(b, i).unwrap();
        let z = RootedPerm::new(c, i).unwrap();
        let dxz = local_distance(&x, &z);
        prop_assert!(dxz <= local_distance(&x, &y).max(local_distance(&y, &z)));
        prop_assert_eq!(local_distance(&x, &y), local_distance(&y, &x));
    }
}
