use num_rational::Ratio;
use permlab_perm::rng::substream;
use permlab_perm::{enumerate_all, pattern_at, pattern_counts, Perm};
use permlab_permuton::*;
use proptest::prelude::*;
use rand::Rng;

fn perm_strategy(lo: usize, hi: usize) -> impl Strategy<Value = Perm> {
    (lo..=hi).prop_flat_map(|n| Just((1..=n).collect::<Vec<_>>()).prop_shuffle()).prop_map(Perm::from_vec_unchecked)
}

fn grid(p: &Perm) -> GridPermuton {
    GridPermuton::of_perm(p).unwrap()
}

#[test]
fn pocc_is_subset_probability() {
    let sigma = Perm::parse("41627385").unwrap();
    for k in 1..=4 {
        for pi in enumerate_all(k) {
            let mut hits = 0u64;
            let mut total = 0u64;
            for mask in 0u32..(1 << 8) {
                if mask.count_ones() as usize != k {
                    continue;
                }
                total += 1;
                let idx: Vec<usize> = (1..=8).filter(|i| mask >> (i - 1) & 1 == 1).collect();
                hits += (pattern_at(&sigma, &idx).unwrap() == pi) as u64;
            }
            let c = pattern_counts(&pi, &sigma);
            assert_eq!(Ratio::new(c.occ as u64, 1) / total, Ratio::new(hits, total));
        }
    }
}

#[test]
fn rectangle_segments_have_uniform_marginals() {
    let r = RectanglePermuton::new(0.37).unwrap();
    for k in 0..20 {
        let a = k as f64 / 20.0;
        let b = a + 0.05;
        assert!((r.rect_mass(Rect::new(a, b, 0.0, 1.0).unwrap()) - 0.05).abs() < 1e-12);
        assert!((r.rect_mass(Rect::new(0.0, 1.0, a, b).unwrap()) - 0.05).abs() < 1e-12);
    }
}

#[test]
fn near_rectangle_permutation_is_close() {
    let n = 400usize;
    let z = 0.3;
    let r = RectanglePermuton::new(z).unwrap();
    let mut rng = substream(5, "near", 0);
    let sigma = sample_induced(&r, n, &mut rng);
    let d = d_square_rect(&grid(&sigma), &r);
    assert!(d.upper < 0.15, "{d:?}");
    let far = d_square_rect(&grid(&Perm::identity(n)), &r);
    assert!(far.lower > 0.2, "{far:?}");
}

#[test]
fn large_grid_distance_is_fast_enough() {
    let mut rng = substream(1, "big", 0);
    let mut v: Vec<usize> = (1..=1500).collect();
    for i in (1..v.len()).rev() {
        v.swap(i, rng.random_range(0..=i));
    }
    let a = grid(&Perm::new(v).unwrap());
    let b = grid(&Perm::identity(1500));
    let d = d_square(&a, &b);
    assert!(d > 0.2 && d < 0.6, "{d}");
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn metric_axioms(a in perm_strategy(1, 7), b in perm_strategy(1, 7), c in perm_strategy(1, 7)) {
        let (ga, gb, gc) = (grid(&a), grid(&b), grid(&c));
        let ab = d_square_exact(&ga, &gb);
        prop_assert_eq!(ab, d_square_exact(&gb, &ga));
        prop_assert!(d_square_exact(&ga, &gc) <= ab + d_square_exact(&gb, &gc));
        prop_assert_eq!(d_square_exact(&ga, &ga), Ratio::new(0, 1));
        if a.len() == b.len() && a != b {
            prop_assert!(ab > Ratio::new(0, 1));
        }
    }

    #[test]
    fn merged_grid_dominates_random_rectangles(a in perm_strategy(1, 6), b in perm_strategy(1, 6), seed in any::<u64>()) {
        let (ga, gb) = (grid(&a), grid(&b));
        let d = d_square(&ga, &gb);
        let mut rng = substream(seed, "rects", 0);
        for _ in 0..300 {
            let (x0, x1): (f64, f64) = (rng.random(), rng.random());
            let (y0, y1): (f64, f64) = (rng.random(), rng.random());
            if let Ok(r) = Rect::new(x0.min(x1), x0.max(x1), y0.min(y1), y0.max(y1)) {
                prop_assert!((ga.rect_mass(r) - gb.rect_mass(r)).abs() <= d + 1e-12);
            }
        }
    }

    #[test]
    fn grid_mass_matches_exact(a in perm_strategy(1, 6), i in 0i64..6, j in 1i64..7, k in 0i64..6, l in 1i64..7) {
        prop_assume!(i < j && k < l);
        let g = grid(&a);
        let ex = g.rect_mass_exact(Ratio::new(i, 6), Ratio::new(j, 6), Ratio::new(k, 6), Ratio::new(l, 6)).unwrap();
        let fl = g.rect_mass(Rect::new(i as f64 / 6.0, j as f64 / 6.0, k as f64 / 6.0, l as f64 / 6.0).unwrap());
        prop_assert!((*ex.numer() as f64 / *ex.denom() as f64 - fl).abs() < 1e-12);
    }
}
