use std::collections::{HashMap, HashSet};

use permlab_gentree::*;
use permlab_perm::rng::substream;
use permlab_perm::{avoids, enumerate_class, Perm};
use proptest::prelude::*;

fn pats() -> [Perm; 2] {
    [Perm::new(vec![1, 4, 2, 3]).unwrap(), Perm::new(vec![4, 1, 2, 3]).unwrap()]
}

fn class(n: usize) -> Vec<Perm> {
    let p = pats();
    enumerate_class(n, 8, |s| avoids(s, &p)).unwrap()
}

#[test]
fn counts_match_brute_force() {
    let t = count_table(&SuccessionRule::av1423_4123(), 8).unwrap();
    for n in 1..=8 {
        assert_eq!(t.level_total(n), (class(n).len() as u64).into(), "n = {n}");
    }
    assert_eq!(t.level_total(2), 2u32.into());
}

#[test]
fn realizer_is_a_bijection() {
    let r = SuccessionRule::av1423_4123();
    for n in 1..=7 {
        let paths = enumerate_paths(&r, n, 10_000).unwrap();
        let image: HashSet<Perm> = paths.iter().map(|p| realize_1423_4123(p).unwrap()).collect();
        assert_eq!(image.len(), paths.len(), "n = {n}");
        assert_eq!(image, class(n).into_iter().collect::<HashSet<_>>(), "n = {n}");
        for p in &paths {
            assert_eq!(&read_path_1423_4123(&realize_1423_4123(p).unwrap()).unwrap(), p);
        }
    }
}

#[test]
fn active_site_invariant() {
    let r = SuccessionRule::av1423_4123();
    for path in enumerate_paths(&r, 7, 10_000).unwrap() {
        let mut g = Growth::new();
        for (t, &c) in path.labels().iter().enumerate() {
            if t > 0 {
                g.push(c).unwrap();
            }
            let n = g.len();
            let brute = active_sites_brute(&g.perm());
            assert_eq!(g.sites(), brute.as_slice());
            assert_eq!(brute.len(), c.value as usize);
            assert!(brute.contains(&1) && brute.contains(&(n + 1)));
            if n > 1 {
                assert!(brute.contains(&2));
            }
        }
    }
}

#[test]
fn uniform_over_level_four() {
    let r = SuccessionRule::av1423_4123();
    let paths = enumerate_paths(&r, 4, 100).unwrap();
    assert_eq!(paths.len(), 22);
    let s = PathSampler::new(&r, 4).unwrap();
    let mut rng = substream(11, "gentree-uniform", 0);
    let draws = 100_000;
    let mut hits: HashMap<LabelPath, usize> = HashMap::new();
    for _ in 0..draws {
        *hits.entry(s.sample(&mut rng).unwrap()).or_default() += 1;
    }
    assert_eq!(hits.len(), 22);
    let e = draws as f64 / 22.0;
    let chi2: f64 = paths.iter().map(|p| (hits[p] as f64 - e).powi(2) / e).sum();
    // 21 degrees of freedom, p ≈ 1e-4
    assert!(chi2 < 50.0, "chi2 = {chi2}");
}

#[test]
fn float_sampler_uniform_at_six() {
    let r = SuccessionRule::av1423_4123();
    let s = PathSampler::with_mode(&r, 6, false).unwrap();
    let mut rng = substream(11, "gentree-uniform", 1);
    let draws = 200_000;
    let mut hits: HashMap<Perm, usize> = HashMap::new();
    for _ in 0..draws {
        *hits.entry(realize_1423_4123(&s.sample(&mut rng).unwrap()).unwrap()).or_default() += 1;
    }
    assert_eq!(hits.len(), 394);
    let e = draws as f64 / 394.0;
    let chi2: f64 = hits.values().map(|&h| (h as f64 - e).powi(2) / e).sum();
    // 393 degrees of freedom, mean 393, sd 28
    assert!(chi2 < 393.0 + 5.0 * 28.0, "chi2 = {chi2}");
}

#[test]
fn large_samples_avoid() {
    let r = SuccessionRule::av1423_4123();
    let p = pats();
    let s = PathSampler::new(&r, 500).unwrap();
    assert!(!s.is_exact());
    for i in 0..3 {
        let path = s.sample(&mut substream(12, "gentree-large", i)).unwrap();
        path.check(&r).unwrap();
        let sigma = realize_1423_4123(&path).unwrap();
        assert!(avoids(&sigma, &p));
        assert_eq!(read_path_1423_4123(&sigma).unwrap(), path);
    }
}

#[test]
fn consecutive_statistics_stabilize() {
    let pi = Perm::identity(2);
    let rows = clt_scan_1423_4123(&pi, &[2000, 4000], 100, 13).unwrap();
    let (a, b) = (&rows[0], &rows[1]);
    assert!((a.mean_over_n - b.mean_over_n).abs() < 0.02, "{a:?} {b:?}");
    let ratio = a.var_over_n / b.var_over_n;
    assert!((0.5..=2.0).contains(&ratio), "ratio = {ratio}");
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn sampled_paths_round_trip(n in 1usize..60, seed in any::<u64>()) {
        let r = SuccessionRule::av1423_4123();
        let path = sample_path(&r, n, &mut substream(seed, "gentree-prop", 0)).unwrap();
        prop_assert!(path.check(&r).is_ok());
        let sigma = realize_1423_4123(&path).unwrap();
        prop_assert_eq!(sigma.len(), n);
        prop_assert_eq!(read_path_1423_4123(&sigma).unwrap(), path);
    }
}
