use std::collections::{HashMap, HashSet};

use permlab_baxter::*;
use permlab_perm::rng::substream;
use permlab_perm::{enumerate_class, is_baxter, pattern_at, Perm};
use proptest::prelude::*;

fn example_walk() -> Walk {
    Walk::new(vec![(0, 2), (0, 3), (0, 3), (1, 2), (2, 1), (0, 3), (1, 2), (2, 1), (3, 0), (2, 0)])
}

fn all(n: usize) -> Vec<Walk> {
    enumerate_tandem(n, 7).unwrap()
}

fn p(s: &str) -> Perm {
    Perm::parse(s).unwrap()
}

#[test]
fn running_example() {
    let w = example_walk();
    w.check_tandem().unwrap();
    let m = theta(&w).unwrap();
    assert_eq!(m.bow().unwrap(), w);
    let target = p("8 6 5 7 9 1 2 4 10 3");
    assert_eq!(m.bobp().unwrap(), target);
    assert_eq!(cpbp(&wcp(&w).unwrap()).unwrap(), target);
}

#[test]
fn coalescent_points_example() {
    // Depth-first search for a walk with increments in A realizing the
    // pictured order, with the line from the fourth dot a root edge.
    let target = p("8 9 10 7 6 1 4 5 2 3");
    let sigma = target.values().to_vec();
    let mut options = vec![Step::Diag];
    for i in 0..=3 {
        for j in 0..=3 {
            options.push(Step::Face { i, j });
        }
    }
    fn dfs(steps: &mut Vec<Step>, z: &mut Vec<i64>, sigma: &[usize], options: &[Step]) -> bool {
        let t = z.len();
        if t == sigma.len() {
            return (5..=10).all(|k| wcp_steps(steps).get(4, k) != 0);
        }
        for &s in options {
            let saved = z.clone();
            z.iter_mut().for_each(|v| *v = wcp_step(*v, s));
            z.push(0);
            steps.push(s);
            if (0..t).all(|i| (sigma[i] < sigma[t]) == (z[i] < 0)) && dfs(steps, z, sigma, options) {
                return true;
            }
            steps.pop();
            *z = saved;
        }
        false
    }
    let mut steps = Vec::new();
    let mut z = vec![0];
    assert!(dfs(&mut steps, &mut z, &sigma, &options));
    let cw = wcp_steps(&steps);
    assert_eq!(cpbp(&cw).unwrap(), target);
    let forest = fortree(&cw);
    assert_eq!(forest.exploration(), [6, 9, 10, 7, 8, 5, 4, 1, 2, 3]);
    assert!(forest.roots.contains(&4));
}

#[test]
fn face_rule() {
    for n in 1..=6 {
        for w in all(n) {
            let m = theta(&w).unwrap();
            let f = m.faces().unwrap();
            let (order, _) = m.exploration();
            for (t, s) in w.steps().unwrap().into_iter().enumerate() {
                if let Step::Face { i, j } = s {
                    let face = f.right_of[order[t]];
                    assert_eq!(face, f.left_of[order[t + 1]]);
                    let fc = &f.inner[face];
                    assert_eq!((fc.left.len() as i64, fc.right.len() as i64), (i + 1, j + 1));
                }
            }
        }
    }
}

#[test]
fn bow_theta_bijection() {
    for n in 1..=7 {
        let walks = all(n);
        let mut seen = HashSet::new();
        for w in &walks {
            let m = theta(w).unwrap();
            m.validate().unwrap();
            assert_eq!(m.edge_count(), n);
            assert_eq!(m.explored(), n);
            let (order, _) = m.exploration();
            assert!(order.iter().enumerate().all(|(t, &e)| m.label[e] == Some(t + 1)));
            assert_eq!(m.bow().unwrap(), *w);
            assert_eq!(theta(&m.bow().unwrap()).unwrap(), m);
            assert!(seen.insert(m.canonical()));
        }
    }
}

#[test]
fn duality() {
    for n in 1..=6 {
        for w in all(n) {
            let m = theta(&w).unwrap();
            let d1 = m.dual().unwrap();
            d1.validate().unwrap();
            let d2 = d1.dual().unwrap();
            assert_eq!(d2, m.reverse());
            assert_eq!(d2.bow().unwrap(), reverse_walk(&w));
            let d4 = d2.dual().unwrap().dual().unwrap();
            assert_eq!(d4, m);
            assert_eq!(d4.canonical(), m.canonical());
        }
    }
}

#[test]
fn rotation_symmetries() {
    for n in 1..=6 {
        for w in all(n) {
            let m = theta(&w).unwrap();
            let s = m.bobp().unwrap();
            assert_eq!(m.dual().unwrap().bobp().unwrap(), s.rotate_cw());
            assert_eq!(m.mirror().bobp().unwrap(), s.inverse());
        }
    }
}

#[test]
fn local_time_identities() {
    for n in 1..=6 {
        for w in all(n) {
            let m = theta(&w).unwrap();
            let z = wcp(&w).unwrap();
            let sigma = cpbp(&z).unwrap();
            let star = m.dual().unwrap();
            let ws = star.bow().unwrap();
            let sstar = star.bobp().unwrap();
            let zr = wcp(&reverse_walk(&w)).unwrap();
            for i in 1..=n {
                assert_eq!(local_time(&z, i, i), 1);
                assert_eq!(ws.points[sigma.at(i) - 1].0, local_time(&z, i, n) as i64 - 1);
                assert_eq!(ws.points[i - 1].1, local_time(&zr, sstar.at(i), n) as i64 - 1);
            }
        }
    }
}

#[test]
fn images_are_exactly_baxter() {
    for n in 1..=7 {
        let images: HashSet<Perm> = all(n).iter().map(|w| theta(w).unwrap().bobp().unwrap()).collect();
        let class: HashSet<Perm> = enumerate_class(n, 10, is_baxter).unwrap().into_iter().collect();
        assert_eq!(images, class, "n={n}");
    }
    assert_eq!(enumerate_class(4, 10, is_baxter).unwrap().len(), 22);
}

#[test]
fn diagram_exhaustive() {
    for n in 1..=7 {
        let r = diagram_check(n, DiagramMode::Exhaustive).unwrap();
        assert_eq!(r.checked, [1, 2, 6, 22, 92, 422, 2074][n - 1]);
    }
}

#[test]
fn diagram_sampled() {
    for n in [8, 9, 20, 50] {
        assert_eq!(diagram_check(n, DiagramMode::Sampled { count: 500, seed: 1 }).unwrap().checked, 500);
    }
}

#[test]
fn coalescent_invariants() {
    for n in 1..=7 {
        for w in all(n) {
            let z = wcp(&w).unwrap();
            assert!(z.preserves_order());
            for a in 1..=n {
                for b in a + 1..=n {
                    if let Some(t) = (b..=n).find(|&t| z.get(a, t) == z.get(b, t)) {
                        assert!(z.get(a, t) >= 0);
                    }
                    for c in b + 1..=n {
                        let (x, y, zz) = (z.less(a, b), z.less(b, c), z.less(a, c));
                        assert!(!(x && y) || zz);
                        assert!(x || y || !zz);
                    }
                }
            }
            let sigma = cpbp(&z).unwrap();
            let inv = sigma.inverse();
            assert_eq!(fortree(&z).exploration(), inv.values());
        }
    }
}

#[test]
fn non_tandem_walk_keeps_unexplored_edges() {
    let w = Walk::new(vec![(0, 0), (-2, 0), (-1, -1), (-3, 0)]);
    assert!(!w.is_tandem());
    let m = theta(&w).unwrap();
    m.validate().unwrap();
    assert_eq!(m.explored(), 4);
    assert_eq!(m.edge_count(), 8);
    let (order, _) = m.exploration();
    let labels: Vec<usize> = order.iter().filter_map(|&e| m.label[e]).collect();
    assert_eq!(labels, [1, 2, 3, 4]);
}

/// `(left labels, right labels)` of every face with an explored edge on
/// both sides, labels shifted to start at 1.
fn explored_faces(m: &BipolarMap, lo: usize, hi: usize) -> Vec<(Vec<Option<usize>>, Vec<Option<usize>>)> {
    let f = m.faces().unwrap();
    let lab = |e: usize| m.label[e].filter(|l| (lo..=hi).contains(l)).map(|l| l + 1 - lo);
    let mut out: Vec<_> = f
        .inner
        .iter()
        .map(|fc| (fc.left.iter().map(|&e| lab(e)).collect::<Vec<_>>(), fc.right.iter().map(|&e| lab(e)).collect::<Vec<_>>()))
        .filter(|(l, r)| l.iter().any(Option::is_some) && r.iter().any(Option::is_some))
        .collect();
    out.sort();
    out
}

#[test]
fn restriction_consistency() {
    let mut rng = substream(7, "restrict", 0);
    let s = TandemSampler::new(40).unwrap();
    for w in s.sample_many(60, &mut rng) {
        let steps = w.steps().unwrap();
        let full = theta(&w).unwrap();
        for _ in 0..5 {
            let a = rand::Rng::random_range(&mut rng, 1..=40);
            let b = rand::Rng::random_range(&mut rng, a..=40);
            let sub = theta_from(&steps[a - 1..b - 1], 1);
            assert_eq!(sub.explored(), b - a + 1);
            assert_eq!(explored_faces(&full, a, b), explored_faces(&sub, 1, b - a + 1));
        }
    }
}

fn chi2(counts: &HashMap<Perm, u64>, classes: usize, total: u64) -> f64 {
    let e = total as f64 / classes as f64;
    let seen: f64 = counts.values().map(|&c| (c as f64 - e).powi(2) / e).sum();
    seen + (classes - counts.len()) as f64 * e
}

#[test]
fn uniform_at_four() {
    // 21 degrees of freedom: mean 21, sd ~6.5
    let mut rng = substream(8, "unif4", 0);
    let s = TandemSampler::new(4).unwrap();
    let mut counts = HashMap::new();
    for _ in 0..100_000 {
        *counts.entry(s.sample_baxter(&mut rng)).or_insert(0u64) += 1;
    }
    assert_eq!(counts.len(), 22);
    assert!(chi2(&counts, 22, 100_000) < 55.0);
    let mut rej = HashMap::new();
    for _ in 0..20_000 {
        let sigma = sample_baxter(4, 10_000_000, &mut rng).unwrap();
        assert!(is_baxter(&sigma));
        *rej.entry(sigma).or_insert(0u64) += 1;
    }
    assert!(chi2(&rej, 22, 20_000) < 55.0);
}

#[test]
fn acceptance_rate_decay() {
    let ns = [8.0f64, 16.0, 32.0, 64.0];
    let lp: Vec<f64> = ns.iter().map(|&n| TandemSampler::new(n as usize).unwrap().log_excursion_probability()).collect();
    let lx: Vec<f64> = ns.iter().map(|n| n.ln()).collect();
    let (mx, my) = (lx.iter().sum::<f64>() / 4.0, lp.iter().sum::<f64>() / 4.0);
    let slope = lx.iter().zip(&lp).map(|(x, y)| (x - mx) * (y - my)).sum::<f64>() / lx.iter().map(|x| (x - mx).powi(2)).sum::<f64>();
    assert!((-4.6..=-3.4).contains(&slope), "slope {slope}");
    // Monte Carlo agrees with the exact rate at n = 4: 22 / 2^15.
    let mut rng = substream(8, "rate", 0);
    let mut tries = 0;
    for _ in 0..300 {
        tries += sample_tandem_counted(4, u64::MAX, &mut rng).unwrap().1;
    }
    let rate = 300.0 / tries as f64;
    let exact = 22.0 / 32768.0;
    assert!((rate / exact - 1.0).abs() < 0.2, "{rate} vs {exact}");
}

#[test]
fn trajectory_is_a_random_walk() {
    let mut rng = substream(9, "traj", 0);
    let n = 100_000;
    let w = nu_walk(n, &mut rng);
    let steps = w.steps().unwrap();
    let z = wcp_trajectory(&steps, 1);
    let y: Vec<i64> = w.points.iter().map(|p| p.1).collect();
    let bucket = |d: i64| (d + 1).clamp(0, 5) as usize;
    let mut a = [0f64; 6];
    let mut b = [0f64; 6];
    for k in 1..z.len() {
        a[bucket(z[k] - z[k - 1])] += 1.0;
        b[bucket(y[k] - y[k - 1])] += 1.0;
    }
    // two-sample chi-square, 5 degrees of freedom
    let stat: f64 = (0..6).map(|k| (a[k] - b[k]).powi(2) / (a[k] + b[k])).sum();
    assert!(stat < 20.5, "stat {stat}");
    assert!((a[0] / n as f64 - 0.5).abs() < 0.01);
}

#[test]
fn pattern_locality() {
    let mut rng = substream(10, "pat", 0);
    let s = TandemSampler::new(60).unwrap();
    for w in s.sample_many(30, &mut rng) {
        let z = wcp(&w).unwrap();
        let sigma = cpbp(&z).unwrap();
        for _ in 0..20 {
            let k = rand::Rng::random_range(&mut rng, 1..=6);
            let mut idx: Vec<usize> = rand::seq::index::sample(&mut rng, 60, k).into_iter().map(|i| i + 1).collect();
            idx.sort();
            let local: Vec<usize> = idx.iter().map(|&a| 1 + idx.iter().filter(|&&b| b != a && z.less(b, a)).count()).collect();
            assert_eq!(pattern_at(&sigma, &idx).unwrap().values(), &local[..]);
        }
    }
}

#[test]
fn map_json_round_trip() {
    for w in all(5) {
        let m = theta(&w).unwrap();
        let back = BipolarMap::from_json(&m.to_json()).unwrap();
        assert_eq!(back, m);
        assert_eq!(back.bobp().unwrap(), m.bobp().unwrap());
    }
    assert!(BipolarMap::parse_bytes(b"\xff").is_err());
}

#[test]
fn skew_occupation() {
    let horizon = 400;
    for q in [0.25, 0.5, 0.75] {
        let mut rng = substream(11, "occ", (q * 100.0) as u64);
        let runs = 10_000;
        let mut pos = 0;
        for _ in 0..runs {
            let inc = gaussian_increments(horizon, -0.5, &mut rng);
            let z = skew_trajectory(&inc, q, CrossingRule::Resample, &mut rng);
            pos += (z[horizon / 2] > 0.0) as usize;
        }
        let f = pos as f64 / runs as f64;
        assert!((f - q).abs() <= 0.03, "q={q}: {f}");
    }
}

#[test]
fn thinned_rule_reduces_to_wcp() {
    let mut rng = substream(13, "thin", 0);
    let s = TandemSampler::new(200).unwrap();
    for w in s.sample_many(5, &mut rng) {
        let pts: Vec<(f64, f64)> = w.points.iter().map(|&(x, y)| (x as f64, y as f64)).collect();
        let out = skew_from_points(&pts, 0.5, CrossingRule::Thinned, 0, &mut rng).unwrap();
        assert!(out.total_order);
        assert_eq!(out.perm, baxter_of_walk(&w).unwrap());
    }
    let occ = |q: f64, rng: &mut permlab_perm::rng::Rng| {
        let mut pos = 0;
        for _ in 0..4000 {
            let inc = gaussian_increments(200, -0.5, rng);
            pos += (skew_trajectory(&inc, q, CrossingRule::Thinned, rng)[100] > 0.0) as usize;
        }
        pos as f64 / 4000.0
    };
    let f: Vec<f64> = [0.0, 0.25, 0.5, 0.75, 1.0].iter().map(|&q| occ(q, &mut rng)).collect();
    assert!(f.windows(2).all(|w| w[0] < w[1]), "{f:?}");
    assert!(f[0] < 0.01 && f[4] > 0.99, "{f:?}");
}

#[test]
fn skew_excursion_driver() {
    let mut rng = substream(12, "exc", 0);
    let pts = gaussian_excursion(64, 0.0, 10_000_000, &mut rng).unwrap();
    assert_eq!(pts.len(), 64);
    assert!(pts.iter().all(|p| p.0 >= 0.0 && p.1 >= 0.0));
    let mut cfg = SkewDriveConfig::new(0.0, 0.5, 64);
    cfg.mode = DriveMode::GaussianExcursion { cap: 10_000_000 };
    let out = skew_permuton_simulate(&cfg, &mut rng).unwrap();
    assert_eq!(out.perm.len(), 64);
    cfg.mode = DriveMode::Tandem;
    cfg.rho = -0.5;
    assert_eq!(skew_permuton_simulate(&cfg, &mut rng).unwrap().grid.resolution(), 64);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn sampled_walks_commute(n in 1usize..40, seed in any::<u64>()) {
        let mut rng = substream(seed, "prop", n as u64);
        let w = TandemSampler::new(n).unwrap().sample(&mut rng);
        check_walk(&w).unwrap();
        let sigma = baxter_of_walk(&w).unwrap();
        prop_assert!(is_baxter(&sigma));
        prop_assert_eq!(Walk::from_json(&w.to_json()).unwrap(), w.clone());
        prop_assert_eq!(reverse_walk(&reverse_walk(&w)), w);
    }
}
