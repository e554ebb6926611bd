use std::collections::HashSet;

use anyhow::Result;
use num_bigint::BigUint;
use num_rational::Ratio;
use permlab_avoiders::{
    av231_to_binary, av321_to_plane_tree, binary_to_av231, compose, decompose, enumerate_binary_trees, enumerate_plane_trees,
    plane_tree_to_av321, sample_av231, sample_av321, SeparableCounts,
};
use permlab_baxter::{diagram_check, enumerate_tandem, theta, DiagramMode};
use permlab_feasible::{simple_cycles_dfs, CyclePolytope, DEFAULT_CYCLE_CEILING};
use permlab_gentree::{count_table, enumerate_paths, read_path_1423_4123, realize_1423_4123, SuccessionRule};
use permlab_local::{concentration_experiment, exact_law, restriction_histogram, LimitVariant, RootedPerm};
use permlab_perm::rng::substream;
use permlab_perm::{avoids, cocc, default_cap, enumerate_all, enumerate_class, factorial, is_baxter, Perm};
use permlab_square::{balanced_regular_pair, count_square, count_square_brute, project_phi, reconstruct_rho};
use rand::seq::SliceRandom;
use serde_json::json;

use crate::args::{Suite, VerifyArgs};

#[derive(Clone, Debug, PartialEq)]
pub struct Check {
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

fn check(name: impl Into<String>, pass: bool, detail: impl Into<String>) -> Check {
    Check { name: name.into(), pass, detail: detail.into() }
}

#[derive(Clone, Debug)]
pub struct Report {
    pub suite: &'static str,
    pub checks: Vec<Check>,
}

impl Report {
    pub fn pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn text(&self) -> String {
        let mut s = String::new();
        for c in &self.checks {
            s += &format!("{} {}: {}\n", if c.pass { "PASS" } else { "FAIL" }, c.name, c.detail);
        }
        let ok = self.checks.iter().filter(|c| c.pass).count();
        s += &format!("suite {}: {}/{} passed\n", self.suite, ok, self.checks.len());
        s
    }

    pub fn json(&self) -> String {
        let checks: Vec<_> = self.checks.iter().map(|c| json!({"name": c.name, "pass": c.pass, "detail": c.detail})).collect();
        json!({"suite": self.suite, "pass": self.pass(), "checks": checks}).to_string()
    }
}

fn p(s: &str) -> Perm {
    Perm::parse(s).expect("pattern literal")
}

pub fn catalan(n: usize) -> u128 {
    (0..n as u128).fold(1, |c, i| c * 2 * (2 * i + 1) / (i + 2))
}

pub fn run(a: &VerifyArgs) -> Result<Report> {
    let (suite, checks) = match a.suite {
        Suite::Counts => ("counts", counts(a.n_max)?),
        Suite::Bijections => ("bijections", bijections(a.n_max)?),
        Suite::Diagram => ("diagram", diagram(a.n.unwrap_or(5), a.reps.unwrap_or(1000), a.seed)?),
        Suite::Square => ("square", square(a.n.unwrap_or(2000), a.reps.unwrap_or(100), a.delta_exp, a.seed)?),
        Suite::Polytope => ("polytope", polytope(a.k)?),
        Suite::Local => ("local", local(a.n.unwrap_or(200), a.reps.unwrap_or(100), a.seed)?),
        Suite::Concentration => ("concentration", concentration(a.n.unwrap_or(5000), a.reps.unwrap_or(50), a.seed)?),
    };
    Ok(Report { suite, checks })
}

fn class(n: usize, pats: &[Perm]) -> Result<Vec<Perm>> {
    Ok(enumerate_class(n, default_cap(), |s| avoids(s, pats))?)
}

pub fn counts(n_max: usize) -> Result<Vec<Check>> {
    let mut out = Vec::new();
    let sep = SeparableCounts::new(n_max.max(1));
    let gt = count_table(&SuccessionRule::av1423_4123(), n_max)?;
    for n in 1..=n_max {
        let c = catalan(n);
        for pat in ["231", "321"] {
            let b = class(n, &[p(pat)])?.len() as u128;
            out.push(check(format!("av{pat} n={n}"), b == c, format!("brute {b}, catalan {c}")));
        }
        let b = class(n, &[p("2413"), p("3142")])?.len();
        let f = sep.total(n);
        out.push(check(format!("separable n={n}"), BigUint::from(b) == *f, format!("brute {b}, recursion {f}")));
        let bb = enumerate_class(n, default_cap(), is_baxter)?.len();
        let bt = enumerate_tandem(n, default_cap())?.len();
        out.push(check(format!("baxter n={n}"), bb == bt, format!("brute {bb}, tandem walks {bt}")));
        if n >= 3 {
            let sb = count_square_brute(n, default_cap())?;
            let sf = count_square(n)?;
            out.push(check(format!("square n={n}"), BigUint::from(sb) == sf, format!("brute {sb}, formula {sf}")));
        }
        let gb = class(n, &[p("1423"), p("4123")])?.len();
        let gc = gt.level_total(n);
        out.push(check(format!("gentree1423 n={n}"), BigUint::from(gb) == gc, format!("brute {gb}, engine {gc}")));
    }
    Ok(out)
}

pub fn bijections(n_max: usize) -> Result<Vec<Check>> {
    let mut out = Vec::new();
    let rule = SuccessionRule::av1423_4123();
    for n in 1..=n_max {
        let cl: HashSet<Perm> = class(n, &[p("231")])?.into_iter().collect();
        let trees = enumerate_binary_trees(n);
        let img: HashSet<Perm> = trees.iter().map(binary_to_av231).collect();
        let back = trees.iter().all(|t| av231_to_binary(&binary_to_av231(t)).ok().as_ref() == Some(t));
        out.push(check(format!("av231 trees n={n}"), img == cl && img.len() == trees.len() && back, format!("{} trees", trees.len())));

        let cl: HashSet<Perm> = class(n, &[p("321")])?.into_iter().collect();
        let trees = enumerate_plane_trees(n + 1);
        let img: HashSet<Perm> = trees.iter().map(plane_tree_to_av321).collect();
        let back = trees.iter().all(|t| av321_to_plane_tree(&plane_tree_to_av321(t)).ok().as_ref() == Some(t));
        out.push(check(format!("av321 plane trees n={n}"), img == cl && img.len() == trees.len() && back, format!("{} trees", trees.len())));

        let all: Vec<Perm> = enumerate_all(n).collect();
        let ok = all.iter().all(|s| decompose(s).and_then(|t| compose(&t)).ok().as_ref() == Some(s));
        out.push(check(format!("canonical trees n={n}"), ok, format!("{} permutations", all.len())));

        let walks = enumerate_tandem(n, default_cap())?;
        let mut img = HashSet::new();
        let mut ok = true;
        for w in &walks {
            let m = theta(w)?;
            ok &= m.bow()? == *w;
            img.insert(m.bobp()?);
        }
        let cl: HashSet<Perm> = enumerate_class(n, default_cap(), is_baxter)?.into_iter().collect();
        out.push(check(format!("bipolar n={n}"), ok && img == cl && img.len() == walks.len(), format!("{} walks", walks.len())));

        let paths = enumerate_paths(&rule, n, usize::MAX)?;
        let mut img = HashSet::new();
        let mut ok = true;
        for path in &paths {
            let s = realize_1423_4123(path)?;
            ok &= read_path_1423_4123(&s)? == *path;
            img.insert(s);
        }
        let cl: HashSet<Perm> = class(n, &[p("1423"), p("4123")])?.into_iter().collect();
        out.push(check(format!("gentree1423 n={n}"), ok && img == cl && img.len() == paths.len(), format!("{} paths", paths.len())));
    }
    Ok(out)
}

pub fn diagram(n: usize, reps: usize, seed: u64) -> Result<Vec<Check>> {
    let mode = if n <= 7 { DiagramMode::Exhaustive } else { DiagramMode::Sampled { count: reps, seed } };
    Ok(vec![match diagram_check(n, mode) {
        Ok(r) => check(format!("diagram n={n}"), true, format!("{} orientations commute", r.checked)),
        Err(e) => check(format!("diagram n={n}"), false, e.to_string()),
    }])
}

pub fn square(n: usize, reps: usize, delta_exp: f64, seed: u64) -> Result<Vec<Check>> {
    let mut rng = substream(seed, "verify-square", n as u64);
    let mut ok = 0;
    let mut first_err = String::new();
    for _ in 0..reps {
        let pair = balanced_regular_pair(n, delta_exp, &mut rng)?;
        match reconstruct_rho(&pair, delta_exp).and_then(|r| project_phi(&r.perm)) {
            Ok(back) if back == pair => ok += 1,
            Ok(_) => first_err = format!("φ(ρ({pair})) differs"),
            Err(e) => first_err = e.to_string(),
        }
    }
    Ok(vec![check(format!("phi∘rho n={n}"), ok == reps, format!("{ok}/{reps} identities {first_err}").trim_end().to_string())])
}

pub fn polytope(k: usize) -> Result<Vec<Check>> {
    let poly = CyclePolytope::new(k)?;
    let want = (factorial(k) - factorial(k - 1)) as usize;
    let d = poly.dimension();
    let dfs = simple_cycles_dfs(&poly.graph, DEFAULT_CYCLE_CEILING)?;
    Ok(vec![
        check(format!("degrees k={k}"), poly.graph.check_degrees(), format!("{} vertices, {} edges", poly.graph.vertices.len(), poly.graph.edges.len())),
        check(format!("cycles k={k}"), dfs == poly.cycles, format!("{} simple cycles, both searches agree", poly.cycles.len())),
        check(format!("dimension k={k}"), d == want, format!("dimension {d}, expected {want}")),
    ])
}

pub fn local(n: usize, reps: usize, seed: u64) -> Result<Vec<Check>> {
    let mut out = Vec::new();
    let mut bad = 0;
    for r in 0..reps {
        let mut rng = substream(seed, "verify-local", r as u64);
        let mut v: Vec<usize> = (1..=n).collect();
        v.shuffle(&mut rng);
        let s = Perm::new(v)?;
        for h in 0..=3 {
            let hist = restriction_histogram(&s, h);
            for pi in enumerate_all(2 * h + 1) {
                let root = RootedPerm::new(pi.clone(), h + 1)?;
                if hist.counts.get(&root).copied().unwrap_or(0) != cocc(&pi, &s) {
                    bad += 1;
                }
            }
        }
    }
    out.push(check(format!("interior restrictions n={n}"), bad == 0, format!("{reps} permutations, h ≤ 3, {bad} mismatches")));
    for h in 0..=3 {
        let law = exact_law(LimitVariant::Av321, h);
        let m = 2 * h + 1;
        let mut ok = true;
        for pi in enumerate_all(m) {
            let got = law.get(&RootedPerm::new(pi.clone(), h + 1)?).copied().unwrap_or_default();
            let inv_desc = (1..m).filter(|&v| pi.inverse().at(v) > pi.inverse().at(v + 1)).count();
            let want = if pi == Perm::identity(m) {
                Ratio::new(m as u64 + 1, 1 << m)
            } else if inv_desc == 1 {
                Ratio::new(1, 1 << m)
            } else {
                Ratio::new(0, 1)
            };
            ok &= got == want;
        }
        out.push(check(format!("av321 limit law h={h}"), ok, format!("{} windows", factorial(m))));
    }
    Ok(out)
}

/// `(family, pattern, limit)` for the concentration checks.
pub const CONCENTRATION_TARGETS: [(&str, &str, f64); 9] = [
    ("av231", "12", 0.5),
    ("av231", "123", 0.25),
    ("av231", "132", 0.25),
    ("av231", "213", 0.125),
    ("av231", "312", 0.125),
    ("av231", "321", 0.25),
    ("av321", "12", 0.75),
    ("av321", "21", 0.25),
    ("av321", "123", 0.5),
];

pub fn concentration(n: usize, reps: usize, seed: u64) -> Result<Vec<Check>> {
    let mut out = Vec::new();
    for fam in ["av231", "av321"] {
        let targets: Vec<_> = CONCENTRATION_TARGETS.iter().filter(|t| t.0 == fam).collect();
        let pis: Vec<Perm> = targets.iter().map(|t| p(t.1)).collect();
        let rows = if fam == "av231" {
            concentration_experiment(fam, sample_av231, &pis, n, reps, seed)?
        } else {
            concentration_experiment(fam, sample_av321, &pis, n, reps, seed)?
        };
        for (row, t) in rows.iter().zip(&targets) {
            let sd = row.variance.sqrt();
            let pass = (row.mean - t.2).abs() <= 0.02 && sd <= 0.02;
            out.push(check(format!("{fam} {}", t.1), pass, format!("mean {:.4} (limit {}), sd {:.4}, n={n}, reps={reps}", row.mean, t.2, sd)));
        }
    }
    Ok(out)
}
