//! The `permlab` command-line front end.

pub mod args;
pub mod family;
pub mod render;
pub mod verify;

use std::ffi::OsString;
use std::io::{Read, Write};
use std::path::Path;

use anyhow::{bail, Context, Result};
use clap::Parser;
use permlab_baxter::{baxter_of_walk, diagram_check, sample_tandem, skew_permuton_simulate, DiagramMode, DriveMode, SkewDriveConfig, TandemSampler};
use permlab_feasible::CyclePolytope;
use permlab_gentree::{count_table, realize_1423_4123, Children, PathSampler};
use permlab_local::concentration_experiment;
use permlab_perm::rng::substream;
use permlab_perm::{is_baxter, Perm};
use serde_json::json;

use args::{BaxterCommand, Cli, Command, Format, GentreeCommand};
use family::{load_rule, Draw, Prepared, DEFAULT_SKEW_CAP};

/// Exit status: 0 success, 1 failed verification, 2 usage or runtime error.
pub fn run<I, T>(argv: I, out: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind::*;
            return match e.kind() {
                DisplayHelp | DisplayVersion => {
                    let _ = write!(out, "{}", e.render());
                    0
                }
                _ => {
                    eprint!("{}", e.render());
                    2
                }
            };
        }
    };
    match execute(&cli, out) {
        Ok(true) => 0,
        Ok(false) => 1,
        Err(e) => {
            eprintln!("error: {e:#}");
            2
        }
    }
}

fn emit(path: Option<&Path>, out: &mut dyn Write, bytes: &[u8]) -> Result<()> {
    match path {
        Some(p) => std::fs::write(p, bytes).with_context(|| format!("writing {}", p.display())),
        None => Ok(out.write_all(bytes)?),
    }
}

fn read_input(path: &Path) -> Result<String> {
    if path == Path::new("-") {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s)?;
        Ok(s)
    } else {
        std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
    }
}

fn perm_json(p: &Perm) -> serde_json::Value {
    json!({"n": p.len(), "values": p.values()})
}

/// Renders draws in `format`.
pub fn format_draws(draws: &[Draw], format: Format) -> Result<Vec<u8>> {
    let mut buf = Vec::new();
    match format {
        Format::Text | Format::Json => {
            for d in draws {
                match (d, format) {
                    (Draw::Perm(p), Format::Text) => writeln!(buf, "{p}")?,
                    (Draw::Perm(p), _) => writeln!(buf, "{}", perm_json(p))?,
                    (Draw::Permuton(g), _) => writeln!(buf, "{}", g.to_json())?,
                }
            }
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(&mut buf);
            match draws.first() {
                Some(Draw::Permuton(_)) => w.write_record(["rep", "i", "j", "num", "den"])?,
                _ => w.write_record(["rep", "perm"])?,
            }
            for (r, d) in draws.iter().enumerate() {
                match d {
                    Draw::Perm(p) => w.write_record([r.to_string(), p.to_string()])?,
                    Draw::Permuton(g) => {
                        for &(i, j, m) in g.cells() {
                            w.write_record([r, i, j].map(|x| x.to_string()).into_iter().chain([m.to_string(), g.denom().to_string()]))?;
                        }
                    }
                }
            }
            w.flush()?;
        }
        Format::Svg => match draws {
            [Draw::Perm(p)] => buf.extend(render::perm_svg(p).into_bytes()),
            _ => bail!("svg output needs a single permutation"),
        },
    }
    Ok(buf)
}

fn execute(cli: &Cli, out: &mut dyn Write) -> Result<bool> {
    let jobs = cli.jobs.max(1);
    match &cli.command {
        Command::Sample(a) => {
            let prep = Prepared::new(a.family, a.n, &a.model)?;
            let draws = prep.draw_many(a.seed, a.reps, jobs)?;
            emit(a.out.as_deref(), out, &format_draws(&draws, a.format)?)?;
            Ok(true)
        }
        Command::Verify(a) => {
            let report = verify::run(a)?;
            let text = match a.format {
                Format::Json => report.json() + "\n",
                _ => report.text(),
            };
            out.write_all(text.as_bytes())?;
            Ok(report.pass())
        }
        Command::Render(a) => {
            let svg = render::render(a.kind, &read_input(&a.input)?)?;
            emit(a.out.as_deref(), out, svg.as_bytes())?;
            Ok(true)
        }
        Command::Baxter(BaxterCommand::Sample(a)) => {
            let exact = match a.cap {
                None => Some(TandemSampler::new(a.n)?),
                Some(_) => None,
            };
            let mut rows = Vec::with_capacity(a.reps);
            for r in 0..a.reps {
                let mut rng = substream(a.seed, "baxter", r as u64);
                let walk = match (&exact, a.cap) {
                    (Some(s), _) => s.sample(&mut rng),
                    (None, Some(cap)) => sample_tandem(a.n, cap, &mut rng)?,
                    _ => unreachable!(),
                };
                let perm = baxter_of_walk(&walk)?;
                if !is_baxter(&perm) {
                    bail!("sampled permutation {perm} is not Baxter");
                }
                rows.push((walk, perm));
            }
            let mut buf = Vec::new();
            match a.format {
                Format::Json => {
                    for (w, p) in &rows {
                        let walk: serde_json::Value = serde_json::from_str(&w.to_json())?;
                        writeln!(buf, "{}", json!({"walk": walk["points"], "perm": p.values()}))?;
                    }
                }
                f => {
                    let draws: Vec<Draw> = rows.into_iter().map(|(_, p)| Draw::Perm(p)).collect();
                    buf = format_draws(&draws, f)?;
                }
            }
            emit(a.out.as_deref(), out, &buf)?;
            Ok(true)
        }
        Command::Baxter(BaxterCommand::Check(a)) => {
            let mode = if a.n <= 7 { DiagramMode::Exhaustive } else { DiagramMode::Sampled { count: a.reps, seed: a.seed } };
            match diagram_check(a.n, mode) {
                Ok(r) => {
                    writeln!(out, "PASS diagram n={}: {} orientations commute", r.n, r.checked)?;
                    Ok(true)
                }
                Err(e) => {
                    writeln!(out, "FAIL diagram n={}: {e}", a.n)?;
                    Ok(false)
                }
            }
        }
        Command::Baxter(BaxterCommand::Skew(a)) => {
            let mut cfg = SkewDriveConfig::new(a.rho, a.q, a.n);
            cfg.mode = DriveMode::GaussianExcursion { cap: a.cap.unwrap_or(DEFAULT_SKEW_CAP) };
            cfg.grid = a.grid.unwrap_or(0);
            let o = skew_permuton_simulate(&cfg, &mut substream(a.seed, "skew-permuton", 0))?;
            let d = Draw::Permuton(o.grid);
            family::check(args::Family::SkewPermuton, &d)?;
            emit(a.out.as_deref(), out, &format_draws(&[d], Format::Json)?)?;
            Ok(true)
        }
        Command::Gentree(GentreeCommand::Count { rule, n_max }) => {
            let rule = load_rule(rule.as_deref())?;
            let t = count_table(&rule, *n_max)?;
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(["n", "count"])?;
            for n in 1..=*n_max {
                w.write_record([n.to_string(), t.level_total(n).to_string()])?;
            }
            out.write_all(&w.into_inner()?)?;
            Ok(true)
        }
        Command::Gentree(GentreeCommand::Sample { rule, n, seed }) => {
            let rule = load_rule(rule.as_deref())?;
            let path = PathSampler::new(&rule, *n)?.sample(&mut substream(*seed, "gentree", 0))?;
            writeln!(out, "{}", path.display(&rule))?;
            if matches!(rule.children, Children::Builtin(_)) {
                writeln!(out, "{}", realize_1423_4123(&path)?)?;
            }
            Ok(true)
        }
        Command::Polytope(a) => {
            let mut buf = Vec::new();
            CyclePolytope::new(a.k)?.write_csv(&mut buf)?;
            emit(a.out.as_deref(), out, &buf)?;
            Ok(true)
        }
        Command::Stats(a) => {
            let prep = Prepared::new(a.family, a.n, &a.model)?;
            let pats = if a.patterns.is_empty() { vec!["12".to_string()] } else { a.patterns.clone() };
            let pis = pats.iter().map(|s| Perm::parse(s)).collect::<Result<Vec<_>, _>>()?;
            let rows = concentration_experiment(a.family.name(), |_, rng| prep.draw_perm(rng), &pis, a.n, a.reps, a.seed)?;
            let mut buf = Vec::new();
            permlab_local::write_csv(&rows, &mut buf)?;
            emit(a.out.as_deref(), out, &buf)?;
            Ok(true)
        }
    }
}
