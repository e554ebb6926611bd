use std::fmt::Write as _;

use anyhow::{Context, Result};
use permlab_baxter::{wcp, CoalescentWalk, Walk};
use permlab_perm::Perm;

const CELL: f64 = 20.0;
const PAD: f64 = 10.0;

fn header(w: f64, h: f64) -> String {
    format!("<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{w}\" height=\"{h}\" viewBox=\"0 0 {w} {h}\">\n")
}

/// Reads one-line text or the JSON form.
pub fn read_perm(s: &str) -> Result<Perm> {
    let t = s.trim();
    if t.starts_with('{') {
        Ok(Perm::from_json(t)?)
    } else {
        Ok(Perm::parse(t)?)
    }
}

/// Dots at `(i, σ(i))` in an `n × n` frame, `y` upward.
pub fn perm_svg(p: &Perm) -> String {
    let n = p.len() as f64;
    let side = n * CELL + 2.0 * PAD;
    let mut s = header(side, side);
    let _ = writeln!(s, "<rect class=\"frame\" x=\"{PAD}\" y=\"{PAD}\" width=\"{}\" height=\"{}\" fill=\"none\" stroke=\"black\"/>", n * CELL, n * CELL);
    for (i, v) in p.points() {
        let cx = PAD + (i as f64 - 0.5) * CELL;
        let cy = PAD + (n - v as f64 + 0.5) * CELL;
        let _ = writeln!(s, "<circle class=\"dot\" cx=\"{cx}\" cy=\"{cy}\" r=\"{}\" fill=\"black\"/>", CELL / 4.0);
    }
    s + "</svg>\n"
}

fn polyline(s: &mut String, class: &str, color: &str, pts: impl Iterator<Item = (f64, f64)>) {
    let coords: Vec<String> = pts.map(|(x, y)| format!("{x},{y}")).collect();
    let _ = writeln!(s, "<polyline class=\"{class}\" points=\"{}\" fill=\"none\" stroke=\"{color}\"/>", coords.join(" "));
}

/// The two coordinates of the walk against time.
pub fn walk_svg(w: &Walk) -> String {
    let len = w.points.len().max(1);
    let lo = w.points.iter().flat_map(|&(x, y)| [x, y]).min().unwrap_or(0).min(0);
    let hi = w.points.iter().flat_map(|&(x, y)| [x, y]).max().unwrap_or(0).max(0);
    let (wd, ht) = ((len - 1) as f64 * CELL + 2.0 * PAD, (hi - lo) as f64 * CELL + 2.0 * PAD);
    let y = |v: i64| PAD + (hi - v) as f64 * CELL;
    let mut s = header(wd, ht);
    polyline(&mut s, "x", "red", w.points.iter().enumerate().map(|(t, p)| (PAD + t as f64 * CELL, y(p.0))));
    polyline(&mut s, "y", "blue", w.points.iter().enumerate().map(|(t, p)| (PAD + t as f64 * CELL, y(p.1))));
    s + "</svg>\n"
}

/// Every trajectory `Z^{(i)}` from its start time.
pub fn coalescent_svg(z: &CoalescentWalk) -> String {
    let n = z.len();
    let all = (1..=n).flat_map(|i| z.trajectory(i).iter().copied());
    let (lo, hi) = all.fold((0, 0), |(a, b), v| (a.min(v), b.max(v)));
    let (wd, ht) = ((n.max(2) - 1) as f64 * CELL + 2.0 * PAD, (hi - lo) as f64 * CELL + 2.0 * PAD);
    let mut s = header(wd, ht);
    for i in 1..=n {
        let pts = z.trajectory(i).iter().enumerate().map(|(k, &v)| (PAD + (i - 1 + k) as f64 * CELL, PAD + (hi - v) as f64 * CELL));
        polyline(&mut s, "trajectory", "black", pts);
    }
    s + "</svg>\n"
}

pub fn render(kind: crate::args::RenderKind, input: &str) -> Result<String> {
    use crate::args::RenderKind::*;
    Ok(match kind {
        Perm => perm_svg(&read_perm(input).context("reading permutation")?),
        Walk => walk_svg(&permlab_baxter::Walk::from_json(input.trim()).context("reading walk")?),
        Coalescent => {
            let w = permlab_baxter::Walk::from_json(input.trim()).context("reading walk")?;
            coalescent_svg(&wcp(&w)?)
        }
    })
}
