//! Acceptance run: one PASS/FAIL line per criterion, nonzero exit on failure.

use std::process::ExitCode;
use std::time::Instant;

use fibra2::fiber::{classify_fiber, classify_fiber_v, Family, FiberKind, FiberParams};
use fibra2::field::parse::{parse_ratfunc, parse_x_poly};
use fibra2::field::{FieldDescriptor, GfField, RatFunc};
use fibra2::inseparable::genus_inseparable;
use fibra2::model::{InseparableNormalForm, SeparableNormalForm};
use fibra2::sample::DEFAULT_SEED;
use fibra2::separable::{discriminant_delta, genus_separable, is_geometrically_elliptic};
use fibra2::series::{genus_via_rosenlicht, AnyNormalForm};
use fibra2::verify::SuiteReport;
use fibra2::verify::{consistency, fiber_oracles, genus_equivalence, j_crosscheck, series_residuals, transformations};

struct Outcome {
    pass: bool,
    detail: String,
}

fn from_reports(reports: &[SuiteReport], limit: Option<f64>) -> Outcome {
    let secs: f64 = reports.iter().map(|r| r.seconds).sum();
    let mut pass = reports.iter().all(|r| r.passed());
    let mut detail: Vec<String> = reports.iter().map(|r| r.to_string()).collect();
    if let Some(l) = limit {
        if secs >= l {
            pass = false;
            detail.push(format!("took {secs:.1}s, limit {l}s"));
        }
    }
    Outcome { pass, detail: detail.join("; ") }
}

fn err(e: fibra2::Error) -> Outcome {
    Outcome { pass: false, detail: format!("error: {e}") }
}

fn criterion_1_2() -> (Outcome, Outcome) {
    let mut oracle = Vec::new();
    let mut books = Vec::new();
    for k in [1, 2] {
        match fiber_oracles(k, false) {
            Ok(mut v) => {
                books.push(v.pop().unwrap());
                oracle.extend(v);
            }
            Err(e) => return (err(e.clone()), err(e)),
        }
    }
    (from_reports(&oracle, Some(60.0)), from_reports(&books, None))
}

fn sep(k: u32, t: [&str; 5]) -> SeparableNormalForm {
    let f = GfField::new(k).unwrap();
    SeparableNormalForm::new(t.map(|s| parse_ratfunc(s, f).unwrap()), FieldDescriptor::rational(f))
}

fn insep(k: u32, src: &str) -> InseparableNormalForm {
    let f = GfField::new(k).unwrap();
    let mut b: [RatFunc; 7] = std::array::from_fn(|_| RatFunc::zero(f));
    for (i, c) in parse_x_poly(src, f).unwrap().into_iter().enumerate() {
        b[i] = c;
    }
    InseparableNormalForm { b, base: FieldDescriptor::rational(f) }
}

fn desk_examples() -> fibra2::Result<Vec<(String, bool)>> {
    let mut out = Vec::new();
    let nf = insep(1, "x^5 + s");
    let g = genus_inseparable(&nf)?;
    let g2 = genus_via_rosenlicht(&AnyNormalForm::Inseparable(nf))?;
    out.push(("y^2 = x^5 + s: genus 2, geometrically rational".into(), (g.g, g.g_bar, g2.g) == (2, 0, 2)));

    let nf = sep(1, ["1", "0", "0", "0", "s"]);
    let g = genus_separable(&nf)?;
    let j1 = discriminant_delta(&nf).j1;
    let ok = g.g == 2 && g.g_bar == 1 && is_geometrically_elliptic(&nf) && j1.is_some_and(|j| j.is_zero());
    out.push(("(1,0,0,0,s): genus 2, geometrically elliptic, j1 = 0".into(), ok));

    let nf = sep(1, ["1", "0", "0", "0", "s^2"]);
    out.push(("(1,0,0,0,s^2): genus 1".into(), genus_separable(&nf)?.g == 1));

    let f = GfField::new(1)?;
    let (o, z) = (f.one(), f.zero());
    let kind = classify_fiber(&[o, o, o, o, o]).kind;
    out.push(("(1,1,1,1,1) over GF(2): RationalTacnode".into(), kind == FiberKind::RationalTacnode));
    let kind = classify_fiber(&[o, z, z, o, z]).kind;
    out.push(("(1,0,0,1,0) over GF(2): RamphoidCusp".into(), kind == FiberKind::RamphoidCusp));
    let v = FiberParams::new(Family::V, vec![z, z, z, o, z, z])?;
    let kind = classify_fiber_v(&v)?.kind;
    out.push(("V with b3 = 1, others 0: TwoCusps".into(), kind == FiberKind::TwoCusps));
    Ok(out)
}

fn criterion_7() -> Outcome {
    match desk_examples() {
        Ok(v) => {
            let bad: Vec<&str> = v.iter().filter(|(_, ok)| !ok).map(|(s, _)| s.as_str()).collect();
            let detail =
                if bad.is_empty() { format!("{} examples", v.len()) } else { format!("mismatch: {}", bad.join("; ")) };
            Outcome { pass: bad.is_empty(), detail }
        }
        Err(e) => err(e),
    }
}

fn single(r: fibra2::Result<SuiteReport>, limit: Option<f64>) -> Outcome {
    match r {
        Ok(r) => from_reports(&[r], limit),
        Err(e) => err(e),
    }
}

fn main() -> ExitCode {
    let seed = DEFAULT_SEED;
    let start = Instant::now();
    let (c1, c2) = criterion_1_2();
    let results = [
        ("exhaustive fiber-oracle agreement over GF(2) and GF(4)", c1),
        ("Hironaka/Rosenlicht bookkeeping on integral fibers", c2),
        ("j-invariant against the Weierstrass model, GF(256)", single(j_crosscheck(8, 1000, seed), Some(10.0))),
        ("genus predicates against the series engine", single(genus_equivalence(500, seed), Some(120.0))),
        ("series residuals, every branch", single(series_residuals(100, 12, 10, seed), None)),
        ("genus-one exception consistency", single(consistency(200, seed), None)),
        ("desk examples", criterion_7()),
        ("transformation invariance", single(transformations(200, seed), None)),
    ];
    let mut all = true;
    for (i, (name, o)) in results.iter().enumerate() {
        all &= o.pass;
        println!("criterion {}: {} {name}: {}", i + 1, if o.pass { "PASS" } else { "FAIL" }, o.detail);
    }
    println!("acceptance: seed {seed}, {:.1}s", start.elapsed().as_secs_f64());
    if all {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
