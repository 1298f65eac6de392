//! Command line front end.

use std::io::Write;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use crate::error::{Error, Result};
use crate::fiber::{classify_fiber_sub, Family, FiberClass, FiberParams, FiberRow};
use crate::field::parse::{parse_binary_poly, parse_gf, parse_ratfunc, parse_x_poly};
use crate::field::{Field, FieldDescriptor, GfElem, GfField, RatFunc};
use crate::inseparable::inseparable_report;
use crate::model::{
    reduce_to_inseparable_normal_form, reduce_to_separable_normal_form, HyperellipticModel, InseparableNormalForm,
    NormalFormKind, NormalFormOutcome, SeparabilityKind, SeparableNormalForm,
};
use crate::sample::DEFAULT_SEED;
use crate::separable::{genus_separable, separable_report};
use crate::verify::{run_suite, Suite, VerifyOptions};

pub const DEFAULT_CAP: u128 = 1_000_000;
pub const CAP_ENV: &str = "FIBRA2_CAP";

#[derive(Parser, Debug)]
#[command(
    name = "fibra2",
    version,
    about = "Genus and fiber classification for genus-2 fibrations in characteristic 2"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Classify a closed fiber or a function field.
    Classify {
        #[command(subcommand)]
        what: ClassifyCommand,
    },
    /// Classify every fiber of a parameter grid.
    Sweep(SweepArgs),
    /// Run the cross-check suites.
    Verify(VerifyArgs),
    /// Reduce a model `y^2 + a(x) y + b(x) = 0` to normal form.
    NormalForm(NormalFormArgs),
}

#[derive(Args, Debug, Clone)]
pub struct FieldArgs {
    /// Degree k of the constant field GF(2^k).
    #[arg(long, default_value_t = 1)]
    pub k: u32,
    /// Defining polynomial of GF(2^k) in g, e.g. "g^2+g+1".
    #[arg(long)]
    pub modulus: Option<String>,
}

impl FieldArgs {
    pub fn field(&self) -> Result<GfField> {
        match &self.modulus {
            Some(m) => GfField::with_modulus(self.k, parse_binary_poly(m, 'g')?),
            None => GfField::new(self.k),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Subcommand, Debug)]
pub enum ClassifyCommand {
    /// A fiber of the family Z, X, Y or V over GF(2^k).
    Fiber {
        #[arg(long, default_value = "Z")]
        family: String,
        #[command(flatten)]
        field: FieldArgs,
        /// Comma-separated coefficients, e.g. "0,1,g,0,g+1".
        #[arg(long)]
        params: String,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// A function field over GF(2^k)(s).
    Field(FieldClassifyArgs),
}

#[derive(Args, Debug)]
pub struct FieldClassifyArgs {
    #[command(flatten)]
    pub field: FieldArgs,
    /// Separable normal form given by a0, a2, b0, b4, b6.
    #[arg(long, conflicts_with_all = ["insep", "model"])]
    pub sep: bool,
    /// Inseparable normal form given by b.
    #[arg(long, conflicts_with = "model")]
    pub insep: bool,
    /// Any model "y^2 + a(x)*y + b(x) = 0"; it is reduced first.
    #[arg(long)]
    pub model: Option<String>,
    #[arg(long, default_value = "0")]
    pub a0: String,
    #[arg(long, default_value = "0")]
    pub a2: String,
    #[arg(long, default_value = "0")]
    pub b0: String,
    #[arg(long, default_value = "0")]
    pub b4: String,
    #[arg(long, default_value = "0")]
    pub b6: String,
    /// b(x) for --insep, with x^5 coefficient 1.
    #[arg(long)]
    pub b: Option<String>,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
}

#[derive(Args, Debug)]
pub struct SweepArgs {
    #[arg(long, default_value = "Z")]
    pub family: String,
    #[command(flatten)]
    pub field: FieldArgs,
    /// Restrict a coordinate to a list, e.g. "b6=0,1,g". Unrestricted
    /// coordinates run over all of GF(2^k).
    #[arg(long = "set")]
    pub set: Vec<String>,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    #[arg(long, default_value = "all")]
    pub suite: String,
    #[arg(long)]
    pub k: Option<u32>,
    #[arg(long)]
    pub samples: Option<usize>,
    #[arg(long, default_value_t = DEFAULT_SEED)]
    pub seed: u64,
}

#[derive(Args, Debug)]
pub struct NormalFormArgs {
    #[command(flatten)]
    pub field: FieldArgs,
    #[arg(long)]
    pub model: String,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
}

/// Parses arguments and runs; returns the process exit code.
pub fn main_with<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = if e.use_stderr() { write!(err, "{e}") } else { write!(out, "{e}") };
            return code;
        }
    };
    match run(&cli, out) {
        Ok(code) => code,
        // downstream closed the pipe (e.g. `| head`)
        Err(Error::Invalid(m)) if m.ends_with(BROKEN_PIPE) => 0,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}

const BROKEN_PIPE: &str = "(broken pipe)";

fn io(e: std::io::Error) -> Error {
    if e.kind() == std::io::ErrorKind::BrokenPipe {
        return Error::Invalid(format!("write failed {BROKEN_PIPE}"));
    }
    Error::Invalid(format!("write failed: {e}"))
}

pub fn run(cli: &Cli, out: &mut dyn Write) -> Result<i32> {
    match &cli.command {
        Command::Classify { what: ClassifyCommand::Fiber { family, field, params, format } } => {
            let gf = field.field()?;
            let p = parse_params(Family::parse(family)?, params, gf)?;
            let c = classify_fiber_sub(&p)?;
            write_fiber(out, &p, &c, *format)?;
            Ok(0)
        }
        Command::Classify { what: ClassifyCommand::Field(a) } => classify_field(a, out),
        Command::Sweep(a) => sweep(a, out),
        Command::Verify(a) => verify(a, out),
        Command::NormalForm(a) => normal_form(a, out),
    }
}

pub fn parse_params(family: Family, src: &str, field: GfField) -> Result<FiberParams> {
    let mut v = Vec::new();
    let mut offset = 0;
    for part in src.split(',') {
        let x = parse_gf(part.trim(), field).map_err(|e| match e {
            Error::Parse { pos, msg } => Error::parse(offset + pos, msg),
            e => e,
        })?;
        v.push(x);
        offset += part.len() + 1;
    }
    FiberParams::new(family, v)
}

fn write_fiber(out: &mut dyn Write, p: &FiberParams, c: &FiberClass, format: Format) -> Result<()> {
    match format {
        Format::Text => {
            let j = c.j.map_or(String::new(), |j| format!(" j={j}"));
            writeln!(out, "{}{j}", c.kind).map_err(io)?;
            if !c.integral {
                writeln!(out, "  non-integral").map_err(io)?;
            }
            for r in &c.points {
                let int = r.intersection.map_or(String::new(), |i| format!(" intersection={i}"));
                writeln!(
                    out,
                    "  {} {} delta={} branches={} mult={}{int}",
                    r.point,
                    r.local.tag(),
                    r.delta,
                    r.branches,
                    r.multiplicity
                )
                .map_err(io)?;
            }
        }
        Format::Json => {
            let row = FiberRow::new(p)?;
            writeln!(out, "{}", serde_json::to_string_pretty(&row).unwrap()).map_err(io)?;
        }
        Format::Csv => {
            writeln!(out, "{}", FiberRow::CSV_HEADER).map_err(io)?;
            writeln!(out, "{}", FiberRow::new(p)?.to_csv()).map_err(io)?;
        }
    }
    Ok(())
}

fn separable_text(nf: &SeparableNormalForm) -> Result<String> {
    let r = separable_report(nf);
    let mut s = format!(
        "separable normal form (a0, a2, b0, b4, b6) = ({})\n",
        nf.tuple().iter().map(|c| c.to_string()).collect::<Vec<_>>().join(", ")
    );
    s += &format!("Delta = {}\nDelta2 = {}\n", r.delta, r.delta2);
    if !r.geometrically_elliptic {
        s += "not geometrically elliptic (Delta = 0)\n";
        return Ok(s);
    }
    let g = genus_separable(nf)?;
    s += &format!("j1 = {}\njbar = {}\n", r.j1, r.jbar);
    s += &format!("genus {}, geometrically elliptic (genus_bar 1)\n", g.g);
    if let (Some(case), Some(valid)) = (r.case, r.valid) {
        s += &format!("case {} ({})\n", case.tag(), if valid { "genus 2" } else { "genus-one exception" });
    }
    for p in &g.prime_degrees {
        s += &format!("  prime {}: delta = {}, residue field {}\n", p.prime, p.delta, p.residue);
    }
    Ok(s)
}

fn inseparable_text(nf: &InseparableNormalForm) -> Result<String> {
    let r = inseparable_report(nf)?;
    let mut s = format!("inseparable normal form {}\ncase {}\n", nf.to_model().to_text(), r.case.tag());
    s += &format!("genus {}, geometrically rational (genus_bar 0)\n", r.genus);
    if r.extension_degree > 1 {
        s += &format!("primes computed over GF(2^{})\n", nf.base.gf.degree() * r.extension_degree);
    }
    for p in &r.prime_degrees {
        s += &format!("  prime {}: delta = {}, residue field {}\n", p.prime, p.delta, p.residue);
    }
    Ok(s)
}

fn field_json(base: FieldDescriptor) -> serde_json::Value {
    serde_json::to_value(base.to_json()).unwrap()
}

fn nf_output(kind: &NormalFormKind, format: Format) -> Result<String> {
    Ok(match (kind, format) {
        (NormalFormKind::Separable(nf), Format::Json) => {
            let r = separable_report(nf);
            let g = genus_separable(nf).ok();
            json!({
                "field": field_json(nf.base),
                "type": "separable",
                "normal_form": nf.tuple().iter().map(|c| c.to_string()).collect::<Vec<_>>(),
                "report": r,
                "prime_degrees": g.map(|g| g.prime_degrees),
            })
            .to_string()
                + "\n"
        }
        (NormalFormKind::Inseparable(nf), Format::Json) => {
            json!({
                "field": field_json(nf.base),
                "type": "inseparable",
                "normal_form": nf.b.iter().map(|c| c.to_string()).collect::<Vec<_>>(),
                "report": inseparable_report(nf)?,
            })
            .to_string()
                + "\n"
        }
        (NormalFormKind::Separable(nf), _) => separable_text(nf)?,
        (NormalFormKind::Inseparable(nf), _) => inseparable_text(nf)?,
        (NormalFormKind::Obstructed { reason, residual, model }, _) => {
            let res = residual.as_ref().map_or(String::new(), |r| format!(" (residual {r})"));
            return Err(Error::Obstructed(format!("{reason}{res}; partial model {}", model.to_text())));
        }
    })
}

fn reduce(m: &HyperellipticModel) -> Result<NormalFormOutcome> {
    match m.separability_kind()? {
        SeparabilityKind::SeparableType => reduce_to_separable_normal_form(m),
        SeparabilityKind::InseparableType => reduce_to_inseparable_normal_form(m),
    }
}

fn classify_field(a: &FieldClassifyArgs, out: &mut dyn Write) -> Result<i32> {
    let gf = a.field.field()?;
    let base = FieldDescriptor::rational(gf);
    let kind = if let Some(src) = &a.model {
        reduce(&HyperellipticModel::parse_text(src, base)?)?.kind
    } else if a.insep {
        let src = a.b.as_deref().ok_or_else(|| Error::Invalid("--insep needs --b".into()))?;
        let coeffs = parse_x_poly(src, gf)?;
        if coeffs.len() > 7 {
            return Err(Error::Invalid("b has degree above 6".into()));
        }
        let mut b: [RatFunc; 7] = std::array::from_fn(|_| RatFunc::zero(gf));
        for (i, c) in coeffs.into_iter().enumerate() {
            b[i] = c;
        }
        let nf = InseparableNormalForm { b, base };
        if !nf.b[5].is_one_elem() {
            // not normalized: reduce the model instead
            reduce(&nf.to_model())?.kind
        } else {
            NormalFormKind::Inseparable(nf)
        }
    } else if a.sep {
        let c = [&a.a0, &a.a2, &a.b0, &a.b4, &a.b6].map(|s| parse_ratfunc(s, gf));
        let [a0, a2, b0, b4, b6] = c;
        NormalFormKind::Separable(SeparableNormalForm::new([a0?, a2?, b0?, b4?, b6?], base))
    } else {
        return Err(Error::Invalid("give one of --sep, --insep or --model".into()));
    };
    write!(out, "{}", nf_output(&kind, a.format)?).map_err(io)?;
    Ok(0)
}

fn normal_form(a: &NormalFormArgs, out: &mut dyn Write) -> Result<i32> {
    let base = FieldDescriptor::rational(a.field.field()?);
    let m = HyperellipticModel::parse_text(&a.model, base)?;
    let outcome = reduce(&m)?;
    let t = &outcome.transformation;
    let text = |v: &[RatFunc]| v.iter().map(|c| c.to_string()).collect::<Vec<_>>();
    match (&outcome.kind, a.format) {
        (NormalFormKind::Obstructed { reason, residual, model }, Format::Json) => writeln!(
            out,
            "{}",
            json!({"field": field_json(base), "type": "obstructed", "reason": reason,
                   "residual": residual.as_ref().map(|r| r.to_string()), "model": model.to_text(),
                   "mobius": text(&t.mobius), "beta": t.beta.to_string(), "gamma": text(&t.gamma)})
        ),
        (NormalFormKind::Obstructed { reason, residual, model }, _) => writeln!(
            out,
            "obstructed: {reason}\nresidual = {}\n{}\nmobius = [{}]\nbeta = {}\ngamma = [{}]",
            residual.as_ref().map_or("-".into(), |r| r.to_string()),
            model.to_text(),
            text(&t.mobius).join(", "),
            t.beta,
            text(&t.gamma).join(", ")
        ),
        (NormalFormKind::Separable(nf), Format::Json) => writeln!(
            out,
            "{}",
            json!({"field": field_json(base), "type": "separable", "model": nf.to_model().to_text(),
                   "normal_form": text(&nf.tuple()), "mobius": text(&t.mobius), "beta": t.beta.to_string(),
                   "gamma": text(&t.gamma)})
        ),
        (NormalFormKind::Inseparable(nf), Format::Json) => writeln!(
            out,
            "{}",
            json!({"field": field_json(base), "type": "inseparable", "model": nf.to_model().to_text(),
                   "normal_form": text(&nf.b), "mobius": text(&t.mobius), "beta": t.beta.to_string(),
                   "gamma": text(&t.gamma)})
        ),
        (NormalFormKind::Separable(nf), _) => writeln!(
            out,
            "{}\nmobius = [{}]\nbeta = {}\ngamma = [{}]",
            nf.to_model().to_text(),
            text(&t.mobius).join(", "),
            t.beta,
            text(&t.gamma).join(", ")
        ),
        (NormalFormKind::Inseparable(nf), _) => writeln!(
            out,
            "{}\nmobius = [{}]\nbeta = {}\ngamma = [{}]",
            nf.to_model().to_text(),
            text(&t.mobius).join(", "),
            t.beta,
            text(&t.gamma).join(", ")
        ),
    }
    .map_err(io)?;
    Ok(0)
}

fn sweep_cap() -> Result<u128> {
    match std::env::var(CAP_ENV) {
        Ok(v) => v.trim().parse().map_err(|_| Error::Invalid(format!("{CAP_ENV}={v:?} is not a number"))),
        Err(_) => Ok(DEFAULT_CAP),
    }
}

/// Per-coordinate value lists of a sweep, in coordinate order.
pub fn sweep_axes(family: Family, field: GfField, sets: &[String]) -> Result<Vec<Vec<GfElem>>> {
    let names = family.coordinate_names();
    let all: Vec<GfElem> = field.elements().collect();
    let mut axes: Vec<Vec<GfElem>> = vec![all; names.len()];
    for s in sets {
        let (name, vals) =
            s.split_once('=').ok_or_else(|| Error::Invalid(format!("--set {s:?}: expected name=v1,v2,...")))?;
        let i = names
            .iter()
            .position(|n| *n == name.trim())
            .ok_or_else(|| Error::Invalid(format!("family {family} has no coordinate {name:?}")))?;
        let mut v = Vec::new();
        for part in vals.split(',') {
            v.push(parse_gf(part.trim(), field)?);
        }
        v.sort();
        v.dedup();
        axes[i] = v;
    }
    Ok(axes)
}

fn sweep(a: &SweepArgs, out: &mut dyn Write) -> Result<i32> {
    let field = a.field.field()?;
    let family = Family::parse(&a.family)?;
    let axes = sweep_axes(family, field, &a.set)?;
    let count = axes.iter().map(|v| v.len() as u128).product::<u128>();
    let cap = sweep_cap()?;
    if count > cap {
        return Err(Error::CapExceeded { count, cap });
    }
    let version = env!("CARGO_PKG_VERSION");
    let mut rows = Vec::with_capacity(count as usize);
    // mixed-radix counter over the axes, last coordinate fastest
    let lens: Vec<u64> = axes.iter().map(|v| v.len() as u64).collect();
    for mut n in 0..count as u64 {
        let mut t = vec![field.zero(); axes.len()];
        for i in (0..axes.len()).rev() {
            t[i] = axes[i][(n % lens[i]) as usize];
            n /= lens[i];
        }
        rows.push(FiberRow::new(&FiberParams::new(family, t)?)?);
    }
    match a.format {
        Format::Json => {
            let v = json!({
                "version": version,
                "field": field.name(),
                "modulus": field.modulus_string(),
                "family": family,
                "coordinates": family.coordinate_names(),
                "rows": rows,
            });
            writeln!(out, "{}", serde_json::to_string_pretty(&v).unwrap()).map_err(io)?;
        }
        _ => {
            writeln!(
                out,
                "# fibra2 {version} family={family} field=GF(2^{}) modulus={} coordinates={}",
                field.degree(),
                field.modulus_string(),
                family.coordinate_names().join(";")
            )
            .map_err(io)?;
            writeln!(out, "{}", FiberRow::CSV_HEADER).map_err(io)?;
            for r in &rows {
                writeln!(out, "{}", r.to_csv()).map_err(io)?;
            }
        }
    }
    Ok(0)
}

fn verify(a: &VerifyArgs, out: &mut dyn Write) -> Result<i32> {
    let suite = Suite::parse(&a.suite)?;
    writeln!(out, "# fibra2 {} verify suite={} seed={}", env!("CARGO_PKG_VERSION"), a.suite, a.seed).map_err(io)?;
    let reports = run_suite(suite, &VerifyOptions { k: a.k, samples: a.samples, seed: a.seed })?;
    let mut ok = true;
    for r in &reports {
        writeln!(out, "{r}").map_err(io)?;
        ok &= r.passed();
    }
    writeln!(out, "{}", if ok { "all suites passed" } else { "some suites failed" }).map_err(io)?;
    Ok(if ok { 0 } else { 1 })
}
