//! Cross-checks between the classifiers, the series engine and the fiber
//! oracles. Each suite returns a report with counts and the first failures.

use std::collections::BTreeSet;
use std::fmt;
use std::time::Instant;

use crate::error::{Error, Result};
use crate::fiber::{
    classify_fiber, classify_fiber_v, jacobian_singular_locus, jacobian_singular_locus_exhaustive, local_delta,
    weierstrass_j, ConePoint, Family, FiberClass, FiberKind, FiberParams, Locus,
};
use crate::field::squares::is_square;
use crate::field::{GfElem, GfField};
use crate::inseparable::genus_inseparable;
use crate::model::{
    reduce_to_inseparable_normal_form, reduce_to_separable_normal_form, NormalFormKind, SeparableNormalForm,
};
use crate::sample::Sampler;
use crate::separable::{cor_c2_case, discriminant_delta, genus_one_exception, genus_separable, C2Case};
use crate::series::{
    apply_rule, candidate_primes, expand_local_series, genus_via_rosenlicht, residual_valuation, AnyNormalForm,
    BranchId,
};

/// Failures kept per report.
const MAX_FAILURES: usize = 20;

#[derive(Clone, Debug)]
pub struct SuiteReport {
    pub suite: String,
    pub checked: usize,
    pub skipped: usize,
    pub failed: usize,
    pub failures: Vec<String>,
    pub seconds: f64,
    /// Parameter points visited, for the exhaustive suites.
    pub points: Option<usize>,
}

impl SuiteReport {
    fn new(suite: &str) -> Self {
        SuiteReport {
            suite: suite.into(),
            checked: 0,
            skipped: 0,
            failed: 0,
            failures: Vec::new(),
            seconds: 0.0,
            points: None,
        }
    }

    pub fn passed(&self) -> bool {
        self.failed == 0
    }

    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok {
            self.fail(what());
        }
    }

    fn fail(&mut self, msg: String) {
        self.failed += 1;
        if self.failures.len() < MAX_FAILURES {
            self.failures.push(msg);
        }
    }

    fn done(mut self, start: Instant) -> Self {
        self.seconds = start.elapsed().as_secs_f64();
        self
    }
}

impl fmt::Display for SuiteReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = if self.passed() { "pass" } else { "FAIL" };
        let pts = self.points.map_or(String::new(), |n| format!(", {n} points"));
        write!(
            f,
            "{}: {status}{pts} ({} checked, {} failed, {} skipped, {:.2}s)",
            self.suite, self.checked, self.failed, self.skipped, self.seconds
        )?;
        for m in &self.failures {
            write!(f, "\n  {m}")?;
        }
        Ok(())
    }
}

/// Every tuple of GF(2^k)^n in lexicographic order of the element bits.
pub fn all_tuples(field: GfField, n: usize) -> impl Iterator<Item = Vec<GfElem>> {
    let q = field.order();
    let total = q.pow(n as u32);
    (0..total).map(move |mut idx| {
        let mut v = vec![field.zero(); n];
        for slot in v.iter_mut().rev() {
            *slot = field.elem(idx % q);
            idx /= q;
        }
        v
    })
}

fn record_points(c: &FiberClass) -> BTreeSet<ConePoint> {
    c.points.iter().map(|r| r.point).collect()
}

/// Compares one classified fiber with the Jacobian and blowup oracles.
fn check_fiber(r: &mut SuiteReport, p: &FiberParams, class: &FiberClass, exhaustive: bool) -> Result<()> {
    let label = || format!("{} ({})", p.family, p.params_text());
    let curve = if class.point_field == p.field() { p.curve() } else { p.curve().lift(class.point_field)? };
    let locus = jacobian_singular_locus(&curve);
    if exhaustive {
        let brute = jacobian_singular_locus_exhaustive(&curve);
        r.check(brute == locus, || format!("{}: chart solving {locus:?} != enumeration {brute:?}", label()));
    }
    match &locus {
        Locus::NonReduced => {
            r.check(class.kind == FiberKind::NonReducedDouble, || format!("{}: oracle says non-reduced", label()));
        }
        Locus::Points(pts) => {
            let ours = record_points(class);
            let theirs: BTreeSet<ConePoint> = pts.iter().copied().collect();
            r.check(ours == theirs, || format!("{}: singular set {ours:?} != Jacobian {theirs:?}", label()));
            for rec in &class.points {
                let d = local_delta(p, &rec.point)?;
                let ok = (d.delta, d.branches, d.multiplicity) == (rec.delta, rec.branches, rec.multiplicity);
                r.check(ok, || {
                    format!(
                        "{} at {}: record ({}, {}, {}) != blowup ({}, {}, {})",
                        label(),
                        rec.point,
                        rec.delta,
                        rec.branches,
                        rec.multiplicity,
                        d.delta,
                        d.branches,
                        d.multiplicity
                    )
                });
            }
        }
    }
    Ok(())
}

/// Exhaustive oracle agreement over GF(2^k) for the Z family (and the V
/// family when `with_v`), plus the genus bookkeeping `Σδ = 2 - ḡ` for
/// integral fibers, which goes in the last report.
pub fn fiber_oracles(k: u32, with_v: bool) -> Result<Vec<SuiteReport>> {
    let mut start = Instant::now();
    let field = GfField::new(k)?;
    let mut oracle = SuiteReport::new(&format!("fiber-oracles Z GF(2^{k})"));
    let mut books = SuiteReport::new(&format!("hironaka GF(2^{k})"));
    let exhaustive = k <= 3;
    oracle.points = Some(field.order().pow(5) as usize);
    for t in all_tuples(field, 5) {
        let p = FiberParams::new(Family::Z, t)?;
        let class = classify_fiber(&p.z_tuple().unwrap());
        check_fiber(&mut oracle, &p, &class, exhaustive)?;
        if class.integral {
            let want = 2 - class.kind.g_bar();
            books.check(class.delta_sum() == want, || {
                format!("Z ({}): Σδ = {} for {}", p.params_text(), class.delta_sum(), class.kind)
            });
        }
    }
    let mut out = vec![oracle.done(start)];
    if with_v {
        start = Instant::now();
        let mut v = SuiteReport::new(&format!("fiber-oracles V GF(2^{k})"));
        v.points = Some(field.order().pow(6) as usize);
        for t in all_tuples(field, 6) {
            let p = FiberParams::new(Family::V, t)?;
            let class = classify_fiber_v(&p)?;
            check_fiber(&mut v, &p, &class, exhaustive && class.point_field == field)?;
            books.check(class.delta_sum() == 2, || format!("V ({}): Σδ = {}", p.params_text(), class.delta_sum()));
        }
        out.push(v.done(start));
    }
    books.seconds = out.iter().map(|r| r.seconds).sum();
    out.push(books);
    Ok(out)
}

/// `weierstrass_j` against `a2^6 / Δ^(1/2)` on random tuples with `Δ != 0`.
pub fn j_crosscheck(k: u32, samples: usize, seed: u64) -> Result<SuiteReport> {
    let start = Instant::now();
    let field = GfField::new(k)?;
    let mut r = SuiteReport::new(&format!("j-crosscheck GF(2^{k})"));
    let mut s = Sampler::new(seed, field, 0);
    while r.checked < samples {
        let t = [s.gf(), s.gf(), s.gf(), s.gf(), s.gf()];
        let c = classify_fiber(&t);
        let Some(j) = c.j else {
            r.skipped += 1;
            continue;
        };
        let w = weierstrass_j(&t)?;
        r.check(w == j, || format!("{t:?}: Weierstrass {w} != {j}"));
    }
    Ok(r.done(start))
}

fn fields() -> [GfField; 2] {
    [GfField::new(1).unwrap(), GfField::new(2).unwrap()]
}

/// Genus from the closed-form predicates against the series engine, on
/// `samples` separable and `samples` supported inseparable normal forms
/// split between GF(2)(s) and GF(4)(s).
pub fn genus_equivalence(samples: usize, seed: u64) -> Result<SuiteReport> {
    let start = Instant::now();
    let mut r = SuiteReport::new("genus-equivalence");
    for (i, field) in fields().into_iter().enumerate() {
        let quota = samples / 2 + if i == 0 { samples % 2 } else { 0 };
        let mut s = Sampler::new(seed.wrapping_add(i as u64), field, 4);
        for _ in 0..quota {
            let nf = s.elliptic_separable_nf();
            let a = genus_separable(&nf)?;
            let b = genus_via_rosenlicht(&AnyNormalForm::Separable(nf.clone()))?;
            r.check(a.g == b.g && a.delta_sum() == b.delta_sum(), || {
                format!("separable {:?}: predicate g = {} series g = {}", tuple_text(&nf), a.g, b.g)
            });
        }
        let mut done = 0;
        while done < quota {
            let nf = s.inseparable_nf();
            let a = match genus_inseparable(&nf) {
                Err(Error::Unsupported(_)) => {
                    r.skipped += 1;
                    continue;
                }
                other => other?,
            };
            let b = genus_via_rosenlicht(&AnyNormalForm::Inseparable(nf.clone()))?;
            let mut da: Vec<u32> = a.prime_degrees.iter().map(|p| p.delta).collect();
            let mut db: Vec<u32> = b.prime_degrees.iter().map(|p| p.delta).collect();
            da.sort();
            db.sort();
            r.check(a.g == b.g && da == db, || {
                let b: Vec<String> = nf.b.iter().map(|c| c.to_string()).collect();
                format!("inseparable b = {b:?}: predicate {da:?} series {db:?}")
            });
            done += 1;
        }
    }
    Ok(r.done(start))
}

fn tuple_text(nf: &SeparableNormalForm) -> Vec<String> {
    nf.tuple().iter().map(|c| c.to_string()).collect()
}

/// Residual valuation of the truncated expansion in its defining relation,
/// for every catalogued branch.
pub fn series_residuals(samples: usize, order: i64, threshold: i64, seed: u64) -> Result<SuiteReport> {
    let start = Instant::now();
    let mut r = SuiteReport::new(&format!("series-residuals N={order}"));
    for (bi, branch) in BranchId::ALL.into_iter().enumerate() {
        for (fi, field) in fields().into_iter().enumerate() {
            let mut s = Sampler::new(seed ^ ((bi as u64) << 8 | fi as u64), field, 4);
            let quota = samples / 2 + if fi == 0 { samples % 2 } else { 0 };
            let mut done = 0;
            while done < quota {
                let nf = s.branch_instance(branch);
                let setups = match candidate_primes(&nf) {
                    Err(Error::Unsupported(_)) => {
                        r.skipped += 1;
                        continue;
                    }
                    other => other?,
                };
                let wanted = |b: BranchId| match branch {
                    BranchId::C2IIIJnonsqOut => b == BranchId::C2IIIJnonsqIn || b == BranchId::C2IIIJnonsqOut,
                    _ => b == branch,
                };
                let Some(setup) = setups.iter().find(|s| wanted(s.spec.branch)) else {
                    r.fail(format!("{branch}: instance did not reach the branch"));
                    done += 1;
                    continue;
                };
                done += 1;
                let z = match expand_local_series(setup, order) {
                    Ok(z) => z,
                    Err(e) => {
                        r.fail(format!("{branch}: expansion failed: {e}"));
                        continue;
                    }
                };
                let res = residual_valuation(setup, &z);
                r.check(res.is_none_or(|v| v >= threshold), || {
                    format!("{branch}: residual valuation {res:?} for {}", z.dump())
                });
                if let Err(e) = apply_rule(setup, &z) {
                    r.fail(format!("{branch}: rule failed: {e}"));
                }
            }
        }
    }
    Ok(r.done(start))
}

/// The genus-one exception against the validity condition of each normalized
/// case: case i `b6 ∈ K^2`, case ii `b0 ∈ K^2`, case iii never.
pub fn consistency(samples: usize, seed: u64) -> Result<SuiteReport> {
    let start = Instant::now();
    let mut r = SuiteReport::new("consistency");
    let mut seen = BTreeSet::new();
    for (i, field) in fields().into_iter().enumerate() {
        let mut s = Sampler::new(seed.wrapping_add(17 + i as u64), field, 4);
        let quota = samples / 2 + if i == 0 { samples % 2 } else { 0 };
        for _ in 0..quota {
            let nf = s.elliptic_separable_nf();
            let exc = genus_one_exception(&nf, &discriminant_delta(&nf));
            let c2 = cor_c2_case(&nf)?;
            seen.insert(c2.case.tag());
            let expected = match c2.case {
                C2Case::I => is_square(&c2.nf.b6),
                C2Case::II => is_square(&c2.nf.b0),
                C2Case::III => false,
            };
            let back = nf.to_model().apply(&c2.transformation)? == c2.nf.to_model();
            r.check(exc == expected && exc == !c2.valid && back, || {
                format!(
                    "{:?} case {}: exception {exc}, normalized predicate {expected}",
                    tuple_text(&nf),
                    c2.case.tag()
                )
            });
            if c2.case == C2Case::III {
                r.check(!is_square(&c2.nf.a0), || format!("{:?}: case iii with a0 ∈ K^2", tuple_text(&nf)));
            }
        }
    }
    r.check(seen.len() == 3, || format!("cases reached: {seen:?}"));
    Ok(r.done(start))
}

/// Random admissible transformations preserve `j1` and the genus report;
/// reduction of a normal form returns it unchanged.
pub fn transformations(samples: usize, seed: u64) -> Result<SuiteReport> {
    let start = Instant::now();
    let mut r = SuiteReport::new("transformations");
    for (i, field) in fields().into_iter().enumerate() {
        let mut s = Sampler::new(seed.wrapping_add(31 + i as u64), field, 2);
        let quota = samples / 2 + if i == 0 { samples % 2 } else { 0 };
        for n in 0..quota {
            let t = s.transformation();
            // inverse and composition
            let id = t.then(&t.inverse()?);
            if n % 2 == 0 {
                let nf = s.elliptic_separable_nf();
                let m = nf.to_model();
                let m2 = m.apply(&t)?;
                r.check(m2.apply(&t.inverse()?)? == m && m.apply(&id)? == m, || "inverse round trip".into());
                let red = reduce_to_separable_normal_form(&m)?;
                r.check(matches!(&red.kind, NormalFormKind::Separable(x) if *x == nf), || {
                    format!("{:?}: reduction of a normal form moved it", tuple_text(&nf))
                });
                let out = reduce_to_separable_normal_form(&m2)?;
                let NormalFormKind::Separable(nf2) = out.kind else {
                    r.fail(format!("{:?}: transformed model did not reduce", tuple_text(&nf)));
                    continue;
                };
                r.check(m2.apply(&out.transformation)? == nf2.to_model(), || "reduction transformation".into());
                let (j, j2) = (discriminant_delta(&nf).j1, discriminant_delta(&nf2).j1);
                r.check(j == j2, || format!("{:?}: j1 {j:?} -> {j2:?}", tuple_text(&nf)));
                let (g, g2) = (genus_separable(&nf)?, genus_separable(&nf2)?);
                r.check((g.g, g.g_bar, g.g1, g.delta_sum()) == (g2.g, g2.g_bar, g2.g1, g2.delta_sum()), || {
                    format!("{:?}: genus {} -> {}", tuple_text(&nf), g.g, g2.g)
                });
            } else {
                let nf = s.inseparable_nf();
                let m = nf.to_model();
                let m2 = m.apply(&t)?;
                let red = reduce_to_inseparable_normal_form(&m)?;
                r.check(matches!(&red.kind, NormalFormKind::Inseparable(x) if *x == nf), || {
                    "reduction of an inseparable normal form moved it".into()
                });
                let NormalFormKind::Inseparable(nf2) = reduce_to_inseparable_normal_form(&m2)?.kind else {
                    r.fail("transformed inseparable model did not reduce".into());
                    continue;
                };
                match (genus_inseparable(&nf), genus_inseparable(&nf2)) {
                    (Ok(a), Ok(b)) => r.check(a.g == b.g, || format!("inseparable genus {} -> {}", a.g, b.g)),
                    _ => r.skipped += 1,
                }
            }
        }
    }
    Ok(r.done(start))
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Suite {
    FiberOracles,
    GenusEquivalence,
    JCrosscheck,
    SeriesResiduals,
    Consistency,
    Transformations,
    All,
}

impl Suite {
    pub fn parse(s: &str) -> Result<Self> {
        Ok(match s {
            "fiber-oracles" => Suite::FiberOracles,
            "genus-equivalence" => Suite::GenusEquivalence,
            "j-crosscheck" => Suite::JCrosscheck,
            "series-residuals" => Suite::SeriesResiduals,
            "consistency" => Suite::Consistency,
            "transformations" => Suite::Transformations,
            "all" => Suite::All,
            _ => return Err(Error::Invalid(format!("unknown suite {s:?}"))),
        })
    }
}

/// Options of a verification run; `None` picks the suite default.
#[derive(Clone, Copy, Debug)]
pub struct VerifyOptions {
    pub k: Option<u32>,
    pub samples: Option<usize>,
    pub seed: u64,
}

pub fn run_suite(suite: Suite, o: &VerifyOptions) -> Result<Vec<SuiteReport>> {
    let seed = o.seed;
    Ok(match suite {
        Suite::FiberOracles => {
            let ks: Vec<u32> = o.k.map_or(vec![1, 2], |k| vec![k]);
            let mut out = Vec::new();
            for k in ks {
                out.extend(fiber_oracles(k, k <= 2)?);
            }
            out
        }
        Suite::GenusEquivalence => vec![genus_equivalence(o.samples.unwrap_or(500), seed)?],
        Suite::JCrosscheck => vec![j_crosscheck(o.k.unwrap_or(8), o.samples.unwrap_or(1000), seed)?],
        Suite::SeriesResiduals => vec![series_residuals(o.samples.unwrap_or(100), 12, 10, seed)?],
        Suite::Consistency => vec![consistency(o.samples.unwrap_or(200), seed)?],
        Suite::Transformations => vec![transformations(o.samples.unwrap_or(200), seed)?],
        Suite::All => {
            let mut out = Vec::new();
            for s in [
                Suite::FiberOracles,
                Suite::JCrosscheck,
                Suite::GenusEquivalence,
                Suite::SeriesResiduals,
                Suite::Consistency,
                Suite::Transformations,
            ] {
                let o = VerifyOptions { k: None, samples: None, seed };
                out.extend(run_suite(s, &o)?);
            }
            out
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tuples_are_lexicographic() {
        let f = GfField::new(1).unwrap();
        let v: Vec<String> = all_tuples(f, 2).map(|t| format!("{}{}", t[0], t[1])).collect();
        assert_eq!(v, ["00", "01", "10", "11"]);
        assert_eq!(all_tuples(GfField::new(2).unwrap(), 5).count(), 1024);
    }

    #[test]
    fn small_suites_pass() {
        for r in fiber_oracles(1, true).unwrap() {
            assert!(r.passed(), "{r}");
        }
        let r = j_crosscheck(4, 50, 1).unwrap();
        assert!(r.passed(), "{r}");
    }
}
