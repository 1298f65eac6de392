//! Local expansions at candidate singular primes and the singularity degree
//! rules read off from them.
//!
//! For each candidate prime we pass to a Frobenius pullback where the prime is
//! rational, pick a local parameter `t`, and expand a power of `x` (separable
//! type) or of `y` (inseparable type) as a Laurent series in `t`. The series
//! is obtained by Newton iteration on an explicit algebraic relation
//! `P(t, z) = 0`, and the singularity degree is read from square classes of a
//! few named coefficients. Genus then follows from `g = ḡ + Σ δ`.

use std::fmt;

use crate::error::{Error, Result};
use crate::field::squares::{in_fourth_power_span, in_square_span, is_square};
use crate::field::{is_fourth_power_with_witness, is_square_with_witness, Field, GfField, RatFunc};
use crate::inseparable::{split_b_prime, InseparableCase};
use crate::model::{InseparableNormalForm, SeparableNormalForm};
use crate::separable::{cor_c2_case, discriminant_delta, C2Case, GenusReport, PrimeDegree};

/// Default truncation order.
pub const DEFAULT_ORDER: i64 = 12;

/// Truncated Laurent series `Σ_{i < order} c_i t^i`.
///
/// `start` is the exponent of `coeffs[0]`; the stored coefficients may have
/// leading zeros. An exact Laurent polynomial has `order == i64::MAX`.
#[derive(Clone, PartialEq)]
pub struct LaurentSeries {
    field: GfField,
    start: i64,
    coeffs: Vec<RatFunc>,
    order: i64,
}

const EXACT: i64 = i64::MAX;

impl LaurentSeries {
    pub fn zero(field: GfField) -> Self {
        LaurentSeries { field, start: 0, coeffs: Vec::new(), order: EXACT }
    }

    pub fn monomial(c: RatFunc, e: i64) -> Self {
        let field = c.field();
        LaurentSeries { field, start: e, coeffs: vec![c], order: EXACT }.normalized()
    }

    pub fn constant(c: RatFunc) -> Self {
        Self::monomial(c, 0)
    }

    /// `t`
    pub fn t(field: GfField) -> Self {
        Self::monomial(RatFunc::one(field), 1)
    }

    /// Exact polynomial `Σ c_i t^(start + i)`.
    pub fn from_coeffs(field: GfField, start: i64, coeffs: Vec<RatFunc>) -> Self {
        LaurentSeries { field, start, coeffs, order: EXACT }.normalized()
    }

    fn normalized(mut self) -> Self {
        let lead = self.coeffs.iter().take_while(|c| c.is_zero()).count();
        self.coeffs.drain(..lead);
        self.start += lead as i64;
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
        if self.order != EXACT {
            let keep = (self.order - self.start).max(0) as usize;
            self.coeffs.truncate(keep);
        }
        if self.coeffs.is_empty() {
            self.start = 0;
        }
        self
    }

    pub fn field(&self) -> GfField {
        self.field
    }

    /// Index of the first nonzero coefficient; `None` if every known
    /// coefficient vanishes.
    pub fn valuation(&self) -> Option<i64> {
        (!self.coeffs.is_empty()).then_some(self.start)
    }

    /// Coefficients with exponent `>= order` are unknown.
    pub fn order(&self) -> Option<i64> {
        (self.order != EXACT).then_some(self.order)
    }

    pub fn is_exact(&self) -> bool {
        self.order == EXACT
    }

    pub fn coeff(&self, i: i64) -> RatFunc {
        if i < self.start || i >= self.start + self.coeffs.len() as i64 {
            return RatFunc::zero(self.field);
        }
        self.coeffs[(i - self.start) as usize].clone()
    }

    /// Largest exponent with a nonzero coefficient.
    pub fn top(&self) -> Option<i64> {
        self.valuation().map(|v| v + self.coeffs.len() as i64 - 1)
    }

    pub fn truncate(&self, order: i64) -> Self {
        LaurentSeries { order: order.min(self.order), ..self.clone() }.normalized()
    }

    /// Drop the truncation marker, treating the known part as exact.
    pub fn as_exact(&self) -> Self {
        LaurentSeries { order: EXACT, ..self.clone() }
    }

    pub fn scale(&self, c: &RatFunc) -> Self {
        LaurentSeries { coeffs: self.coeffs.iter().map(|x| x * c).collect(), ..self.clone() }.normalized()
    }

    /// Multiply by `t^e`.
    pub fn shift(&self, e: i64) -> Self {
        LaurentSeries {
            start: self.start + e,
            order: if self.is_exact() { EXACT } else { self.order + e },
            ..self.clone()
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        let order = self.order.min(o.order);
        if self.coeffs.is_empty() {
            return LaurentSeries { order, ..o.clone() }.normalized();
        }
        if o.coeffs.is_empty() {
            return LaurentSeries { order, ..self.clone() }.normalized();
        }
        let lo = self.start.min(o.start);
        let hi = self.top().unwrap().max(o.top().unwrap());
        let coeffs = (lo..=hi).map(|i| &self.coeff(i) + &o.coeff(i)).collect();
        LaurentSeries { field: self.field, start: lo, coeffs, order }.normalized()
    }

    pub fn mul(&self, o: &Self) -> Self {
        let (Some(va), Some(vb)) = (self.valuation(), o.valuation()) else {
            let order = match (self.valuation(), o.valuation()) {
                (None, None) => self.order.saturating_add(o.order),
                (None, Some(vb)) => self.order.saturating_add(vb),
                (Some(va), None) => o.order.saturating_add(va),
                _ => unreachable!(),
            };
            return LaurentSeries { order, ..Self::zero(self.field) };
        };
        let order = if self.is_exact() && o.is_exact() {
            EXACT
        } else {
            self.order.saturating_add(vb).min(o.order.saturating_add(va))
        };
        let n = self.coeffs.len() + o.coeffs.len() - 1;
        let mut coeffs = vec![RatFunc::zero(self.field); n];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                if order != EXACT && va + vb + (i + j) as i64 >= order {
                    break;
                }
                coeffs[i + j] = &coeffs[i + j] + &(a * b);
            }
        }
        LaurentSeries { field: self.field, start: va + vb, coeffs, order }.normalized()
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::constant(RatFunc::one(self.field));
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// `1/self` with all coefficients of exponent below `order` correct.
    pub fn inverse_to(&self, order: i64) -> Result<Self> {
        let v = self.valuation().ok_or_else(|| Error::MalformedSpec("inverse of a vanishing series".into()))?;
        let u0i = self.coeffs[0].inv().unwrap();
        let len = (order + v).max(0) as usize;
        let mut out: Vec<RatFunc> = Vec::with_capacity(len);
        // (Σ u_i t^i) (Σ w_j t^j) = 1
        for n in 0..len {
            let mut acc = if n == 0 { RatFunc::one(self.field) } else { RatFunc::zero(self.field) };
            for (j, w) in out.iter().enumerate().take(n) {
                let u = self.coeff(v + (n - j) as i64);
                if !u.is_zero() {
                    acc = &acc + &(&u * w);
                }
            }
            out.push(&acc * &u0i);
        }
        let exact_limit = if self.is_exact() { order } else { order.min(self.order.saturating_sub(2 * v)) };
        Ok(LaurentSeries { field: self.field, start: -v, coeffs: out, order: exact_limit }.normalized())
    }

    /// `val=-2; c[-2]=..., c[-1]=...; N=12`
    pub fn dump(&self) -> String {
        let v = self.valuation();
        let hi = if self.is_exact() { self.top().unwrap_or(0) + 1 } else { self.order };
        let terms: Vec<String> = match v {
            None => Vec::new(),
            Some(v) => (v..hi).map(|i| format!("c[{i}]={}", self.coeff(i))).collect(),
        };
        let val = v.map_or("inf".to_string(), |v| v.to_string());
        let n = if self.is_exact() { "exact".to_string() } else { self.order.to_string() };
        format!("val={val}; {}; N={n}", terms.join(", "))
    }
}

impl fmt::Debug for LaurentSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.dump())
    }
}

impl fmt::Display for LaurentSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.dump())
    }
}

/// `P(z) = Σ_k p_k(t) z^k` with exact Laurent polynomial coefficients.
#[derive(Clone, Debug)]
pub struct Relation {
    pub coeffs: Vec<LaurentSeries>,
}

impl Relation {
    pub fn eval(&self, z: &LaurentSeries) -> LaurentSeries {
        let mut acc = LaurentSeries::zero(z.field());
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(z).add(c);
        }
        acc
    }

    /// `P(z)` with the coefficients of exponent below `n` exact, skipping
    /// the terms that cannot reach them.
    pub fn eval_to(&self, z: &LaurentSeries, n: i64) -> LaurentSeries {
        let z = z.as_exact();
        let m = z.valuation().unwrap_or(0).min(0);
        let mut acc = LaurentSeries::zero(z.field());
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            acc = acc.mul(&z).add(c).truncate(n - k as i64 * m);
        }
        acc
    }

    pub fn derivative(&self) -> Relation {
        let f = self.coeffs[0].field();
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, c)| if k % 2 == 1 { c.clone() } else { LaurentSeries::zero(f) })
            .collect();
        Relation { coeffs }
    }

    /// `val P(z) - val P'(z)`: the relation rescaled so that its
    /// z-derivative is a unit. Infinite when `P(z) = 0` exactly.
    pub fn normalized_residual(&self, z: &LaurentSeries) -> Option<i64> {
        let z = z.as_exact();
        let r = self.eval(&z).valuation()?;
        let d = self.derivative().eval(&z).valuation().unwrap_or(i64::MAX / 4);
        Some(r - d)
    }
}

/// Newton iteration from `z0` until the normalized residual reaches `order`.
pub fn newton_solve(rel: &Relation, z0: &LaurentSeries, order: i64) -> Result<LaurentSeries> {
    let dp = rel.derivative();
    let mut z = z0.as_exact();
    for _ in 0..64 {
        let d = dp.eval_to(&z, 2 * order + 8);
        let vd = d.valuation().ok_or_else(|| Error::MalformedSpec("relation has vanishing z-derivative".into()))?;
        if vd > order + 8 {
            return Err(Error::MalformedSpec("z-derivative vanishes to high order".into()));
        }
        let r = rel.eval_to(&z, order + vd + 1);
        let Some(vr) = r.valuation() else {
            return Ok(z.truncate(order));
        };
        if vr - vd >= order {
            return Ok(z.truncate(order));
        }
        let corr = r.mul(&d.inverse_to(order - vr + 1)?).truncate(order);
        let next = z.add(&corr).truncate(order).as_exact();
        if next == z {
            return Err(Error::MalformedSpec("coefficient recursion stalled".into()));
        }
        z = next;
    }
    Err(Error::MalformedSpec("coefficient recursion did not converge".into()))
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Hash, PartialOrd, Ord)]
pub enum BranchId {
    C2I,
    C2IISq,
    C2IINonsq,
    C2IIIJsq,
    C2IIIJnonsqOut,
    C2IIIJnonsqIn,
    D1B3nzSq,
    D1B3nzNonsq,
    D1B3zI,
    D1B3zII,
    D1B3zIII,
}

impl BranchId {
    pub const ALL: [BranchId; 11] = [
        BranchId::C2I,
        BranchId::C2IISq,
        BranchId::C2IINonsq,
        BranchId::C2IIIJsq,
        BranchId::C2IIIJnonsqOut,
        BranchId::C2IIIJnonsqIn,
        BranchId::D1B3nzSq,
        BranchId::D1B3nzNonsq,
        BranchId::D1B3zI,
        BranchId::D1B3zII,
        BranchId::D1B3zIII,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            BranchId::C2I => "C2-i",
            BranchId::C2IISq => "C2-ii-sq",
            BranchId::C2IINonsq => "C2-ii-nonsq",
            BranchId::C2IIIJsq => "C2-iii-jsq",
            BranchId::C2IIIJnonsqOut => "C2-iii-jnonsq-out",
            BranchId::C2IIIJnonsqIn => "C2-iii-jnonsq-in",
            BranchId::D1B3nzSq => "D1-b3nz-sq",
            BranchId::D1B3nzNonsq => "D1-b3nz-nonsq",
            BranchId::D1B3zI => "D1-b3z-i",
            BranchId::D1B3zII => "D1-b3z-ii",
            BranchId::D1B3zIII => "D1-b3z-iii",
        }
    }

    pub fn rule(&self) -> &'static BranchRule {
        RULES.iter().find(|r| r.id == *self).unwrap()
    }
}

impl fmt::Display for BranchId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A catalogued branch: which element is expanded, which coefficients the
/// rule reads, and its conclusion.
#[derive(Debug)]
pub struct BranchRule {
    pub id: BranchId,
    pub expanded: &'static str,
    pub local_parameter: &'static str,
    pub coefficients: &'static [i64],
    pub conclusion: &'static str,
}

pub static RULES: [BranchRule; 11] = [
    BranchRule {
        id: BranchId::C2I,
        expanded: "z = x^2",
        local_parameter: "t = z/y",
        coefficients: &[-2],
        conclusion: "δ = 1 if c[-2] ∉ K^2, else 0",
    },
    BranchRule {
        id: BranchId::C2IISq,
        expanded: "z = x^2",
        local_parameter: "t = y + b0^(1/2)",
        coefficients: &[2],
        conclusion: "p1 rational and smooth: δ = 0",
    },
    BranchRule {
        id: BranchId::C2IINonsq,
        expanded: "w = x^4",
        local_parameter: "t = y^2 + b0",
        coefficients: &[2],
        conclusion: "p|p1 ramified: δ = 1",
    },
    BranchRule {
        id: BranchId::C2IIIJsq,
        expanded: "z = x^2",
        local_parameter: "t = y + ȳ",
        coefficients: &[0, 2],
        conclusion: "δ = 1 if c[0] = a0 ∉ K^2, else 0",
    },
    BranchRule {
        id: BranchId::C2IIIJnonsqOut,
        expanded: "w = x^4",
        local_parameter: "t = y^2 + ȳ^2",
        coefficients: &[0, 2],
        conclusion: "a0 ∉ K^2(j1): residue field K(j1^(1/2), a0^(1/2)), δ = 1",
    },
    BranchRule {
        id: BranchId::C2IIIJnonsqIn,
        expanded: "(x + α + β y)^4",
        local_parameter: "t = y^2 + ȳ^2",
        coefficients: &[2],
        conclusion: "a0 = α^2 + β^2 ȳ^2 and c[2] != 0: ramified, δ = 1",
    },
    BranchRule {
        id: BranchId::D1B3nzSq,
        expanded: "y^2",
        local_parameter: "t = x + c^(1/2)",
        coefficients: &[0],
        conclusion: "δ = 1 if c[0] ∉ K^2, else 0",
    },
    BranchRule {
        id: BranchId::D1B3nzNonsq,
        expanded: "y^4, then (y + α + β x)^4",
        local_parameter: "t = x^2 + c",
        coefficients: &[0, 2],
        conclusion: "inertial, or ramified with c[2] != 0: δ = 1",
    },
    BranchRule {
        id: BranchId::D1B3zI,
        expanded: "y^8, then (y + α + β x + γ x^2 + δ x^3)^8",
        local_parameter: "t = x^4 + b1",
        coefficients: &[0, 4],
        conclusion: "inertial, or ramified with c[4] != 0: δ = 2",
    },
    BranchRule {
        id: BranchId::D1B3zII,
        expanded: "y^4, then (y + α + β x)^4",
        local_parameter: "t = x^2 + b1^(1/2)",
        coefficients: &[0, 2],
        conclusion: "inertial: δ = 2; else δ = 2 if c[2] != 0, δ = 0 if c[2] = 0",
    },
    BranchRule {
        id: BranchId::D1B3zIII,
        expanded: "y^2",
        local_parameter: "t = x + b1^(1/4)",
        coefficients: &[0, 2],
        conclusion: "δ = 2 if c[0] ∉ K^2; else 1 if c[2] ∉ K^2; else 0",
    },
];

/// Where the candidate prime sits and how it is approached.
#[derive(Clone, Debug)]
pub struct PrimeSpec {
    pub branch: BranchId,
    /// `n` in the Frobenius pullback `F_n = F^(2^n) K`.
    pub pullback_level: u32,
    pub center: String,
    pub local_parameter: &'static str,
}

/// Extra data a rule needs beyond the expansion itself.
#[derive(Clone, Debug)]
enum RuleData {
    None,
    /// Add `Σ coeffs_i (t + shift)^(2i)`-type corrections: the expansion of
    /// `(y + α + β x + ...)^(2^n)` differs from that of `y^(2^n)` by this
    /// exact polynomial.
    Correction(LaurentSeries),
    /// Residue class not in the expected field: inertial prime.
    Inertial,
}

/// A candidate prime together with the relation that defines its expansion.
#[derive(Clone, Debug)]
pub struct BranchSetup {
    pub spec: PrimeSpec,
    pub relation: Relation,
    pub start: LaurentSeries,
    data: RuleData,
}

fn lp(field: GfField, coeffs: &[(i64, RatFunc)]) -> LaurentSeries {
    coeffs.iter().fold(LaurentSeries::zero(field), |acc, (e, c)| acc.add(&LaurentSeries::monomial(c.clone(), *e)))
}

fn linear_relation(b: LaurentSeries) -> Relation {
    let f = b.field();
    Relation { coeffs: vec![b, LaurentSeries::constant(RatFunc::one(f))] }
}

/// `Σ c_i (t + shift)^i` as an exact polynomial in `t`.
fn shifted_poly(coeffs: &[RatFunc], shift: &RatFunc) -> LaurentSeries {
    let f = shift.field();
    let base = lp(f, &[(0, shift.clone()), (1, RatFunc::one(f))]);
    let mut acc = LaurentSeries::zero(f);
    for c in coeffs.iter().rev() {
        acc = acc.mul(&base).add(&LaurentSeries::constant(c.clone()));
    }
    acc
}

fn spec(branch: BranchId, level: u32, center: String) -> PrimeSpec {
    PrimeSpec { branch, pullback_level: level, center, local_parameter: branch.rule().local_parameter }
}

/// Candidate singular prime of a separable normal form with `Δ != 0`.
pub fn separable_setup(nf: &SeparableNormalForm) -> Result<BranchSetup> {
    let c2 = cor_c2_case(nf)?;
    let n = &c2.nf;
    let f = n.base.gf;
    let one = RatFunc::one(f);
    let t = |c: RatFunc, e: i64| (e, c);
    match c2.case {
        C2Case::I => {
            // t^-2 z^2 + t^-1 z = b6 z^3 + b4 z^2 + b0, a0 = 1
            let rel = Relation {
                coeffs: vec![
                    lp(f, &[t(n.b0.clone(), 0)]),
                    lp(f, &[t(one.clone(), -1)]),
                    lp(f, &[t(one.clone(), -2), t(n.b4.clone(), 0)]),
                    lp(f, &[t(n.b6.clone(), 0)]),
                ],
            };
            let start = LaurentSeries::monomial(n.b6.inv().unwrap(), -2);
            Ok(BranchSetup {
                spec: spec(BranchId::C2I, 1, "pole of x".into()),
                relation: rel,
                start,
                data: RuleData::None,
            })
        }
        C2Case::II => {
            if let Some(c) = is_square_with_witness(&n.b0) {
                // t = y + c: t^2 + c z + t z + b4 z^2 + b6 z^3 = 0
                let rel = Relation {
                    coeffs: vec![
                        lp(f, &[t(one.clone(), 2)]),
                        lp(f, &[t(c.clone(), 0), t(one.clone(), 1)]),
                        lp(f, &[t(n.b4.clone(), 0)]),
                        lp(f, &[t(n.b6.clone(), 0)]),
                    ],
                };
                let start = LaurentSeries::monomial(c.inv().unwrap(), 2);
                Ok(BranchSetup {
                    spec: spec(BranchId::C2IISq, 1, "zero of x".into()),
                    relation: rel,
                    start,
                    data: RuleData::None,
                })
            } else {
                // t = y^2 + b0, w = x^4: t^2 + b0 w + t w + b4^2 w^2 + b6^2 w^3 = 0
                let rel = Relation {
                    coeffs: vec![
                        lp(f, &[t(one.clone(), 2)]),
                        lp(f, &[t(n.b0.clone(), 0), t(one.clone(), 1)]),
                        lp(f, &[t(n.b4.sq(), 0)]),
                        lp(f, &[t(n.b6.sq(), 0)]),
                    ],
                };
                let start = LaurentSeries::monomial(n.b0.inv().unwrap(), 2);
                Ok(BranchSetup {
                    spec: spec(BranchId::C2IINonsq, 2, "zero of x".into()),
                    relation: rel,
                    start,
                    data: RuleData::None,
                })
            }
        }
        C2Case::III => {
            let a0 = n.a0.clone();
            // ȳ^2 = b(x) at x^2 = a0
            let ybar2 = &(&(&n.b6 * &a0.pow(3)) + &(&n.b4 * &a0.sq())) + &n.b0;
            if let Some(ybar) = is_square_with_witness(&ybar2) {
                // (t + ȳ)^2 + (z + a0)(t + ȳ) + b6 z^3 + b4 z^2 + b0 = 0
                let c0 = &(&(&ybar2 + &(&a0 * &ybar)) + &n.b0) + &RatFunc::zero(f);
                let rel = Relation {
                    coeffs: vec![
                        lp(f, &[t(c0, 0), t(a0.clone(), 1), t(one.clone(), 2)]),
                        lp(f, &[t(ybar, 0), t(one.clone(), 1)]),
                        lp(f, &[t(n.b4.clone(), 0)]),
                        lp(f, &[t(n.b6.clone(), 0)]),
                    ],
                };
                Ok(BranchSetup {
                    spec: spec(BranchId::C2IIIJsq, 1, "x^2 = a0".into()),
                    relation: rel,
                    start: LaurentSeries::constant(a0),
                    data: RuleData::None,
                })
            } else {
                // (t + ȳ^2)^2 + (w + a0^2)(t + ȳ^2) + b6^2 w^3 + b4^2 w^2 + b0^2 = 0
                let c0 = &(&ybar2.sq() + &(&a0.sq() * &ybar2)) + &n.b0.sq();
                let rel = Relation {
                    coeffs: vec![
                        lp(f, &[t(c0, 0), t(a0.sq(), 1), t(one.clone(), 2)]),
                        lp(f, &[t(ybar2.clone(), 0), t(one.clone(), 1)]),
                        lp(f, &[t(n.b4.sq(), 0)]),
                        lp(f, &[t(n.b6.sq(), 0)]),
                    ],
                };
                let (branch, data) = match in_square_span(&a0, &ybar2) {
                    // w' = (x + α + β y)^4 = w + α^4 + β^4 (t + ȳ^2)^2
                    Some((alpha, beta)) => {
                        let b4 = beta.pow(4);
                        let corr = lp(f, &[t(&alpha.pow(4) + &(&b4 * &ybar2.sq()), 0), t(b4, 2)]);
                        (BranchId::C2IIIJnonsqIn, RuleData::Correction(corr))
                    }
                    None => (BranchId::C2IIIJnonsqOut, RuleData::Inertial),
                };
                Ok(BranchSetup {
                    spec: spec(branch, 2, "x^2 = a0".into()),
                    relation: rel,
                    start: LaurentSeries::constant(a0.sq()),
                    data,
                })
            }
        }
    }
}

/// Candidate singular primes of an inseparable normal form.
pub fn inseparable_setups(nf: &InseparableNormalForm) -> Result<Vec<BranchSetup>> {
    if !nf.b[5].is_one_elem() {
        return Err(Error::NotNormalized("expected b5 = 1".into()));
    }
    let case = InseparableCase::of(nf);
    let zero_start = |f: GfField| LaurentSeries::zero(f);
    let mut out = Vec::new();
    match case {
        InseparableCase::B3Nonzero => {
            let sp = split_b_prime(nf)?;
            let b = &sp.nf.b;
            let f = sp.nf.base.gf;
            for (name, c) in [("x^2 = c", &sp.c), ("x^2 = d", &sp.d)] {
                if let Some(e) = is_square_with_witness(c) {
                    // t = x + e, y^2 = b(t + e)
                    out.push(BranchSetup {
                        spec: spec(BranchId::D1B3nzSq, 1, name.into()),
                        relation: linear_relation(shifted_poly(b, &e)),
                        start: zero_start(f),
                        data: RuleData::None,
                    });
                } else {
                    // t = x^2 + c, y^4 = Σ b_i^2 (t + c)^i
                    let sq: Vec<RatFunc> = b.iter().map(|x| x.sq()).collect();
                    let y4 = shifted_poly(&sq, c);
                    let data = residue_correction_2(&y4, c);
                    out.push(BranchSetup {
                        spec: spec(BranchId::D1B3nzNonsq, 2, name.into()),
                        relation: linear_relation(y4),
                        start: zero_start(f),
                        data,
                    });
                }
            }
        }
        InseparableCase::B3ZeroI => {
            let b = &nf.b;
            let f = nf.base.gf;
            let b1 = b[1].clone();
            let q: Vec<RatFunc> = b.iter().map(|x| x.pow(4)).collect();
            let y8 = shifted_poly(&q, &b1);
            let data = match is_square_with_witness(&y8.coeff(0)).and_then(|y4| in_fourth_power_span(&y4, &b1)) {
                None => RuleData::Inertial,
                Some((al, be, ga, de)) => {
                    // z^8 = y^8 + α^8 + β^8 (t+b1)^2 + γ^8 (t+b1)^4 + δ^8 (t+b1)^6
                    let base2 = shifted_poly(&[RatFunc::zero(f), RatFunc::zero(f), RatFunc::one(f)], &b1);
                    let corr = LaurentSeries::constant(al.pow(8))
                        .add(&base2.scale(&be.pow(8)))
                        .add(&base2.pow(2).scale(&ga.pow(8)))
                        .add(&base2.pow(3).scale(&de.pow(8)));
                    RuleData::Correction(corr)
                }
            };
            out.push(BranchSetup {
                spec: spec(BranchId::D1B3zI, 3, "x^4 = b1".into()),
                relation: linear_relation(y8),
                start: zero_start(f),
                data,
            });
        }
        InseparableCase::B3ZeroII => {
            let b = &nf.b;
            let f = nf.base.gf;
            let c = is_square_with_witness(&b[1]).unwrap();
            let sq: Vec<RatFunc> = b.iter().map(|x| x.sq()).collect();
            let y4 = shifted_poly(&sq, &c);
            let data = residue_correction_2(&y4, &c);
            out.push(BranchSetup {
                spec: spec(BranchId::D1B3zII, 2, "x^2 = b1^(1/2)".into()),
                relation: linear_relation(y4),
                start: zero_start(f),
                data,
            });
        }
        InseparableCase::B3ZeroIII => {
            let f = nf.base.gf;
            let c = is_fourth_power_with_witness(&nf.b[1]).unwrap();
            out.push(BranchSetup {
                spec: spec(BranchId::D1B3zIII, 1, "x = b1^(1/4)".into()),
                relation: linear_relation(shifted_poly(&nf.b, &c)),
                start: zero_start(f),
                data: RuleData::None,
            });
        }
    }
    Ok(out)
}

/// For `Y = y^4` expanded in `t = x^2 + c`: write `ȳ^2 = α^2 + β^2 c` and
/// return the correction turning `y^4` into `(y + α + β x)^4`.
fn residue_correction_2(y4: &LaurentSeries, c: &RatFunc) -> RuleData {
    let f = c.field();
    let Some(ybar2) = is_square_with_witness(&y4.coeff(0)) else {
        return RuleData::Inertial;
    };
    match in_square_span(&ybar2, c) {
        None => RuleData::Inertial,
        Some((alpha, beta)) => {
            // β^4 x^4 = β^4 (t + c)^2
            let b4 = beta.pow(4);
            let corr = lp(f, &[(0, &alpha.pow(4) + &(&b4 * &c.sq())), (2, b4)]);
            RuleData::Correction(corr)
        }
    }
}

/// Expansion of the branch's designated element to truncation order `n`.
pub fn expand_local_series(setup: &BranchSetup, n: i64) -> Result<LaurentSeries> {
    if n < 6 {
        return Err(Error::MalformedSpec(format!("truncation order {n} below 6")));
    }
    newton_solve(&setup.relation, &setup.start, n)
}

/// Normalized residual of a truncated expansion in the branch relation.
pub fn residual_valuation(setup: &BranchSetup, z: &LaurentSeries) -> Option<i64> {
    setup.relation.normalized_residual(z)
}

/// Singularity degree and residue-field description from the branch rule.
pub fn singularity_degree(setup: &BranchSetup, n: i64) -> Result<(u32, String)> {
    apply_rule(setup, &expand_local_series(setup, n)?)
}

/// The branch rule applied to an expansion `z` computed from `setup`.
pub fn apply_rule(setup: &BranchSetup, z: &LaurentSeries) -> Result<(u32, String)> {
    let bad = |what: &str| Err(Error::MalformedSpec(format!("{}: {what}", setup.spec.branch)));
    let corrected = |corr: &LaurentSeries| z.add(corr);
    Ok(match setup.spec.branch {
        BranchId::C2I => {
            if z.valuation() != Some(-2) {
                return bad("expected a double pole");
            }
            ((!is_square(&z.coeff(-2))) as u32, "K".into())
        }
        BranchId::C2IISq => {
            if z.valuation() != Some(2) {
                return bad("expected valuation 2");
            }
            (0, "K".into())
        }
        BranchId::C2IINonsq => {
            if z.valuation() != Some(2) {
                return bad("expected valuation 2");
            }
            (1, "K".into())
        }
        BranchId::C2IIIJsq => ((!is_square(&z.coeff(0))) as u32, "K".into()),
        BranchId::C2IIIJnonsqOut => (1, "K(j1^(1/2), a0^(1/2))".into()),
        BranchId::C2IIIJnonsqIn => {
            let RuleData::Correction(c) = &setup.data else { return bad("missing correction") };
            let w = corrected(c);
            if !w.coeff(0).is_zero() || w.coeff(2).is_zero() {
                return bad("ramification coefficient vanishes");
            }
            (1, "K(j1^(1/2))".into())
        }
        BranchId::D1B3nzSq => ((!is_square(&z.coeff(0))) as u32, "K".into()),
        BranchId::D1B3nzNonsq => match &setup.data {
            RuleData::Inertial => (1, "K(c^(1/2), ȳ)".into()),
            RuleData::Correction(c) => {
                let w = corrected(c);
                if !w.coeff(0).is_zero() || w.coeff(2).is_zero() {
                    return bad("ramification coefficient vanishes");
                }
                (1, "K(c^(1/2))".into())
            }
            RuleData::None => return bad("missing residue data"),
        },
        BranchId::D1B3zI => match &setup.data {
            RuleData::Inertial => (2, "K(b1^(1/4), ȳ)".into()),
            RuleData::Correction(c) => {
                let w = corrected(c);
                if (0..4).any(|i| !w.coeff(i).is_zero()) || w.coeff(4).is_zero() {
                    return bad("ramification coefficient vanishes");
                }
                (2, "K(b1^(1/4))".into())
            }
            RuleData::None => return bad("missing residue data"),
        },
        BranchId::D1B3zII => match &setup.data {
            RuleData::Inertial => (2, "K(b1^(1/4), ȳ)".into()),
            RuleData::Correction(c) => {
                let w = corrected(c);
                if !w.coeff(0).is_zero() {
                    return bad("residue correction failed");
                }
                if w.coeff(2).is_zero() {
                    (0, "K(b1^(1/4))".into())
                } else {
                    (2, "K(b1^(1/4))".into())
                }
            }
            RuleData::None => return bad("missing residue data"),
        },
        BranchId::D1B3zIII => {
            let d = if !is_square(&z.coeff(0)) {
                2
            } else if !is_square(&z.coeff(2)) {
                1
            } else {
                0
            };
            (d, "K".into())
        }
    })
}

/// A normal form of either type.
#[derive(Clone, Debug)]
pub enum AnyNormalForm {
    Separable(SeparableNormalForm),
    Inseparable(InseparableNormalForm),
}

/// Candidate primes with their branch setups.
pub fn candidate_primes(nf: &AnyNormalForm) -> Result<Vec<BranchSetup>> {
    match nf {
        AnyNormalForm::Separable(s) => {
            if discriminant_delta(s).delta.is_zero() {
                return Err(Error::NotGeometricallyElliptic);
            }
            Ok(vec![separable_setup(s)?])
        }
        AnyNormalForm::Inseparable(i) => inseparable_setups(i),
    }
}

/// `g = ḡ + Σ δ(p)` over the candidate singular primes.
pub fn genus_via_rosenlicht(nf: &AnyNormalForm) -> Result<GenusReport> {
    genus_via_rosenlicht_order(nf, DEFAULT_ORDER)
}

pub fn genus_via_rosenlicht_order(nf: &AnyNormalForm, n: i64) -> Result<GenusReport> {
    let (g_bar, g1) = match nf {
        AnyNormalForm::Separable(_) => (1, 1),
        AnyNormalForm::Inseparable(_) => (0, 0),
    };
    let mut primes = Vec::new();
    for setup in candidate_primes(nf)? {
        let (delta, residue) = singularity_degree(&setup, n)?;
        primes.push(PrimeDegree { prime: format!("{} [{}]", setup.spec.center, setup.spec.branch), delta, residue });
    }
    let g = g_bar + primes.iter().map(|p| p.delta).sum::<u32>();
    Ok(GenusReport { g, g_bar, g1, prime_degrees: primes })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::parse::{parse_ratfunc, parse_x_poly};
    use crate::field::FieldDescriptor;

    fn f1() -> GfField {
        GfField::new(1).unwrap()
    }

    fn r(s: &str) -> RatFunc {
        parse_ratfunc(s, f1()).unwrap()
    }

    fn sep(t: [&str; 5]) -> SeparableNormalForm {
        SeparableNormalForm::new(t.map(r), FieldDescriptor::rational(f1()))
    }

    fn insep(src: &str) -> InseparableNormalForm {
        let c = parse_x_poly(src, f1()).unwrap();
        let mut b: [RatFunc; 7] = std::array::from_fn(|_| RatFunc::zero(f1()));
        for (i, v) in c.into_iter().enumerate() {
            b[i] = v;
        }
        InseparableNormalForm { b, base: FieldDescriptor::rational(f1()) }
    }

    #[test]
    fn series_inverse() {
        let f = f1();
        let s = LaurentSeries::from_coeffs(f, -1, vec![r("1"), r("s")]);
        let inv = s.inverse_to(8).unwrap();
        let one = s.mul(&inv).truncate(8);
        assert_eq!(one.valuation(), Some(0));
        assert!(one.coeff(0).is_one_elem());
        for i in 1..8 {
            assert!(one.coeff(i).is_zero(), "c[{i}]");
        }
    }

    #[test]
    fn dump_format() {
        let f = f1();
        let s = LaurentSeries::from_coeffs(f, -2, vec![r("1"), r("0"), r("s")]).truncate(1);
        assert_eq!(s.dump(), "val=-2; c[-2]=1, c[-1]=0, c[0]=s; N=1");
    }

    #[test]
    fn c2_i_expansion() {
        // z = b6^-1 (t^-2 + b4 + b6 t + ...)
        let n = sep(["1", "0", "s+1", "s^2", "s"]);
        let setup = separable_setup(&n).unwrap();
        assert_eq!(setup.spec.branch, BranchId::C2I);
        let z = expand_local_series(&setup, 12).unwrap();
        let b6i = r("1/s");
        assert_eq!(z.coeff(-2), b6i);
        assert!(z.coeff(-1).is_zero());
        assert_eq!(z.coeff(0), r("s^2") * b6i.clone());
        assert!(z.coeff(1).is_one_elem());
        assert!(residual_valuation(&setup, &z).unwrap() >= 10);
        assert_eq!(singularity_degree(&setup, 12).unwrap().0, 1);
    }

    #[test]
    fn c2_i_square_b6() {
        let setup = separable_setup(&sep(["1", "0", "0", "0", "s^2"])).unwrap();
        assert_eq!(singularity_degree(&setup, 12).unwrap().0, 0);
    }

    #[test]
    fn c2_ii_square_expansion() {
        // b0 = c^2 with c = s: z = c^-1 t^2 + c^-2 t^3 + ...
        let setup = separable_setup(&sep(["0", "1", "s^2", "1", "s"])).unwrap();
        assert_eq!(setup.spec.branch, BranchId::C2IISq);
        let z = expand_local_series(&setup, 12).unwrap();
        assert_eq!(z.coeff(2), r("1/s"));
        assert_eq!(z.coeff(3), r("1/s^2"));
        assert_eq!(singularity_degree(&setup, 12).unwrap().0, 0);
    }

    #[test]
    fn c2_ii_nonsquare_expansion() {
        let setup = separable_setup(&sep(["0", "1", "s", "1", "s+1"])).unwrap();
        assert_eq!(setup.spec.branch, BranchId::C2IINonsq);
        let w = expand_local_series(&setup, 12).unwrap();
        assert_eq!(w.coeff(2), r("1/s"));
        assert_eq!(w.coeff(3), r("1/s^2"));
        assert_eq!(singularity_degree(&setup, 12).unwrap().0, 1);
    }

    #[test]
    fn c2_iii_jsq_expansion() {
        // a0 = s, b6 = 1, b4 = 0, b0 = s^3 + ȳ^2 with ȳ = s
        let n = sep(["s", "1", "s^3+s^2", "0", "1"]);
        let setup = separable_setup(&n).unwrap();
        assert_eq!(setup.spec.branch, BranchId::C2IIIJsq);
        let z = expand_local_series(&setup, 12).unwrap();
        let j1 = discriminant_delta(&n).j1.unwrap();
        let jbar = is_square_with_witness(&j1).unwrap();
        assert_eq!(z.coeff(0), n.a0);
        assert!(z.coeff(1).is_zero());
        assert_eq!(z.coeff(2), n.b6.clone() * jbar);
        assert_eq!(z.coeff(3), n.b6.sq() * j1);
        assert_eq!(singularity_degree(&setup, 12).unwrap().0, 1);
    }

    #[test]
    fn c2_iii_jnonsq() {
        let n = sep(["s", "1", "s", "1", "1"]);
        let setup = separable_setup(&n).unwrap();
        assert_eq!(setup.spec.branch, BranchId::C2IIIJnonsqIn);
        let w = expand_local_series(&setup, 12).unwrap();
        let j1 = discriminant_delta(&n).j1.unwrap();
        assert_eq!(w.coeff(0), n.a0.sq());
        assert_eq!(w.coeff(2), n.b6.sq() * j1.clone());
        assert_eq!(w.coeff(3), n.b6.pow(4) * j1.sq());
        assert_eq!(singularity_degree(&setup, 12).unwrap().0, 1);
    }

    #[test]
    fn c2_iii_jnonsq_out_rule() {
        // not reachable over GF(2^k)(s); the rule itself is inertial with δ = 1
        let n = sep(["s", "1", "s", "1", "1"]);
        let mut setup = separable_setup(&n).unwrap();
        setup.spec.branch = BranchId::C2IIIJnonsqOut;
        setup.data = RuleData::Inertial;
        let (d, residue) = singularity_degree(&setup, 12).unwrap();
        assert_eq!((d, residue.as_str()), (1, "K(j1^(1/2), a0^(1/2))"));
    }

    #[test]
    fn d1_b3z_iii_display() {
        // y^2 = Σ b_2i c^2i + (b2 + b6 c^4) t^2 + (c + b4 + b6 c^2) t^4 + t^5 + b6 t^6
        let nf = insep("s*x^6 + x^5 + (s+1)*x^4 + s^2*x^2 + s^4*x + s^3");
        let setups = inseparable_setups(&nf).unwrap();
        assert_eq!(setups.len(), 1);
        assert_eq!(setups[0].spec.branch, BranchId::D1B3zIII);
        let y2 = expand_local_series(&setups[0], 12).unwrap();
        let c = r("s");
        let [b0, _, b2, _, b4, _, b6] = nf.b.clone();
        let sum = b0 + b2.clone() * c.sq() + b4.clone() * c.pow(4) + b6.clone() * c.pow(6);
        assert_eq!(y2.coeff(0), sum);
        assert_eq!(y2.coeff(2), b2 + b6.clone() * c.pow(4));
        assert_eq!(y2.coeff(4), c.clone() + b4 + b6.clone() * c.sq());
        assert!(y2.coeff(5).is_one_elem());
        assert_eq!(y2.coeff(6), b6);
        for i in [1, 3] {
            assert!(y2.coeff(i).is_zero());
        }
    }

    #[test]
    fn rosenlicht_examples() {
        let g = genus_via_rosenlicht(&AnyNormalForm::Separable(sep(["1", "0", "0", "0", "s"]))).unwrap();
        assert_eq!((g.g_bar, g.delta_sum(), g.g), (1, 1, 2));
        let g = genus_via_rosenlicht(&AnyNormalForm::Separable(sep(["1", "0", "0", "0", "s^2"]))).unwrap();
        assert_eq!(g.g, 1);
        let g = genus_via_rosenlicht(&AnyNormalForm::Inseparable(insep("x^5 + s"))).unwrap();
        assert_eq!((g.g_bar, g.delta_sum(), g.g), (0, 2, 2));
        let g = genus_via_rosenlicht(&AnyNormalForm::Inseparable(insep("x^5 + s^2*x"))).unwrap();
        assert_eq!(g.g, 0);
        let g = genus_via_rosenlicht(&AnyNormalForm::Inseparable(insep("x^5 + x^3 + s"))).unwrap();
        assert_eq!(g.g, 2);
        let g = genus_via_rosenlicht(&AnyNormalForm::Inseparable(insep("x^5 + s*x"))).unwrap();
        assert_eq!(g.g, 2);
    }

    #[test]
    fn frobenius_consistency_case_ii() {
        // b0 = s^2: the level-1 expansion squared equals the level-2 one
        let n = sep(["0", "1", "s^2", "s", "s+1"]);
        let sq = separable_setup(&n).unwrap();
        let z = expand_local_series(&sq, 12).unwrap();
        let w = {
            let f = f1();
            let one = RatFunc::one(f);
            let rel = Relation {
                coeffs: vec![
                    lp(f, &[(2, one.clone())]),
                    lp(f, &[(0, n.b0.clone()), (1, one)]),
                    lp(f, &[(0, n.b4.sq())]),
                    lp(f, &[(0, n.b6.sq())]),
                ],
            };
            newton_solve(&rel, &LaurentSeries::monomial(n.b0.inv().unwrap(), 2), 24).unwrap()
        };
        for i in 2..12 {
            assert_eq!(z.coeff(i).sq(), w.coeff(i), "i = {i}");
        }
    }
}
