//! The model `y^2 + a(x) y + b(x) = 0` with `deg a <= 3`, `deg b <= 6`, its
//! transformation group, and reduction to the separable and inseparable
//! normal forms.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::parse::{parse_ratfunc, parse_xy};
use crate::field::{Field, FieldDescriptor, FieldJson, GfField, Poly, RatFunc};

#[derive(Clone, PartialEq, Debug)]
pub struct HyperellipticModel {
    /// `a0, a1, a2, a3`
    pub a: [RatFunc; 4],
    /// `b0, ..., b6`
    pub b: [RatFunc; 7],
    pub base: FieldDescriptor,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub enum SeparabilityKind {
    SeparableType,
    InseparableType,
}

fn zeros<const N: usize>(f: GfField) -> [RatFunc; N] {
    std::array::from_fn(|_| RatFunc::zero(f))
}

fn poly_of(coeffs: &[RatFunc], f: GfField) -> Poly<RatFunc> {
    Poly::from_coeffs(coeffs.to_vec(), RatFunc::zero(f))
}

fn coeffs_of<const N: usize>(p: &Poly<RatFunc>, f: GfField) -> Result<[RatFunc; N]> {
    if p.degree().is_some_and(|d| d >= N) {
        return Err(Error::Invalid(format!("polynomial degree exceeds {}", N - 1)));
    }
    let mut out = zeros::<N>(f);
    for (i, c) in p.coeffs().iter().enumerate() {
        out[i] = c.clone();
    }
    Ok(out)
}

impl HyperellipticModel {
    /// Checks that all coefficients live over `base` (constants when the base
    /// is a finite field).
    pub fn new(a: [RatFunc; 4], b: [RatFunc; 7], base: FieldDescriptor) -> Result<Self> {
        for c in a.iter().chain(b.iter()) {
            if c.field() != base.gf {
                return Err(Error::Field(format!("coefficient {c} is not over {}", base.gf.name())));
            }
            if !base.transcendental && c.as_constant().is_none() {
                return Err(Error::Field(format!("coefficient {c} involves s but the base field is {}", base.name())));
            }
        }
        Ok(HyperellipticModel { a, b, base })
    }

    pub fn field(&self) -> GfField {
        self.base.gf
    }

    pub fn a_poly(&self) -> Poly<RatFunc> {
        poly_of(&self.a, self.field())
    }

    pub fn b_poly(&self) -> Poly<RatFunc> {
        poly_of(&self.b, self.field())
    }

    /// `b'(x) = b1 + b3 x^2 + b5 x^4`.
    pub fn b_prime(&self) -> Poly<RatFunc> {
        self.b_poly().derivative()
    }

    pub fn separability_kind(&self) -> Result<SeparabilityKind> {
        if !self.a_poly().is_zero() {
            Ok(SeparabilityKind::SeparableType)
        } else if !self.b_prime().is_zero() {
            Ok(SeparabilityKind::InseparableType)
        } else {
            Err(Error::NotSeparable)
        }
    }

    /// True for `a = a2 x^2 + a0`, `b = b6 x^6 + b4 x^4 + b0`.
    pub fn is_separable_normal_form(&self) -> bool {
        [&self.a[1], &self.a[3], &self.b[1], &self.b[2], &self.b[3], &self.b[5]].iter().all(|c| c.is_zero())
    }

    /// True for `a = 0`, `b5 = 1`.
    pub fn is_inseparable_normal_form(&self) -> bool {
        self.a.iter().all(|c| c.is_zero()) && self.b[5].is_one_elem()
    }

    /// Absolute irreducibility for models in normal form. In separable normal
    /// form this is the sufficient criterion `b6 != 0` and `(a0, a2) != 0`.
    pub fn is_absolutely_irreducible(&self) -> Result<bool> {
        if self.is_inseparable_normal_form() {
            return Ok(true);
        }
        if self.is_separable_normal_form() {
            let a_nonzero = !self.a[0].is_zero() || !self.a[2].is_zero();
            return Ok(!self.b[6].is_zero() && a_nonzero);
        }
        Err(Error::NotNormalized("absolute irreducibility needs a normal form".into()))
    }

    pub fn apply(&self, t: &ModelTransformation) -> Result<HyperellipticModel> {
        apply_transformation(self, t)
    }

    /// `y^2 + (a)*y + (b) = 0`
    pub fn to_text(&self) -> String {
        format!("y^2 + ({})*y + ({}) = 0", self.a_poly().to_text("x"), self.b_poly().to_text("x"))
    }

    /// Parses `lhs = rhs` (or a bare `lhs`, read as `lhs = 0`) and reads off
    /// `a` and `b`. The coefficient of `y^2` must be 1.
    pub fn parse_text(src: &str, base: FieldDescriptor) -> Result<Self> {
        let f = base.gf;
        let (lhs, rhs, off) = match src.find('=') {
            Some(i) => (&src[..i], &src[i + 1..], i + 1),
            None => (src, "0", 0),
        };
        let mut poly = parse_xy(lhs, f)?;
        let r = parse_xy(rhs, f).map_err(|e| match e {
            Error::Parse { pos, msg } => Error::Parse { pos: pos + off, msg },
            other => other,
        })?;
        for (k, v) in r {
            let sum = match poly.get(&k) {
                Some(w) => w + &v,
                None => v,
            };
            if sum.is_zero() {
                poly.remove(&k);
            } else {
                poly.insert(k, sum);
            }
        }
        let mut a = zeros::<4>(f);
        let mut b = zeros::<7>(f);
        let mut lead = RatFunc::zero(f);
        for ((i, j), c) in poly {
            match (i, j) {
                (0, 2) => lead = c,
                (i, 1) if i <= 3 => a[i as usize] = c,
                (i, 0) if i <= 6 => b[i as usize] = c,
                _ => return Err(Error::parse(0, format!("term x^{i}*y^{j} does not fit y^2 + a(x)*y + b(x)"))),
            }
        }
        if !lead.is_one_elem() {
            return Err(Error::parse(0, "coefficient of y^2 must be 1"));
        }
        HyperellipticModel::new(a, b, base)
    }

    pub fn to_json(&self) -> ModelJson {
        ModelJson {
            a: self.a.iter().map(|c| c.to_string()).collect(),
            b: self.b.iter().map(|c| c.to_string()).collect(),
            field: self.base.to_json(),
        }
    }

    pub fn from_json(j: &ModelJson) -> Result<Self> {
        let base = j.field.descriptor()?;
        if j.a.len() != 4 || j.b.len() != 7 {
            return Err(Error::Invalid("expected 4 a-coefficients and 7 b-coefficients".into()));
        }
        let mut a = zeros::<4>(base.gf);
        let mut b = zeros::<7>(base.gf);
        for (dst, src) in a.iter_mut().zip(&j.a) {
            *dst = parse_ratfunc(src, base.gf)?;
        }
        for (dst, src) in b.iter_mut().zip(&j.b) {
            *dst = parse_ratfunc(src, base.gf)?;
        }
        HyperellipticModel::new(a, b, base)
    }
}

impl fmt::Display for HyperellipticModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

/// JSON schema `{"a": [a0..a3], "b": [b0..b6], "field": {...}}`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ModelJson {
    pub a: Vec<String>,
    pub b: Vec<String>,
    pub field: FieldJson,
}

/// Substitution `x_old = (α11 x + α12)/(α21 x + α22)`,
/// `y_old = (β y + γ(x)) / (α21 x + α22)^3`.
#[derive(Clone, PartialEq, Debug)]
pub struct ModelTransformation {
    /// `[α11, α12, α21, α22]`
    pub mobius: [RatFunc; 4],
    pub beta: RatFunc,
    /// `γ0, ..., γ3`
    pub gamma: [RatFunc; 4],
}

impl ModelTransformation {
    pub fn identity(f: GfField) -> Self {
        let (z, o) = (RatFunc::zero(f), RatFunc::one(f));
        ModelTransformation { mobius: [o.clone(), z.clone(), z, o.clone()], beta: o, gamma: zeros(f) }
    }

    pub fn mobius(m: [RatFunc; 4]) -> Self {
        let f = m[0].field();
        ModelTransformation { mobius: m, ..Self::identity(f) }
    }

    /// `x_old = α x + δ`, `y_old = β y`.
    pub fn affine(alpha: RatFunc, delta: RatFunc, beta: RatFunc) -> Self {
        let f = alpha.field();
        let mut t = Self::mobius([alpha, delta, RatFunc::zero(f), RatFunc::one(f)]);
        t.beta = beta;
        t
    }

    /// `y_old = y + γ(x)`.
    pub fn shear(gamma: [RatFunc; 4]) -> Self {
        let f = gamma[0].field();
        ModelTransformation { gamma, ..Self::identity(f) }
    }

    pub fn field(&self) -> GfField {
        self.beta.field()
    }

    pub fn det(&self) -> RatFunc {
        let m = &self.mobius;
        &m[0] * &m[3] + &m[1] * &m[2]
    }

    pub fn validate(&self) -> Result<()> {
        if self.det().is_zero() {
            return Err(Error::InvalidTransformation("singular Möbius matrix".into()));
        }
        if self.beta.is_zero() {
            return Err(Error::InvalidTransformation("beta = 0".into()));
        }
        Ok(())
    }

    /// Numerator `p = α11 x + α12` and denominator `l = α21 x + α22`.
    fn p_l(&self) -> (Poly<RatFunc>, Poly<RatFunc>) {
        let f = self.field();
        let m = &self.mobius;
        (poly_of(&[m[1].clone(), m[0].clone()], f), poly_of(&[m[3].clone(), m[2].clone()], f))
    }

    /// `Σ c_i p^i l^(d-i)`, i.e. `l^d c(p/l)`.
    fn homogenize(&self, c: &[RatFunc], d: u32) -> Poly<RatFunc> {
        let (p, l) = self.p_l();
        let mut acc = Poly::zero(RatFunc::zero(self.field()));
        for (i, ci) in c.iter().enumerate() {
            if ci.is_zero() {
                continue;
            }
            let term = &p.pow(i as u32) * &l.pow(d - i as u32);
            acc = &acc + &term.scale(ci);
        }
        acc
    }

    /// The transformation equal to applying `self` and then `next`.
    pub fn then(&self, next: &ModelTransformation) -> ModelTransformation {
        let f = self.field();
        let (m1, m2) = (&self.mobius, &next.mobius);
        let mobius = [
            &m1[0] * &m2[0] + &m1[1] * &m2[2],
            &m1[0] * &m2[1] + &m1[1] * &m2[3],
            &m1[2] * &m2[0] + &m1[3] * &m2[2],
            &m1[2] * &m2[1] + &m1[3] * &m2[3],
        ];
        let beta = &self.beta * &next.beta;
        let g2 = poly_of(&next.gamma, f).scale(&self.beta);
        let g1 = next.homogenize(&self.gamma, 3);
        let gamma = coeffs_of::<4>(&(&g2 + &g1), f).expect("cubic");
        ModelTransformation { mobius, beta, gamma }
    }

    pub fn inverse(&self) -> Result<ModelTransformation> {
        self.validate()?;
        let f = self.field();
        let di = self.det().inv().unwrap();
        let m = &self.mobius;
        let mobius = [&m[3] * &di, &m[1] * &di, &m[2] * &di, &m[0] * &di];
        let beta = self.beta.inv().unwrap();
        let mut inv = ModelTransformation { mobius, beta: beta.clone(), gamma: zeros(f) };
        let g = inv.homogenize(&self.gamma, 3).scale(&beta);
        inv.gamma = coeffs_of::<4>(&g, f).expect("cubic");
        Ok(inv)
    }

    /// Rescaling by the 𝔾m-action: `(cM, c^3 β, c^3 γ)` induces the same map
    /// on models.
    pub fn rescaled(&self, c: &RatFunc) -> ModelTransformation {
        let c3 = c.pow(3);
        ModelTransformation {
            mobius: self.mobius.clone().map(|m| m * c.clone()),
            beta: &self.beta * &c3,
            gamma: self.gamma.clone().map(|g| g * c3.clone()),
        }
    }
}

/// New coefficients after substituting `t` into `m`:
/// `a = β^-1 l^3 ǎ(p/l)` and `b = β^-2 (l^6 b̌(p/l) + γ^2 + l^3 ǎ(p/l) γ)`.
pub fn apply_transformation(m: &HyperellipticModel, t: &ModelTransformation) -> Result<HyperellipticModel> {
    t.validate()?;
    let f = m.field();
    if t.field() != f {
        return Err(Error::InvalidTransformation("field mismatch".into()));
    }
    let bi = t.beta.inv().unwrap();
    let a_h = t.homogenize(&m.a, 3);
    let b_h = t.homogenize(&m.b, 6);
    let g = poly_of(&t.gamma, f);
    let a_new = a_h.scale(&bi);
    let b_new = (&(&b_h + &(&g * &g)) + &(&a_h * &g)).scale(&bi.sq());
    HyperellipticModel::new(coeffs_of(&a_new, f)?, coeffs_of(&b_new, f)?, m.base)
}

/// `y^2 + (a2 x^2 + a0) y + b6 x^6 + b4 x^4 + b0 = 0`.
#[derive(Clone, PartialEq, Debug)]
pub struct SeparableNormalForm {
    pub a0: RatFunc,
    pub a2: RatFunc,
    pub b0: RatFunc,
    pub b4: RatFunc,
    pub b6: RatFunc,
    pub base: FieldDescriptor,
}

impl SeparableNormalForm {
    /// From the tuple `(a0, a2, b0, b4, b6)`.
    pub fn new(t: [RatFunc; 5], base: FieldDescriptor) -> Self {
        let [a0, a2, b0, b4, b6] = t;
        SeparableNormalForm { a0, a2, b0, b4, b6, base }
    }

    pub fn tuple(&self) -> [RatFunc; 5] {
        [self.a0.clone(), self.a2.clone(), self.b0.clone(), self.b4.clone(), self.b6.clone()]
    }

    pub fn to_model(&self) -> HyperellipticModel {
        let f = self.base.gf;
        let mut a = zeros::<4>(f);
        let mut b = zeros::<7>(f);
        a[0] = self.a0.clone();
        a[2] = self.a2.clone();
        b[0] = self.b0.clone();
        b[4] = self.b4.clone();
        b[6] = self.b6.clone();
        HyperellipticModel { a, b, base: self.base }
    }

    pub fn from_model(m: &HyperellipticModel) -> Result<Self> {
        if !m.is_separable_normal_form() {
            return Err(Error::NotNormalized("expected a = a2 x^2 + a0, b = b6 x^6 + b4 x^4 + b0".into()));
        }
        Ok(SeparableNormalForm::new(
            [m.a[0].clone(), m.a[2].clone(), m.b[0].clone(), m.b[4].clone(), m.b[6].clone()],
            m.base,
        ))
    }
}

/// `y^2 + b(x) = 0` with `b5 = 1`.
#[derive(Clone, PartialEq, Debug)]
pub struct InseparableNormalForm {
    pub b: [RatFunc; 7],
    pub base: FieldDescriptor,
}

impl InseparableNormalForm {
    pub fn to_model(&self) -> HyperellipticModel {
        HyperellipticModel { a: zeros(self.base.gf), b: self.b.clone(), base: self.base }
    }

    pub fn from_model(m: &HyperellipticModel) -> Result<Self> {
        if !m.is_inseparable_normal_form() {
            return Err(Error::NotNormalized("expected a = 0 and b5 = 1".into()));
        }
        Ok(InseparableNormalForm { b: m.b.clone(), base: m.base })
    }
}

#[derive(Clone, PartialEq, Debug)]
pub enum NormalFormKind {
    Separable(SeparableNormalForm),
    Inseparable(InseparableNormalForm),
    /// The reduction stopped; `model` is the partially reduced model and
    /// `residual` the coefficient that could not be removed, if any.
    Obstructed {
        reason: String,
        residual: Option<RatFunc>,
        model: Box<HyperellipticModel>,
    },
}

#[derive(Clone, PartialEq, Debug)]
pub struct NormalFormOutcome {
    pub kind: NormalFormKind,
    /// Applying this to the input model reproduces the normal form (or the
    /// partially reduced model when obstructed).
    pub transformation: ModelTransformation,
}

/// Möbius map sending `r` to infinity: `x_old = r + 1/x`.
fn send_to_infinity(r: RatFunc) -> ModelTransformation {
    let f = r.field();
    ModelTransformation::mobius([r, RatFunc::one(f), RatFunc::one(f), RatFunc::zero(f)])
}

fn obstructed(
    reason: &str,
    residual: Option<RatFunc>,
    model: HyperellipticModel,
    t: ModelTransformation,
) -> NormalFormOutcome {
    NormalFormOutcome {
        kind: NormalFormKind::Obstructed { reason: reason.into(), residual, model: Box::new(model) },
        transformation: t,
    }
}

/// Moves the roots of `a` so that `a = a2 x^2 + a0`: the simple root goes to
/// infinity, or all three roots go there when `a` has a triple root.
fn normalize_a(m: &HyperellipticModel) -> Result<std::result::Result<ModelTransformation, String>> {
    let f = m.field();
    let [a0, a1, a2, a3] = m.a.clone();
    if !a3.is_zero() {
        let a = m.a_poly();
        let g = a.gcd(&a.derivative());
        if g.degree() != Some(2) {
            return Ok(Err("no double tangent structure".into()));
        }
        // a / (a3 g) is monic linear x + r; r is the simple (or triple) root
        let q = a.scale(&a3.inv().unwrap()).exact_div(&g).expect("gcd divides");
        let r = q.coeff(0);
        debug_assert!(a.eval(&r).is_zero());
        return Ok(Ok(send_to_infinity(r)));
    }
    if !a2.is_zero() {
        if a1.is_zero() {
            return Ok(Ok(ModelTransformation::identity(f)));
        }
        return Ok(Err("no double tangent structure".into()));
    }
    if !a1.is_zero() {
        return Ok(Ok(send_to_infinity(&a0 * &a1.inv().unwrap())));
    }
    Ok(Ok(ModelTransformation::identity(f)))
}

/// Reduction to `a = a2 x^2 + a0`, `b = b6 x^6 + b4 x^4 + b0`.
pub fn reduce_to_separable_normal_form(m: &HyperellipticModel) -> Result<NormalFormOutcome> {
    if m.separability_kind()? != SeparabilityKind::SeparableType {
        return Err(Error::WrongType("a = 0; use the inseparable normal form".into()));
    }
    let f = m.field();
    let t1 = match normalize_a(m)? {
        Ok(t) => t,
        Err(reason) => return Ok(obstructed(&reason, None, m.clone(), ModelTransformation::identity(f))),
    };
    let m1 = apply_transformation(m, &t1)?;
    debug_assert!(m1.a[1].is_zero() && m1.a[3].is_zero());
    let [a0, _, a2, _] = m1.a.clone();
    let b = &m1.b;
    // With β = 1 and M = id: b ↦ b + γ^2 + a γ.
    let z = RatFunc::zero(f);
    let gamma = if !a2.is_zero() {
        let a2i = a2.inv().unwrap();
        let g3 = &b[5] * &a2i;
        let g1 = &(&b[3] + &(&a0 * &g3)) * &a2i;
        let g0 = &(&b[2] + &g1.sq()) * &a2i;
        [g0, g1, z, g3]
    } else {
        if !b[5].is_zero() {
            return Ok(obstructed("a2 = 0 requires b5 = 0", Some(b[5].clone()), m1, t1));
        }
        let a0i = a0.inv().unwrap();
        let g3 = &b[3] * &a0i;
        let g1 = &b[1] * &a0i;
        let g2 = &(&b[2] + &g1.sq()) * &a0i;
        [z, g1, g2, g3]
    };
    let t = t1.then(&ModelTransformation::shear(gamma));
    let m2 = apply_transformation(m, &t)?;
    if !m2.b[1].is_zero() {
        return Ok(obstructed("residual b1 != 0", Some(m2.b[1].clone()), m2, t));
    }
    debug_assert!(m2.is_separable_normal_form());
    Ok(NormalFormOutcome { kind: NormalFormKind::Separable(SeparableNormalForm::from_model(&m2)?), transformation: t })
}

/// Reduction to `a = 0`, `b5 = 1`.
pub fn reduce_to_inseparable_normal_form(m: &HyperellipticModel) -> Result<NormalFormOutcome> {
    if m.separability_kind()? != SeparabilityKind::InseparableType {
        return Err(Error::WrongType("a != 0; use the separable normal form".into()));
    }
    let f = m.field();
    let (z, o) = (RatFunc::zero(f), RatFunc::one(f));
    let candidates = [
        ModelTransformation::identity(f),
        ModelTransformation::mobius([z.clone(), o.clone(), o.clone(), z.clone()]),
        ModelTransformation::mobius([o.clone(), o.clone(), o, z]),
    ];
    for t in candidates {
        let m1 = apply_transformation(m, &t)?;
        let b5 = m1.b[5].clone();
        if b5.is_zero() {
            continue;
        }
        // x ↦ b5 x, y ↦ b5^3 y scales b5 by b5^5 / b5^6
        let scale = ModelTransformation::affine(b5.clone(), RatFunc::zero(f), b5.pow(3));
        let t = t.then(&scale);
        let m2 = apply_transformation(m, &t)?;
        return Ok(NormalFormOutcome {
            kind: NormalFormKind::Inseparable(InseparableNormalForm::from_model(&m2)?),
            transformation: t,
        });
    }
    unreachable!("b' != 0 leaves an odd coefficient under one of x, 1/x, 1+1/x")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gf2s() -> (FieldDescriptor, RatFunc) {
        let f = GfField::new(1).unwrap();
        (FieldDescriptor::rational(f), RatFunc::s(f))
    }

    fn model(src: &str) -> HyperellipticModel {
        HyperellipticModel::parse_text(src, gf2s().0).unwrap()
    }

    #[test]
    fn parse_and_print() {
        let m = model("y^2 + x^2*y + x^6 + x^5 + s = 0");
        assert_eq!(m.to_text(), "y^2 + (x^2)*y + (x^6+x^5+s) = 0");
        assert_eq!(HyperellipticModel::parse_text(&m.to_text(), m.base).unwrap(), m);
        assert!(HyperellipticModel::parse_text("y^3 + x", m.base).is_err());
        assert!(HyperellipticModel::parse_text("y^2 + x^7", m.base).is_err());
        let j = serde_json::to_string(&m.to_json()).unwrap();
        let back: ModelJson = serde_json::from_str(&j).unwrap();
        assert_eq!(HyperellipticModel::from_json(&back).unwrap(), m);
    }

    #[test]
    fn separability() {
        assert_eq!(model("y^2 + x^2*y + s").separability_kind().unwrap(), SeparabilityKind::SeparableType);
        assert_eq!(model("y^2 + x^5 + s").separability_kind().unwrap(), SeparabilityKind::InseparableType);
        assert_eq!(model("y^2 + x^6 + s").separability_kind().unwrap_err(), Error::NotSeparable);
    }

    #[test]
    fn inversion_reverses_coefficients() {
        let m = model("y^2 + (s*x^3 + x + 1)*y + x^6 + s*x^5 + x^2 + s^2");
        let f = m.field();
        let (z, o) = (RatFunc::zero(f), RatFunc::one(f));
        let t = ModelTransformation::mobius([z.clone(), o.clone(), o, z]);
        let r = m.apply(&t).unwrap();
        for i in 0..4 {
            assert_eq!(r.a[i], m.a[3 - i]);
        }
        for i in 0..7 {
            assert_eq!(r.b[i], m.b[6 - i]);
        }
    }

    #[test]
    fn affine_scaling_of_a() {
        // a(x) ↦ β^-1 a(αx + δ)
        let m = model("y^2 + (x^3 + s*x + 1)*y + x^5");
        let (_, s) = gf2s();
        let f = m.field();
        let (alpha, delta, beta) = (s.clone() + RatFunc::one(f), s.pow(2), s.clone());
        let r = m.apply(&ModelTransformation::affine(alpha.clone(), delta.clone(), beta.clone())).unwrap();
        let lin = poly_of(&[delta, alpha], f);
        let expect = m.a_poly().compose(&lin).scale(&beta.inv().unwrap());
        assert_eq!(r.a_poly(), expect);
    }

    #[test]
    fn separable_reduction_example() {
        let m = model("y^2 + x^2*y + x^6 + x^5 + s");
        let out = reduce_to_separable_normal_form(&m).unwrap();
        let NormalFormKind::Separable(nf) = &out.kind else { panic!("{:?}", out.kind) };
        let (_, s) = gf2s();
        assert_eq!(out.transformation.gamma[3], RatFunc::one(m.field()));
        assert!(nf.b6.is_zero());
        assert_eq!(nf.b0, s);
        assert_eq!(m.apply(&out.transformation).unwrap(), nf.to_model());
    }

    #[test]
    fn separable_reduction_identity_on_normal_forms() {
        let m = model("y^2 + (x^2 + s)*y + s*x^6 + x^4 + s^3");
        let out = reduce_to_separable_normal_form(&m).unwrap();
        assert_eq!(out.transformation, ModelTransformation::identity(m.field()));
        assert!(matches!(out.kind, NormalFormKind::Separable(ref nf) if nf.to_model() == m));
    }

    #[test]
    fn separable_reduction_obstructed() {
        let out = reduce_to_separable_normal_form(&model("y^2 + y + x^5 + s")).unwrap();
        assert!(matches!(out.kind, NormalFormKind::Obstructed { residual: Some(ref r), .. } if r.is_one_elem()));
        // three distinct roots x(x+1)(x+s)
        let out = reduce_to_separable_normal_form(&model("y^2 + x*(x+1)*(x+s)*y + s")).unwrap();
        assert!(matches!(out.kind, NormalFormKind::Obstructed { residual: None, .. }));
    }

    #[test]
    fn separable_reduction_cubic_with_double_root() {
        // a = (x+1)^2 (x+s): simple root s goes to infinity
        let m = model("y^2 + (x+1)^2*(x+s)*y + x^5 + s*x^3 + x^2 + s");
        let out = reduce_to_separable_normal_form(&m).unwrap();
        let r = m.apply(&out.transformation).unwrap();
        assert!(r.a[1].is_zero() && r.a[3].is_zero());
        assert!(!r.a[2].is_zero());
        match out.kind {
            NormalFormKind::Separable(nf) => assert_eq!(nf.to_model(), r),
            NormalFormKind::Obstructed { model, .. } => assert_eq!(*model, r),
            _ => unreachable!(),
        }
    }

    #[test]
    fn inseparable_reduction_examples() {
        for src in ["y^2 + x^5 + s", "y^2 + x + s", "y^2 + x^3 + s", "y^2 + s*x^5 + x^2"] {
            let m = model(src);
            let out = reduce_to_inseparable_normal_form(&m).unwrap();
            let NormalFormKind::Inseparable(nf) = &out.kind else { panic!() };
            assert!(nf.b[5].is_one_elem(), "{src}");
            assert_eq!(m.apply(&out.transformation).unwrap(), nf.to_model());
        }
        let out = reduce_to_inseparable_normal_form(&model("y^2 + x^5 + s")).unwrap();
        assert_eq!(out.transformation, ModelTransformation::identity(GfField::new(1).unwrap()));
    }

    #[test]
    fn absolute_irreducibility() {
        assert!(model("y^2 + x^2*y + x^6 + s").is_absolutely_irreducible().unwrap());
        assert!(model("y^2 + x^5 + s").is_absolutely_irreducible().unwrap());
        assert!(!model("y^2 + x^6 + s").is_absolutely_irreducible().unwrap());
        assert!(model("y^2 + x*y + x^6").is_absolutely_irreducible().is_err());
    }
}
