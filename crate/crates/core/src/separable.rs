//! Discriminant, modular invariant and genus of separable-type fields
//! `y^2 + (a2 x^2 + a0) y + b6 x^6 + b4 x^4 + b0 = 0`.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::squares::is_square;
use crate::field::{is_square_with_witness, Field, RatFunc};
use crate::model::{ModelTransformation, SeparableNormalForm};

#[derive(Clone, PartialEq, Debug)]
pub struct SeparableInvariants {
    pub delta: RatFunc,
    /// `Δ = b6^2 Δ2`
    pub delta2: RatFunc,
    /// `a2^12 / Δ`, undefined when `Δ = 0`.
    pub j1: Option<RatFunc>,
    /// `j1^(1/2)` when it lies in K.
    pub jbar: Option<RatFunc>,
}

impl SeparableInvariants {
    /// `j1^(1/2)` as text: the witness when it exists, else `sqrt(j1)`.
    pub fn jbar_text(&self) -> String {
        match (&self.j1, &self.jbar) {
            (_, Some(w)) => w.to_string(),
            (Some(j), None) => format!("sqrt({j})"),
            (None, None) => "-".into(),
        }
    }
}

pub fn delta2(nf: &SeparableNormalForm) -> RatFunc {
    let SeparableNormalForm { a0, a2, b0, b4, b6, .. } = nf;
    a2.pow(6) * b0.clone()
        + a0.pow(2) * a2.pow(4) * b4.clone()
        + a0.pow(3) * a2.pow(3) * b6.clone()
        + a0.pow(4) * b6.pow(2)
}

pub fn discriminant_delta(nf: &SeparableNormalForm) -> SeparableInvariants {
    let d2 = delta2(nf);
    let delta = nf.b6.sq() * d2.clone();
    let j1 = delta.inv().map(|di| nf.a2.pow(12) * di);
    let jbar = j1.as_ref().and_then(is_square_with_witness);
    SeparableInvariants { delta, delta2: d2, j1, jbar }
}

pub fn is_geometrically_elliptic(nf: &SeparableNormalForm) -> bool {
    !discriminant_delta(nf).delta.is_zero()
}

/// One candidate singular prime and its singularity degree.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct PrimeDegree {
    pub prime: String,
    pub delta: u32,
    /// Residue field description.
    pub residue: String,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct GenusReport {
    pub g: u32,
    pub g_bar: u32,
    pub g1: u32,
    pub prime_degrees: Vec<PrimeDegree>,
}

impl GenusReport {
    pub fn delta_sum(&self) -> u32 {
        self.prime_degrees.iter().map(|p| p.delta).sum()
    }
}

/// The candidate singular prime of a separable normal form.
pub fn separable_prime_name(nf: &SeparableNormalForm) -> String {
    if nf.a2.is_zero() {
        "x = infinity".into()
    } else {
        "x^2 = a0/a2".into()
    }
}

/// The genus-one exceptions: `j1 ∈ (K*)^2` and `a0 a2 ∈ K^2`, or `j1 = 0` and
/// `b6 ∈ K^2`.
pub fn genus_one_exception(nf: &SeparableNormalForm, inv: &SeparableInvariants) -> bool {
    if nf.a2.is_zero() {
        is_square(&nf.b6)
    } else {
        is_square(&inv.delta) && is_square(&(&nf.a0 * &nf.a2))
    }
}

pub fn genus_separable(nf: &SeparableNormalForm) -> Result<GenusReport> {
    let inv = discriminant_delta(nf);
    if inv.delta.is_zero() {
        return Err(Error::NotGeometricallyElliptic);
    }
    let delta = if genus_one_exception(nf, &inv) { 0 } else { 1 };
    let residue =
        if !nf.a2.is_zero() && !is_square(&(&nf.a0 * &nf.a2)) && inv.jbar.is_none() { "K(j1^(1/2))" } else { "K" };
    Ok(GenusReport {
        g: 1 + delta,
        g_bar: 1,
        g1: 1,
        prime_degrees: vec![PrimeDegree { prime: separable_prime_name(nf), delta, residue: residue.into() }],
    })
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
pub enum C2Case {
    #[serde(rename = "i")]
    I,
    #[serde(rename = "ii")]
    II,
    #[serde(rename = "iii")]
    III,
}

impl C2Case {
    pub fn tag(&self) -> &'static str {
        match self {
            C2Case::I => "i",
            C2Case::II => "ii",
            C2Case::III => "iii",
        }
    }
}

#[derive(Clone, PartialEq, Debug)]
pub struct C2Classification {
    pub case: C2Case,
    /// Case i: `a0 = 1, a2 = 0`. Case ii: `a0 = 0, a2 = 1`. Case iii: `a2 = 1`.
    pub nf: SeparableNormalForm,
    /// Maps the input normal form to `nf`.
    pub transformation: ModelTransformation,
    /// The genus-two condition of the case.
    pub valid: bool,
}

pub fn cor_c2_case(nf: &SeparableNormalForm) -> Result<C2Classification> {
    if !is_geometrically_elliptic(nf) {
        return Err(Error::NotGeometricallyElliptic);
    }
    let f = nf.base.gf;
    let (z, o) = (RatFunc::zero(f), RatFunc::one(f));
    let m = nf.to_model();
    if nf.a2.is_zero() {
        let t = ModelTransformation::affine(o.clone(), z, nf.a0.clone());
        let out = SeparableNormalForm::from_model(&m.apply(&t)?)?;
        let valid = !is_square(&out.b6);
        return Ok(C2Classification { case: C2Case::I, nf: out, transformation: t, valid });
    }
    let ratio = &nf.a0 * &nf.a2.inv().unwrap();
    if let Some(delta) = is_square_with_witness(&ratio) {
        // x ↦ x + δ kills a0, β = a2 makes a = x^2, then γ removes odd terms
        let t = ModelTransformation::affine(o, delta, nf.a2.clone());
        let m1 = m.apply(&t)?;
        let b = &m1.b;
        // a = x^2: b ↦ b + γ^2 + x^2 γ
        let g3 = b[5].clone();
        let g1 = b[3].clone();
        let g0 = &b[2] + &g1.sq();
        let shear = ModelTransformation::shear([g0, g1, z, g3]);
        let t = t.then(&shear);
        let out = SeparableNormalForm::from_model(&m.apply(&t)?)?;
        debug_assert!(out.a0.is_zero() && out.a2.is_one_elem());
        let valid = !is_square(&out.b0) && !out.b6.is_zero();
        return Ok(C2Classification { case: C2Case::II, nf: out, transformation: t, valid });
    }
    let t = ModelTransformation::affine(o, z, nf.a2.clone());
    let out = SeparableNormalForm::from_model(&m.apply(&t)?)?;
    let valid = !is_square(&out.a0) && is_geometrically_elliptic(&out);
    Ok(C2Classification { case: C2Case::III, nf: out, transformation: t, valid })
}

/// JSON report for a separable field.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct SeparableReport {
    pub delta: String,
    pub delta2: String,
    pub j1: String,
    pub jbar: String,
    pub genus: Option<u32>,
    pub genus_bar: u32,
    pub case: Option<C2Case>,
    pub valid: Option<bool>,
    pub geometrically_elliptic: bool,
}

pub fn separable_report(nf: &SeparableNormalForm) -> SeparableReport {
    let inv = discriminant_delta(nf);
    let genus = genus_separable(nf).ok();
    let c2 = cor_c2_case(nf).ok();
    SeparableReport {
        delta: inv.delta.to_string(),
        delta2: inv.delta2.to_string(),
        j1: inv.j1.as_ref().map_or("-".into(), |j| j.to_string()),
        jbar: inv.jbar_text(),
        genus: genus.map(|g| g.g),
        genus_bar: 1,
        case: c2.as_ref().map(|c| c.case),
        valid: c2.map(|c| c.valid),
        geometrically_elliptic: !inv.delta.is_zero(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{FieldDescriptor, GfField};

    fn nf(t: [&str; 5]) -> SeparableNormalForm {
        let f = GfField::new(1).unwrap();
        let v = t.map(|s| crate::field::parse::parse_ratfunc(s, f).unwrap());
        SeparableNormalForm::new(v, FieldDescriptor::rational(f))
    }

    #[test]
    fn delta_examples() {
        let inv = discriminant_delta(&nf(["0", "1", "1", "0", "1"]));
        assert!(inv.delta.is_one_elem());
        let n = nf(["s", "0", "s^2+1", "s", "s+1"]);
        let expect = n.a0.pow(4) * n.b6.pow(4);
        assert_eq!(discriminant_delta(&n).delta, expect);
        assert!(discriminant_delta(&nf(["0"; 5])).delta.is_zero());
        let inv = discriminant_delta(&nf(["1"; 5]));
        assert!(inv.delta2.is_zero());
        assert_eq!(inv.delta, inv.delta2.clone() * nf(["1"; 5]).b6.sq());
    }

    #[test]
    fn elliptic_examples() {
        assert!(is_geometrically_elliptic(&nf(["0", "1", "1", "0", "1"])));
        assert!(!is_geometrically_elliptic(&nf(["1"; 5])));
        assert!(!is_geometrically_elliptic(&nf(["0", "0", "s", "1", "1"])));
    }

    #[test]
    fn genus_examples() {
        let r = genus_separable(&nf(["1", "0", "0", "0", "s"])).unwrap();
        assert_eq!((r.g, r.g_bar, r.g1), (2, 1, 1));
        assert_eq!(genus_separable(&nf(["1", "0", "0", "0", "s^2"])).unwrap().g, 1);
        for (b0, b4, b6) in [("1", "0", "1"), ("s", "1", "s^3"), ("0", "s", "1")] {
            let n = nf(["s", "1", b0, b4, b6]);
            if is_geometrically_elliptic(&n) {
                assert_eq!(genus_separable(&n).unwrap().g, 2);
            }
        }
        assert_eq!(genus_separable(&nf(["1"; 5])).unwrap_err(), Error::NotGeometricallyElliptic);
    }

    #[test]
    fn c2_examples() {
        let c = cor_c2_case(&nf(["1", "0", "0", "0", "s"])).unwrap();
        assert_eq!((c.case, c.valid), (C2Case::I, true));
        let c = cor_c2_case(&nf(["0", "1", "s", "0", "1"])).unwrap();
        assert_eq!((c.case, c.valid), (C2Case::II, true));
        assert_eq!(c.nf, nf(["0", "1", "s", "0", "1"]));
        let n = nf(["s", "1", "1", "0", "1"]);
        let c = cor_c2_case(&n).unwrap();
        assert_eq!(c.case, C2Case::III);
        assert_eq!(c.valid, is_geometrically_elliptic(&n));
    }

    #[test]
    fn c2_case_ii_shift() {
        // a0/a2 = s^2 is a square: shift by s
        let n = nf(["s^2", "1", "s", "1", "s+1"]);
        let c = cor_c2_case(&n).unwrap();
        assert_eq!(c.case, C2Case::II);
        assert!(c.nf.a0.is_zero() && c.nf.a2.is_one_elem());
        assert_eq!(n.to_model().apply(&c.transformation).unwrap(), c.nf.to_model());
        let e = genus_one_exception(&n, &discriminant_delta(&n));
        assert_eq!(e, is_square(&c.nf.b0));
    }

    #[test]
    fn report_json() {
        let r = separable_report(&nf(["1", "0", "0", "0", "s"]));
        let j = serde_json::to_value(&r).unwrap();
        assert_eq!(j["genus"], 2);
        assert_eq!(j["case"], "i");
        assert_eq!(j["j1"], "0");
        assert_eq!(j["valid"], true);
    }
}
