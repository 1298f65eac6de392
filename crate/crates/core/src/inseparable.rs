//! Genus of inseparable-type fields `y^2 = b(x)` with `b5 = 1`.
//!
//! Singular primes sit over the zeros of `b'(x) = x^4 + b3 x^2 + b1`. When
//! `b3 != 0` the polynomial factors as `(x^2 + c)(x^2 + d)` with `c, d` the
//! roots of `T^2 + b3 T + b1`; if those roots only exist after a constant
//! field extension we compute over GF(2^2k)(s) instead.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::squares::{is_fourth_power_with_witness, is_square};
use crate::field::{solve_quadratic_char2, Field, FieldDescriptor, GfField, RatFunc};
use crate::model::InseparableNormalForm;
use crate::separable::{GenusReport, PrimeDegree};

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
pub enum InseparableCase {
    #[serde(rename = "b3nz")]
    B3Nonzero,
    /// `b1 ∈ K \ K^2`
    #[serde(rename = "b3z-i")]
    B3ZeroI,
    /// `b1 ∈ K^2 \ K^4`
    #[serde(rename = "b3z-ii")]
    B3ZeroII,
    /// `b1 ∈ K^4`
    #[serde(rename = "b3z-iii")]
    B3ZeroIII,
}

impl InseparableCase {
    pub fn tag(&self) -> &'static str {
        match self {
            InseparableCase::B3Nonzero => "b3nz",
            InseparableCase::B3ZeroI => "b3z-i",
            InseparableCase::B3ZeroII => "b3z-ii",
            InseparableCase::B3ZeroIII => "b3z-iii",
        }
    }

    pub fn of(nf: &InseparableNormalForm) -> Self {
        let b1 = &nf.b[1];
        if !nf.b[3].is_zero() {
            InseparableCase::B3Nonzero
        } else if !is_square(b1) {
            InseparableCase::B3ZeroI
        } else if is_fourth_power_with_witness(b1).is_none() {
            InseparableCase::B3ZeroII
        } else {
            InseparableCase::B3ZeroIII
        }
    }
}

/// The roots `c, d` of `T^2 + b3 T + b1` together with the normal form they
/// were computed over (the input, or its lift to GF(2^2k)(s)).
#[derive(Clone, PartialEq, Debug)]
pub struct SplitBPrime {
    pub nf: InseparableNormalForm,
    pub c: RatFunc,
    pub d: RatFunc,
    /// 1 when `c, d ∈ K`, 2 when they needed the quadratic constant extension.
    pub extension_degree: u32,
}

/// Lift a normal form along the constant extension GF(2^k) ⊂ GF(2^km).
pub fn lift_inseparable(nf: &InseparableNormalForm, big: GfField) -> Result<InseparableNormalForm> {
    let e = nf.base.gf.embedding_into(big)?;
    Ok(InseparableNormalForm {
        b: nf.b.clone().map(|c| c.lift(&e)),
        base: FieldDescriptor { gf: big, transcendental: nf.base.transcendental },
    })
}

/// Factor `b'` over K or over the quadratic constant extension. A geometric
/// splitting field is reported as unsupported.
pub fn split_b_prime(nf: &InseparableNormalForm) -> Result<SplitBPrime> {
    if nf.b[3].is_zero() {
        return Err(Error::Invalid("b3 = 0: b' is a fourth power".into()));
    }
    let roots = solve_quadratic_char2(&nf.b[3], &nf.b[1]);
    if let [c, d] = &roots[..] {
        return Ok(SplitBPrime { nf: nf.clone(), c: c.clone(), d: d.clone(), extension_degree: 1 });
    }
    let k = nf.base.gf.degree();
    if 2 * k <= crate::field::gf::MAX_DEGREE {
        let big = GfField::new(2 * k)?;
        let lifted = lift_inseparable(nf, big)?;
        let roots = solve_quadratic_char2(&lifted.b[3], &lifted.b[1]);
        if let [c, d] = &roots[..] {
            return Ok(SplitBPrime { nf: lifted, c: c.clone(), d: d.clone(), extension_degree: 2 });
        }
        return Err(Error::Unsupported("the roots of T^2 + b3 T + b1 generate a non-constant extension of K".into()));
    }
    Err(Error::Unsupported(format!(
        "splitting T^2 + b3 T + b1 needs GF(2^{}) which exceeds the supported degree",
        2 * k
    )))
}

/// `b0 + b2 c + b4 c^2 + b6 c^3`, the square of `y` at `x^2 = c`.
pub fn even_part_at(b: &[RatFunc; 7], c: &RatFunc) -> RatFunc {
    b[0].clone() + b[2].clone() * c.clone() + b[4].clone() * c.sq() + b[6].clone() * c.pow(3)
}

#[derive(Clone, PartialEq, Debug)]
pub struct InseparableAnalysis {
    pub case: InseparableCase,
    /// Present when `b3 != 0`.
    pub split: Option<SplitBPrime>,
    pub report: GenusReport,
}

fn prime(name: String, delta: u32, residue: &str) -> PrimeDegree {
    PrimeDegree { prime: name, delta, residue: residue.into() }
}

pub fn analyze_inseparable(nf: &InseparableNormalForm) -> Result<InseparableAnalysis> {
    if !nf.b[5].is_one_elem() || nf.b.iter().any(|c| c.field() != nf.base.gf) {
        return Err(Error::NotNormalized("expected b5 = 1".into()));
    }
    let case = InseparableCase::of(nf);
    let b = &nf.b;
    let mut split = None;
    let primes = match case {
        InseparableCase::B3Nonzero => {
            let sp = split_b_prime(nf)?;
            let mut out = Vec::new();
            for (name, c) in [("x^2 = c", &sp.c), ("x^2 = d", &sp.d)] {
                let delta = if !is_square(c) || !is_square(&even_part_at(&sp.nf.b, c)) { 1 } else { 0 };
                let residue = if is_square(c) { "K" } else { "K(c^(1/2))" };
                out.push(prime(name.into(), delta, residue));
            }
            split = Some(sp);
            out
        }
        InseparableCase::B3ZeroI => vec![prime("x^4 = b1".into(), 2, "K(b1^(1/4))")],
        InseparableCase::B3ZeroII => {
            let c2 = b[1].clone();
            let both = is_square(&(b[0].clone() + b[4].clone() * c2.clone()))
                && is_square(&(b[2].clone() + b[6].clone() * c2));
            let delta = if both { 0 } else { 2 };
            vec![prime("x^2 = b1^(1/2)".into(), delta, "K(b1^(1/4))")]
        }
        InseparableCase::B3ZeroIII => {
            let c = is_fourth_power_with_witness(&b[1]).unwrap();
            let c2 = c.sq();
            let sum = even_part_at(b, &c2);
            let delta = if !is_square(&sum) {
                2
            } else if !is_square(&(b[2].clone() + b[6].clone() * c2.sq())) {
                1
            } else {
                0
            };
            vec![prime("x = b1^(1/4)".into(), delta, "K")]
        }
    };
    let g = primes.iter().map(|p| p.delta).sum();
    Ok(InseparableAnalysis { case, split, report: GenusReport { g, g_bar: 0, g1: 0, prime_degrees: primes } })
}

pub fn genus_inseparable(nf: &InseparableNormalForm) -> Result<GenusReport> {
    analyze_inseparable(nf).map(|a| a.report)
}

/// JSON report for an inseparable field.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct InseparableReport {
    pub case: InseparableCase,
    pub genus: u32,
    pub genus_bar: u32,
    pub g1: u32,
    pub extension_degree: u32,
    pub prime_degrees: Vec<PrimeDegree>,
}

pub fn inseparable_report(nf: &InseparableNormalForm) -> Result<InseparableReport> {
    let a = analyze_inseparable(nf)?;
    Ok(InseparableReport {
        case: a.case,
        genus: a.report.g,
        genus_bar: 0,
        g1: 0,
        extension_degree: a.split.as_ref().map_or(1, |s| s.extension_degree),
        prime_degrees: a.report.prime_degrees,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::parse::parse_x_poly;

    fn nf_over(k: u32, src: &str) -> InseparableNormalForm {
        let f = GfField::new(k).unwrap();
        let c = parse_x_poly(src, f).unwrap();
        let mut b: [RatFunc; 7] = std::array::from_fn(|_| RatFunc::zero(f));
        for (i, v) in c.into_iter().enumerate() {
            b[i] = v;
        }
        InseparableNormalForm { b, base: FieldDescriptor::rational(f) }
    }

    fn nf(src: &str) -> InseparableNormalForm {
        nf_over(1, src)
    }

    #[test]
    fn desk_examples() {
        let a = analyze_inseparable(&nf("x^5 + s")).unwrap();
        assert_eq!((a.case, a.report.g, a.report.g_bar), (InseparableCase::B3ZeroIII, 2, 0));
        let a = analyze_inseparable(&nf("x^5 + s^2*x")).unwrap();
        assert_eq!((a.case, a.report.g), (InseparableCase::B3ZeroII, 0));
        let a = analyze_inseparable(&nf("x^5 + x^3 + s")).unwrap();
        assert_eq!((a.case, a.report.g), (InseparableCase::B3Nonzero, 2));
        let sp = a.split.unwrap();
        assert_eq!((sp.c.to_string(), sp.d.to_string()), ("0".into(), "1".into()));
    }

    #[test]
    fn case_i_is_always_two() {
        let a = analyze_inseparable(&nf("x^5 + s*x + x^2")).unwrap();
        assert_eq!((a.case, a.report.g), (InseparableCase::B3ZeroI, 2));
    }

    #[test]
    fn case_iii_intermediate() {
        // c = 0: Σ = b0 = 1 ∈ K^2, b2 = s ∉ K^2 -> δ = 1
        assert_eq!(genus_inseparable(&nf("x^5 + s*x^2 + 1")).unwrap().g, 1);
        assert_eq!(genus_inseparable(&nf("x^5 + s^2*x^2 + 1")).unwrap().g, 0);
    }

    #[test]
    fn roots_in_quadratic_constant_extension() {
        // T^2 + T + 1 has no root over GF(2) but splits over GF(4)
        let a = analyze_inseparable(&nf("x^5 + x^3 + x + s")).unwrap();
        let sp = a.split.unwrap();
        assert_eq!(sp.extension_degree, 2);
        assert_eq!(sp.c.clone() * sp.d.clone(), RatFunc::one(sp.c.field()));
        assert_eq!(a.report.g, 2);
    }

    #[test]
    fn geometric_splitting_is_unsupported() {
        // T^2 + T + s: s is not in the Artin-Schreier image, not even after
        // constant extension
        let e = genus_inseparable(&nf("x^5 + x^3 + s*x")).unwrap_err();
        assert!(matches!(e, Error::Unsupported(_)));
    }

    #[test]
    fn not_normalized() {
        assert!(matches!(genus_inseparable(&nf("x^3 + s")), Err(Error::NotNormalized(_))));
    }
}
