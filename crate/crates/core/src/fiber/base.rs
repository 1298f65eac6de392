//! The classifying map `B → A^5` of a separable normal form over GF(2^k)(s),
//! and its reduction to the X or Y slice.

use serde::Serialize;

use super::{Family, FiberParams};
use crate::error::{Error, Result};
use crate::field::{solve_artin_schreier, Field, GfElem, RatFunc};
use crate::model::SeparableNormalForm;

/// Coefficients of a fiber family as rational functions of `s`.
#[derive(Clone, PartialEq, Debug)]
pub struct FiberMap {
    pub family: Family,
    pub coeffs: Vec<RatFunc>,
    /// `w` such that reaching this slice needs a root of `λ^2 + λ = w`, when
    /// that root is not in K (a separable quadratic base extension).
    pub extension: Option<RatFunc>,
}

impl FiberMap {
    /// Fiber over `s = σ`, or `None` at a pole of a coefficient.
    pub fn specialize(&self, sigma: GfElem) -> Option<FiberParams> {
        let v: Option<Vec<GfElem>> = self.coeffs.iter().map(|c| c.eval(sigma)).collect();
        FiberParams::new(self.family, v?).ok()
    }
}

#[derive(Clone, Serialize)]
struct FiberMapJson {
    family: Family,
    coeffs: Vec<String>,
    extension: Option<String>,
}

impl Serialize for FiberMap {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        FiberMapJson {
            family: self.family,
            coeffs: self.coeffs.iter().map(|c| c.to_string()).collect(),
            extension: self.extension.as_ref().map(|w| format!("l^2 + l = {w}")),
        }
        .serialize(s)
    }
}

#[derive(Clone, PartialEq, Debug, Serialize)]
pub struct BaseExtension {
    pub z: FiberMap,
    pub reduced: FiberMap,
}

/// `(a0, a2, b0, b4, b6)` as a map into A^5, plus the X slice (`a2 = 1`,
/// `b4 = 0`) or Y slice (`a2 = 0`, `a0 = 1`, `b0 = 0`).
///
/// With `a2 != 0`, scaling `y` by `a2` gives `a2 = 1`; then `γ = λ x^2 + λ a0`
/// with `λ^2 + λ = b4` kills `b4` and replaces `b0` by `b0 + a0^2 b4`. With
/// `a2 = 0`, scaling by `a0` and `γ = λ`, `λ^2 + λ = b0` kills `b0`.
pub fn base_extension_params(nf: &SeparableNormalForm) -> Result<BaseExtension> {
    let SeparableNormalForm { a0, a2, b0, b4, b6, .. } = nf;
    let z = FiberMap {
        family: Family::Z,
        coeffs: vec![a0.clone(), a2.clone(), b0.clone(), b4.clone(), b6.clone()],
        extension: None,
    };
    let reduced = if let Some(ai) = a2.inv() {
        let ai2 = ai.sq();
        let (a0n, b0n, b4n, b6n) = (a0 * &ai, b0 * &ai2, b4 * &ai2, b6 * &ai2);
        let ext = solve_artin_schreier(&b4n).is_none().then(|| b4n.clone());
        FiberMap { family: Family::X, coeffs: vec![a0n.clone(), &b0n + &(&a0n.sq() * &b4n), b6n], extension: ext }
    } else if let Some(ai) = a0.inv() {
        let ai2 = ai.sq();
        let b0n = b0 * &ai2;
        let ext = solve_artin_schreier(&b0n).is_none().then_some(b0n);
        FiberMap { family: Family::Y, coeffs: vec![b4 * &ai2, b6 * &ai2], extension: ext }
    } else {
        return Err(Error::Obstructed("a0 = a2 = 0: every fiber is non-reduced".into()));
    };
    Ok(BaseExtension { z, reduced })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fiber::{classify_fiber, classify_fiber_sub, FiberKind};
    use crate::field::parse::parse_ratfunc;
    use crate::field::{FieldDescriptor, GfField};

    fn nf(t: [&str; 5]) -> SeparableNormalForm {
        nf_over(1, t)
    }

    fn nf_over(k: u32, t: [&str; 5]) -> SeparableNormalForm {
        let f = GfField::new(k).unwrap();
        SeparableNormalForm::new(t.map(|s| parse_ratfunc(s, f).unwrap()), FieldDescriptor::rational(f))
    }

    #[test]
    fn plumbing() {
        let b = base_extension_params(&nf(["1", "0", "0", "0", "s"])).unwrap();
        let texts: Vec<String> = b.z.coeffs.iter().map(|c| c.to_string()).collect();
        assert_eq!(texts, ["1", "0", "0", "0", "s"]);
        assert_eq!(b.reduced.family, Family::Y);
        let f = GfField::new(1).unwrap();
        let fib = b.z.specialize(f.one()).unwrap();
        assert_eq!(classify_fiber(&fib.z_tuple().unwrap()).kind, FiberKind::EllipticCusp);
    }

    #[test]
    fn case_ii_to_x() {
        let b = base_extension_params(&nf(["0", "1", "s", "0", "1"])).unwrap();
        assert_eq!(b.reduced.family, Family::X);
        let texts: Vec<String> = b.reduced.coeffs.iter().map(|c| c.to_string()).collect();
        assert_eq!(texts, ["0", "s", "1"]);
        assert_eq!(b.reduced.extension, None);
    }

    #[test]
    fn slices_agree_with_z_on_fiber_class() {
        // b4/a2^2 = s: λ^2 + λ = s has no solution in K
        let b = base_extension_params(&nf_over(3, ["s", "s+1", "1", "s^3+s", "s^2+1"])).unwrap();
        assert!(b.reduced.extension.is_some());
        let f = GfField::new(3).unwrap();
        for sigma in f.elements() {
            if let (Some(zp), Some(xp)) = (b.z.specialize(sigma), b.reduced.specialize(sigma)) {
                let zc = classify_fiber(&zp.z_tuple().unwrap());
                let xc = classify_fiber_sub(&xp).unwrap();
                assert_eq!(zc.kind, xc.kind, "σ = {sigma}");
                assert_eq!(zc.j, xc.j);
            }
        }
    }
}
