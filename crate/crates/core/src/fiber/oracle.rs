//! Independent checks on the fiber classifier: the Jacobian criterion in both
//! charts, δ-invariants by iterated quadratic transforms, and the modular
//! invariant of the elliptic normalization from Weierstrass coefficients.

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use super::{ConePoint, FiberCurve, FiberParams};
use crate::error::{Error, Result};
use crate::field::gf::MAX_DEGREE;
use crate::field::{gf_sqrt, GfElem, GfField, Poly};

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord, Serialize)]
pub enum Chart {
    /// `u0 != 0`: coordinates `u = u1/u0`, `v = v/u0`.
    W,
    /// `u3 != 0`: coordinates `ŭ = u2/u3`, `v̆ = v/u3`.
    WBreve,
}

/// Bivariate polynomial over GF(2^k), `x^i y^j ↦ c`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Poly2 {
    field: GfField,
    terms: BTreeMap<(u32, u32), GfElem>,
}

/// `C(n, k) mod 2` by Lucas.
fn binom_odd(n: u32, k: u32) -> bool {
    k <= n && (k & !n) == 0
}

impl Poly2 {
    pub fn zero(field: GfField) -> Self {
        Poly2 { field, terms: BTreeMap::new() }
    }

    pub fn from_terms(field: GfField, terms: impl IntoIterator<Item = ((u32, u32), GfElem)>) -> Self {
        let mut p = Poly2::zero(field);
        for (e, c) in terms {
            p.add_term(e, c);
        }
        p
    }

    pub fn add_term(&mut self, e: (u32, u32), c: GfElem) {
        let v = self.terms.get(&e).copied().unwrap_or(self.field.zero()) + c;
        if v.is_zero() {
            self.terms.remove(&e);
        } else {
            self.terms.insert(e, v);
        }
    }

    pub fn field(&self) -> GfField {
        self.field
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(u32, u32), &GfElem)> {
        self.terms.iter()
    }

    pub fn eval(&self, x: GfElem, y: GfElem) -> GfElem {
        self.terms.iter().fold(self.field.zero(), |acc, (&(i, j), &c)| acc + c * x.pow(i as u64) * y.pow(j as u64))
    }

    pub fn dx(&self) -> Self {
        Poly2::from_terms(
            self.field,
            self.terms.iter().filter(|((i, _), _)| i % 2 == 1).map(|(&(i, j), &c)| ((i - 1, j), c)),
        )
    }

    pub fn dy(&self) -> Self {
        Poly2::from_terms(
            self.field,
            self.terms.iter().filter(|((_, j), _)| j % 2 == 1).map(|(&(i, j), &c)| ((i, j - 1), c)),
        )
    }

    /// `f(x + p, y + q)`
    pub fn translate(&self, p: GfElem, q: GfElem) -> Self {
        let mut out = Poly2::zero(self.field);
        for (&(i, j), &c) in &self.terms {
            for a in (0..=i).filter(|a| binom_odd(i, *a)) {
                let ca = c * p.pow((i - a) as u64);
                for b in (0..=j).filter(|b| binom_odd(j, *b)) {
                    out.add_term((a, b), ca * q.pow((j - b) as u64));
                }
            }
        }
        out
    }

    /// Lowest total degree of a term.
    pub fn multiplicity(&self) -> Option<u32> {
        self.terms.keys().map(|(i, j)| i + j).min()
    }

    pub fn lift(&self, big: GfField) -> Result<Self> {
        let e = self.field.embedding_into(big)?;
        Ok(Poly2::from_terms(big, self.terms.iter().map(|(k, c)| (*k, e.map(*c)))))
    }

    /// Strict transform in the chart `y = x (y1 + t)`.
    fn blow_slope(&self, m: u32, t: GfElem) -> Self {
        Poly2::from_terms(self.field, self.terms.iter().map(|(&(i, j), &c)| ((i + j - m, j), c)))
            .translate(self.field.zero(), t)
    }

    /// Strict transform in the chart `x = x1 y`.
    fn blow_vertical(&self, m: u32) -> Self {
        Poly2::from_terms(self.field, self.terms.iter().map(|(&(i, j), &c)| ((i, i + j - m), c)))
    }

    /// `f_m(1, t)` for the leading form of degree `m`.
    fn slope_poly(&self, m: u32) -> Poly<GfElem> {
        let mut c = vec![self.field.zero(); m as usize + 1];
        for (&(i, j), &v) in &self.terms {
            if i + j == m {
                c[j as usize] = v;
            }
        }
        Poly::from_coeffs(c, self.field.zero())
    }
}

/// `v^2 + A(u) v + B(u)` in the given chart, with `x = u`, `y = v`.
pub fn chart_equation(curve: &FiberCurve, chart: Chart) -> Poly2 {
    let f = curve.field();
    let (a, b) = curve.chart_polys(chart);
    let mut p = Poly2::zero(f);
    p.add_term((0, 2), f.one());
    for (i, c) in a.coeffs().iter().enumerate() {
        p.add_term((i as u32, 1), *c);
    }
    for (i, c) in b.coeffs().iter().enumerate() {
        p.add_term((i as u32, 0), *c);
    }
    p
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Locus {
    /// Every point of the fiber is singular.
    NonReduced,
    Points(Vec<ConePoint>),
}

impl Locus {
    pub fn points(&self) -> Option<&[ConePoint]> {
        match self {
            Locus::NonReduced => None,
            Locus::Points(p) => Some(p),
        }
    }
}

fn is_non_reduced(curve: &FiberCurve) -> bool {
    let (a, b) = curve.chart_polys(Chart::W);
    a.is_zero() && b.derivative().is_zero()
}

fn chart_point(chart: Chart, u: GfElem, v: GfElem) -> ConePoint {
    match chart {
        Chart::W => ConePoint::from_w(u, v),
        Chart::WBreve => ConePoint::from_w_breve(u, v),
    }
}

/// Singular points with coordinates in the curve's field, by solving
/// `f = f_u = f_v = 0` in both charts. In characteristic 2, `f_v = A(u)`, and
/// where `A` vanishes the fiber equation reads `v^2 = B(u)`.
pub fn jacobian_singular_locus(curve: &FiberCurve) -> Locus {
    if is_non_reduced(curve) {
        return Locus::NonReduced;
    }
    let mut out = BTreeSet::new();
    for chart in [Chart::W, Chart::WBreve] {
        let (a, b) = curve.chart_polys(chart);
        let (da, db) = (a.derivative(), b.derivative());
        let candidates = if a.is_zero() { db.roots_gf() } else { a.roots_gf() };
        for u in candidates {
            let v = gf_sqrt(b.eval(&u));
            let fu = da.eval(&u) * v + db.eval(&u);
            if fu.is_zero() {
                out.insert(chart_point(chart, u, v));
            }
        }
    }
    Locus::Points(out.into_iter().collect())
}

/// Brute-force version of [`jacobian_singular_locus`] over all points of
/// both charts. Intended for small fields.
pub fn jacobian_singular_locus_exhaustive(curve: &FiberCurve) -> Locus {
    if is_non_reduced(curve) {
        return Locus::NonReduced;
    }
    let f = curve.field();
    let mut out = BTreeSet::new();
    for chart in [Chart::W, Chart::WBreve] {
        let p = chart_equation(curve, chart);
        let (px, py) = (p.dx(), p.dy());
        for u in f.elements() {
            for v in f.elements() {
                if p.eval(u, v).is_zero() && px.eval(u, v).is_zero() && py.eval(u, v).is_zero() {
                    out.insert(chart_point(chart, u, v));
                }
            }
        }
    }
    Locus::Points(out.into_iter().collect())
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
pub struct LocalDelta {
    pub delta: u32,
    pub branches: u32,
    pub multiplicity: u32,
}

/// δ-invariant, branch count and multiplicity at a point of a reduced fiber,
/// from the multiplicity sequence of iterated blowups
/// (`δ = Σ m_i (m_i - 1) / 2` over infinitely near points).
pub fn local_delta(params: &FiberParams, point: &ConePoint) -> Result<LocalDelta> {
    let mut curve = params.curve();
    if point.field() != curve.field() {
        curve = curve.lift(point.field())?;
    }
    if is_non_reduced(&curve) {
        return Err(Error::NonReduced);
    }
    let (chart, u, v) = point.chart().ok_or_else(|| Error::Invalid("the cone vertex lies on no fiber".into()))?;
    local_delta_poly(&chart_equation(&curve, chart).translate(u, v))
}

/// [`local_delta`] for a plane curve germ `f(x, y) = 0` at the origin.
pub fn local_delta_poly(f: &Poly2) -> Result<LocalDelta> {
    let m = f.multiplicity().ok_or(Error::NonReduced)?;
    if m == 0 {
        return Err(Error::Invalid("the point does not lie on the curve".into()));
    }
    let (delta, branches) = resolve(f, 0)?;
    Ok(LocalDelta { delta, branches, multiplicity: m })
}

fn resolve(f: &Poly2, depth: u32) -> Result<(u32, u32)> {
    if depth > 64 {
        return Err(Error::NonReduced);
    }
    let m = f.multiplicity().ok_or(Error::NonReduced)?;
    if m <= 1 {
        return Ok((0, 1));
    }
    let mut f = f.clone();
    let mut h = f.slope_poly(m);
    if let Some(d) = h.splitting_degree().filter(|d| *d > 1) {
        let k = f.field().degree() * d;
        if k > MAX_DEGREE {
            return Err(Error::Unsupported(format!("tangent directions need GF(2^{k})")));
        }
        f = f.lift(GfField::new(k)?)?;
        h = f.slope_poly(m);
    }
    let mut delta = m * (m - 1) / 2;
    let mut branches = 0;
    for t in h.roots_gf() {
        let (d, b) = resolve(&f.blow_slope(m, t), depth + 1)?;
        delta += d;
        branches += b;
    }
    if h.coeff(m as usize).is_zero() {
        let (d, b) = resolve(&f.blow_vertical(m), depth + 1)?;
        delta += d;
        branches += b;
    }
    Ok((delta, branches))
}

/// Square root of the j-invariant of the elliptic curve
/// `Y^2 + (a2 Z + a0 b6) Y = Z^3 + b4 Z^2 + b0 b6^2`, obtained from
/// `y^2 + (a0 + a2 z) y = b6 z^3 + b4 z^2 + b0` by `(z, y) ↦ (Z/b6, Y/b6)`.
///
/// Standard Weierstrass quantities for `Y^2 + a1 XY + a3 Y = X^3 + a2 X^2 + a4 X + a6`,
/// reduced mod 2: `b2 = a1^2`, `b4 = a1 a3`, `b6 = a3^2`,
/// `b8 = a1^2 a6 + a1 a3 a4 + a2 a3^2 + a4^2`, `c4 = b2^2`,
/// `Δ = b2^2 b8 + b6^2 + b2 b4 b6`, `j = c4^3 / Δ`.
pub fn weierstrass_j(t: &[GfElem; 5]) -> Result<GfElem> {
    let [a0, a2, b0, b4, b6] = *t;
    let f = a0.field();
    let (w1, w2, w3, w4, w6) = (a2, b4, a0 * b6, f.zero(), b0 * b6 * b6);
    let q2 = w1 * w1;
    let q4 = w1 * w3;
    let q6 = w3 * w3;
    let q8 = w1 * w1 * w6 + w1 * w3 * w4 + w2 * w3 * w3 + w4 * w4;
    let c4 = q2 * q2;
    let disc = q2 * q2 * q8 + q6 * q6 + q2 * q4 * q6;
    let di = disc.inv().ok_or(Error::NotGeometricallyElliptic)?;
    Ok(gf_sqrt(c4.pow(3) * di))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fiber::{classify_fiber, Family};

    fn f2() -> GfField {
        GfField::new(1).unwrap()
    }

    fn germ(f: GfField, terms: &[((u32, u32), u64)]) -> Poly2 {
        Poly2::from_terms(f, terms.iter().map(|(e, c)| (*e, f.elem(*c))))
    }

    #[test]
    fn standard_germs() {
        let f = f2();
        // v^2 = u^3
        let d = local_delta_poly(&germ(f, &[((0, 2), 1), ((3, 0), 1)])).unwrap();
        assert_eq!((d.delta, d.branches, d.multiplicity), (1, 1, 2));
        let d = local_delta_poly(&germ(f, &[((0, 2), 1), ((5, 0), 1)])).unwrap();
        assert_eq!((d.delta, d.branches), (2, 1));
        // v^2 + uv + u^3: node
        let d = local_delta_poly(&germ(f, &[((0, 2), 1), ((1, 1), 1), ((3, 0), 1)])).unwrap();
        assert_eq!((d.delta, d.branches), (1, 2));
        // v^2 + uv + u^2 has tangent directions in GF(4)
        let d = local_delta_poly(&germ(f, &[((0, 2), 1), ((1, 1), 1), ((2, 0), 1), ((3, 0), 1)])).unwrap();
        assert_eq!((d.delta, d.branches), (1, 2));
        // (v + u^2)(v + u^2 + u^3): oscnode
        let d = local_delta_poly(&germ(f, &[((0, 2), 1), ((3, 1), 1), ((4, 0), 1), ((5, 0), 1)])).unwrap();
        assert_eq!((d.delta, d.branches), (3, 2));
    }

    #[test]
    fn tacnode_by_blowup() {
        let f = f2();
        let p = FiberParams::z([f.one(); 5]);
        let pt = classify_fiber(&[f.one(); 5]).points[0].point;
        assert_eq!(pt.to_string(), "(1:1:1:1:1)");
        let d = local_delta(&p, &pt).unwrap();
        assert_eq!((d.delta, d.branches, d.multiplicity), (2, 2, 2));
    }

    #[test]
    fn jacobian_examples() {
        let f = f2();
        let z = |b: [u64; 5]| FiberParams::z(b.map(|x| f.elem(x))).curve();
        let l = jacobian_singular_locus(&z([0, 1, 1, 0, 1]));
        assert_eq!(format!("{:?}", l.points().unwrap()), "[(1:0:0:0:1)]");
        let l = jacobian_singular_locus(&z([0, 1, 1, 0, 0]));
        assert_eq!(format!("{:?}", l.points().unwrap()), "[(0:0:0:1:0), (1:0:0:0:1)]");
        assert_eq!(jacobian_singular_locus(&z([0, 0, 1, 0, 1])), Locus::NonReduced);
        assert_eq!(
            jacobian_singular_locus_exhaustive(&z([0, 1, 1, 0, 0])),
            jacobian_singular_locus(&z([0, 1, 1, 0, 0]))
        );
    }

    #[test]
    fn v_family_oracles() {
        let f = f2();
        let mut v = vec![f.zero(); 6];
        v[3] = f.one();
        let p = FiberParams::new(Family::V, v).unwrap();
        let l = jacobian_singular_locus(&p.curve());
        assert_eq!(l.points().unwrap().len(), 2);
        for pt in l.points().unwrap() {
            let d = local_delta(&p, pt).unwrap();
            assert_eq!((d.delta, d.branches), (1, 1));
        }
    }

    #[test]
    fn weierstrass_examples() {
        let f = f2();
        assert_eq!(weierstrass_j(&[0, 1, 1, 0, 1].map(|b| f.elem(b))).unwrap(), f.one());
        let g = GfField::new(8).unwrap();
        let t = [5u64, 0, 77, 3, 200].map(|b| g.elem(b));
        assert!(weierstrass_j(&t).unwrap().is_zero());
        assert!(weierstrass_j(&[1, 1, 1, 1, 1].map(|b| f.elem(b))).is_err());
    }
}
