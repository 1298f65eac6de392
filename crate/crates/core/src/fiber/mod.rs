//! Closed fibers of the quasi-elliptic genus-two fibrations over GF(2^k).
//!
//! A fiber of the family `Z → A^5` is the curve
//! `v^2 + (a0 u0 + a2 u2) v + b0 u0^2 + b4 u2^2 + b6 u3^2 = 0` on the cone
//! `S ⊂ P^4` over the twisted cubic. The subfamilies X, Y are linear slices of
//! Z; the family V carries the inseparable-type curves `v^2 = b(u)`.

mod base;
mod oracle;

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::{gf_sqrt, GfElem, GfField, Poly};

pub use base::{base_extension_params, BaseExtension, FiberMap};
pub use oracle::{
    chart_equation, jacobian_singular_locus, jacobian_singular_locus_exhaustive, local_delta, weierstrass_j, Chart,
    LocalDelta, Locus, Poly2,
};

/// Homogeneous point `(u0:u1:u2:u3:v)` of P^4, scaled so that the first
/// nonzero coordinate is 1.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ConePoint {
    coords: [GfElem; 5],
}

impl ConePoint {
    pub fn new(coords: [GfElem; 5]) -> Result<Self> {
        let Some(lead) = coords.iter().find(|c| !c.is_zero()) else {
            return Err(Error::Invalid("all coordinates vanish".into()));
        };
        let li = lead.inv().unwrap();
        Ok(ConePoint { coords: coords.map(|c| c * li) })
    }

    /// The point `(1 : u : u^2 : u^3 : v)` of the chart W.
    pub fn from_w(u: GfElem, v: GfElem) -> Self {
        let u2 = u * u;
        ConePoint { coords: [u.field().one(), u, u2, u2 * u, v] }
    }

    /// The point `(ŭ^3 : ŭ^2 : ŭ : 1 : v̆)` of the chart W̆.
    pub fn from_w_breve(u: GfElem, v: GfElem) -> Self {
        let u2 = u * u;
        ConePoint::new([u2 * u, u2, u, u.field().one(), v]).unwrap()
    }

    pub fn vertex(field: GfField) -> Self {
        let z = field.zero();
        ConePoint { coords: [z, z, z, z, field.one()] }
    }

    pub fn coords(&self) -> &[GfElem; 5] {
        &self.coords
    }

    pub fn field(&self) -> GfField {
        self.coords[0].field()
    }

    /// Rank of `(u0 u1 u2 / u1 u2 u3)` below 2.
    pub fn on_cone(&self) -> bool {
        let [u0, u1, u2, u3, _] = self.coords;
        (u0 * u2 + u1 * u1).is_zero() && (u0 * u3 + u1 * u2).is_zero() && (u1 * u3 + u2 * u2).is_zero()
    }

    /// The chart containing the point with its chart coordinates.
    pub fn chart(&self) -> Option<(Chart, GfElem, GfElem)> {
        let [u0, u1, u2, u3, v] = self.coords;
        if !u0.is_zero() {
            let i = u0.inv().unwrap();
            Some((Chart::W, u1 * i, v * i))
        } else if !u3.is_zero() {
            let i = u3.inv().unwrap();
            Some((Chart::WBreve, u2 * i, v * i))
        } else {
            None
        }
    }

    pub fn lift(&self, big: GfField) -> Result<Self> {
        let e = self.field().embedding_into(big)?;
        ConePoint::new(self.coords.map(|c| e.map(c)))
    }
}

impl fmt::Display for ConePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coords.iter().map(|c| c.to_string()).collect();
        write!(f, "({})", parts.join(":"))
    }
}

impl fmt::Debug for ConePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl Serialize for ConePoint {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize, PartialOrd, Ord)]
pub enum Family {
    Z,
    X,
    Y,
    V,
}

impl Family {
    pub fn arity(&self) -> usize {
        match self {
            Family::Z => 5,
            Family::X => 3,
            Family::Y => 2,
            Family::V => 6,
        }
    }

    pub fn coordinate_names(&self) -> &'static [&'static str] {
        match self {
            Family::Z => &["a0", "a2", "b0", "b4", "b6"],
            Family::X => &["a0", "b0", "b6"],
            Family::Y => &["b4", "b6"],
            Family::V => &["b0", "b1", "b2", "b3", "b4", "b6"],
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "Z" | "z" => Ok(Family::Z),
            "X" | "x" => Ok(Family::X),
            "Y" | "y" => Ok(Family::Y),
            "V" | "v" => Ok(Family::V),
            _ => Err(Error::Invalid(format!("unknown family {s:?}, expected Z, X, Y or V"))),
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct FiberParams {
    pub family: Family,
    pub coeffs: Vec<GfElem>,
}

impl FiberParams {
    pub fn new(family: Family, coeffs: Vec<GfElem>) -> Result<Self> {
        if coeffs.len() != family.arity() {
            return Err(Error::Invalid(format!(
                "family {family} takes {} parameters, got {}",
                family.arity(),
                coeffs.len()
            )));
        }
        let f = coeffs[0].field();
        if coeffs.iter().any(|c| c.field() != f) {
            return Err(Error::Invalid("parameters over different fields".into()));
        }
        Ok(FiberParams { family, coeffs })
    }

    pub fn z(t: [GfElem; 5]) -> Self {
        FiberParams { family: Family::Z, coeffs: t.to_vec() }
    }

    pub fn field(&self) -> GfField {
        self.coeffs[0].field()
    }

    /// `(a0, a2, b0, b4, b6)` for the families embedded in Z.
    pub fn z_tuple(&self) -> Option<[GfElem; 5]> {
        let f = self.field();
        let (z, o) = (f.zero(), f.one());
        let c = &self.coeffs;
        match self.family {
            Family::Z => Some([c[0], c[1], c[2], c[3], c[4]]),
            Family::X => Some([c[0], o, c[1], z, c[2]]),
            Family::Y => Some([o, z, z, c[0], c[1]]),
            Family::V => None,
        }
    }

    /// The curve `v^2 + a(u) v + b(u) = 0` in the chart W.
    pub fn curve(&self) -> FiberCurve {
        let f = self.field();
        let z = f.zero();
        match self.z_tuple() {
            Some([a0, a2, b0, b4, b6]) => FiberCurve { a: [a0, z, a2, z], b: [b0, z, z, z, b4, z, b6] },
            None => {
                let c = &self.coeffs;
                FiberCurve { a: [z; 4], b: [c[0], c[1], c[2], c[3], c[4], f.one(), c[5]] }
            }
        }
    }

    pub fn lift(&self, big: GfField) -> Result<Self> {
        let e = self.field().embedding_into(big)?;
        Ok(FiberParams { family: self.family, coeffs: self.coeffs.iter().map(|c| e.map(*c)).collect() })
    }

    pub fn params_text(&self) -> String {
        let v: Vec<String> = self.coeffs.iter().map(|c| c.to_string()).collect();
        v.join(",")
    }
}

/// `v^2 + a(u) v + b(u)` with `deg a <= 3`, `deg b <= 6`.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct FiberCurve {
    pub a: [GfElem; 4],
    pub b: [GfElem; 7],
}

impl FiberCurve {
    pub fn field(&self) -> GfField {
        self.b[0].field()
    }

    pub fn lift(&self, big: GfField) -> Result<Self> {
        let e = self.field().embedding_into(big)?;
        Ok(FiberCurve { a: self.a.map(|c| e.map(c)), b: self.b.map(|c| e.map(c)) })
    }

    /// `(A, B)` of the chart equation `v^2 + A(u) v + B(u)`.
    pub fn chart_polys(&self, chart: Chart) -> (Poly<GfElem>, Poly<GfElem>) {
        let z = self.field().zero();
        match chart {
            Chart::W => (Poly::from_coeffs(self.a.to_vec(), z), Poly::from_coeffs(self.b.to_vec(), z)),
            Chart::WBreve => {
                let mut a = self.a;
                a.reverse();
                let mut b = self.b;
                b.reverse();
                (Poly::from_coeffs(a.to_vec(), z), Poly::from_coeffs(b.to_vec(), z))
            }
        }
    }

    /// Value of the quadric at a point of P^4 lying on the cone.
    pub fn eval(&self, p: &ConePoint) -> GfElem {
        let (chart, u, v) = p.chart().expect("the vertex is not on any fiber");
        let (a, b) = self.chart_polys(chart);
        v * v + a.eval(&u) * v + b.eval(&u)
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
pub enum LocalType {
    #[serde(rename = "cusp")]
    Cusp,
    #[serde(rename = "node")]
    Node,
    #[serde(rename = "tacnode")]
    Tacnode,
    #[serde(rename = "ramphoid-cusp")]
    RamphoidCusp,
    /// Two smooth branches with contact of order three.
    #[serde(rename = "oscnode")]
    Oscnode,
}

impl LocalType {
    pub fn tag(&self) -> &'static str {
        match self {
            LocalType::Cusp => "cusp",
            LocalType::Node => "node",
            LocalType::Tacnode => "tacnode",
            LocalType::RamphoidCusp => "ramphoid-cusp",
            LocalType::Oscnode => "oscnode",
        }
    }

    /// `(δ, branches, multiplicity)`
    pub fn invariants(&self) -> (u32, u32, u32) {
        match self {
            LocalType::Cusp => (1, 1, 2),
            LocalType::Node => (1, 2, 2),
            LocalType::Tacnode => (2, 2, 2),
            LocalType::RamphoidCusp => (2, 1, 2),
            LocalType::Oscnode => (3, 2, 2),
        }
    }
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct SingularPointRecord {
    pub point: ConePoint,
    pub local: LocalType,
    pub delta: u32,
    pub branches: u32,
    pub multiplicity: u32,
    /// Intersection multiplicity of the two components of a non-integral
    /// fiber at this point.
    pub intersection: Option<u32>,
}

impl SingularPointRecord {
    fn new(point: ConePoint, local: LocalType, intersection: Option<u32>) -> Self {
        let (delta, branches, multiplicity) = local.invariants();
        SingularPointRecord { point, local, delta, branches, multiplicity, intersection }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
pub enum FiberKind {
    EllipticCusp,
    RationalTacnode,
    RationalCuspNode,
    RamphoidCusp,
    NonIntegralPair21,
    NonIntegralPairMult3,
    NonReducedDouble,
    TwoCusps,
}

impl FiberKind {
    pub fn integral(&self) -> bool {
        !matches!(self, FiberKind::NonIntegralPair21 | FiberKind::NonIntegralPairMult3 | FiberKind::NonReducedDouble)
    }

    /// Geometric genus of an integral fiber.
    pub fn g_bar(&self) -> u32 {
        u32::from(*self == FiberKind::EllipticCusp)
    }
}

impl fmt::Display for FiberKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct FiberClass {
    pub kind: FiberKind,
    /// Modular invariant of the normalization, for elliptic fibers.
    pub j: Option<GfElem>,
    pub integral: bool,
    /// Field the singular points are defined over.
    #[serde(serialize_with = "ser_field")]
    pub point_field: GfField,
    pub points: Vec<SingularPointRecord>,
}

fn ser_field<S: serde::Serializer>(f: &GfField, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&f.name())
}

impl FiberClass {
    pub fn delta_sum(&self) -> u32 {
        self.points.iter().map(|p| p.delta).sum()
    }
}

/// `a2^6 b0 + a0^2 a2^4 b4 + a0^3 a2^3 b6 + a0^4 b6^2`
pub fn fiber_delta2(t: &[GfElem; 5]) -> GfElem {
    let [a0, a2, b0, b4, b6] = *t;
    a2.pow(6) * b0 + a0.pow(2) * a2.pow(4) * b4 + a0.pow(3) * a2.pow(3) * b6 + a0.pow(4) * b6 * b6
}

/// `Δ = b6^2 Δ2`
pub fn fiber_delta(t: &[GfElem; 5]) -> GfElem {
    t[4] * t[4] * fiber_delta2(t)
}

/// The singular point over `a2 u^2 = a0`:
/// `(a2^(3/2) : a0^(1/2) a2 : a0 a2^(1/2) : a0^(3/2) : V)` with
/// `V^2 = b0 a2^3 + b4 a0^2 a2 + b6 a0^3`.
pub fn singular_point(t: &[GfElem; 5]) -> Result<ConePoint> {
    let [a0, a2, b0, b4, b6] = *t;
    if a0.is_zero() && a2.is_zero() {
        return Err(Error::NonReduced);
    }
    let (r0, r2) = (gf_sqrt(a0), gf_sqrt(a2));
    let v = gf_sqrt(b0 * a2.pow(3) + b4 * a0 * a0 * a2 + b6 * a0.pow(3));
    ConePoint::new([a2 * r2, r0 * a2, a0 * r2, a0 * r0, v])
}

fn at_infinity(f: GfField, v: GfElem) -> ConePoint {
    let z = f.zero();
    ConePoint::new([z, z, z, f.one(), v]).unwrap()
}

/// Decision tree for fibers of `Z → A^5`.
pub fn classify_fiber(t: &[GfElem; 5]) -> FiberClass {
    let [a0, a2, b0, b4, b6] = *t;
    let f = a0.field();
    let class = |kind: FiberKind, j: Option<GfElem>, points: Vec<SingularPointRecord>| FiberClass {
        kind,
        j,
        integral: kind.integral(),
        point_field: f,
        points,
    };
    if a0.is_zero() && a2.is_zero() {
        return class(FiberKind::NonReducedDouble, None, Vec::new());
    }
    let p = singular_point(t).unwrap();
    let delta = fiber_delta(t);
    if !delta.is_zero() {
        let j = a2.pow(6) * gf_sqrt(delta).inv().unwrap();
        return class(FiberKind::EllipticCusp, Some(j), vec![SingularPointRecord::new(p, LocalType::Cusp, None)]);
    }
    if !b6.is_zero() {
        // Δ2 = 0 here, and a2 = 0 would force Δ2 = a0^4 b6^2 != 0
        return class(FiberKind::RationalTacnode, None, vec![SingularPointRecord::new(p, LocalType::Tacnode, None)]);
    }
    let inf = at_infinity(f, f.zero());
    if !a2.is_zero() {
        if a2 * a2 * b0 != a0 * a0 * b4 {
            return class(
                FiberKind::RationalCuspNode,
                None,
                vec![
                    SingularPointRecord::new(p, LocalType::Cusp, None),
                    SingularPointRecord::new(inf, LocalType::Node, None),
                ],
            );
        }
        return class(
            FiberKind::NonIntegralPair21,
            None,
            vec![
                SingularPointRecord::new(p, LocalType::Tacnode, Some(2)),
                SingularPointRecord::new(inf, LocalType::Node, Some(1)),
            ],
        );
    }
    if !b4.is_zero() {
        class(FiberKind::RamphoidCusp, None, vec![SingularPointRecord::new(p, LocalType::RamphoidCusp, None)])
    } else {
        class(FiberKind::NonIntegralPairMult3, None, vec![SingularPointRecord::new(p, LocalType::Oscnode, Some(3))])
    }
}

/// Fibers of the inseparable-type family V: `v^2 = b(u)` with `b5 = 1`.
///
/// The singular points lie over the zeros of `b' = u^4 + b3 u^2 + b1`. When
/// `T^2 + b3 T + b1` has no root in GF(2^k) the points are reported over
/// GF(2^2k).
pub fn classify_fiber_v(p: &FiberParams) -> Result<FiberClass> {
    if p.family != Family::V {
        return Err(Error::Invalid("expected a V-family parameter tuple".into()));
    }
    let f = p.field();
    let (b1, b3) = (p.coeffs[1], p.coeffs[3]);
    if b3.is_zero() {
        let u = gf_sqrt(gf_sqrt(b1));
        let pt = v_point(&p.curve(), u);
        return Ok(FiberClass {
            kind: FiberKind::RamphoidCusp,
            j: None,
            integral: true,
            point_field: f,
            points: vec![SingularPointRecord::new(pt, LocalType::RamphoidCusp, None)],
        });
    }
    let quad =
        |field: GfField, b1: GfElem, b3: GfElem| Poly::from_coeffs(vec![b1, b3, field.one()], field.zero()).roots_gf();
    let mut curve = p.curve();
    let mut field = f;
    let mut roots = quad(f, b1, b3);
    if roots.len() < 2 {
        field = GfField::new(2 * f.degree())?;
        curve = curve.lift(field)?;
        let e = f.embedding_into(field)?;
        roots = quad(field, e.map(b1), e.map(b3));
    }
    let mut points: Vec<SingularPointRecord> =
        roots.iter().map(|c| SingularPointRecord::new(v_point(&curve, gf_sqrt(*c)), LocalType::Cusp, None)).collect();
    points.sort_by_key(|r| r.point);
    Ok(FiberClass { kind: FiberKind::TwoCusps, j: None, integral: true, point_field: field, points })
}

fn v_point(c: &FiberCurve, u: GfElem) -> ConePoint {
    let (_, b) = c.chart_polys(Chart::W);
    ConePoint::from_w(u, gf_sqrt(b.eval(&u)))
}

/// Dispatch on the family tag.
pub fn classify_fiber_sub(p: &FiberParams) -> Result<FiberClass> {
    match p.z_tuple() {
        Some(t) => Ok(classify_fiber(&t)),
        None => classify_fiber_v(p),
    }
}

/// One row of a sweep table.
#[derive(Clone, Debug, Serialize)]
pub struct FiberRow {
    pub family: Family,
    pub k: u32,
    pub params: Vec<String>,
    pub delta: String,
    pub delta2: String,
    pub class: FiberKind,
    pub integral: bool,
    pub j: String,
    pub points: Vec<SingularPointRecord>,
}

impl FiberRow {
    pub fn new(p: &FiberParams) -> Result<Self> {
        let c = classify_fiber_sub(p)?;
        let (delta, delta2) = match p.z_tuple() {
            Some(t) => (fiber_delta(&t).to_string(), fiber_delta2(&t).to_string()),
            None => ("-".into(), "-".into()),
        };
        Ok(FiberRow {
            family: p.family,
            k: p.field().degree(),
            params: p.coeffs.iter().map(|c| c.to_string()).collect(),
            delta,
            delta2,
            class: c.kind,
            integral: c.integral,
            j: c.j.map_or("-".into(), |j| j.to_string()),
            points: c.points,
        })
    }

    pub const CSV_HEADER: &'static str = "family,k,params,delta,delta2,class,integral,j,points";

    /// Parameters are `;`-separated; points are `point[type δ/branches/mult]`.
    pub fn to_csv(&self) -> String {
        let pts: Vec<String> = self
            .points
            .iter()
            .map(|r| {
                let int = r.intersection.map_or(String::new(), |i| format!("/i{i}"));
                format!("{}[{} {}/{}/{}{}]", r.point, r.local.tag(), r.delta, r.branches, r.multiplicity, int)
            })
            .collect();
        format!(
            "{},{},{},{},{},{},{},{},{}",
            self.family,
            self.k,
            self.params.join(";"),
            self.delta,
            self.delta2,
            self.class,
            self.integral,
            self.j,
            pts.join(";")
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tup(f: GfField, bits: [u64; 5]) -> [GfElem; 5] {
        bits.map(|b| f.elem(b))
    }

    fn f2() -> GfField {
        GfField::new(1).unwrap()
    }

    #[test]
    fn singular_point_examples() {
        let f = f2();
        assert_eq!(singular_point(&tup(f, [0, 1, 1, 0, 1])).unwrap().to_string(), "(1:0:0:0:1)");
        assert_eq!(singular_point(&tup(f, [1, 0, 0, 1, 0])).unwrap().to_string(), "(0:0:0:1:0)");
        assert_eq!(singular_point(&tup(f, [1, 1, 1, 1, 1])).unwrap().to_string(), "(1:1:1:1:1)");
        assert_eq!(singular_point(&tup(f, [0, 0, 1, 0, 1])), Err(Error::NonReduced));
    }

    #[test]
    fn singular_point_lies_on_fiber_gf16() {
        let f = GfField::new(4).unwrap();
        for bits in [[3u64, 5, 7, 11, 13], [1, 2, 3, 4, 5], [9, 0, 6, 2, 15], [0, 7, 1, 1, 0]] {
            let t = tup(f, bits);
            let p = singular_point(&t).unwrap();
            let c = FiberParams::z(t).curve();
            assert!(p.on_cone());
            assert!(c.eval(&p).is_zero(), "{bits:?}");
        }
    }

    #[test]
    fn classify_examples() {
        let f = f2();
        let c = classify_fiber(&tup(f, [0, 1, 1, 0, 1]));
        assert_eq!((c.kind, c.j), (FiberKind::EllipticCusp, Some(f.one())));
        assert_eq!(classify_fiber(&tup(f, [1, 1, 1, 1, 1])).kind, FiberKind::RationalTacnode);
        assert_eq!(classify_fiber(&tup(f, [1, 0, 0, 1, 0])).kind, FiberKind::RamphoidCusp);
        let c = classify_fiber(&tup(f, [0, 1, 1, 0, 0]));
        assert_eq!(c.kind, FiberKind::RationalCuspNode);
        assert_eq!(c.points[1].point.to_string(), "(0:0:0:1:0)");
        assert_eq!(classify_fiber(&tup(f, [0, 1, 0, 0, 0])).kind, FiberKind::NonIntegralPair21);
        assert_eq!(classify_fiber(&tup(f, [1, 0, 1, 0, 0])).kind, FiberKind::NonIntegralPairMult3);
        assert_eq!(classify_fiber(&tup(f, [0, 0, 1, 1, 1])).kind, FiberKind::NonReducedDouble);
    }

    #[test]
    fn subfamilies() {
        let f = f2();
        let y = FiberParams::new(Family::Y, vec![f.zero(), f.one()]).unwrap();
        let c = classify_fiber_sub(&y).unwrap();
        assert_eq!((c.kind, c.j), (FiberKind::EllipticCusp, Some(f.zero())));
        let y = FiberParams::new(Family::Y, vec![f.one(), f.zero()]).unwrap();
        assert_eq!(classify_fiber_sub(&y).unwrap().kind, FiberKind::RamphoidCusp);
        let mut v = vec![f.zero(); 6];
        v[3] = f.one();
        let c = classify_fiber_sub(&FiberParams::new(Family::V, v).unwrap()).unwrap();
        assert_eq!(c.kind, FiberKind::TwoCusps);
        let us: Vec<String> = c.points.iter().map(|r| r.point.coords()[1].to_string()).collect();
        assert_eq!(us, ["0", "1"]);
        assert_eq!(c.delta_sum(), 2);
    }

    #[test]
    fn v_family_lifts_when_roots_are_missing() {
        // T^2 + T + 1 is irreducible over GF(2)
        let f = f2();
        let mut v = vec![f.zero(); 6];
        v[1] = f.one();
        v[3] = f.one();
        let c = classify_fiber_sub(&FiberParams::new(Family::V, v).unwrap()).unwrap();
        assert_eq!(c.point_field.degree(), 2);
        assert_eq!(c.points.len(), 2);
    }

    #[test]
    fn csv_row() {
        let f = f2();
        let row = FiberRow::new(&FiberParams::z(tup(f, [0, 1, 1, 0, 1]))).unwrap();
        assert_eq!(row.to_csv(), "Z,1,0;1;1;0;1,1,1,EllipticCusp,true,1,(1:0:0:0:1)[cusp 1/1/2]");
    }
}
