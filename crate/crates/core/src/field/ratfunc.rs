use std::fmt;
use std::ops::{Add, Mul, Sub};

use super::{Embedding, Field, GfElem, GfField, Poly};

/// Element of GF(2^k)(s), kept as a reduced fraction with monic denominator.
#[derive(Clone, PartialEq)]
pub struct RatFunc {
    num: Poly<GfElem>,
    den: Poly<GfElem>,
}

impl RatFunc {
    /// `num/den` in canonical form, or `None` when `den` is zero.
    pub fn new(num: Poly<GfElem>, den: Poly<GfElem>) -> Option<Self> {
        if den.is_zero() {
            return None;
        }
        let zero = *den.zero_elem();
        if num.is_zero() {
            return Some(RatFunc { num, den: Poly::constant(zero.field().one()) });
        }
        let g = num.gcd(&den);
        let mut n = num.exact_div(&g).unwrap();
        let mut d = den.exact_div(&g).unwrap();
        let lc = d.lead().inv().unwrap();
        n = n.scale(&lc);
        d = d.scale(&lc);
        Some(RatFunc { num: n, den: d })
    }

    pub fn from_poly(p: Poly<GfElem>) -> Self {
        let one = p.zero_elem().field().one();
        RatFunc { num: p, den: Poly::constant(one) }
    }

    pub fn constant(c: GfElem) -> Self {
        RatFunc::from_poly(Poly::constant(c))
    }

    pub fn zero(field: GfField) -> Self {
        RatFunc::constant(field.zero())
    }

    pub fn one(field: GfField) -> Self {
        RatFunc::constant(field.one())
    }

    /// The transcendental `s`.
    pub fn s(field: GfField) -> Self {
        RatFunc::from_poly(Poly::var(field.zero()))
    }

    pub fn field(&self) -> GfField {
        self.den.zero_elem().field()
    }

    pub fn num(&self) -> &Poly<GfElem> {
        &self.num
    }

    pub fn den(&self) -> &Poly<GfElem> {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// The constant value, if `self` lies in GF(2^k).
    pub fn as_constant(&self) -> Option<GfElem> {
        (self.num.is_constant() && self.den.is_constant()).then(|| self.num.coeff(0))
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.degree() == Some(0)
    }

    pub fn inv(&self) -> Option<Self> {
        RatFunc::new(self.den.clone(), self.num.clone())
    }

    pub fn pow(&self, e: u32) -> Self {
        self.powu(e as u64)
    }

    /// Value at `s = sigma`, or `None` at a pole.
    pub fn eval(&self, sigma: GfElem) -> Option<GfElem> {
        let d = self.den.eval(&sigma);
        d.inv().map(|di| self.num.eval(&sigma) * di)
    }

    /// Image under a constant-field embedding GF(2^k) -> GF(2^{km}).
    pub fn lift(&self, e: &Embedding) -> Self {
        let z = e.target().zero();
        RatFunc::new(self.num.map(z, |c| e.map(*c)), self.den.map(z, |c| e.map(*c))).unwrap()
    }

    /// Larger of numerator and denominator degrees.
    pub fn height(&self) -> usize {
        self.num.degree().unwrap_or(0).max(self.den.degree().unwrap_or(0))
    }
}

impl Field for RatFunc {
    fn zero_like(&self) -> Self {
        RatFunc::zero(self.field())
    }
    fn one_like(&self) -> Self {
        RatFunc::one(self.field())
    }
    fn is_zero_elem(&self) -> bool {
        self.is_zero()
    }
    fn try_inv(&self) -> Option<Self> {
        self.inv()
    }
}

impl Add for RatFunc {
    type Output = RatFunc;
    fn add(self, rhs: RatFunc) -> RatFunc {
        &self + &rhs
    }
}

impl<'a> Add<&'a RatFunc> for &'a RatFunc {
    type Output = RatFunc;
    fn add(self, rhs: &RatFunc) -> RatFunc {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        // only factors of gcd(d1, d2) can cancel
        let g = self.den.gcd(&rhs.den);
        if g.is_constant() {
            let n = &(&self.num * &rhs.den) + &(&rhs.num * &self.den);
            return RatFunc { num: n, den: &self.den * &rhs.den };
        }
        let d1 = self.den.exact_div(&g).unwrap();
        let d2 = rhs.den.exact_div(&g).unwrap();
        let n = &(&self.num * &d2) + &(&rhs.num * &d1);
        if n.is_zero() {
            return RatFunc::zero(self.field());
        }
        let h = n.gcd(&g);
        let den = &(&d1 * &d2) * &g;
        if h.is_constant() {
            return RatFunc { num: n, den };
        }
        RatFunc { num: n.exact_div(&h).unwrap(), den: den.exact_div(&h).unwrap() }
    }
}

impl Sub for RatFunc {
    type Output = RatFunc;
    // characteristic 2
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn sub(self, rhs: RatFunc) -> RatFunc {
        self + rhs
    }
}

impl Mul for RatFunc {
    type Output = RatFunc;
    fn mul(self, rhs: RatFunc) -> RatFunc {
        &self * &rhs
    }
}

impl<'a> Mul<&'a RatFunc> for &'a RatFunc {
    type Output = RatFunc;
    fn mul(self, rhs: &RatFunc) -> RatFunc {
        if self.is_zero() || rhs.is_zero() {
            return RatFunc::zero(self.field());
        }
        // cross cancellation keeps both factors reduced
        let g1 = self.num.gcd(&rhs.den);
        let g2 = rhs.num.gcd(&self.den);
        let (n1, d2) = (self.num.exact_div(&g1).unwrap(), rhs.den.exact_div(&g1).unwrap());
        let (n2, d1) = (rhs.num.exact_div(&g2).unwrap(), self.den.exact_div(&g2).unwrap());
        let den = &d1 * &d2;
        let lc = den.lead().inv().unwrap();
        RatFunc { num: (&n1 * &n2).scale(&lc), den: den.scale(&lc) }
    }
}

impl From<GfElem> for RatFunc {
    fn from(c: GfElem) -> Self {
        RatFunc::constant(c)
    }
}

fn wrap(s: String) -> String {
    if s.contains('+') {
        format!("({s})")
    } else {
        s
    }
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.num.to_text("s");
        if self.is_polynomial() {
            return f.write_str(&n);
        }
        write!(f, "{}/{}", wrap(n), wrap(self.den.to_text("s")))
    }
}

impl fmt::Debug for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_form() {
        let f = GfField::new(2).unwrap();
        let s = RatFunc::s(f);
        let one = RatFunc::one(f);
        let a = (s.clone() * s.clone() + one.clone()) * (s.clone() + one.clone()).inv().unwrap();
        assert_eq!(a, s.clone() + one.clone());
        assert!(a.is_polynomial());
        let g = RatFunc::constant(f.generator());
        let b = (s.clone() * g.clone()).inv().unwrap();
        assert!(b.den().is_monic());
        assert_eq!(b * g * s, one);
        assert_eq!(RatFunc::zero(f).den().degree(), Some(0));
    }

    #[test]
    fn display() {
        let f = GfField::new(2).unwrap();
        let s = RatFunc::s(f);
        let g = RatFunc::constant(f.generator());
        let one = RatFunc::one(f);
        let x = (s.clone() * s.clone() * (g.clone() + one.clone()) + g.clone() + one.clone())
            * (s.clone() + g.clone()).inv().unwrap();
        assert_eq!(x.to_string(), "((g+1)*s^2+g+1)/(s+g)");
        assert_eq!(s.inv().unwrap().to_string(), "1/s");
    }
}
