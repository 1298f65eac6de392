use std::fmt;
use std::ops::{Add, Mul};

use super::{Field, GfElem};

/// Dense univariate polynomial, coefficients stored from the constant term up.
///
/// Trailing zeros are always stripped; the zero polynomial has no coefficients
/// and `degree() == None`.
#[derive(Clone, PartialEq)]
pub struct Poly<F: Field> {
    coeffs: Vec<F>,
    zero: F,
}

impl<F: Field> Poly<F> {
    pub fn from_coeffs(coeffs: Vec<F>, zero: F) -> Self {
        let mut p = Poly { coeffs, zero };
        p.trim();
        p
    }

    pub fn zero(zero: F) -> Self {
        Poly { coeffs: Vec::new(), zero }
    }

    pub fn constant(c: F) -> Self {
        let zero = c.zero_like();
        Poly::from_coeffs(vec![c], zero)
    }

    pub fn monomial(c: F, n: usize) -> Self {
        let zero = c.zero_like();
        let mut v = vec![zero.clone(); n];
        v.push(c);
        Poly::from_coeffs(v, zero)
    }

    /// The variable itself.
    pub fn var(zero: F) -> Self {
        let one = zero.one_like();
        Poly::monomial(one, 1)
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(|c| c.is_zero_elem()) {
            self.coeffs.pop();
        }
    }

    pub fn zero_elem(&self) -> &F {
        &self.zero
    }

    pub fn coeffs(&self) -> &[F] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> F {
        self.coeffs.get(i).cloned().unwrap_or_else(|| self.zero.clone())
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn lead(&self) -> F {
        self.coeffs.last().cloned().unwrap_or_else(|| self.zero.clone())
    }

    pub fn scale(&self, c: &F) -> Self {
        Poly::from_coeffs(self.coeffs.iter().map(|a| a.clone() * c.clone()).collect(), self.zero.clone())
    }

    pub fn shift(&self, n: usize) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let mut v = vec![self.zero.clone(); n];
        v.extend(self.coeffs.iter().cloned());
        Poly { coeffs: v, zero: self.zero.clone() }
    }

    pub fn monic(&self) -> Self {
        match self.lead().try_inv() {
            Some(inv) if !self.is_zero() => self.scale(&inv),
            _ => self.clone(),
        }
    }

    pub fn is_monic(&self) -> bool {
        !self.is_zero() && self.lead().is_one_elem()
    }

    pub fn eval(&self, x: &F) -> F {
        let mut acc = self.zero.clone();
        for c in self.coeffs.iter().rev() {
            acc = acc * x.clone() + c.clone();
        }
        acc
    }

    /// Formal derivative. In characteristic two only odd-degree terms survive.
    pub fn derivative(&self) -> Self {
        let v = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| if i % 2 == 1 { c.clone() } else { self.zero.clone() })
            .collect();
        Poly::from_coeffs(v, self.zero.clone())
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Poly::constant(self.zero.one_like());
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    /// Euclidean division. Panics on division by zero.
    pub fn divrem(&self, d: &Self) -> (Self, Self) {
        assert!(!d.is_zero(), "polynomial division by zero");
        let dd = d.degree().unwrap();
        let inv = d.lead().try_inv().expect("leading coefficient invertible");
        let mut r = self.coeffs.clone();
        if r.len() <= dd {
            return (Poly::zero(self.zero.clone()), self.clone());
        }
        let mut q = vec![self.zero.clone(); r.len() - dd];
        for i in (dd..r.len()).rev() {
            let c = r[i].clone();
            if c.is_zero_elem() {
                continue;
            }
            let f = c * inv.clone();
            for (j, dc) in d.coeffs.iter().enumerate() {
                let t = r[i - dd + j].clone() + f.clone() * dc.clone();
                r[i - dd + j] = t;
            }
            q[i - dd] = f;
        }
        r.truncate(dd);
        (Poly::from_coeffs(q, self.zero.clone()), Poly::from_coeffs(r, self.zero.clone()))
    }

    pub fn rem(&self, d: &Self) -> Self {
        self.divrem(d).1
    }

    /// Exact quotient; `None` if `d` does not divide `self`.
    pub fn exact_div(&self, d: &Self) -> Option<Self> {
        let (q, r) = self.divrem(d);
        r.is_zero().then_some(q)
    }

    /// Monic greatest common divisor (zero when both inputs vanish).
    pub fn gcd(&self, other: &Self) -> Self {
        let mut a = self.coeffs.clone();
        let mut b = other.coeffs.clone();
        while !b.is_empty() {
            rem_in_place(&mut a, &b);
            std::mem::swap(&mut a, &mut b);
        }
        Poly::from_coeffs(a, self.zero.clone()).monic()
    }

    /// Substitute `x -> q(x)`.
    pub fn compose(&self, q: &Self) -> Self {
        let mut acc = Poly::zero(self.zero.clone());
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * q) + &Poly::constant(c.clone());
        }
        acc
    }

    pub fn map<G: Field>(&self, zero: G, f: impl Fn(&F) -> G) -> Poly<G> {
        Poly::from_coeffs(self.coeffs.iter().map(f).collect(), zero)
    }
}

/// `a <- a mod b` on trimmed coefficient vectors; `b` nonempty.
fn rem_in_place<F: Field>(a: &mut Vec<F>, b: &[F]) {
    let db = b.len() - 1;
    let inv = b[db].try_inv().expect("leading coefficient invertible");
    while a.len() > db {
        let c = a.pop().unwrap();
        if !c.is_zero_elem() {
            let f = c * inv.clone();
            let base = a.len() - db;
            for (j, bc) in b[..db].iter().enumerate() {
                let t = a[base + j].clone() + f.clone() * bc.clone();
                a[base + j] = t;
            }
        }
    }
    while a.last().is_some_and(|c| c.is_zero_elem()) {
        a.pop();
    }
}

impl<'a, F: Field> Add<&'a Poly<F>> for &'a Poly<F> {
    type Output = Poly<F>;
    fn add(self, rhs: &Poly<F>) -> Poly<F> {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let v = (0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect();
        Poly::from_coeffs(v, self.zero.clone())
    }
}

impl<'a, F: Field> Mul<&'a Poly<F>> for &'a Poly<F> {
    type Output = Poly<F>;
    fn mul(self, rhs: &Poly<F>) -> Poly<F> {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero(self.zero.clone());
        }
        let mut v = vec![self.zero.clone(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero_elem() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                let t = v[i + j].clone() + a.clone() * b.clone();
                v[i + j] = t;
            }
        }
        Poly::from_coeffs(v, self.zero.clone())
    }
}

impl<F: Field> Add for Poly<F> {
    type Output = Poly<F>;
    fn add(self, rhs: Poly<F>) -> Poly<F> {
        &self + &rhs
    }
}

impl<F: Field> Mul for Poly<F> {
    type Output = Poly<F>;
    fn mul(self, rhs: Poly<F>) -> Poly<F> {
        &self * &rhs
    }
}

impl<F: Field + fmt::Display> Poly<F> {
    /// Text form in the given variable, highest degree first.
    pub fn to_text(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut parts = Vec::new();
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero_elem() {
                continue;
            }
            let cs = c.to_string();
            let mono = match i {
                0 => String::new(),
                1 => var.to_string(),
                _ => format!("{var}^{i}"),
            };
            if i == 0 {
                parts.push(cs);
            } else if c.is_one_elem() {
                parts.push(mono);
            } else if cs.contains('+') || cs.contains('/') {
                parts.push(format!("({cs})*{mono}"));
            } else {
                parts.push(format!("{cs}*{mono}"));
            }
        }
        parts.join("+")
    }
}

impl<F: Field> fmt::Debug for Poly<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly{:?}", self.coeffs)
    }
}

// Finite-field specific routines.
impl Poly<GfElem> {
    /// `x^(2^k) mod self`, i.e. the Frobenius image of x in GF(2^k)[x]/(self).
    fn frobenius_x(&self, k: u32) -> Self {
        let zero = self.zero;
        let mut r = Poly::var(zero).rem(self);
        for _ in 0..k {
            r = (&r * &r).rem(self);
        }
        r
    }

    /// Distinct roots lying in the coefficient field.
    pub fn roots_gf(&self) -> Vec<GfElem> {
        if self.is_zero() {
            return Vec::new();
        }
        let field = self.zero.field();
        let f = self.monic();
        if f.degree() == Some(0) {
            return Vec::new();
        }
        let xq = f.frobenius_x(field.degree());
        let split = f.gcd(&(&xq + &Poly::var(self.zero)));
        let mut out = Vec::new();
        split_linear(&split, &mut out);
        out.sort_by_key(|r| r.bits());
        out
    }

    /// Square-free factorization over the perfect field GF(2^k):
    /// returns `(factor, multiplicity)` pairs with monic square-free factors.
    pub fn squarefree_factorization(&self) -> Vec<(Self, u32)> {
        let mut out = Vec::new();
        if self.is_zero() || self.degree() == Some(0) {
            return out;
        }
        sff_rec(&self.monic(), 1, &mut out);
        out.sort_by_key(|(_, m)| *m);
        out
    }

    /// Coefficient-wise square root of a polynomial that is a square.
    pub fn sqrt_of_square(&self) -> Option<Self> {
        let mut v = Vec::new();
        for (i, c) in self.coeffs.iter().enumerate() {
            if i % 2 == 1 {
                if !c.is_zero() {
                    return None;
                }
            } else {
                v.push(c.sqrt());
            }
        }
        Some(Poly::from_coeffs(v, self.zero))
    }

    /// Smallest d such that every root lies in GF(2^{k d}). Returns None for
    /// the zero polynomial.
    pub fn splitting_degree(&self) -> Option<u32> {
        if self.is_zero() {
            return None;
        }
        let field = self.zero.field();
        // radical: roots only matter up to multiplicity
        let f = self.squarefree_factorization().into_iter().fold(Poly::constant(field.one()), |acc, (q, _)| &acc * &q);
        let mut acc = 1u32;
        let mut rest = f.clone();
        let mut xp = Poly::var(self.zero);
        let mut d = 0;
        while rest.degree().unwrap_or(0) > 0 {
            d += 1;
            for _ in 0..field.degree() {
                xp = (&xp * &xp).rem(&f);
            }
            let g = rest.gcd(&(&xp + &Poly::var(self.zero)));
            if g.degree().unwrap_or(0) > 0 {
                acc = lcm(acc, d);
                rest = rest.exact_div(&g).expect("gcd divides");
            }
        }
        Some(acc)
    }
}

fn lcm(a: u32, b: u32) -> u32 {
    fn gcd(a: u32, b: u32) -> u32 {
        if b == 0 {
            a
        } else {
            gcd(b, a % b)
        }
    }
    a / gcd(a, b) * b
}

fn sff_rec(f: &Poly<GfElem>, mult: u32, out: &mut Vec<(Poly<GfElem>, u32)>) {
    if f.degree().unwrap_or(0) == 0 {
        return;
    }
    let d = f.derivative();
    if d.is_zero() {
        // f = h^2
        let h = f.sqrt_of_square().expect("zero derivative implies square");
        sff_rec(&h.monic(), mult * 2, out);
        return;
    }
    let mut c = f.gcd(&d);
    let mut w = f.exact_div(&c).unwrap();
    let mut i = 1;
    while w.degree().unwrap_or(0) > 0 {
        let y = w.gcd(&c);
        let z = w.exact_div(&y).unwrap();
        if z.degree().unwrap_or(0) > 0 {
            out.push((z.monic(), i * mult));
        }
        i += 1;
        w = y;
        c = c.exact_div(&w).unwrap();
    }
    if c.degree().unwrap_or(0) > 0 {
        let h = c.sqrt_of_square().expect("remaining cofactor is a square");
        sff_rec(&h.monic(), mult * 2, out);
    }
}

/// Splits a monic product of distinct linear factors by trace maps.
fn split_linear(f: &Poly<GfElem>, out: &mut Vec<GfElem>) {
    let deg = match f.degree() {
        None | Some(0) => return,
        Some(d) => d,
    };
    if deg == 1 {
        out.push(f.coeff(0));
        return;
    }
    let field = f.zero.field();
    for j in 0..field.degree() {
        let beta = field.elem(1u64 << j);
        let bx = Poly::monomial(beta, 1).rem(f);
        let mut term = bx.clone();
        let mut tr = bx;
        for _ in 1..field.degree() {
            term = (&term * &term).rem(f);
            tr = &tr + &term;
        }
        let h = f.gcd(&tr);
        let hd = h.degree().unwrap_or(0);
        if hd > 0 && hd < deg {
            let other = f.exact_div(&h).unwrap();
            split_linear(&h, out);
            split_linear(&other.monic(), out);
            return;
        }
    }
    unreachable!("trace splitting failed on a split square-free polynomial");
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::GfField;

    fn p(f: GfField, bits: &[u64]) -> Poly<GfElem> {
        Poly::from_coeffs(bits.iter().map(|b| f.elem(*b)).collect(), f.zero())
    }

    #[test]
    fn divrem_reconstructs() {
        let f = GfField::new(3).unwrap();
        let a = p(f, &[1, 2, 3, 4, 5, 6]);
        let b = p(f, &[3, 0, 7]);
        let (q, r) = a.divrem(&b);
        assert_eq!(&(&q * &b) + &r, a);
        assert!(r.degree().unwrap_or(0) < 2);
    }

    #[test]
    fn roots_of_split_polynomial() {
        let f = GfField::new(4).unwrap();
        let roots = [f.elem(3), f.elem(9), f.elem(14)];
        let mut prod = Poly::constant(f.one());
        for r in roots {
            prod = &prod * &p(f, &[r.bits(), 1]);
        }
        // an irreducible quadratic factor contributes nothing
        let irr = p(f, &[f.elem(2).bits(), 1, 1]);
        let with_irr = &prod * &irr;
        let mut want: Vec<_> = roots.to_vec();
        want.sort_by_key(|r| r.bits());
        assert_eq!(prod.roots_gf(), want);
        let found = with_irr.roots_gf();
        assert!(found.len() >= 3 && roots.iter().all(|r| found.contains(r)));
    }

    #[test]
    fn squarefree_factorization_recovers_powers() {
        let f = GfField::new(2).unwrap();
        let a = p(f, &[1, 1]); // x+1
        let b = p(f, &[2, 1]); // x+g
        let c = p(f, &[0, 1]); // x
        let prod = &(&a * &b.pow(2)) * &c.pow(3);
        let sff = prod.squarefree_factorization();
        let rebuilt = sff.iter().fold(Poly::constant(f.one()), |acc, (q, m)| &acc * &q.pow(*m));
        assert_eq!(rebuilt, prod.monic());
        assert_eq!(sff.iter().map(|(_, m)| *m).collect::<Vec<_>>(), vec![1, 2, 3]);
    }

    #[test]
    fn splitting_degree_detects_quadratic_extension() {
        let f = GfField::new(1).unwrap();
        assert_eq!(p(f, &[1, 1, 1]).splitting_degree(), Some(2));
        assert_eq!(p(f, &[0, 1, 1]).splitting_degree(), Some(1));
        assert_eq!(p(f, &[1, 1, 0, 1]).splitting_degree(), Some(3));
    }
}
