//! Binary extension fields GF(2^k), k <= 32.
//!
//! Elements are stored as bit vectors over the polynomial basis `1, g, g^2, ...`
//! where `g` is the class of the generator modulo the defining polynomial.
//! Every element carries its field descriptor, so mixing elements from
//! different fields is caught at the point of use.

use std::fmt;
use std::ops::{Add, Mul, Sub};

use crate::error::{Error, Result};

/// Largest supported extension degree.
pub const MAX_DEGREE: u32 = 32;

/// Carry-less product of two binary polynomials.
fn clmul(a: u64, b: u64) -> u128 {
    let mut acc = 0u128;
    let a = a as u128;
    let mut b = b;
    let mut shift = 0;
    while b != 0 {
        if b & 1 == 1 {
            acc ^= a << shift;
        }
        b >>= 1;
        shift += 1;
    }
    acc
}

fn bdeg(p: u128) -> i32 {
    127 - p.leading_zeros() as i32
}

/// Remainder of `a` modulo `m` in GF(2)[x].
fn bmod(mut a: u128, m: u128) -> u128 {
    let dm = bdeg(m);
    while a != 0 && bdeg(a) >= dm {
        a ^= m << (bdeg(a) - dm);
    }
    a
}

fn bgcd(mut a: u128, mut b: u128) -> u128 {
    while b != 0 {
        let r = bmod(a, b);
        a = b;
        b = r;
    }
    a
}

fn bmulmod(a: u64, b: u64, m: u64) -> u64 {
    if a <= 1 || b <= 1 {
        return a * b;
    }
    bmod(clmul(a, b), m as u128) as u64
}

fn prime_factors(mut n: u32) -> Vec<u32> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            out.push(p);
            while n.is_multiple_of(p) {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Rabin's irreducibility test for a binary polynomial of degree `k`.
pub fn is_irreducible_binary(poly: u64, k: u32) -> bool {
    if k == 0 || bdeg(poly as u128) != k as i32 {
        return false;
    }
    // x^(2^j) mod poly
    let frob = |j: u32| -> u64 {
        let mut x = bmod(2, poly as u128) as u64;
        for _ in 0..j {
            x = bmulmod(x, x, poly);
        }
        x
    };
    let x = bmod(2, poly as u128) as u64;
    if frob(k) != x {
        return false;
    }
    for p in prime_factors(k) {
        let h = frob(k / p) ^ x;
        if bgcd(poly as u128, h as u128) != 1 {
            return false;
        }
    }
    true
}

/// A binary extension field GF(2^k) given by an irreducible modulus.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GfField {
    k: u32,
    modulus: u64,
}

impl GfField {
    /// The field of degree `k` defined by the numerically smallest irreducible
    /// polynomial with nonzero constant term.
    pub fn new(k: u32) -> Result<Self> {
        if k == 0 || k > MAX_DEGREE {
            return Err(Error::Field(format!("extension degree {k} outside 1..={MAX_DEGREE}")));
        }
        let start = (1u64 << k) | 1;
        let mut m = start;
        loop {
            if is_irreducible_binary(m, k) {
                return Ok(GfField { k, modulus: m });
            }
            m += 2;
        }
    }

    pub fn with_modulus(k: u32, modulus: u64) -> Result<Self> {
        if k == 0 || k > MAX_DEGREE {
            return Err(Error::Field(format!("extension degree {k} outside 1..={MAX_DEGREE}")));
        }
        if !is_irreducible_binary(modulus, k) {
            return Err(Error::Field(format!(
                "modulus {} is not an irreducible polynomial of degree {k}",
                binary_poly_string(modulus, 'x')
            )));
        }
        Ok(GfField { k, modulus })
    }

    pub fn degree(&self) -> u32 {
        self.k
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn order(&self) -> u64 {
        1u64 << self.k
    }

    pub fn zero(&self) -> GfElem {
        GfElem { field: *self, bits: 0 }
    }

    pub fn one(&self) -> GfElem {
        GfElem { field: *self, bits: 1 }
    }

    /// The class of `g`.
    pub fn generator(&self) -> GfElem {
        self.elem(2)
    }

    /// Element from its coordinate bits, reduced modulo the modulus.
    pub fn elem(&self, bits: u64) -> GfElem {
        GfElem { field: *self, bits: bmod(bits as u128, self.modulus as u128) as u64 }
    }

    /// All elements in increasing bit order. Only sensible for small fields.
    pub fn elements(&self) -> impl Iterator<Item = GfElem> + '_ {
        (0..self.order()).map(move |b| GfElem { field: *self, bits: b })
    }

    /// Human-readable name, e.g. `GF(2^2)`.
    pub fn name(&self) -> String {
        format!("GF(2^{})", self.k)
    }

    pub fn modulus_string(&self) -> String {
        binary_poly_string(self.modulus, 'g')
    }

    /// The embedding of `self` into `big`, where `big.degree()` is a multiple
    /// of `self.degree()`. The image of `g` is the smallest root of the
    /// modulus in `big`, which makes the embedding deterministic.
    pub fn embedding_into(&self, big: GfField) -> Result<Embedding> {
        if !big.k.is_multiple_of(self.k) {
            return Err(Error::Field(format!("{} does not embed into {}", self.name(), big.name())));
        }
        let image = if *self == big {
            big.generator()
        } else {
            let modpoly = self.modulus;
            let eval = |x: GfElem| {
                let mut acc = big.zero();
                for i in (0..=self.k).rev() {
                    acc = acc * x;
                    if (modpoly >> i) & 1 == 1 {
                        acc = acc + big.one();
                    }
                }
                acc
            };
            let roots = crate::field::poly::Poly::from_coeffs(
                (0..=self.k).map(|i| if (modpoly >> i) & 1 == 1 { big.one() } else { big.zero() }).collect(),
                big.zero(),
            )
            .roots_gf();
            let r = roots
                .into_iter()
                .min_by_key(|r| r.bits)
                .ok_or_else(|| Error::Field("modulus has no root in the extension".into()))?;
            debug_assert!(eval(r).is_zero());
            r
        };
        let mut powers = Vec::with_capacity(self.k as usize);
        let mut p = big.one();
        for _ in 0..self.k {
            powers.push(p);
            p = p * image;
        }
        Ok(Embedding { small: *self, big, powers })
    }
}

impl fmt::Debug for GfField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF(2^{}) mod {}", self.k, self.modulus_string())
    }
}

impl fmt::Display for GfField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF(2^{})", self.k)
    }
}

/// Field homomorphism GF(2^k) -> GF(2^{km}).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Embedding {
    small: GfField,
    big: GfField,
    powers: Vec<GfElem>,
}

impl Embedding {
    pub fn source(&self) -> GfField {
        self.small
    }

    pub fn target(&self) -> GfField {
        self.big
    }

    pub fn map(&self, x: GfElem) -> GfElem {
        assert_eq!(x.field, self.small, "embedding applied to element of wrong field");
        let mut acc = self.big.zero();
        for (i, p) in self.powers.iter().enumerate() {
            if (x.bits >> i) & 1 == 1 {
                acc = acc + *p;
            }
        }
        acc
    }
}

/// Element of GF(2^k).
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GfElem {
    field: GfField,
    bits: u64,
}

impl GfElem {
    pub fn field(&self) -> GfField {
        self.field
    }

    pub fn bits(&self) -> u64 {
        self.bits
    }

    pub fn is_zero(&self) -> bool {
        self.bits == 0
    }

    pub fn is_one(&self) -> bool {
        self.bits == 1
    }

    pub fn square(self) -> Self {
        self * self
    }

    pub fn pow(self, mut e: u64) -> Self {
        let mut base = self;
        let mut acc = self.field.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base;
            }
            base = base * base;
            e >>= 1;
        }
        acc
    }

    pub fn inv(self) -> Option<Self> {
        if self.is_zero() {
            None
        } else {
            Some(self.pow(self.field.order() - 2))
        }
    }

    /// Inverse Frobenius: the unique `r` with `r^2 = self`.
    pub fn sqrt(self) -> Self {
        let mut r = self;
        for _ in 1..self.field.k {
            r = r * r;
        }
        r
    }

    /// Absolute trace to GF(2), returned as 0 or 1.
    pub fn trace(self) -> u8 {
        let mut t = self;
        let mut acc = self;
        for _ in 1..self.field.k {
            t = t * t;
            acc = acc + t;
        }
        debug_assert!(acc.bits <= 1);
        acc.bits as u8
    }
}

/// Square root in GF(2^k).
pub fn gf_sqrt(x: GfElem) -> GfElem {
    x.sqrt()
}

impl Add for GfElem {
    type Output = GfElem;
    fn add(self, rhs: GfElem) -> GfElem {
        debug_assert_eq!(self.field, rhs.field, "mixed fields");
        GfElem { field: self.field, bits: self.bits ^ rhs.bits }
    }
}

impl Sub for GfElem {
    type Output = GfElem;
    // characteristic 2
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn sub(self, rhs: GfElem) -> GfElem {
        self + rhs
    }
}

impl Mul for GfElem {
    type Output = GfElem;
    fn mul(self, rhs: GfElem) -> GfElem {
        debug_assert_eq!(self.field, rhs.field, "mixed fields");
        GfElem { field: self.field, bits: bmulmod(self.bits, rhs.bits, self.field.modulus) }
    }
}

/// Polynomial in one variable over GF(2), printed with the given symbol.
pub fn binary_poly_string(bits: u64, var: char) -> String {
    if bits == 0 {
        return "0".to_string();
    }
    let mut terms = Vec::new();
    for i in (0..64).rev() {
        if (bits >> i) & 1 == 1 {
            terms.push(match i {
                0 => "1".to_string(),
                1 => var.to_string(),
                _ => format!("{var}^{i}"),
            });
        }
    }
    terms.join("+")
}

impl fmt::Display for GfElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&binary_poly_string(self.bits, 'g'))
    }
}

impl serde::Serialize for GfElem {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl fmt::Debug for GfElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_moduli() {
        assert_eq!(GfField::new(1).unwrap().modulus(), 0b11);
        assert_eq!(GfField::new(2).unwrap().modulus(), 0b111);
        assert_eq!(GfField::new(8).unwrap().modulus(), 0x11b);
    }

    #[test]
    fn rejects_reducible_modulus() {
        assert!(GfField::with_modulus(2, 0b101).is_err());
        assert!(GfField::with_modulus(4, 0b10011).is_ok());
    }

    #[test]
    fn sqrt_examples() {
        let f = GfField::new(2).unwrap();
        assert_eq!(gf_sqrt(f.zero()), f.zero());
        assert_eq!(gf_sqrt(f.one()), f.one());
        let g = f.generator();
        assert_eq!(gf_sqrt(g), g + f.one());
    }

    #[test]
    fn sqrt_and_inverse_exhaustive_gf16() {
        let f = GfField::new(4).unwrap();
        for x in f.elements() {
            assert_eq!(x.sqrt().square(), x);
            if !x.is_zero() {
                assert_eq!(x * x.inv().unwrap(), f.one());
            }
        }
    }

    #[test]
    fn trace_is_additive_and_balanced() {
        let f = GfField::new(3).unwrap();
        let ones = f.elements().filter(|x| x.trace() == 1).count();
        assert_eq!(ones, 4);
        for x in f.elements() {
            for y in f.elements() {
                assert_eq!((x + y).trace(), x.trace() ^ y.trace());
            }
        }
    }

    #[test]
    fn embedding_is_a_homomorphism() {
        let small = GfField::new(2).unwrap();
        let big = GfField::new(4).unwrap();
        let e = small.embedding_into(big).unwrap();
        for x in small.elements() {
            for y in small.elements() {
                assert_eq!(e.map(x * y), e.map(x) * e.map(y));
                assert_eq!(e.map(x + y), e.map(x) + e.map(y));
            }
        }
        assert!(small.embedding_into(GfField::new(3).unwrap()).is_err());
    }
}
