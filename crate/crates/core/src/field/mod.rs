//! Exact arithmetic over GF(2^k) and the rational function field GF(2^k)(s),
//! together with the square-class and Artin-Schreier decision procedures.

use std::fmt;
use std::ops::{Add, Mul};

pub mod gf;
pub mod parse;
pub mod poly;
pub mod ratfunc;
pub mod squares;

pub use gf::{gf_sqrt, Embedding, GfElem, GfField};
pub use poly::Poly;
pub use ratfunc::RatFunc;
pub use squares::{
    in_square_span, is_fourth_power_with_witness, is_square, is_square_with_witness, solve_artin_schreier,
    solve_quadratic_char2,
};

use serde::{Deserialize, Serialize};

/// Minimal field interface shared by GF(2^k) and GF(2^k)(s).
///
/// Elements know their own field, so zero and one are produced from an
/// existing element.
pub trait Field: Clone + PartialEq + fmt::Debug + Add<Output = Self> + Mul<Output = Self> {
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn is_zero_elem(&self) -> bool;
    fn try_inv(&self) -> Option<Self>;

    fn is_one_elem(&self) -> bool {
        *self == self.one_like()
    }

    fn sq(&self) -> Self {
        self.clone() * self.clone()
    }

    fn powu(&self, mut e: u64) -> Self {
        let mut base = self.clone();
        let mut acc = self.one_like();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base.clone();
            }
            base = base.sq();
            e >>= 1;
        }
        acc
    }

    fn div_by(&self, d: &Self) -> Option<Self> {
        d.try_inv().map(|i| self.clone() * i)
    }
}

impl Field for GfElem {
    fn zero_like(&self) -> Self {
        self.field().zero()
    }
    fn one_like(&self) -> Self {
        self.field().one()
    }
    fn is_zero_elem(&self) -> bool {
        self.is_zero()
    }
    fn try_inv(&self) -> Option<Self> {
        self.inv()
    }
}

/// Descriptor of the base field K: either GF(2^k) or GF(2^k)(s).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct FieldDescriptor {
    pub gf: GfField,
    pub transcendental: bool,
}

impl FieldDescriptor {
    pub fn perfect(gf: GfField) -> Self {
        FieldDescriptor { gf, transcendental: false }
    }

    pub fn rational(gf: GfField) -> Self {
        FieldDescriptor { gf, transcendental: true }
    }

    pub fn characteristic(&self) -> u32 {
        2
    }

    pub fn name(&self) -> String {
        if self.transcendental {
            format!("GF(2^{})(s)", self.gf.degree())
        } else {
            self.gf.name()
        }
    }

    pub fn to_json(&self) -> FieldJson {
        FieldJson { k: self.gf.degree(), modulus: self.gf.modulus_string(), transcendental: self.transcendental }
    }
}

/// Serialized form of a [`FieldDescriptor`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldJson {
    pub k: u32,
    pub modulus: String,
    pub transcendental: bool,
}

impl FieldJson {
    pub fn descriptor(&self) -> crate::error::Result<FieldDescriptor> {
        let bits = parse::parse_binary_poly(&self.modulus, 'g')?;
        let gf = GfField::with_modulus(self.k, bits)?;
        Ok(FieldDescriptor { gf, transcendental: self.transcendental })
    }
}
