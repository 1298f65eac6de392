//! Seeded random instances for the verification suites.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::field::squares::is_square;
use crate::field::{Field, FieldDescriptor, GfElem, GfField, Poly, RatFunc};
use crate::model::{InseparableNormalForm, ModelTransformation, SeparableNormalForm};
use crate::separable::is_geometrically_elliptic;
use crate::series::{AnyNormalForm, BranchId};

pub const DEFAULT_SEED: u64 = 0x2f1b_2a0d;

pub struct Sampler {
    rng: ChaCha8Rng,
    field: GfField,
    /// Bound on numerator and denominator degrees.
    pub max_deg: usize,
}

impl Sampler {
    pub fn new(seed: u64, field: GfField, max_deg: usize) -> Self {
        Sampler { rng: ChaCha8Rng::seed_from_u64(seed), field, max_deg }
    }

    pub fn field(&self) -> GfField {
        self.field
    }

    pub fn base(&self) -> FieldDescriptor {
        FieldDescriptor::rational(self.field)
    }

    pub fn coin(&mut self, num: u32, den: u32) -> bool {
        self.rng.gen_ratio(num, den)
    }

    pub fn index(&mut self, n: usize) -> usize {
        self.rng.gen_range(0..n)
    }

    pub fn gf(&mut self) -> GfElem {
        let bits = self.rng.gen::<u64>() & (self.field.order() - 1);
        self.field.elem(bits)
    }

    pub fn gf_nonzero(&mut self) -> GfElem {
        loop {
            let x = self.gf();
            if !x.is_zero() {
                return x;
            }
        }
    }

    pub fn poly(&mut self, deg: usize) -> Poly<GfElem> {
        let c = (0..=deg).map(|_| self.gf()).collect();
        Poly::from_coeffs(c, self.field.zero())
    }

    /// Numerator and denominator of degree at most `deg`.
    pub fn ratfunc_deg(&mut self, deg: usize) -> RatFunc {
        let dn = self.rng.gen_range(0..=deg);
        let dd = self.rng.gen_range(0..=deg);
        let num = self.poly(dn);
        loop {
            let den = self.poly(dd);
            if !den.is_zero() {
                return RatFunc::new(num, den).unwrap();
            }
        }
    }

    pub fn ratfunc(&mut self) -> RatFunc {
        self.ratfunc_deg(self.max_deg)
    }

    pub fn nonzero(&mut self) -> RatFunc {
        loop {
            let r = self.ratfunc();
            if !r.is_zero() {
                return r;
            }
        }
    }

    /// Zero with probability 1/6, otherwise a random element.
    pub fn sparse(&mut self) -> RatFunc {
        if self.coin(1, 6) {
            RatFunc::zero(self.field)
        } else {
            self.ratfunc()
        }
    }

    pub fn square(&mut self) -> RatFunc {
        self.ratfunc_deg(self.max_deg / 2).sq()
    }

    pub fn nonzero_square(&mut self) -> RatFunc {
        loop {
            let r = self.square();
            if !r.is_zero() {
                return r;
            }
        }
    }

    pub fn fourth_power(&mut self) -> RatFunc {
        self.ratfunc_deg(self.max_deg / 4).pow(4)
    }

    pub fn nonsquare(&mut self) -> RatFunc {
        loop {
            let r = self.ratfunc();
            if !is_square(&r) {
                return r;
            }
        }
    }

    fn sep(&mut self, t: [RatFunc; 5]) -> SeparableNormalForm {
        SeparableNormalForm::new(t, self.base())
    }

    /// Separable normal form covering the three shapes `a2 = 0`,
    /// `a0/a2 ∈ K^2` and generic.
    pub fn separable_nf(&mut self) -> SeparableNormalForm {
        let (b0, b4, b6) = (self.sparse(), self.sparse(), self.sparse());
        let (a0, a2) = match self.index(3) {
            0 => (self.nonzero(), RatFunc::zero(self.field)),
            1 => {
                let a2 = self.nonzero();
                (&a2 * &self.square(), a2)
            }
            _ => (self.sparse(), self.nonzero()),
        };
        self.sep([a0, a2, b0, b4, b6])
    }

    pub fn elliptic_separable_nf(&mut self) -> SeparableNormalForm {
        loop {
            let nf = self.separable_nf();
            if is_geometrically_elliptic(&nf) {
                return nf;
            }
        }
    }

    fn insep(&mut self, mut b: [RatFunc; 7]) -> InseparableNormalForm {
        b[5] = RatFunc::one(self.field);
        InseparableNormalForm { b, base: self.base() }
    }

    /// Inseparable normal form with the `b3 = 0` sub-cases drawn evenly.
    pub fn inseparable_nf(&mut self) -> InseparableNormalForm {
        let mut b: [RatFunc; 7] = std::array::from_fn(|_| self.sparse());
        match self.index(4) {
            0 => b[3] = self.nonzero(),
            1 => b[3] = RatFunc::zero(self.field),
            2 => {
                b[3] = RatFunc::zero(self.field);
                b[1] = self.square();
            }
            _ => {
                b[3] = RatFunc::zero(self.field);
                b[1] = self.fourth_power();
            }
        }
        self.insep(b)
    }

    /// A normal form whose analysis passes through `branch`. For
    /// `C2-iii-jnonsq-out` the instance is a `jnonsq` one: the expansion and
    /// its relation are shared by both sub-branches.
    pub fn branch_instance(&mut self, branch: BranchId) -> AnyNormalForm {
        let f = self.field;
        let (z, o) = (RatFunc::zero(f), RatFunc::one(f));
        loop {
            let nf = match branch {
                BranchId::C2I => {
                    let b6 = self.nonzero();
                    let t = [o.clone(), z.clone(), self.ratfunc(), self.ratfunc(), b6];
                    AnyNormalForm::Separable(self.sep(t))
                }
                BranchId::C2IISq | BranchId::C2IINonsq => {
                    let b0 = if branch == BranchId::C2IISq { self.nonzero_square() } else { self.nonsquare() };
                    let t = [z.clone(), o.clone(), b0, self.ratfunc(), self.nonzero()];
                    AnyNormalForm::Separable(self.sep(t))
                }
                BranchId::C2IIIJsq => {
                    let (a0, b4, b6) = (self.nonsquare(), self.ratfunc(), self.nonzero());
                    let ybar = self.ratfunc_deg(self.max_deg / 2);
                    let b0 = &(&ybar.sq() + &(&b6 * &a0.pow(3))) + &(&b4 * &a0.sq());
                    AnyNormalForm::Separable(self.sep([a0, o.clone(), b0, b4, b6]))
                }
                BranchId::C2IIIJnonsqOut | BranchId::C2IIIJnonsqIn => {
                    let (a0, b0, b4, b6) = (self.nonsquare(), self.ratfunc(), self.ratfunc(), self.nonzero());
                    let ybar2 = &(&(&b6 * &a0.pow(3)) + &(&b4 * &a0.sq())) + &b0;
                    if is_square(&ybar2) {
                        continue;
                    }
                    AnyNormalForm::Separable(self.sep([a0, o.clone(), b0, b4, b6]))
                }
                BranchId::D1B3nzSq | BranchId::D1B3nzNonsq => {
                    let c = if branch == BranchId::D1B3nzSq { self.square() } else { self.nonsquare() };
                    let d = self.ratfunc();
                    if c == d {
                        continue;
                    }
                    let mut b: [RatFunc; 7] = std::array::from_fn(|_| self.ratfunc());
                    b[3] = &c + &d;
                    b[1] = &c * &d;
                    AnyNormalForm::Inseparable(self.insep(b))
                }
                BranchId::D1B3zI | BranchId::D1B3zII | BranchId::D1B3zIII => {
                    let mut b: [RatFunc; 7] = std::array::from_fn(|_| self.ratfunc());
                    b[3] = z.clone();
                    b[1] = match branch {
                        BranchId::D1B3zI => self.nonsquare(),
                        BranchId::D1B3zII => loop {
                            let c = self.nonsquare();
                            if c.height() <= self.max_deg / 2 {
                                break c.sq();
                            }
                        },
                        _ => self.fourth_power(),
                    };
                    AnyNormalForm::Inseparable(self.insep(b))
                }
            };
            if let AnyNormalForm::Separable(s) = &nf {
                if !is_geometrically_elliptic(s) {
                    continue;
                }
            }
            return nf;
        }
    }

    /// A random admissible transformation with entries of degree at most 1.
    pub fn transformation(&mut self) -> ModelTransformation {
        let small = |s: &mut Self| s.ratfunc_deg(1);
        loop {
            let m = [small(self), small(self), small(self), small(self)];
            let beta = small(self);
            let gamma = [small(self), small(self), small(self), small(self)];
            let t = ModelTransformation { mobius: m, beta, gamma };
            if t.validate().is_ok() {
                return t;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::squares::is_fourth_power_with_witness;
    use crate::inseparable::InseparableCase;

    #[test]
    fn deterministic() {
        let f = GfField::new(2).unwrap();
        let draw = |seed| {
            let mut s = Sampler::new(seed, f, 4);
            (0..5).map(|_| s.ratfunc().to_string()).collect::<Vec<_>>()
        };
        assert_eq!(draw(7), draw(7));
        assert_ne!(draw(7), draw(8));
    }

    #[test]
    fn inseparable_cases_are_hit() {
        let f = GfField::new(1).unwrap();
        let mut s = Sampler::new(1, f, 4);
        let mut seen = std::collections::HashSet::new();
        for _ in 0..200 {
            seen.insert(InseparableCase::of(&s.inseparable_nf()).tag());
        }
        assert_eq!(seen.len(), 4);
        assert!(is_fourth_power_with_witness(&s.fourth_power()).is_some());
    }
}
