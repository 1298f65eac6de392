//! Square classes in K = GF(2^k)(s) and root finding for quadratics in
//! characteristic two.
//!
//! Since GF(2^k) is perfect, K^2 = GF(2^k)(s^2) and `[K : K^2] = 2` with basis
//! `1, s`. Every membership test below reduces to reading off even and odd
//! coefficients of a reduced fraction.

use super::{Field, GfElem, Poly, RatFunc};

/// Split a polynomial into `even(s^2) + s * odd(s^2)` and take coefficient-wise
/// square roots: returns `(P, Q)` with `p = P^2 + s Q^2`.
fn poly_square_parts(p: &Poly<GfElem>) -> (Poly<GfElem>, Poly<GfElem>) {
    let z = *p.zero_elem();
    let mut even = Vec::new();
    let mut odd = Vec::new();
    for (i, c) in p.coeffs().iter().enumerate() {
        if i % 2 == 0 {
            even.push(c.sqrt());
        } else {
            odd.push(c.sqrt());
        }
    }
    (Poly::from_coeffs(even, z), Poly::from_coeffs(odd, z))
}

/// Coordinates of `f` in the K^2-basis `1, s`: `f = A^2 + B^2 s`.
pub fn square_coordinates(f: &RatFunc) -> (RatFunc, RatFunc) {
    // f = n/d = n d / d^2
    let nd = f.num() * f.den();
    let (p, q) = poly_square_parts(&nd);
    let den = f.den().clone();
    (RatFunc::new(p, den.clone()).unwrap(), RatFunc::new(q, den).unwrap())
}

/// `Some(h)` with `h^2 = f` when `f` is a square in K.
pub fn is_square_with_witness(f: &RatFunc) -> Option<RatFunc> {
    let n = f.num().sqrt_of_square()?;
    let d = f.den().sqrt_of_square()?;
    RatFunc::new(n, d)
}

pub fn is_square(f: &RatFunc) -> bool {
    is_square_with_witness(f).is_some()
}

/// `Some(h)` with `h^4 = f` when `f` is a fourth power in K.
pub fn is_fourth_power_with_witness(f: &RatFunc) -> Option<RatFunc> {
    let h = is_square_with_witness(f)?;
    is_square_with_witness(&h)
}

/// Decide `x ∈ K^2 + K^2 θ`, returning `(α, β)` with `x = α^2 + β^2 θ`.
///
/// Requires `θ ∉ K^2`; returns `None` otherwise. Over GF(2^k)(s) the span is
/// all of K once `θ` is not a square, so the answer is then always positive.
pub fn in_square_span(x: &RatFunc, theta: &RatFunc) -> Option<(RatFunc, RatFunc)> {
    if is_square(theta) {
        return None;
    }
    let (x0, x1) = square_coordinates(x);
    let (t0, t1) = square_coordinates(theta);
    // x0^2 + x1^2 s = α^2 + β^2 (t0^2 + t1^2 s)
    let beta = x1 * t1.inv()?;
    let alpha = x0 + beta.clone() * t0;
    debug_assert_eq!(alpha.sq() + beta.sq() * theta.clone(), x.clone(), "square span decomposition");
    Some((alpha, beta))
}

/// Decide `x ∈ K^4 + K^4 θ + K^4 θ^2 + K^4 θ^3` for `θ ∉ K^2`, returning the
/// coordinates `(α, β, γ, δ)` with `x = α^4 + β^4 θ + γ^4 θ^2 + δ^4 θ^3`.
pub fn in_fourth_power_span(x: &RatFunc, theta: &RatFunc) -> Option<(RatFunc, RatFunc, RatFunc, RatFunc)> {
    let (p, q) = in_square_span(x, theta)?;
    let (alpha, gamma) = in_square_span(&p, theta)?;
    let (beta, delta) = in_square_span(&q, theta)?;
    Some((alpha, beta, gamma, delta))
}

/// Dense linear algebra over GF(2) for the Artin-Schreier system.
struct Gf2System {
    rows: Vec<Vec<u64>>,
    ncols: usize,
}

impl Gf2System {
    fn new(nrows: usize, ncols: usize) -> Self {
        let words = (ncols + 1).div_ceil(64);
        Gf2System { rows: vec![vec![0; words]; nrows], ncols }
    }

    fn set(&mut self, r: usize, c: usize) {
        self.rows[r][c / 64] ^= 1 << (c % 64);
    }

    fn get(row: &[u64], c: usize) -> bool {
        (row[c / 64] >> (c % 64)) & 1 == 1
    }

    /// Solution with all free variables zero, or `None` if inconsistent.
    /// The right-hand side lives in column `ncols`.
    fn solve(mut self) -> Option<Vec<bool>> {
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.ncols {
            let Some(p) = (r..self.rows.len()).find(|&i| Self::get(&self.rows[i], c)) else {
                continue;
            };
            self.rows.swap(r, p);
            let pivot = self.rows[r].clone();
            for i in 0..self.rows.len() {
                if i != r && Self::get(&self.rows[i], c) {
                    for (w, pw) in self.rows[i].iter_mut().zip(&pivot) {
                        *w ^= pw;
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        if self.rows[r..].iter().any(|row| Self::get(row, self.ncols)) {
            return None;
        }
        let mut x = vec![false; self.ncols];
        for (i, &c) in pivots.iter().enumerate() {
            x[c] = Self::get(&self.rows[i], self.ncols);
        }
        Some(x)
    }
}

/// Solve `w^2 + w = z` in K.
///
/// Writing `w = u/v` in lowest terms forces `den(z) = v^2`, so `v` is known and
/// `u ↦ u^2 + u v` is a GF(2)-linear map on polynomials of bounded degree.
/// The two solutions `w`, `w + 1` differ by `v` in the numerator; the one
/// whose numerator has a zero constant bit at degree `deg v` is returned.
pub fn solve_artin_schreier(z: &RatFunc) -> Option<RatFunc> {
    let field = z.field();
    let k = field.degree() as usize;
    let v = z.den().sqrt_of_square()?.monic();
    let n = z.num();
    let dv = v.degree().unwrap();
    let dn = n.degree().unwrap_or(0);
    let bound = dv.max(dn.div_ceil(2));
    let out_deg = (2 * bound).max(bound + dv);
    let nunk = (bound + 1) * k;
    let neq = (out_deg + 1) * k;
    let mut sys = Gf2System::new(neq, nunk);
    for i in 0..=bound {
        for j in 0..k {
            let e = field.elem(1 << j);
            let col = i * k + j;
            let img = &Poly::monomial(e.square(), 2 * i) + &(&Poly::monomial(e, i) * &v);
            for (deg, c) in img.coeffs().iter().enumerate() {
                for b in 0..k {
                    if (c.bits() >> b) & 1 == 1 {
                        sys.set(deg * k + b, col);
                    }
                }
            }
        }
    }
    for (deg, c) in n.coeffs().iter().enumerate() {
        if deg > out_deg {
            return None;
        }
        for b in 0..k {
            if (c.bits() >> b) & 1 == 1 {
                sys.set(deg * k + b, nunk);
            }
        }
    }
    let x = sys.solve()?;
    let coeffs = (0..=bound)
        .map(|i| {
            let bits = (0..k).fold(0u64, |acc, j| acc | ((x[i * k + j] as u64) << j));
            field.elem(bits)
        })
        .collect();
    let mut u = Poly::from_coeffs(coeffs, field.zero());
    if u.coeff(dv).bits() & 1 == 1 {
        u = &u + &v;
    }
    let w = RatFunc::new(u, v).unwrap();
    debug_assert_eq!(w.sq() + w.clone(), z.clone());
    Some(w)
}

/// All roots in K of `T^2 + b T + c`.
pub fn solve_quadratic_char2(b: &RatFunc, c: &RatFunc) -> Vec<RatFunc> {
    if b.is_zero() {
        return is_square_with_witness(c).into_iter().collect();
    }
    let rhs = c.clone() * b.sq().inv().unwrap();
    match solve_artin_schreier(&rhs) {
        None => Vec::new(),
        Some(w) => {
            let t = b.clone() * w;
            let t2 = t.clone() + b.clone();
            vec![t, t2]
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::GfField;

    fn setup() -> (GfField, RatFunc, RatFunc) {
        let f = GfField::new(1).unwrap();
        (f, RatFunc::s(f), RatFunc::one(f))
    }

    #[test]
    fn square_examples() {
        let (_, s, one) = setup();
        assert!(is_square_with_witness(&s).is_none());
        let w = is_square_with_witness(&(s.pow(2) + one.clone())).unwrap();
        assert_eq!(w, s.clone() + one.clone());
        assert_eq!(w.sq(), s.pow(2) + one);
        let inv4 = s.pow(4).inv().unwrap();
        assert_eq!(is_square_with_witness(&inv4).unwrap(), s.pow(2).inv().unwrap());
    }

    #[test]
    fn fourth_power_examples() {
        let (_, s, one) = setup();
        assert_eq!(is_fourth_power_with_witness(&s.pow(4)).unwrap(), s);
        assert!(is_fourth_power_with_witness(&s.pow(2)).is_none());
        let w = is_fourth_power_with_witness(&(s.pow(4) + one.clone())).unwrap();
        assert_eq!(w, s + one);
    }

    #[test]
    fn square_span_examples() {
        let (f, s, _) = setup();
        assert_eq!(in_square_span(&s, &s).unwrap(), (RatFunc::zero(f), RatFunc::one(f)));
        let x = s.pow(2) + s.pow(3);
        assert_eq!(in_square_span(&x, &s).unwrap(), (s.clone(), s.clone()));
        // K^2(s^3) = K: s = 0^2 + (1/s)^2 s^3
        let (a, b) = in_square_span(&s, &s.pow(3)).unwrap();
        assert!(a.is_zero());
        assert_eq!(b, s.inv().unwrap());
        assert!(in_square_span(&s, &s.pow(2)).is_none());
    }

    #[test]
    fn quadratic_examples() {
        let (f, s, one) = setup();
        let zero = RatFunc::zero(f);
        assert_eq!(solve_quadratic_char2(&one, &zero), vec![zero.clone(), one.clone()]);
        let roots = solve_quadratic_char2(&one, &(s.pow(2) + s.clone()));
        assert_eq!(roots, vec![s.clone(), s.clone() + one.clone()]);
        assert!(solve_quadratic_char2(&zero, &s).is_empty());
    }

    #[test]
    fn artin_schreier_examples() {
        let (f, s, _) = setup();
        assert_eq!(solve_artin_schreier(&RatFunc::zero(f)).unwrap(), RatFunc::zero(f));
        assert_eq!(solve_artin_schreier(&(s.pow(2) + s.clone())).unwrap(), s);
        assert!(solve_artin_schreier(&s).is_none());
    }

    #[test]
    fn artin_schreier_constant_needs_trace_zero() {
        let f = GfField::new(3).unwrap();
        for c in f.elements() {
            let sol = solve_artin_schreier(&RatFunc::constant(c));
            assert_eq!(sol.is_some(), c.trace() == 0, "c = {c}");
        }
    }

    /// Brute force over numerators and denominators of degree <= 3 over GF(2):
    /// no w satisfies w^2 + w = s.
    #[test]
    fn artin_schreier_s_has_no_solution_brute_force() {
        let (f, s, _) = setup();
        let polys: Vec<Poly<GfElem>> = (0u64..16)
            .map(|bits| Poly::from_coeffs((0..4).map(|i| f.elem((bits >> i) & 1)).collect(), f.zero()))
            .collect();
        for n in &polys {
            for d in polys.iter().filter(|d| !d.is_zero()) {
                let w = RatFunc::new(n.clone(), d.clone()).unwrap();
                assert_ne!(w.sq() + w, s);
            }
        }
    }
}
