//! Text syntax for field elements, rational functions and model polynomials.
//!
//! Grammar (whitespace ignored, `-` is the same as `+` in characteristic 2):
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := unary (('*' | '/') unary)*
//! unary  := '-' unary | power
//! power  := atom ('^' integer)?
//! atom   := integer | 'g' | 's' | 'x' | 'y' | '(' expr ')'
//! ```
//!
//! Integers are read modulo 2.

use std::collections::BTreeMap;

use super::{GfElem, GfField, Poly, RatFunc};
use crate::error::{Error, Result};

/// Largest exponent accepted by the parser.
const MAX_EXPONENT: u32 = 4096;

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Int(u64),
    Var(char),
    Plus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

fn tokenize(src: &str) -> Result<Vec<(usize, Tok)>> {
    let mut out = Vec::new();
    let bytes = src.as_bytes();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        let tok = match c {
            ' ' | '\t' | '\n' | '\r' => {
                i += 1;
                continue;
            }
            '+' | '-' => Tok::Plus,
            '*' => Tok::Star,
            '/' => Tok::Slash,
            '^' => Tok::Caret,
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            'g' | 's' | 'x' | 'y' => Tok::Var(c),
            '0'..='9' => {
                let start = i;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                let v: u64 = src[start..i].parse().map_err(|_| Error::parse(start, "integer too large"))?;
                out.push((start, Tok::Int(v)));
                continue;
            }
            _ => {
                let ch = src[i..].chars().next().unwrap();
                return Err(Error::parse(i, format!("unexpected character '{ch}'")));
            }
        };
        out.push((i, tok));
        i += 1;
    }
    Ok(out)
}

#[derive(Debug, Clone)]
enum Expr {
    Int(u64),
    Var(char, usize),
    Add(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>, usize),
    Pow(Box<Expr>, u32),
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    end: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    fn here(&self) -> usize {
        self.toks.get(self.pos).map(|(p, _)| *p).unwrap_or(self.end)
    }

    fn expr(&mut self) -> Result<Expr> {
        let mut lhs = self.term()?;
        while self.peek() == Some(&Tok::Plus) {
            self.pos += 1;
            let rhs = self.term()?;
            lhs = Expr::Add(Box::new(lhs), Box::new(rhs));
        }
        Ok(lhs)
    }

    fn term(&mut self) -> Result<Expr> {
        let mut lhs = self.unary()?;
        loop {
            match self.peek() {
                Some(Tok::Star) => {
                    self.pos += 1;
                    let rhs = self.unary()?;
                    lhs = Expr::Mul(Box::new(lhs), Box::new(rhs));
                }
                Some(Tok::Slash) => {
                    let at = self.here();
                    self.pos += 1;
                    let rhs = self.unary()?;
                    lhs = Expr::Div(Box::new(lhs), Box::new(rhs), at);
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn unary(&mut self) -> Result<Expr> {
        if self.peek() == Some(&Tok::Plus) {
            self.pos += 1;
            return self.unary();
        }
        self.power()
    }

    fn power(&mut self) -> Result<Expr> {
        let base = self.atom()?;
        if self.peek() != Some(&Tok::Caret) {
            return Ok(base);
        }
        self.pos += 1;
        let at = self.here();
        match self.peek() {
            Some(Tok::Int(e)) => {
                let e = *e;
                if e > MAX_EXPONENT as u64 {
                    return Err(Error::parse(at, format!("exponent {e} exceeds {MAX_EXPONENT}")));
                }
                self.pos += 1;
                Ok(Expr::Pow(Box::new(base), e as u32))
            }
            _ => Err(Error::parse(at, "expected integer exponent")),
        }
    }

    fn atom(&mut self) -> Result<Expr> {
        let at = self.here();
        let Some((_, tok)) = self.toks.get(self.pos).cloned() else {
            return Err(Error::parse(at, "unexpected end of input"));
        };
        self.pos += 1;
        match tok {
            Tok::Int(v) => Ok(Expr::Int(v)),
            Tok::Var(c) => Ok(Expr::Var(c, at)),
            Tok::LParen => {
                let e = self.expr()?;
                if self.peek() != Some(&Tok::RParen) {
                    return Err(Error::parse(self.here(), "expected ')'"));
                }
                self.pos += 1;
                Ok(e)
            }
            _ => Err(Error::parse(at, "expected a number, variable or '('")),
        }
    }
}

fn parse_expr(src: &str) -> Result<Expr> {
    let toks = tokenize(src)?;
    let mut p = Parser { toks, pos: 0, end: src.len() };
    let e = p.expr()?;
    if p.pos != p.toks.len() {
        return Err(Error::parse(p.here(), "unexpected trailing input"));
    }
    Ok(e)
}

/// Polynomial in `x` and `y` with coefficients in GF(2^k)(s), keyed by
/// `(deg_x, deg_y)`. Zero coefficients are never stored.
pub type XyPoly = BTreeMap<(u32, u32), RatFunc>;

fn xy_const(c: RatFunc) -> XyPoly {
    let mut m = XyPoly::new();
    if !c.is_zero() {
        m.insert((0, 0), c);
    }
    m
}

fn xy_add(a: &XyPoly, b: &XyPoly) -> XyPoly {
    let mut out = a.clone();
    for (k, v) in b {
        let sum = match out.get(k) {
            Some(w) => w + v,
            None => v.clone(),
        };
        if sum.is_zero() {
            out.remove(k);
        } else {
            out.insert(*k, sum);
        }
    }
    out
}

fn xy_mul(a: &XyPoly, b: &XyPoly) -> XyPoly {
    let mut out = XyPoly::new();
    for ((i, j), u) in a {
        for ((k, l), v) in b {
            let term = xy_const(u * v);
            let shifted: XyPoly = term.into_values().map(|c| ((i + k, j + l), c)).collect();
            out = xy_add(&out, &shifted);
        }
    }
    out
}

fn eval_xy(e: &Expr, field: GfField, allowed: &str) -> Result<XyPoly> {
    Ok(match e {
        Expr::Int(v) => xy_const(if v % 2 == 1 { RatFunc::one(field) } else { RatFunc::zero(field) }),
        Expr::Var(c, at) => {
            if !allowed.contains(*c) {
                return Err(Error::parse(*at, format!("variable '{c}' not allowed here")));
            }
            match c {
                'g' => xy_const(RatFunc::constant(field.generator())),
                's' => xy_const(RatFunc::s(field)),
                'x' => [((1, 0), RatFunc::one(field))].into_iter().collect(),
                _ => [((0, 1), RatFunc::one(field))].into_iter().collect(),
            }
        }
        Expr::Add(a, b) => xy_add(&eval_xy(a, field, allowed)?, &eval_xy(b, field, allowed)?),
        Expr::Mul(a, b) => xy_mul(&eval_xy(a, field, allowed)?, &eval_xy(b, field, allowed)?),
        Expr::Div(a, b, at) => {
            let num = eval_xy(a, field, allowed)?;
            let den = eval_xy(b, field, allowed)?;
            if den.keys().any(|k| *k != (0, 0)) {
                return Err(Error::parse(*at, "division by a polynomial in x or y"));
            }
            let Some(d) = den.get(&(0, 0)) else {
                return Err(Error::parse(*at, "division by zero"));
            };
            let di = d.inv().unwrap();
            num.into_iter().map(|(k, v)| (k, v * di.clone())).collect()
        }
        Expr::Pow(b, n) => {
            let base = eval_xy(b, field, allowed)?;
            if base.keys().all(|k| *k == (0, 0)) {
                let c = base.get(&(0, 0)).cloned().unwrap_or_else(|| RatFunc::zero(field));
                xy_const(if *n == 0 { RatFunc::one(field) } else { c.pow(*n) })
            } else {
                let mut acc = xy_const(RatFunc::one(field));
                for _ in 0..*n {
                    acc = xy_mul(&acc, &base);
                }
                acc
            }
        }
    })
}

/// Polynomial in `x`, `y` with coefficients in GF(2^k)(s).
pub fn parse_xy(src: &str, field: GfField) -> Result<XyPoly> {
    eval_xy(&parse_expr(src)?, field, "gsxy")
}

/// Coefficients (lowest degree first) of a polynomial in `x` over GF(2^k)(s).
pub fn parse_x_poly(src: &str, field: GfField) -> Result<Vec<RatFunc>> {
    let m = eval_xy(&parse_expr(src)?, field, "gsx")?;
    let deg = m.keys().map(|k| k.0).max().unwrap_or(0) as usize;
    let mut out = vec![RatFunc::zero(field); deg + 1];
    for ((i, _), c) in m {
        out[i as usize] = c;
    }
    Ok(out)
}

/// An element of GF(2^k)(s).
pub fn parse_ratfunc(src: &str, field: GfField) -> Result<RatFunc> {
    let m = eval_xy(&parse_expr(src)?, field, "gs")?;
    Ok(m.get(&(0, 0)).cloned().unwrap_or_else(|| RatFunc::zero(field)))
}

/// An element of GF(2^k), written as a polynomial in `g`.
pub fn parse_gf(src: &str, field: GfField) -> Result<GfElem> {
    let m = eval_xy(&parse_expr(src)?, field, "g")?;
    Ok(m.get(&(0, 0)).and_then(|c| c.as_constant()).unwrap_or_else(|| field.zero()))
}

fn eval_gf2(e: &Expr, var: char, gf2: GfField) -> Result<Poly<GfElem>> {
    let z = gf2.zero();
    Ok(match e {
        Expr::Int(v) => Poly::constant(gf2.elem(v % 2)),
        Expr::Var(c, at) => {
            if *c != var {
                return Err(Error::parse(*at, format!("expected variable '{var}'")));
            }
            Poly::var(z)
        }
        Expr::Add(a, b) => &eval_gf2(a, var, gf2)? + &eval_gf2(b, var, gf2)?,
        Expr::Mul(a, b) => &eval_gf2(a, var, gf2)? * &eval_gf2(b, var, gf2)?,
        Expr::Div(_, _, at) => return Err(Error::parse(*at, "division not allowed here")),
        Expr::Pow(b, n) => eval_gf2(b, var, gf2)?.pow(*n),
    })
}

/// A polynomial over GF(2) in `var`, returned as its coefficient bits.
pub fn parse_binary_poly(src: &str, var: char) -> Result<u64> {
    let gf2 = GfField::new(1)?;
    let p = eval_gf2(&parse_expr(src)?, var, gf2)?;
    if p.degree().unwrap_or(0) >= 64 {
        return Err(Error::parse(0, "binary polynomial degree must be below 64"));
    }
    Ok(p.coeffs().iter().enumerate().fold(0, |acc, (i, c)| acc | (c.bits() << i)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn binary_poly() {
        assert_eq!(parse_binary_poly("g^2+g+1", 'g').unwrap(), 0b111);
        assert_eq!(parse_binary_poly("g^8+g^4+g^3+g+1", 'g').unwrap(), 0x11B);
        assert_eq!(parse_binary_poly("(g+1)^2", 'g').unwrap(), 0b101);
        assert!(parse_binary_poly("s+1", 'g').is_err());
    }

    #[test]
    fn ratfunc_round_trip() {
        let f = GfField::new(2).unwrap();
        for src in ["((g+1)*s^2+g+1)/(s+g)", "1/s", "g*s^3+s+1", "0", "g+1", "(s^2+1)/(s^3+g)"] {
            let r = parse_ratfunc(src, f).unwrap();
            assert_eq!(r.to_string(), src);
            assert_eq!(parse_ratfunc(&r.to_string(), f).unwrap(), r);
        }
        assert_eq!(parse_ratfunc("s - s", f).unwrap(), RatFunc::zero(f));
        assert_eq!(parse_ratfunc("3*s", f).unwrap(), RatFunc::s(f));
    }

    #[test]
    fn gf_elements() {
        let f = GfField::new(2).unwrap();
        assert_eq!(parse_gf("g^2", f).unwrap(), f.elem(0b11));
        assert!(parse_gf("s", f).is_err());
    }

    #[test]
    fn x_poly() {
        let f = GfField::new(1).unwrap();
        let c = parse_x_poly("x^5 + s*x + s^2", f).unwrap();
        assert_eq!(c.len(), 6);
        assert_eq!(c[5], RatFunc::one(f));
        assert_eq!(c[1], RatFunc::s(f));
        assert_eq!(c[0], RatFunc::s(f).pow(2));
    }

    #[test]
    fn error_positions() {
        let f = GfField::new(1).unwrap();
        assert_eq!(parse_ratfunc("s + ", f).unwrap_err(), Error::parse(4, "unexpected end of input"));
        assert!(matches!(parse_ratfunc("s + q", f), Err(Error::Parse { pos: 4, .. })));
        assert!(matches!(parse_ratfunc("(s+1", f), Err(Error::Parse { pos: 4, .. })));
        assert!(matches!(parse_ratfunc("1/0", f), Err(Error::Parse { pos: 1, .. })));
        assert!(matches!(parse_x_poly("x/(x+1)", f), Err(Error::Parse { pos: 1, .. })));
    }
}
