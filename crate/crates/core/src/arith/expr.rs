//! Recursive-descent parser for rational expressions in up to two variables.
//!
//! Grammar (whitespace ignored, `*` optional between factors):
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := unary (('*' | '/')? unary)*
//! unary  := ('-' | '+') unary | power
//! power  := atom ('^' uint)?
//! atom   := uint | var | '(' expr ')'
//! ```

use num_bigint::BigInt;

use super::{BiPoly, Rational, UniPoly};
use crate::error::{Error, Result};

/// A quotient `num / den` of bivariate polynomials, not reduced.
#[derive(Clone, Debug)]
pub(crate) struct Fraction {
    pub num: BiPoly,
    pub den: BiPoly,
}

impl Fraction {
    fn poly(p: BiPoly) -> Self {
        Fraction { num: p, den: BiPoly::one() }
    }

    fn add(self, o: Fraction, negate: bool) -> Fraction {
        let rhs = &o.num * &self.den;
        let lhs = &self.num * &o.den;
        Fraction { num: if negate { &lhs - &rhs } else { &lhs + &rhs }, den: &self.den * &o.den }
    }

    fn mul(self, o: Fraction) -> Fraction {
        Fraction { num: &self.num * &o.num, den: &self.den * &o.den }
    }

    fn div(self, o: Fraction) -> Result<Fraction> {
        if o.num.is_zero() {
            return Err(Error::Parse("division by zero".into()));
        }
        Ok(Fraction { num: &self.num * &o.den, den: &self.den * &o.num })
    }

    fn pow(self, k: u32) -> Fraction {
        Fraction { num: self.num.pow(k), den: self.den.pow(k) }
    }

    /// The polynomial value when the denominator is a nonzero constant.
    pub fn into_poly(self) -> Result<BiPoly> {
        match self.den.constant_value() {
            Some(c) => Ok(self.num.scale(&c.recip())),
            None => Err(Error::Parse("expected a polynomial, found a quotient".into())),
        }
    }
}

struct Parser<'a> {
    chars: Vec<char>,
    pos: usize,
    t_var: Option<char>,
    x_var: char,
    src: &'a str,
}

pub(crate) fn parse_fraction(src: &str, t_var: Option<char>, x_var: char) -> Result<Fraction> {
    let mut p = Parser { chars: src.chars().filter(|c| !c.is_whitespace()).collect(), pos: 0, t_var, x_var, src };
    if p.chars.is_empty() {
        return Err(Error::Parse("empty expression".into()));
    }
    let f = p.expr()?;
    if p.pos != p.chars.len() {
        return Err(p.error("unexpected trailing input"));
    }
    Ok(f)
}

pub(crate) fn parse_bipoly(src: &str, t_var: char, x_var: char) -> Result<BiPoly> {
    parse_fraction(src, Some(t_var), x_var)?.into_poly()
}

pub(crate) fn parse_unipoly(src: &str, var: char) -> Result<UniPoly> {
    let p = parse_fraction(src, None, var)?.into_poly()?;
    Ok(p.to_uni_x().expect("no second variable was accepted"))
}

impl Parser<'_> {
    fn error(&self, what: &str) -> Error {
        Error::Parse(format!("{what} at offset {} in {:?}", self.pos, self.src))
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn expr(&mut self) -> Result<Fraction> {
        let mut acc = self.term()?;
        while let Some(c) = self.peek() {
            match c {
                '+' | '-' => {
                    self.pos += 1;
                    let rhs = self.term()?;
                    acc = acc.add(rhs, c == '-');
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<Fraction> {
        let mut acc = self.unary()?;
        loop {
            match self.peek() {
                Some('*') => {
                    self.pos += 1;
                    acc = acc.mul(self.unary()?);
                }
                Some('/') => {
                    self.pos += 1;
                    acc = acc.div(self.unary()?)?;
                }
                Some(c) if c == '(' || c.is_ascii_alphanumeric() => {
                    acc = acc.mul(self.unary()?);
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<Fraction> {
        match self.peek() {
            Some('-') => {
                self.pos += 1;
                let f = self.unary()?;
                Ok(Fraction { num: -&f.num, den: f.den })
            }
            Some('+') => {
                self.pos += 1;
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<Fraction> {
        let base = self.atom()?;
        if self.peek() == Some('^') {
            self.pos += 1;
            let k = self.uint()?;
            let k = u32::try_from(&k).map_err(|_| self.error("exponent too large"))?;
            return Ok(base.pow(k));
        }
        Ok(base)
    }

    fn uint(&mut self) -> Result<BigInt> {
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected a number"));
        }
        let s: String = self.chars[start..self.pos].iter().collect();
        Ok(s.parse().expect("digits parse as an integer"))
    }

    fn atom(&mut self) -> Result<Fraction> {
        match self.peek() {
            Some('(') => {
                self.pos += 1;
                let f = self.expr()?;
                if self.peek() != Some(')') {
                    return Err(self.error("expected ')'"));
                }
                self.pos += 1;
                Ok(f)
            }
            Some(c) if c.is_ascii_digit() => {
                let n = self.uint()?;
                Ok(Fraction::poly(BiPoly::constant(Rational::from_integer(n))))
            }
            Some(c) if c == self.x_var => {
                self.pos += 1;
                Ok(Fraction::poly(BiPoly::x()))
            }
            Some(c) if Some(c) == self.t_var => {
                self.pos += 1;
                Ok(Fraction::poly(BiPoly::t()))
            }
            Some(_) => Err(self.error("unexpected character")),
            None => Err(self.error("unexpected end of input")),
        }
    }
}
