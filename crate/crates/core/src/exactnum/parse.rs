//! Text syntax: polynomials like `x^4-x^2-1`, rationals like `9/5`, field
//! elements as polynomials in `b` like `1-b/2`, intervals like `1,2`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use thiserror::Error;

use super::{Field, FieldElement, IntPoly, RatPoly, RationalInterval};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("parse error at offset {pos}: {msg}")]
pub struct ParseError {
    pub pos: usize,
    pub msg: String,
}

fn err<T>(pos: usize, msg: impl Into<String>) -> Result<T, ParseError> {
    Err(ParseError { pos, msg: msg.into() })
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    var: u8,
}

impl<'a> Parser<'a> {
    fn peek(&mut self) -> Option<u8> {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
        self.src.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<RatPoly, ParseError> {
        let mut acc = self.term()?;
        loop {
            if self.eat(b'+') {
                acc = acc.add(&self.term()?);
            } else if self.eat(b'-') {
                acc = acc.sub(&self.term()?);
            } else {
                return Ok(acc);
            }
        }
    }

    fn starts_factor(&mut self) -> bool {
        matches!(self.peek(), Some(c) if c.is_ascii_digit() || c == b'.' || c == b'(' || c == self.var)
    }

    fn term(&mut self) -> Result<RatPoly, ParseError> {
        let mut acc = self.unary()?;
        loop {
            if self.eat(b'*') {
                acc = acc.mul(&self.unary()?);
            } else if self.eat(b'/') {
                let at = self.pos;
                let d = self.unary()?;
                match d.as_constant() {
                    Some(c) if !c.is_zero() => acc = acc.scale(&c.recip()),
                    Some(_) => return err(at, "division by zero"),
                    None => return err(at, "division is only allowed by constants"),
                }
            } else if self.starts_factor() {
                acc = acc.mul(&self.power()?);
            } else {
                return Ok(acc);
            }
        }
    }

    fn unary(&mut self) -> Result<RatPoly, ParseError> {
        if self.eat(b'-') {
            Ok(self.unary()?.neg())
        } else if self.eat(b'+') {
            self.unary()
        } else {
            self.power()
        }
    }

    fn power(&mut self) -> Result<RatPoly, ParseError> {
        let base = self.atom()?;
        if self.eat(b'^') {
            let at = self.pos;
            if self.peek() == Some(b'-') {
                return err(at, "negative exponents are not supported");
            }
            let e = self.unsigned()?;
            let e: u32 = e.try_into().map_err(|_| ParseError { pos: at, msg: "exponent too large".into() })?;
            if e > 4096 {
                return err(at, "exponent too large");
            }
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn unsigned(&mut self) -> Result<u64, ParseError> {
        self.peek();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return err(start, "expected an integer");
        }
        std::str::from_utf8(&self.src[start..self.pos])
            .expect("ascii digits")
            .parse()
            .or_else(|_| err(start, "integer out of range"))
    }

    fn number(&mut self) -> Result<BigRational, ParseError> {
        self.peek();
        let start = self.pos;
        while self.pos < self.src.len() && (self.src[self.pos].is_ascii_digit() || self.src[self.pos] == b'.') {
            self.pos += 1;
        }
        let text = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii");
        let (int, frac) = text.split_once('.').unwrap_or((text, ""));
        if int.is_empty() && frac.is_empty() || frac.contains('.') {
            return err(start, format!("malformed number {text:?}"));
        }
        let digits: BigInt = format!("{int}{frac}").parse().or_else(|_| err(start, "malformed number"))?;
        let den = num_traits::pow(BigInt::from(10), frac.len());
        Ok(BigRational::new(digits, den))
    }

    fn atom(&mut self) -> Result<RatPoly, ParseError> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let e = self.expr()?;
                if !self.eat(b')') {
                    return err(self.pos, "expected ')'");
                }
                Ok(e)
            }
            Some(c) if c == self.var => {
                self.pos += 1;
                Ok(RatPoly::x())
            }
            Some(c) if c.is_ascii_digit() || c == b'.' => Ok(RatPoly::constant(self.number()?)),
            Some(c) => err(self.pos, format!("unexpected character {:?}", c as char)),
            None => err(self.pos, "unexpected end of input"),
        }
    }
}

/// Parses a rational-coefficient polynomial in the variable `var`.
pub fn parse_rat_poly(src: &str, var: char) -> Result<RatPoly, ParseError> {
    if !var.is_ascii_alphabetic() {
        return err(0, "variable must be an ASCII letter");
    }
    let mut p = Parser { src: src.as_bytes(), pos: 0, var: var as u8 };
    if p.peek().is_none() {
        return err(0, "empty expression");
    }
    let out = p.expr()?;
    if p.peek().is_some() {
        return err(p.pos, "trailing input");
    }
    Ok(out)
}

/// Parses an integer polynomial in `x`, e.g. `x^4-x^2-1`.
pub fn parse_int_poly(src: &str) -> Result<IntPoly, ParseError> {
    let p = parse_rat_poly(src, 'x')?;
    p.to_int_exact().ok_or(ParseError { pos: 0, msg: "coefficients must be integers".into() })
}

/// Parses a rational constant such as `9/5`, `-3` or `1.25`.
pub fn parse_rational(src: &str) -> Result<BigRational, ParseError> {
    let p = parse_rat_poly(src, 'x')?;
    p.as_constant().ok_or(ParseError { pos: 0, msg: "expected a constant".into() })
}

/// Parses an element of `Q(β)` written as a polynomial in `b`.
pub fn parse_field_element(src: &str, field: &Field) -> Result<FieldElement, ParseError> {
    Ok(field.element(parse_rat_poly(src, 'b')?))
}

/// Parses `lo,hi`.
pub fn parse_interval(src: &str) -> Result<RationalInterval, ParseError> {
    let Some((a, b)) = src.split_once(',') else {
        return err(0, "expected lo,hi");
    };
    let lo = parse_rational(a)?;
    let hi = parse_rational(b).map_err(|e| ParseError { pos: e.pos + a.len() + 1, msg: e.msg })?;
    if lo > hi {
        return err(0, "interval endpoints out of order");
    }
    Ok(RationalInterval::new(lo, hi))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn polynomials() {
        assert_eq!(parse_int_poly("x^4-x^2-1").unwrap(), IntPoly::from_i64s(&[-1, 0, -1, 0, 1]));
        assert_eq!(parse_int_poly("5x-9").unwrap(), IntPoly::from_i64s(&[-9, 5]));
        assert_eq!(parse_int_poly(" (x+1)^2 ").unwrap(), IntPoly::from_i64s(&[1, 2, 1]));
        assert_eq!(parse_int_poly("x^2 - x - 1").unwrap().to_string(), "x^2-x-1");
        assert!(parse_int_poly("x/2").is_err());
        assert!(parse_int_poly("x^-1").is_err());
        assert!(parse_int_poly("x^^2").is_err());
        assert!(parse_int_poly("x+").is_err());
        assert!(parse_int_poly("").is_err());
        assert!(parse_int_poly("y+1").is_err());
    }

    #[test]
    fn rationals_and_intervals() {
        let q = |n: i64, d: i64| BigRational::new(n.into(), d.into());
        assert_eq!(parse_rational("9/5").unwrap(), q(9, 5));
        assert_eq!(parse_rational("-1.25").unwrap(), q(-5, 4));
        assert!(parse_rational("1/0").is_err());
        let i = parse_interval("1,2").unwrap();
        assert_eq!((i.lo(), i.hi()), (&q(1, 1), &q(2, 1)));
        assert!(parse_interval("2,1").is_err());
        assert!(parse_interval("12").is_err());
    }

    #[test]
    fn field_elements_in_b() {
        let p = parse_rat_poly("1-b/2", 'b').unwrap();
        assert_eq!(p.display_in("b").to_string(), "-1/2*b+1");
        assert_eq!(parse_rat_poly("5-3*b", 'b').unwrap(), parse_rat_poly("5 - 3b", 'b').unwrap());
        assert!(parse_rat_poly("1/(b^4)", 'b').is_err());
    }
}
