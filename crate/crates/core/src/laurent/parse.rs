//! Text syntax for Laurent polynomials.
//!
//! Printing is descending in the exponent, e.g. `q^2 - q + 1` or
//! `1/2*q - q^-3`. The parser accepts that canonical form plus sums,
//! products, integer and rational constants, parentheses, unary minus and
//! integer powers: `-(1 - q + q^2)`, `(1 + q)^3`, `1/2*q^-3 + q`.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed};

use super::{Coeff, CoefficientDomain, LaurentPoly};
use crate::error::{ParseError, ParseErrorKind};

/// Largest span the parser will build.
pub const MAX_PARSED_SPAN: usize = 100_000;
const MAX_DEPTH: usize = 64;
const MAX_EXPONENT: i64 = 1 << 40;
const MAX_COEFF_BITS: u64 = 1 << 20;
const MAX_POWER_SPAN: usize = 4096;

/// Parses `s` into a polynomial over `domain`.
pub fn parse_polynomial(s: &str, domain: CoefficientDomain) -> Result<LaurentPoly, ParseError> {
    let mut parser = Parser {
        src: s.as_bytes(),
        pos: 0,
        depth: 0,
    };
    let value = parser.expr()?;
    parser.skip_ws();
    if parser.pos < parser.src.len() {
        return Err(parser.unexpected());
    }
    value
        .change_domain(domain)
        .map_err(|e| ParseError {
            position: 0,
            kind: ParseErrorKind::Coefficient(e),
        })
}

impl std::str::FromStr for LaurentPoly {
    type Err = ParseError;

    /// Parses over the rationals.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_polynomial(s, CoefficientDomain::Rationals)
    }
}

const Q: CoefficientDomain = CoefficientDomain::Rationals;

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    depth: usize,
}

impl Parser<'_> {
    fn err(&self, kind: ParseErrorKind) -> ParseError {
        ParseError {
            position: self.pos,
            kind,
        }
    }

    fn unexpected(&self) -> ParseError {
        match self.rest_char() {
            Some(c) => self.err(ParseErrorKind::UnexpectedChar(c)),
            None => self.err(ParseErrorKind::UnexpectedEnd),
        }
    }

    fn rest_char(&self) -> Option<char> {
        std::str::from_utf8(&self.src[self.pos..])
            .ok()
            .and_then(|s| s.chars().next())
            .or_else(|| self.src.get(self.pos).map(|&b| b as char))
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn eat(&mut self, b: u8) -> bool {
        if self.peek() == Some(b) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn enter(&mut self) -> Result<(), ParseError> {
        self.depth += 1;
        if self.depth > MAX_DEPTH {
            Err(self.err(ParseErrorKind::TooDeep))
        } else {
            Ok(())
        }
    }

    fn expr(&mut self) -> Result<LaurentPoly, ParseError> {
        self.enter()?;
        let mut acc = LaurentPoly::zero(Q);
        let mut first = true;
        loop {
            let negate = match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    false
                }
                Some(b'-') => {
                    self.pos += 1;
                    true
                }
                _ if first => false,
                _ => break,
            };
            first = false;
            let t = self.term()?;
            if !acc.is_zero() && !t.is_zero() {
                let lo = acc.valuation().min(t.valuation());
                let hi = acc.top_exponent().max(t.top_exponent());
                if hi - lo > MAX_PARSED_SPAN as i64 {
                    return Err(self.err(ParseErrorKind::TooLarge));
                }
            }
            acc = if negate { &acc - &t } else { &acc + &t };
        }
        self.depth -= 1;
        Ok(acc)
    }

    fn term(&mut self) -> Result<LaurentPoly, ParseError> {
        let mut acc = self.unary()?;
        loop {
            if self.eat(b'*') {
                let f = self.unary()?;
                if acc.span() + f.span() > MAX_PARSED_SPAN {
                    return Err(self.err(ParseErrorKind::TooLarge));
                }
                acc = &acc * &f;
            } else if self.eat(b'/') {
                let f = self.unary()?;
                if !f.is_monomial() {
                    return Err(self.err(ParseErrorKind::BadDivision));
                }
                acc = acc.div_exact(&f).map_err(|_| self.err(ParseErrorKind::BadDivision))?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn unary(&mut self) -> Result<LaurentPoly, ParseError> {
        if self.eat(b'-') {
            self.enter()?;
            let v = -self.unary()?;
            self.depth -= 1;
            Ok(v)
        } else {
            self.power()
        }
    }

    fn power(&mut self) -> Result<LaurentPoly, ParseError> {
        let base = self.atom()?;
        if !self.eat(b'^') {
            return Ok(base);
        }
        let e = self.signed_int()?;
        if base.is_monomial() {
            let c = base.coefficients()[0].clone();
            let bits = c.numer().bits() + c.denom().bits();
            let mag = u32::try_from(e.unsigned_abs())
                .ok()
                .filter(|&m| c.abs().is_one() || bits.saturating_mul(m as u64) <= MAX_COEFF_BITS)
                .ok_or_else(|| self.err(ParseErrorKind::ExponentOutOfRange))?;
            let mut cp = num_traits::pow::pow(c, mag as usize);
            if e < 0 {
                cp = cp.recip();
            }
            let exp = base
                .valuation()
                .checked_mul(e)
                .filter(|x| x.abs() <= MAX_EXPONENT)
                .ok_or_else(|| self.err(ParseErrorKind::ExponentOutOfRange))?;
            return Ok(LaurentPoly::monomial(Q, cp, exp));
        }
        if base.is_zero() {
            if e < 0 {
                return Err(self.err(ParseErrorKind::BadDivision));
            }
            return Ok(if e == 0 { LaurentPoly::one(Q) } else { base });
        }
        if e < 0 {
            return Err(self.err(ParseErrorKind::NegativePower));
        }
        let bits = base
            .coefficients()
            .iter()
            .map(|c| c.numer().bits() + c.denom().bits())
            .max()
            .unwrap_or(0)
            + base.span() as u64;
        let span = (base.span() as i64).checked_mul(e);
        if span.map_or(true, |s| s > MAX_POWER_SPAN as i64)
            || bits.saturating_mul(e as u64) > MAX_COEFF_BITS
        {
            return Err(self.err(ParseErrorKind::TooLarge));
        }
        Ok(base.pow(e as u32))
    }

    fn atom(&mut self) -> Result<LaurentPoly, ParseError> {
        match self.peek() {
            Some(b'q') => {
                self.pos += 1;
                Ok(LaurentPoly::q(Q))
            }
            Some(b'(') => {
                self.pos += 1;
                let v = self.expr()?;
                if !self.eat(b')') {
                    return Err(self.unexpected());
                }
                Ok(v)
            }
            Some(b) if b.is_ascii_digit() => {
                let digits = self.digits();
                let n: BigInt = digits.parse().expect("ascii digits");
                Ok(LaurentPoly::constant(Q, BigRational::from_integer(n)))
            }
            _ => Err(self.unexpected()),
        }
    }

    fn digits(&mut self) -> String {
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        String::from_utf8_lossy(&self.src[start..self.pos]).into_owned()
    }

    fn signed_int(&mut self) -> Result<i64, ParseError> {
        let neg = if self.eat(b'-') {
            true
        } else {
            self.eat(b'+');
            false
        };
        self.skip_ws();
        if !matches!(self.src.get(self.pos), Some(b) if b.is_ascii_digit()) {
            return Err(self.unexpected());
        }
        let digits = self.digits();
        let v: i64 = digits
            .parse()
            .ok()
            .filter(|v: &i64| *v <= MAX_EXPONENT)
            .ok_or_else(|| self.err(ParseErrorKind::ExponentOutOfRange))?;
        Ok(if neg { -v } else { v })
    }
}

fn write_coeff(f: &mut fmt::Formatter<'_>, c: &Coeff) -> fmt::Result {
    if c.is_integer() {
        write!(f, "{}", c.numer())
    } else {
        write!(f, "{}/{}", c.numer(), c.denom())
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (e, c)) in self.terms().rev().enumerate() {
            let neg = c.is_negative();
            match (i, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let a = c.abs();
            if e == 0 {
                write_coeff(f, &a)?;
                continue;
            }
            if !a.is_one() {
                write_coeff(f, &a)?;
                write!(f, "*")?;
            }
            if e == 1 {
                write!(f, "q")?;
            } else {
                write!(f, "q^{e}")?;
            }
        }
        Ok(())
    }
}
