//! Exact Laurent polynomials `Σ b_i q^i` over a [`CoefficientDomain`].
//!
//! A polynomial is stored as its valuation (lowest exponent with a nonzero
//! coefficient) plus the dense run of coefficients up to the top exponent.
//! Both ends of that run are nonzero; the zero polynomial has no coefficients
//! and valuation 0.

mod cyclotomic;
mod domain;
mod parse;

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::{Serialize, Serializer};

use crate::error::LaurentError;

pub use cyclotomic::{
    cyclotomic, factor_cyclotomic, q_bracket, CyclotomicFactorization, DEFAULT_CYCLOTOMIC_BOUND,
};
pub use domain::{Coeff, CoefficientDomain};
pub use parse::{parse_polynomial, MAX_PARSED_SPAN};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct LaurentPoly {
    domain: CoefficientDomain,
    valuation: i64,
    coeffs: Vec<Coeff>,
}

impl LaurentPoly {
    pub fn zero(domain: CoefficientDomain) -> Self {
        LaurentPoly {
            domain,
            valuation: 0,
            coeffs: Vec::new(),
        }
    }

    pub fn one(domain: CoefficientDomain) -> Self {
        Self::monomial(domain, Coeff::one(), 0)
    }

    /// The variable `q`.
    pub fn q(domain: CoefficientDomain) -> Self {
        Self::monomial(domain, Coeff::one(), 1)
    }

    pub fn constant(domain: CoefficientDomain, c: Coeff) -> Self {
        Self::monomial(domain, c, 0)
    }

    /// `c q^e`. Panics if `c` is not a legal element of the domain.
    pub fn monomial(domain: CoefficientDomain, c: Coeff, e: i64) -> Self {
        let c = domain
            .reduce(&c)
            .unwrap_or_else(|| panic!("{c} is not an element of {domain}"));
        Self::from_raw(domain, e, vec![c])
    }

    /// Coefficients `coeffs[i]` of `q^(valuation + i)`, reduced into the domain.
    pub fn from_coeffs(
        domain: CoefficientDomain,
        valuation: i64,
        coeffs: Vec<Coeff>,
    ) -> Result<Self, LaurentError> {
        let coeffs = coeffs
            .into_iter()
            .map(|c| {
                domain.reduce(&c).ok_or_else(|| LaurentError::IllegalCoefficient {
                    value: c.to_string(),
                    domain,
                })
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Self::from_raw(domain, valuation, coeffs))
    }

    /// Integer coefficients starting at `valuation`; always legal.
    pub fn from_ints(domain: CoefficientDomain, valuation: i64, coeffs: &[i64]) -> Self {
        let coeffs = coeffs.iter().map(|&c| domain.from_i64(c)).collect();
        Self::from_raw(domain, valuation, coeffs)
    }

    /// Assumes every coefficient is already a legal domain element.
    pub(crate) fn from_raw(domain: CoefficientDomain, valuation: i64, coeffs: Vec<Coeff>) -> Self {
        let mut p = LaurentPoly {
            domain,
            valuation,
            coeffs,
        };
        p.trim();
        p
    }

    /// Coefficients times the lcm `L` of their denominators, and `L`.
    fn integer_image(&self) -> (Vec<BigInt>, BigInt) {
        let l = self.coeffs.iter().fold(BigInt::one(), |l, c| l.lcm(c.denom()));
        let ints = self.coeffs.iter().map(|c| c.numer() * (&l / c.denom())).collect();
        (ints, l)
    }

    fn trim(&mut self) {
        let Some(first) = self.coeffs.iter().position(|c| !c.is_zero()) else {
            self.coeffs.clear();
            self.valuation = 0;
            return;
        };
        let last = self.coeffs.iter().rposition(|c| !c.is_zero()).unwrap();
        self.coeffs.truncate(last + 1);
        self.coeffs.drain(..first);
        self.valuation += first as i64;
    }

    pub fn domain(&self) -> CoefficientDomain {
        self.domain
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.valuation == 0 && self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    /// Lowest exponent with a nonzero coefficient; 0 for the zero polynomial.
    pub fn valuation(&self) -> i64 {
        self.valuation
    }

    /// Highest exponent with a nonzero coefficient; 0 for the zero polynomial.
    pub fn top_exponent(&self) -> i64 {
        if self.is_zero() {
            0
        } else {
            self.valuation + self.coeffs.len() as i64 - 1
        }
    }

    /// `top_exponent - valuation`, the A-dimension of `R/(p)` when the extremes are units.
    pub fn span(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    /// Coefficients from the valuation up to the top exponent.
    pub fn coefficients(&self) -> &[Coeff] {
        &self.coeffs
    }

    pub fn coeff(&self, e: i64) -> Coeff {
        let idx = e - self.valuation;
        if idx < 0 || idx >= self.coeffs.len() as i64 {
            Coeff::zero()
        } else {
            self.coeffs[idx as usize].clone()
        }
    }

    /// `(exponent, coefficient)` pairs with nonzero coefficient, ascending.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (i64, &Coeff)> + '_ {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(move |(i, c)| (self.valuation + i as i64, c))
    }

    /// Coefficient of the valuation term, `b_s`.
    pub fn trailing_coeff(&self) -> Option<&Coeff> {
        self.coeffs.first()
    }

    /// Coefficient of the top term, `b_t`.
    pub fn leading_coeff(&self) -> Option<&Coeff> {
        self.coeffs.last()
    }

    pub fn is_monomial(&self) -> bool {
        self.coeffs.len() == 1
    }

    /// Units of `A[q, q^-1]` over an integral domain are `c q^k` with `c` a unit.
    pub fn is_unit(&self) -> bool {
        self.is_monomial() && self.domain.is_unit(&self.coeffs[0])
    }

    /// True iff `self != 0` and both extreme coefficients are units of the domain.
    pub fn extremes_invertible(&self) -> bool {
        match (self.trailing_coeff(), self.leading_coeff()) {
            (Some(lo), Some(hi)) => self.domain.is_unit(lo) && self.domain.is_unit(hi),
            _ => false,
        }
    }

    /// Multiplication by `q^k`.
    pub fn shift(&self, k: i64) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        LaurentPoly {
            domain: self.domain,
            valuation: self.valuation + k,
            coeffs: self.coeffs.clone(),
        }
    }

    pub fn scale(&self, c: &Coeff) -> Self {
        let d = self.domain;
        let coeffs = self.coeffs.iter().map(|x| d.mul(x, c)).collect();
        Self::from_raw(d, self.valuation, coeffs)
    }

    /// The substitution `q -> -q`.
    pub fn substitute_neg_q(&self) -> Self {
        let d = self.domain;
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(i, c)| {
                if (self.valuation + i as i64).rem_euclid(2) == 1 {
                    d.neg(c)
                } else {
                    c.clone()
                }
            })
            .collect();
        Self::from_raw(d, self.valuation, coeffs)
    }

    /// The substitution `q -> q^-1`.
    pub fn reflect(&self) -> Self {
        let mut coeffs = self.coeffs.clone();
        coeffs.reverse();
        Self::from_raw(self.domain, -self.top_exponent(), coeffs)
    }

    /// Evaluates at a nonzero point (or at any point when no negative powers occur).
    pub fn eval(&self, x: &Coeff) -> Coeff {
        let d = self.domain;
        let mut acc = Coeff::zero();
        for c in self.coeffs.iter().rev() {
            acc = d.add(&d.mul(&acc, x), c);
        }
        if self.valuation != 0 && !self.is_zero() {
            let base = if self.valuation > 0 {
                x.clone()
            } else {
                d.inv(x).expect("evaluation of negative powers at a non-unit")
            };
            for _ in 0..self.valuation.unsigned_abs() {
                acc = d.mul(&acc, &base);
            }
        }
        acc
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(self.domain);
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Re-interprets the coefficients in another domain.
    pub fn change_domain(&self, target: CoefficientDomain) -> Result<Self, LaurentError> {
        Self::from_coeffs(target, self.valuation, self.coeffs.clone())
    }

    /// Exact quotient `self / b` in `A[q, q^-1]`.
    pub fn div_exact(&self, b: &LaurentPoly) -> Result<LaurentPoly, LaurentError> {
        self.check_domain(b);
        if b.is_zero() {
            return Err(LaurentError::DivisionByZero);
        }
        if self.is_zero() {
            return Ok(self.clone());
        }
        if b.span() > self.span() {
            return Err(LaurentError::NotDivisible);
        }
        let d = self.domain;
        let b_top = b.leading_coeff().unwrap();
        let mut rem = self.coeffs.clone();
        let qlen = self.span() - b.span() + 1;
        let mut quot = vec![Coeff::zero(); qlen];
        for k in (0..qlen).rev() {
            let lead = &rem[k + b.span()];
            if lead.is_zero() {
                continue;
            }
            let c = d.div(lead, b_top).ok_or(LaurentError::NotDivisible)?;
            for (j, bc) in b.coeffs.iter().enumerate() {
                rem[k + j] = d.sub(&rem[k + j], &d.mul(&c, bc));
            }
            quot[k] = c;
        }
        if rem.iter().any(|c| !c.is_zero()) {
            return Err(LaurentError::NotDivisible);
        }
        Ok(Self::from_raw(d, self.valuation - b.valuation, quot))
    }

    pub fn divides(&self, a: &LaurentPoly) -> bool {
        a.div_exact(self).is_ok()
    }

    /// Euclidean division with respect to the span: `self = quot * b + rem`
    /// with `rem = 0` or `span(rem) < span(b)`. Field coefficients only.
    pub fn div_rem(&self, b: &LaurentPoly) -> Result<(LaurentPoly, LaurentPoly), LaurentError> {
        self.check_domain(b);
        let d = self.domain;
        if !d.is_field() {
            return Err(LaurentError::UnsupportedDomain(d));
        }
        if b.is_zero() {
            return Err(LaurentError::DivisionByZero);
        }
        if self.is_zero() {
            return Ok((self.clone(), self.clone()));
        }
        if self.span() < b.span() {
            return Ok((Self::zero(d), self.clone()));
        }
        let top_inv = d.inv(b.leading_coeff().unwrap()).unwrap();
        let mut rem = self.coeffs.clone();
        let qlen = self.span() - b.span() + 1;
        let mut quot = vec![Coeff::zero(); qlen];
        for k in (0..qlen).rev() {
            let lead = &rem[k + b.span()];
            if lead.is_zero() {
                continue;
            }
            let c = d.mul(lead, &top_inv);
            for (j, bc) in b.coeffs.iter().enumerate() {
                rem[k + j] = d.sub(&rem[k + j], &d.mul(&c, bc));
            }
            quot[k] = c;
        }
        let quot = Self::from_raw(d, self.valuation - b.valuation, quot);
        let rem = Self::from_raw(d, self.valuation, rem);
        Ok((quot, rem))
    }

    /// Splits `self = unit * normal` where `normal` has valuation 0 and, over a
    /// field, leading coefficient 1 (over the integers: positive leading coefficient).
    pub fn normalize(&self) -> (LaurentPoly, LaurentPoly) {
        let d = self.domain;
        if self.is_zero() {
            return (Self::one(d), self.clone());
        }
        let lead = self.leading_coeff().unwrap();
        let c = if d.is_field() {
            lead.clone()
        } else if lead < &Coeff::zero() {
            d.from_i64(-1)
        } else {
            Coeff::one()
        };
        let c_inv = d.inv(&c).unwrap();
        let normal = Self::from_raw(d, 0, self.coeffs.iter().map(|x| d.mul(x, &c_inv)).collect());
        (Self::monomial(d, c, self.valuation), normal)
    }

    pub fn normalized(&self) -> LaurentPoly {
        self.normalize().1
    }

    /// Normalized greatest common divisor. Field coefficients only.
    pub fn gcd(&self, other: &LaurentPoly) -> Result<LaurentPoly, LaurentError> {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b)?;
            a = b;
            b = r;
        }
        Ok(a.normalized())
    }

    fn check_domain(&self, other: &LaurentPoly) {
        assert_eq!(
            self.domain, other.domain,
            "Laurent polynomials over different coefficient domains"
        );
    }
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;

    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        self.check_domain(rhs);
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        let d = self.domain;
        let lo = self.valuation.min(rhs.valuation);
        let hi = self.top_exponent().max(rhs.top_exponent());
        let coeffs = (lo..=hi)
            .map(|e| d.add(&self.coeff(e), &rhs.coeff(e)))
            .collect();
        LaurentPoly::from_raw(d, lo, coeffs)
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;

    fn neg(self) -> LaurentPoly {
        let d = self.domain;
        LaurentPoly::from_raw(d, self.valuation, self.coeffs.iter().map(|c| d.neg(c)).collect())
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;

    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        self + &(-rhs)
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;

    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        self.check_domain(rhs);
        let d = self.domain;
        if self.is_zero() || rhs.is_zero() {
            return LaurentPoly::zero(d);
        }
        // clear denominators, convolve over Z, divide once per coefficient;
        // rational accumulation would pay a gcd for every term
        let (lhs, l1) = self.integer_image();
        let (rhs_ints, l2) = rhs.integer_image();
        let mut acc = vec![BigInt::zero(); lhs.len() + rhs_ints.len() - 1];
        for (i, a) in lhs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs_ints.iter().enumerate() {
                acc[i + j] += a * b;
            }
        }
        let den = l1 * l2;
        let coeffs = acc.into_iter().map(|c| d.fold(Coeff::new(c, den.clone()))).collect();
        LaurentPoly::from_raw(d, self.valuation + rhs.valuation, coeffs)
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for LaurentPoly {
            type Output = LaurentPoly;
            fn $m(self, rhs: LaurentPoly) -> LaurentPoly {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&LaurentPoly> for LaurentPoly {
            type Output = LaurentPoly;
            fn $m(self, rhs: &LaurentPoly) -> LaurentPoly {
                (&self).$m(rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        -&self
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LaurentPoly[{}]({})", self.domain, self)
    }
}

impl Serialize for LaurentPoly {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}
