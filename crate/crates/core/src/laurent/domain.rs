//! Coefficient domains for Laurent polynomials.
//!
//! Every coefficient is stored as a [`BigRational`]. The domain decides which
//! rationals are legal values and how arithmetic results are reduced: integers
//! must have denominator one, prime-field elements are kept as representatives
//! in `0..p`.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::LaurentError;

pub type Coeff = BigRational;

/// The ring `A` of coefficients.
///
/// Serialized as its display string: `Q`, `Z` or `Zp:<p>`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(into = "String", try_from = "String")]
pub enum CoefficientDomain {
    Rationals,
    Integers,
    /// `Z/p` for a prime `p`.
    PrimeField(u64),
}

impl CoefficientDomain {
    /// Builds `Z/p`, rejecting composite moduli.
    pub fn prime_field(p: u64) -> Result<Self, LaurentError> {
        if is_prime(p) {
            Ok(CoefficientDomain::PrimeField(p))
        } else {
            Err(LaurentError::NotPrime(p))
        }
    }

    pub fn is_field(self) -> bool {
        !matches!(self, CoefficientDomain::Integers)
    }

    /// Maps an arbitrary rational into the domain, if it has a meaning there.
    pub fn reduce(self, c: &Coeff) -> Option<Coeff> {
        match self {
            CoefficientDomain::Rationals => Some(c.clone()),
            CoefficientDomain::Integers => c.is_integer().then(|| c.clone()),
            CoefficientDomain::PrimeField(p) => {
                let p_big = BigInt::from(p);
                let den = c.denom().mod_floor(&p_big);
                if den.is_zero() {
                    return None;
                }
                let num = c.numer().mod_floor(&p_big);
                let den_inv = mod_inverse(den.to_u64()?, p)?;
                let v = (num * BigInt::from(den_inv)).mod_floor(&p_big);
                Some(BigRational::from_integer(v))
            }
        }
    }

    /// Like [`reduce`](Self::reduce) for values produced by ring operations on
    /// legal elements, which never leave the domain.
    pub(crate) fn fold(self, c: Coeff) -> Coeff {
        match self {
            CoefficientDomain::PrimeField(p) => {
                let p_big = BigInt::from(p);
                if c.is_integer() {
                    BigRational::from_integer(c.to_integer().mod_floor(&p_big))
                } else {
                    self.reduce(&c).expect("prime field arithmetic produced an illegal value")
                }
            }
            _ => c,
        }
    }

    pub fn from_i64(self, v: i64) -> Coeff {
        self.fold(BigRational::from_integer(BigInt::from(v)))
    }

    pub fn zero(self) -> Coeff {
        Coeff::zero()
    }

    pub fn one(self) -> Coeff {
        Coeff::one()
    }

    pub fn add(self, a: &Coeff, b: &Coeff) -> Coeff {
        self.fold(a + b)
    }

    pub fn sub(self, a: &Coeff, b: &Coeff) -> Coeff {
        self.fold(a - b)
    }

    pub fn mul(self, a: &Coeff, b: &Coeff) -> Coeff {
        self.fold(a * b)
    }

    pub fn neg(self, a: &Coeff) -> Coeff {
        self.fold(-a)
    }

    pub fn is_unit(self, a: &Coeff) -> bool {
        match self {
            CoefficientDomain::Integers => a.is_integer() && a.abs().is_one(),
            _ => !a.is_zero(),
        }
    }

    /// Multiplicative inverse, `None` when `a` is not a unit.
    pub fn inv(self, a: &Coeff) -> Option<Coeff> {
        if !self.is_unit(a) {
            return None;
        }
        match self {
            CoefficientDomain::Rationals | CoefficientDomain::Integers => Some(a.recip()),
            CoefficientDomain::PrimeField(p) => {
                let v = a.to_integer().to_u64()?;
                mod_inverse(v, p).map(|i| BigRational::from_integer(BigInt::from(i)))
            }
        }
    }

    /// Exact quotient `a / b` inside the domain, if it exists.
    pub fn div(self, a: &Coeff, b: &Coeff) -> Option<Coeff> {
        if b.is_zero() {
            return None;
        }
        match self {
            CoefficientDomain::Integers => {
                let q = a / b;
                q.is_integer().then_some(q)
            }
            _ => Some(self.mul(a, &self.inv(b)?)),
        }
    }

    pub fn characteristic(self) -> u64 {
        match self {
            CoefficientDomain::PrimeField(p) => p,
            _ => 0,
        }
    }
}

impl fmt::Display for CoefficientDomain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CoefficientDomain::Rationals => write!(f, "Q"),
            CoefficientDomain::Integers => write!(f, "Z"),
            CoefficientDomain::PrimeField(p) => write!(f, "Zp:{p}"),
        }
    }
}

impl From<CoefficientDomain> for String {
    fn from(d: CoefficientDomain) -> String {
        d.to_string()
    }
}

impl TryFrom<String> for CoefficientDomain {
    type Error = LaurentError;

    fn try_from(s: String) -> Result<Self, LaurentError> {
        s.parse()
    }
}

impl FromStr for CoefficientDomain {
    type Err = LaurentError;

    /// Accepts `Q`, `Z` and `Zp:<p>`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        match s {
            "Q" | "q" => Ok(CoefficientDomain::Rationals),
            "Z" | "z" => Ok(CoefficientDomain::Integers),
            _ => {
                let p = s
                    .strip_prefix("Zp:")
                    .or_else(|| s.strip_prefix("zp:"))
                    .and_then(|rest| rest.trim().parse::<u64>().ok())
                    .ok_or_else(|| LaurentError::UnknownDomain(s.to_string()))?;
                CoefficientDomain::prime_field(p)
            }
        }
    }
}

pub(crate) fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d.saturating_mul(d) <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

pub(crate) fn mod_inverse(a: u64, p: u64) -> Option<u64> {
    let (mut old_r, mut r) = (a as i128 % p as i128, p as i128);
    let (mut old_s, mut s) = (1i128, 0i128);
    while r != 0 {
        let q = old_r / r;
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
    }
    if old_r != 1 {
        return None;
    }
    Some(old_s.rem_euclid(p as i128) as u64)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Coeff {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn parse_domains() {
        assert_eq!("Q".parse::<CoefficientDomain>().unwrap(), CoefficientDomain::Rationals);
        assert_eq!("Z".parse::<CoefficientDomain>().unwrap(), CoefficientDomain::Integers);
        assert_eq!(
            "Zp:7".parse::<CoefficientDomain>().unwrap(),
            CoefficientDomain::PrimeField(7)
        );
        assert!("Zp:8".parse::<CoefficientDomain>().is_err());
        assert!("R".parse::<CoefficientDomain>().is_err());
    }

    #[test]
    fn unit_groups() {
        let z = CoefficientDomain::Integers;
        assert!(z.is_unit(&q(-1, 1)));
        assert!(!z.is_unit(&q(2, 1)));
        assert!(CoefficientDomain::Rationals.is_unit(&q(2, 1)));
        assert!(!CoefficientDomain::PrimeField(3).is_unit(&q(0, 1)));
    }

    #[test]
    fn prime_field_reduction() {
        let f = CoefficientDomain::PrimeField(5);
        assert_eq!(f.reduce(&q(1, 2)).unwrap(), q(3, 1));
        assert_eq!(f.reduce(&q(-1, 1)).unwrap(), q(4, 1));
        assert!(f.reduce(&q(1, 5)).is_none());
        assert_eq!(f.inv(&q(2, 1)).unwrap(), q(3, 1));
        assert_eq!(f.mul(&q(4, 1), &q(4, 1)), q(1, 1));
    }

    #[test]
    fn integer_division_must_be_exact() {
        let z = CoefficientDomain::Integers;
        assert_eq!(z.div(&q(6, 1), &q(3, 1)).unwrap(), q(2, 1));
        assert!(z.div(&q(1, 1), &q(2, 1)).is_none());
    }
}
