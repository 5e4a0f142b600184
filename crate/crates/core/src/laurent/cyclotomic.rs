use serde::Serialize;

use super::{CoefficientDomain, LaurentPoly};
use crate::error::LaurentError;

/// Largest cyclotomic index tried by default. Every finite Coxeter group has
/// degrees at most 30; the margin covers user-supplied families.
pub const DEFAULT_CYCLOTOMIC_BOUND: u32 = 120;

const Z: CoefficientDomain = CoefficientDomain::Integers;

fn mobius(mut n: u32) -> i32 {
    let mut result = 1;
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            n /= d;
            if n % d == 0 {
                return 0;
            }
            result = -result;
        }
        d += 1;
    }
    if n > 1 {
        result = -result;
    }
    result
}

/// `Φ_n`, computed as `Π_{d | n} (q^d - 1)^{μ(n/d)}` over the integers.
pub fn cyclotomic(n: u32, domain: CoefficientDomain) -> LaurentPoly {
    assert!(n >= 1, "cyclotomic index must be positive");
    let divisors: Vec<u32> = (1..=n).filter(|d| n % d == 0).collect();
    let binomial = |d: u32| {
        let mut coeffs = vec![0i64; d as usize + 1];
        coeffs[0] = -1;
        coeffs[d as usize] = 1;
        LaurentPoly::from_ints(Z, 0, &coeffs)
    };
    let mut num = LaurentPoly::one(Z);
    let mut den = LaurentPoly::one(Z);
    for &d in &divisors {
        match mobius(n / d) {
            1 => num = &num * &binomial(d),
            -1 => den = &den * &binomial(d),
            _ => {}
        }
    }
    num.div_exact(&den)
        .expect("cyclotomic quotient is exact")
        .change_domain(domain)
        .expect("integer coefficients map into every domain")
}

/// `[n]_q = 1 + q + ... + q^{n-1}`.
pub fn q_bracket(n: u32, domain: CoefficientDomain) -> LaurentPoly {
    LaurentPoly::from_ints(domain, 0, &vec![1; n as usize])
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CyclotomicFactorization {
    /// `c q^k`.
    pub unit: LaurentPoly,
    /// `(n, multiplicity)` with `n` ascending.
    pub factors: Vec<(u32, u32)>,
    /// Monic with valuation 0, not divisible by any `Φ_n` within the bound.
    pub remainder: LaurentPoly,
}

impl CyclotomicFactorization {
    pub fn is_fully_cyclotomic(&self) -> bool {
        self.remainder.is_one()
    }

    pub fn reconstruct(&self) -> LaurentPoly {
        let d = self.unit.domain();
        self.factors
            .iter()
            .fold(&self.unit * &self.remainder, |acc, &(n, m)| {
                &acc * &cyclotomic(n, d).pow(m)
            })
    }
}

/// Trial division of `p` by `Φ_1, ..., Φ_bound`.
///
/// Over a prime field the `Φ_n` are not irreducible; factors are then
/// assigned greedily by increasing `n`.
pub fn factor_cyclotomic(p: &LaurentPoly, bound: u32) -> Result<CyclotomicFactorization, LaurentError> {
    let d = p.domain();
    if !d.is_field() {
        return Err(LaurentError::UnsupportedDomain(d));
    }
    if p.is_zero() {
        return Err(LaurentError::DivisionByZero);
    }
    let (unit, mut rem) = p.normalize();
    let mut factors = Vec::new();
    for n in 1..=bound {
        if rem.span() == 0 {
            break;
        }
        let phi = cyclotomic(n, d);
        if phi.span() > rem.span() {
            continue;
        }
        let mut mult = 0;
        while let Ok(next) = rem.div_exact(&phi) {
            rem = next;
            mult += 1;
        }
        if mult > 0 {
            factors.push((n, mult));
        }
    }
    Ok(CyclotomicFactorization {
        unit,
        factors,
        remainder: rem,
    })
}
