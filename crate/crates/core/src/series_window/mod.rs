//! Finite windows onto the module `M = A[[q, q^-1]]` of series infinite in
//! both directions.
//!
//! Multiplication by a polynomial `p = Σ_{s≤i≤t} b_i q^i` with invertible
//! extremes is a banded operator on coefficient sequences. Its kernel is
//! parametrized by any `t - s` consecutive coefficients and it is onto; both
//! facts are made computational here by recurrence extension and by the
//! split inverse `p_+^{-1} m_+ + p_-^{-1} m_-`.

mod field;
mod operator;

use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::error::SeriesError;
use crate::laurent::{Coeff, CoefficientDomain, LaurentPoly};

pub use field::{rank, Fp, RationalField, ScalarField, SparseRow};
pub use operator::{m_cohomology_dim_window, window_dimension, WindowDimension, WindowOperator, WindowParameters};

/// Coefficients `a_lo, ..., a_hi` of a series `Σ a_i q^i`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct WindowSeries {
    domain: CoefficientDomain,
    lo: i64,
    coeffs: Vec<Coeff>,
}

impl WindowSeries {
    /// Panics on an empty coefficient list; values are reduced into `domain`.
    pub fn new(domain: CoefficientDomain, lo: i64, coeffs: Vec<Coeff>) -> Self {
        assert!(!coeffs.is_empty(), "window series needs a nonempty window");
        let coeffs = coeffs
            .iter()
            .map(|c| domain.reduce(c).expect("coefficient outside the domain"))
            .collect();
        WindowSeries { domain, lo, coeffs }
    }

    pub fn from_ints(domain: CoefficientDomain, lo: i64, coeffs: &[i64]) -> Self {
        Self::new(domain, lo, coeffs.iter().map(|&c| domain.from_i64(c)).collect())
    }

    pub fn zeros(domain: CoefficientDomain, lo: i64, hi: i64) -> Self {
        assert!(lo <= hi);
        WindowSeries {
            domain,
            lo,
            coeffs: vec![domain.zero(); (hi - lo + 1) as usize],
        }
    }

    /// The slice `[lo, hi]` of a polynomial viewed as a series.
    pub fn from_poly(p: &LaurentPoly, lo: i64, hi: i64) -> Self {
        assert!(lo <= hi);
        WindowSeries {
            domain: p.domain(),
            lo,
            coeffs: (lo..=hi).map(|e| p.coeff(e)).collect(),
        }
    }

    pub fn domain(&self) -> CoefficientDomain {
        self.domain
    }

    pub fn lo(&self) -> i64 {
        self.lo
    }

    pub fn hi(&self) -> i64 {
        self.lo + self.coeffs.len() as i64 - 1
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    /// Always false; windows are nonempty.
    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coefficients(&self) -> &[Coeff] {
        &self.coeffs
    }

    /// `a_i`, or `None` outside the window.
    pub fn get(&self, i: i64) -> Option<&Coeff> {
        (i >= self.lo && i <= self.hi()).then(|| &self.coeffs[(i - self.lo) as usize])
    }

    fn at(&self, i: i64) -> &Coeff {
        &self.coeffs[(i - self.lo) as usize]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c == &self.domain.zero())
    }

    /// Sub-window `[lo, hi]`; panics unless it lies inside this window.
    pub fn restrict(&self, lo: i64, hi: i64) -> Self {
        assert!(self.lo <= lo && lo <= hi && hi <= self.hi(), "restriction outside the window");
        WindowSeries {
            domain: self.domain,
            lo,
            coeffs: self.coeffs[(lo - self.lo) as usize..=(hi - self.lo) as usize].to_vec(),
        }
    }

    /// `p · m` on the exponents `[lo + t, hi + s]` where it is determined by
    /// the window.
    pub fn mul_poly(&self, p: &LaurentPoly) -> Result<WindowSeries, SeriesError> {
        if p.is_zero() {
            return Ok(WindowSeries::zeros(self.domain, self.lo, self.hi()));
        }
        let (s, t) = (p.valuation(), p.top_exponent());
        let (lo, hi) = (self.lo + t, self.hi() + s);
        if lo > hi {
            return Err(SeriesError::WindowTooSmall);
        }
        let d = self.domain;
        let coeffs = (lo..=hi)
            .map(|e| {
                p.terms()
                    .fold(d.zero(), |acc, (i, b)| d.add(&acc, &d.mul(b, self.at(e - i))))
            })
            .collect();
        Ok(WindowSeries { domain: d, lo, coeffs })
    }
}

impl Serialize for WindowSeries {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut st = serializer.serialize_struct("WindowSeries", 4)?;
        st.serialize_field("domain", &self.domain.to_string())?;
        st.serialize_field("lo", &self.lo)?;
        st.serialize_field("hi", &self.hi())?;
        let coeffs: Vec<String> = self.coeffs.iter().map(|c| c.to_string()).collect();
        st.serialize_field("coefficients", &coeffs)?;
        st.end()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Direction {
    Left,
    Right,
}

fn check_extremes(p: &LaurentPoly) -> Result<(), SeriesError> {
    if p.extremes_invertible() {
        Ok(())
    } else {
        Err(SeriesError::NonInvertibleExtremes)
    }
}

/// Extend a window by `steps` coefficients so that `p · m = 0` keeps holding.
///
/// Rightward: `a_k = -b_s^{-1} Σ_{i=1}^{t-s} b_{s+i} a_{k-i}`.
/// Leftward: `a_k = -b_t^{-1} Σ_{i=1}^{t-s} b_{t-i} a_{k+i}`.
pub fn recurrence_extend(
    seed: &WindowSeries,
    p: &LaurentPoly,
    direction: Direction,
    steps: usize,
) -> Result<WindowSeries, SeriesError> {
    check_extremes(p)?;
    let span = p.span();
    if seed.len() < span {
        return Err(SeriesError::SeedTooShort {
            len: seed.len(),
            needed: span,
        });
    }
    let d = seed.domain;
    let (s, t) = (p.valuation(), p.top_exponent());
    let mut coeffs = seed.coeffs.clone();
    let lo = match direction {
        Direction::Right => {
            let lead = d.inv(&p.coeff(s)).expect("checked extremes");
            for _ in 0..steps {
                let k = coeffs.len();
                let sum = (1..=span).fold(d.zero(), |acc, i| {
                    d.add(&acc, &d.mul(&p.coeff(s + i as i64), &coeffs[k - i]))
                });
                coeffs.push(d.neg(&d.mul(&lead, &sum)));
            }
            seed.lo
        }
        Direction::Left => {
            let lead = d.inv(&p.coeff(t)).expect("checked extremes");
            coeffs.reverse();
            for _ in 0..steps {
                let k = coeffs.len();
                let sum = (1..=span).fold(d.zero(), |acc, i| {
                    d.add(&acc, &d.mul(&p.coeff(t - i as i64), &coeffs[k - i]))
                });
                coeffs.push(d.neg(&d.mul(&lead, &sum)));
            }
            coeffs.reverse();
            seed.lo - steps as i64
        }
    };
    Ok(WindowSeries { domain: d, lo, coeffs })
}

/// Basis of `ker(p ·) ⊂ M`: the unit seeds on `[0, span - 1]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RecurrenceKernel {
    p: LaurentPoly,
    seeds: Vec<WindowSeries>,
}

impl RecurrenceKernel {
    pub fn polynomial(&self) -> &LaurentPoly {
        &self.p
    }

    pub fn dimension(&self) -> usize {
        self.seeds.len()
    }

    pub fn seeds(&self) -> &[WindowSeries] {
        &self.seeds
    }

    /// Basis element `i` on the window `[lo, hi]`.
    pub fn element(&self, i: usize, lo: i64, hi: i64) -> WindowSeries {
        let seed = &self.seeds[i];
        let left = (seed.lo - lo).max(0) as usize;
        let right = (hi - seed.hi()).max(0) as usize;
        let grown = recurrence_extend(seed, &self.p, Direction::Right, right)
            .and_then(|w| recurrence_extend(&w, &self.p, Direction::Left, left))
            .expect("kernel seeds have full length");
        grown.restrict(lo, hi)
    }
}

pub fn kernel_of_scalar_mul(p: &LaurentPoly) -> Result<RecurrenceKernel, SeriesError> {
    check_extremes(p)?;
    let d = p.domain();
    let span = p.span();
    let seeds = (0..span)
        .map(|i| {
            let mut coeffs = vec![d.zero(); span];
            coeffs[i] = d.one();
            WindowSeries { domain: d, lo: 0, coeffs }
        })
        .collect();
    Ok(RecurrenceKernel { p: p.clone(), seeds })
}

/// A preimage of `rhs` under `p ·`.
///
/// `rhs` is split at exponent 0 (clamped into its window) into `m_+` and
/// `m_-`, and `x = p_+^{-1} m_+ + p_-^{-1} m_-` with the one-sided inverses
/// `p_+^{-1} = q^{-s} b_s^{-1} Σ (-q p')^i` and
/// `p_-^{-1} = q^{-t} b_t^{-1} Σ (-q^{-1} p'')^i`. The result covers
/// `[lo - t, hi - s]`, on which it only depends on the window of `rhs`, and
/// `p · x = rhs` on all of `[lo, hi]`.
pub fn solve_scalar_mul(p: &LaurentPoly, rhs: &WindowSeries) -> Result<WindowSeries, SeriesError> {
    check_extremes(p)?;
    let d = rhs.domain;
    let (s, t) = (p.valuation(), p.top_exponent());
    let span = p.span();
    let (lo, hi) = (rhs.lo, rhs.hi());
    if rhs.len() <= span {
        return Err(SeriesError::WindowTooSmall);
    }
    let split = 0i64.clamp(lo, hi + 1);
    let len = rhs.len();

    // power-series inverses of Σ_j b_{s+j} q^j and Σ_j b_{t-j} q^{-j}
    let series_inverse = |lead: i64, step: i64| -> Vec<Coeff> {
        let inv = d.inv(&p.coeff(lead)).expect("checked extremes");
        let mut u: Vec<Coeff> = Vec::with_capacity(len);
        for k in 0..len {
            let v = if k == 0 {
                inv.clone()
            } else {
                let sum = (1..=span.min(k)).fold(d.zero(), |acc, j| {
                    d.add(&acc, &d.mul(&p.coeff(lead + step * j as i64), &u[k - j]))
                });
                d.neg(&d.mul(&inv, &sum))
            };
            u.push(v);
        }
        u
    };
    let u = series_inverse(s, 1);
    let v = series_inverse(t, -1);

    let (out_lo, out_hi) = (lo - t, hi - s);
    let coeffs = (out_lo..=out_hi)
        .map(|e| {
            let mut acc = d.zero();
            // x_+[e] = Σ_{split ≤ i ≤ e+s} u_{e+s-i} m_i
            for i in split..=(e + s).min(hi) {
                acc = d.add(&acc, &d.mul(&u[(e + s - i) as usize], rhs.at(i)));
            }
            // x_-[e] = Σ_{e+t ≤ i < split} v_{i-t-e} m_i
            for i in (e + t).max(lo)..split {
                acc = d.add(&acc, &d.mul(&v[(i - t - e) as usize], rhs.at(i)));
            }
            acc
        })
        .collect();
    Ok(WindowSeries {
        domain: d,
        lo: out_lo,
        coeffs,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::laurent::parse_polynomial;

    const Q: CoefficientDomain = CoefficientDomain::Rationals;

    fn p(s: &str) -> LaurentPoly {
        parse_polynomial(s, Q).unwrap()
    }

    fn r(n: i64, d: i64) -> Coeff {
        Coeff::new(n.into(), d.into())
    }

    #[test]
    fn period_six() {
        let seed = WindowSeries::from_ints(Q, 0, &[1, 1]);
        let m = recurrence_extend(&seed, &p("1 - q + q^2"), Direction::Right, 6).unwrap();
        assert_eq!(m, WindowSeries::from_ints(Q, 0, &[1, 1, 0, -1, -1, 0, 1, 1]));
        assert!(m.mul_poly(&p("1 - q + q^2")).unwrap().is_zero());
    }

    #[test]
    fn constant_series() {
        let m = recurrence_extend(&WindowSeries::from_ints(Q, 0, &[1]), &p("1 - q"), Direction::Right, 4).unwrap();
        assert_eq!(m, WindowSeries::from_ints(Q, 0, &[1; 5]));
    }

    #[test]
    fn halving() {
        let m = recurrence_extend(&WindowSeries::from_ints(Q, 0, &[1]), &p("q - 2"), Direction::Right, 3).unwrap();
        assert_eq!(m.coefficients(), &[r(1, 1), r(1, 2), r(1, 4), r(1, 8)]);
    }

    #[test]
    fn left_extension_agrees() {
        let poly = p("2 + q - 3*q^2 + q^3");
        let seed = WindowSeries::from_ints(Q, 0, &[1, -2, 5]);
        let right = recurrence_extend(&seed, &poly, Direction::Right, 5).unwrap();
        let tail = right.restrict(5, 7);
        let back = recurrence_extend(&tail, &poly, Direction::Left, 5).unwrap();
        assert_eq!(back, right);
    }

    #[test]
    fn extension_errors() {
        let seed = WindowSeries::from_ints(Q, 0, &[1]);
        assert_eq!(
            recurrence_extend(&seed, &p("1 - q + q^2"), Direction::Right, 1),
            Err(SeriesError::SeedTooShort { len: 1, needed: 2 })
        );
        let z = CoefficientDomain::Integers;
        let bad = parse_polynomial("2 - q", z).unwrap();
        assert_eq!(
            recurrence_extend(&WindowSeries::from_ints(z, 0, &[1]), &bad, Direction::Right, 1),
            Err(SeriesError::NonInvertibleExtremes)
        );
        assert_eq!(kernel_of_scalar_mul(&p("0")), Err(SeriesError::NonInvertibleExtremes));
    }

    #[test]
    fn kernels() {
        assert_eq!(kernel_of_scalar_mul(&p("1 - q")).unwrap().dimension(), 1);
        assert_eq!(kernel_of_scalar_mul(&p("1 - q + q^2")).unwrap().dimension(), 2);
        let k = kernel_of_scalar_mul(&p("q^3 - q^4")).unwrap();
        assert_eq!(k.dimension(), 1);
        assert_eq!(k.element(0, -3, 3), WindowSeries::from_ints(Q, -3, &[1; 7]));
        assert_eq!(kernel_of_scalar_mul(&p("-q^2")).unwrap().dimension(), 0);
    }

    #[test]
    fn kernel_elements_are_annihilated() {
        let poly = p("1 + q^-1 - 2*q + q^3");
        let k = kernel_of_scalar_mul(&poly).unwrap();
        for i in 0..k.dimension() {
            let m = k.element(i, -20, 20);
            assert!(m.mul_poly(&poly).unwrap().is_zero());
        }
    }

    #[test]
    fn geometric_preimage() {
        let rhs = WindowSeries::from_poly(&LaurentPoly::one(Q), -5, 5);
        let x = solve_scalar_mul(&p("1 - q"), &rhs).unwrap();
        assert_eq!((x.lo(), x.hi()), (-6, 5));
        for e in -6..=5 {
            let expected = if e >= 0 { 1 } else { 0 };
            assert_eq!(x.get(e), Some(&r(expected, 1)));
        }
        assert_eq!(x.mul_poly(&p("1 - q")).unwrap(), rhs);
    }

    #[test]
    fn unit_preimage() {
        let rhs = WindowSeries::from_ints(Q, -2, &[3, 1, 4, 1, 5]);
        let x = solve_scalar_mul(&p("q"), &rhs).unwrap();
        assert_eq!(x, WindowSeries::from_ints(Q, -3, &[3, 1, 4, 1, 5]));
    }

    #[test]
    fn cyclotomic_preimage() {
        let poly = p("1 - q + q^2");
        let rhs = WindowSeries::from_poly(&LaurentPoly::one(Q), -10, 10);
        let x = solve_scalar_mul(&poly, &rhs).unwrap();
        assert_eq!(x.mul_poly(&poly).unwrap(), rhs);
    }

    #[test]
    fn windows_off_zero() {
        let poly = p("q^-1 + 2 - q^2");
        for lo in [3, -12] {
            let rhs = WindowSeries::from_ints(Q, lo, &[1, -1, 2, 0, 5, 7, 1, 1]);
            let x = solve_scalar_mul(&poly, &rhs).unwrap();
            assert_eq!(x.mul_poly(&poly).unwrap(), rhs);
        }
    }

    #[test]
    fn window_too_small() {
        let rhs = WindowSeries::from_ints(Q, 0, &[1, 2]);
        assert_eq!(solve_scalar_mul(&p("1 - q + q^2"), &rhs), Err(SeriesError::WindowTooSmall));
    }

    #[test]
    fn prime_field() {
        let f5 = CoefficientDomain::prime_field(5).unwrap();
        let poly = parse_polynomial("2 + q + 3*q^2", f5).unwrap();
        let rhs = WindowSeries::from_ints(f5, -4, &[1, 2, 3, 4, 0, 1, 2, 3]);
        let x = solve_scalar_mul(&poly, &rhs).unwrap();
        assert_eq!(x.mul_poly(&poly).unwrap(), rhs);
    }

    #[test]
    fn json_dump() {
        let w = WindowSeries::new(Q, -1, vec![r(1, 2), r(-3, 1)]);
        assert_eq!(
            serde_json::to_string(&w).unwrap(),
            r#"{"domain":"Q","lo":-1,"hi":0,"coefficients":["1/2","-3"]}"#
        );
    }
}
