//! Smith normal form over `A[q, q^-1]` for a field `A`.
//!
//! Euclidean reduction with respect to the span: units `c q^k` have span 0,
//! so stripping valuations turns division into ordinary polynomial division.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::HomalgError;
use crate::laurent::{Coeff, CoefficientDomain, LaurentPoly};
use crate::matrix::PolyMatrix;

/// `U · A · V = D` with `U`, `V` invertible over `R` and `D` diagonal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmithDecomposition {
    pub u: PolyMatrix,
    pub v: PolyMatrix,
    pub d: PolyMatrix,
}

impl SmithDecomposition {
    pub fn rows(&self) -> usize {
        self.d.rows()
    }

    pub fn cols(&self) -> usize {
        self.d.cols()
    }

    /// Nonzero diagonal entries, in order; each divides the next.
    pub fn invariant_factors(&self) -> Vec<LaurentPoly> {
        (0..self.rows().min(self.cols()))
            .map(|i| self.d.get(i, i).clone())
            .take_while(|e| !e.is_zero())
            .collect()
    }

    pub fn rank(&self) -> usize {
        self.invariant_factors().len()
    }
}

/// Pivot preference: span first, then coefficient size.
fn weight(e: &LaurentPoly) -> (usize, u64) {
    let bits = e.coefficients().iter().map(|c| c.numer().bits() + c.denom().bits()).sum();
    (e.span(), bits)
}

/// Lightest nonzero entry in rows/cols `t..`, ties by position.
fn lightest_entry(a: &PolyMatrix, t: usize) -> Option<(usize, usize)> {
    let mut best: Option<((usize, u64), usize, usize)> = None;
    for i in t..a.rows() {
        for j in t..a.cols() {
            let e = a.get(i, j);
            if e.is_zero() {
                continue;
            }
            let w = weight(e);
            if best.as_ref().map_or(true, |(b, _, _)| w < *b) {
                best = Some((w, i, j));
            }
        }
    }
    best.map(|(_, i, j)| (i, j))
}

/// `(g, x, y)` with `x a + y b = g`, `g` a gcd of `a` and `b`, and `x`
/// reduced modulo `b / g` so the coefficients stay small.
fn xgcd(a: &LaurentPoly, b: &LaurentPoly) -> Result<(LaurentPoly, LaurentPoly, LaurentPoly), HomalgError> {
    let d = a.domain();
    let (mut r0, mut r1) = (a.clone(), b.clone());
    let (mut s0, mut s1) = (LaurentPoly::one(d), LaurentPoly::zero(d));
    while !r1.is_zero() {
        let (quot, rem) = r0.div_rem(&r1)?;
        let s2 = &s0 - &(&quot * &s1);
        // keep remainders monic; the scaling is a unit
        let (unit, _) = rem.normalize();
        let inv = LaurentPoly::one(d).div_exact(&unit)?;
        (r0, r1) = (r1, &rem * &inv);
        (s0, s1) = (s1, &s2 * &inv);
    }
    let g = r0;
    let b_g = b.div_exact(&g)?;
    let x = if b_g.is_unit() { LaurentPoly::zero(d) } else { s0.div_rem(&b_g)?.1 };
    let y = (&g - &(&x * a)).div_exact(b)?;
    Ok((g, x, y))
}

/// Replace rows `t`, `i` by `x r_t + y r_i` and `c r_t + e r_i`.
fn combine_rows(m: &mut PolyMatrix, t: usize, i: usize, [x, y, c, e]: [&LaurentPoly; 4]) {
    for j in 0..m.cols() {
        let (a, b) = (m.get(t, j).clone(), m.get(i, j).clone());
        m.set(t, j, &(x * &a) + &(y * &b));
        m.set(i, j, &(c * &a) + &(e * &b));
    }
}

fn combine_cols(m: &mut PolyMatrix, t: usize, j: usize, [x, y, c, e]: [&LaurentPoly; 4]) {
    for i in 0..m.rows() {
        let (a, b) = (m.get(i, t).clone(), m.get(i, j).clone());
        m.set(i, t, &(x * &a) + &(y * &b));
        m.set(i, j, &(c * &a) + &(e * &b));
    }
}

/// `1 / content` of a row or column over Q, so that scaling by it leaves
/// integer coefficients with gcd 1. Nonzero constants are units of `R`;
/// without this the rational coefficients swell.
fn primitive_scale<'a>(entries: impl Iterator<Item = &'a LaurentPoly>) -> Option<Coeff> {
    let (mut num, mut den) = (BigInt::zero(), BigInt::one());
    for c in entries.flat_map(LaurentPoly::coefficients) {
        num = num.gcd(c.numer());
        den = den.lcm(c.denom());
    }
    if num.is_zero() {
        return None;
    }
    let s = Coeff::new(den, num);
    (!s.is_one()).then_some(s)
}

fn make_row_primitive(d: &mut PolyMatrix, u: &mut PolyMatrix, i: usize) {
    if d.domain() != CoefficientDomain::Rationals {
        return;
    }
    if let Some(s) = primitive_scale((0..d.cols()).map(|j| d.get(i, j))) {
        let s = LaurentPoly::constant(d.domain(), s);
        d.scale_row(i, &s);
        u.scale_row(i, &s);
    }
}

fn make_col_primitive(d: &mut PolyMatrix, v: &mut PolyMatrix, j: usize) {
    if d.domain() != CoefficientDomain::Rationals {
        return;
    }
    if let Some(s) = primitive_scale((0..d.rows()).map(|i| d.get(i, j))) {
        let s = LaurentPoly::constant(d.domain(), s);
        d.scale_col(j, &s);
        v.scale_col(j, &s);
    }
}

/// Clears column `t` below the pivot with row operations. Returns whether
/// the pivot changed.
fn clear_column(d: &mut PolyMatrix, u: &mut PolyMatrix, t: usize) -> Result<bool, HomalgError> {
    let mut changed = false;
    for i in t + 1..d.rows() {
        if d.get(i, t).is_zero() {
            continue;
        }
        let (p, b) = (d.get(t, t).clone(), d.get(i, t).clone());
        match b.div_exact(&p) {
            Ok(quot) => {
                let quot = -quot;
                d.add_row_multiple(i, t, &quot);
                u.add_row_multiple(i, t, &quot);
            }
            Err(_) => {
                let (g, x, y) = xgcd(&p, &b)?;
                let (c, e) = (-b.div_exact(&g)?, p.div_exact(&g)?);
                combine_rows(d, t, i, [&x, &y, &c, &e]);
                combine_rows(u, t, i, [&x, &y, &c, &e]);
                make_row_primitive(d, u, t);
                changed = true;
            }
        }
        make_row_primitive(d, u, i);
    }
    Ok(changed)
}

fn clear_row(d: &mut PolyMatrix, v: &mut PolyMatrix, t: usize) -> Result<bool, HomalgError> {
    let mut changed = false;
    for j in t + 1..d.cols() {
        if d.get(t, j).is_zero() {
            continue;
        }
        let (p, b) = (d.get(t, t).clone(), d.get(t, j).clone());
        match b.div_exact(&p) {
            Ok(quot) => {
                let quot = -quot;
                d.add_col_multiple(j, t, &quot);
                v.add_col_multiple(j, t, &quot);
            }
            Err(_) => {
                let (g, x, y) = xgcd(&p, &b)?;
                let (c, e) = (-b.div_exact(&g)?, p.div_exact(&g)?);
                combine_cols(d, t, j, [&x, &y, &c, &e]);
                combine_cols(v, t, j, [&x, &y, &c, &e]);
                make_col_primitive(d, v, t);
                changed = true;
            }
        }
        make_col_primitive(d, v, j);
    }
    Ok(changed)
}

/// Smith normal form by gcd elimination: each non-divisible pair in the
/// pivot cross is replaced through a unimodular 2x2 Bezout transform, which
/// strictly lowers the pivot's span, so the alternation terminates.
pub fn smith_normal_form(a: &PolyMatrix) -> Result<SmithDecomposition, HomalgError> {
    let domain = a.domain();
    if !domain.is_field() {
        return Err(HomalgError::UnsupportedDomain(domain));
    }
    let (m, n) = (a.rows(), a.cols());
    let mut d = a.clone();
    let mut u = PolyMatrix::identity(domain, m);
    let mut v = PolyMatrix::identity(domain, n);
    for i in 0..m {
        make_row_primitive(&mut d, &mut u, i);
    }

    for t in 0..m.min(n) {
        let Some((i, j)) = lightest_entry(&d, t) else { break };
        d.swap_rows(t, i);
        u.swap_rows(t, i);
        d.swap_cols(t, j);
        v.swap_cols(t, j);
        loop {
            clear_column(&mut d, &mut u, t)?;
            if clear_row(&mut d, &mut v, t)? {
                // column ops touched column t again
                continue;
            }
            // pivot must divide the whole remaining block
            let pivot = d.get(t, t).clone();
            let offender = (t + 1..m).find(|&i| (t + 1..n).any(|j| !pivot.divides(d.get(i, j))));
            match offender {
                Some(i) => {
                    let one = LaurentPoly::one(domain);
                    d.add_row_multiple(t, i, &one);
                    u.add_row_multiple(t, i, &one);
                }
                None => break,
            }
        }
    }

    for t in 0..m.min(n) {
        let e = d.get(t, t).clone();
        if e.is_zero() {
            break;
        }
        let (unit, normal) = e.normalize();
        if !unit.is_one() {
            let inv = LaurentPoly::one(domain).div_exact(&unit).expect("units are invertible");
            u.scale_row(t, &inv);
            d.set(t, t, normal);
        }
    }
    Ok(SmithDecomposition { u, v, d })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::laurent::{parse_polynomial, CoefficientDomain};

    const Q: CoefficientDomain = CoefficientDomain::Rationals;

    fn p(s: &str) -> LaurentPoly {
        parse_polynomial(s, Q).unwrap()
    }

    fn check(a: &PolyMatrix) -> SmithDecomposition {
        let s = smith_normal_form(a).unwrap();
        assert_eq!(s.u.mul(a).mul(&s.v), s.d);
        assert!(s.u.determinant().is_unit());
        assert!(s.v.determinant().is_unit());
        for i in 0..s.rows() {
            for j in 0..s.cols() {
                if i != j {
                    assert!(s.d.get(i, j).is_zero());
                }
            }
        }
        let f = s.invariant_factors();
        for w in f.windows(2) {
            assert!(w[0].divides(&w[1]));
        }
        for e in &f {
            assert_eq!(e, &e.normalized());
        }
        s
    }

    #[test]
    fn diagonal_example() {
        let a = PolyMatrix::from_rows(Q, vec![vec![p("1 - q^2"), p("0")], vec![p("0"), p("1 - q")]]);
        assert_eq!(check(&a).invariant_factors(), vec![p("q - 1"), p("q^2 - 1")]);
    }

    #[test]
    fn unit_entry() {
        let a = PolyMatrix::from_rows(Q, vec![vec![p("q^5")]]);
        assert_eq!(check(&a).d, PolyMatrix::from_rows(Q, vec![vec![p("1")]]));
    }

    #[test]
    fn zero_matrix() {
        let a = PolyMatrix::zeros(Q, 2, 3);
        let s = check(&a);
        assert_eq!(s.u, PolyMatrix::identity(Q, 2));
        assert_eq!(s.v, PolyMatrix::identity(Q, 3));
        assert_eq!(s.rank(), 0);
    }

    #[test]
    fn a2_differentials() {
        let d0 = PolyMatrix::from_rows(Q, vec![vec![p("1 - q")], vec![p("1 - q")]]);
        assert_eq!(check(&d0).invariant_factors(), vec![p("q - 1")]);
        let d1 = PolyMatrix::from_rows(Q, vec![vec![p("-(1 - q + q^2)"), p("1 - q + q^2")]]);
        assert_eq!(check(&d1).invariant_factors(), vec![p("q^2 - q + 1")]);
    }

    #[test]
    fn needs_divisibility_fix() {
        let a = PolyMatrix::from_rows(Q, vec![vec![p("1 - q"), p("0")], vec![p("0"), p("1 + q")]]);
        assert_eq!(check(&a).invariant_factors(), vec![p("1"), p("q^2 - 1")]);
    }

    #[test]
    fn integers_rejected() {
        let z = CoefficientDomain::Integers;
        assert_eq!(
            smith_normal_form(&PolyMatrix::zeros(z, 1, 1)),
            Err(HomalgError::UnsupportedDomain(z))
        );
    }

    #[test]
    fn prime_field() {
        let f2 = CoefficientDomain::prime_field(2).unwrap();
        let a = PolyMatrix::from_rows(
            f2,
            vec![vec![parse_polynomial("1 + q", f2).unwrap(), parse_polynomial("1 + q^2", f2).unwrap()]],
        );
        let s = smith_normal_form(&a).unwrap();
        assert_eq!(s.u.mul(&a).mul(&s.v), s.d);
        assert_eq!(s.invariant_factors(), vec![parse_polynomial("q + 1", f2).unwrap()]);
    }
}
