//! Scalar fields and sparse row-echelon rank for the assembled window matrices.

use std::collections::HashMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};

use crate::laurent::{Coeff, CoefficientDomain};

pub trait ScalarField: Sync {
    type Elem: Clone + fmt::Debug + Send + Sync;

    fn from_coeff(&self, c: &Coeff) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn inv(&self, a: &Self::Elem) -> Self::Elem;
    /// `a - f * b`.
    fn sub_mul(&self, a: &Self::Elem, f: &Self::Elem, b: &Self::Elem) -> Self::Elem;
}

/// `Q` with arbitrary-precision rationals.
#[derive(Clone, Copy, Debug, Default)]
pub struct RationalField;

impl ScalarField for RationalField {
    type Elem = Coeff;

    fn from_coeff(&self, c: &Coeff) -> Coeff {
        c.clone()
    }

    fn is_zero(&self, a: &Coeff) -> bool {
        a.is_zero()
    }

    fn mul(&self, a: &Coeff, b: &Coeff) -> Coeff {
        a * b
    }

    fn neg(&self, a: &Coeff) -> Coeff {
        -a
    }

    fn inv(&self, a: &Coeff) -> Coeff {
        a.recip()
    }

    fn sub_mul(&self, a: &Coeff, f: &Coeff, b: &Coeff) -> Coeff {
        a - f * b
    }
}

/// `Z/p` on machine words.
#[derive(Clone, Copy, Debug)]
pub struct Fp {
    p: u64,
}

impl Fp {
    /// `p` is assumed prime.
    pub fn new(p: u64) -> Self {
        assert!(p >= 2);
        Fp { p }
    }

    fn mulmod(&self, a: u64, b: u64) -> u64 {
        ((a as u128 * b as u128) % self.p as u128) as u64
    }

    fn reduce_big(&self, n: &BigInt) -> u64 {
        let m = BigInt::from(self.p);
        let r = ((n % &m) + &m) % &m;
        r.to_u64().unwrap()
    }
}

impl ScalarField for Fp {
    type Elem = u64;

    fn from_coeff(&self, c: &Coeff) -> u64 {
        let num = self.reduce_big(c.numer());
        if c.denom().is_one() {
            return num;
        }
        let den = self.reduce_big(c.denom());
        self.mul(&num, &self.inv(&den))
    }

    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }

    fn mul(&self, a: &u64, b: &u64) -> u64 {
        self.mulmod(*a, *b)
    }

    fn neg(&self, a: &u64) -> u64 {
        (self.p - a) % self.p
    }

    fn inv(&self, a: &u64) -> u64 {
        assert!(*a != 0, "inverse of zero in Z/{}", self.p);
        // Fermat
        let (mut base, mut e, mut acc) = (*a, self.p - 2, 1u64);
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mulmod(acc, base);
            }
            base = self.mulmod(base, base);
            e >>= 1;
        }
        acc
    }

    fn sub_mul(&self, a: &u64, f: &u64, b: &u64) -> u64 {
        let fb = self.mulmod(*f, *b);
        if *a >= fb {
            a - fb
        } else {
            a + (self.p - fb)
        }
    }
}

/// `(column, value)` pairs with strictly increasing columns and nonzero values.
pub type SparseRow<E> = Vec<(usize, E)>;

/// `a - f * b` for sparse rows.
fn axpy<F: ScalarField>(field: &F, a: &SparseRow<F::Elem>, f: &F::Elem, b: &SparseRow<F::Elem>) -> SparseRow<F::Elem> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        let ca = a.get(i).map_or(usize::MAX, |e| e.0);
        let cb = b.get(j).map_or(usize::MAX, |e| e.0);
        if ca < cb {
            out.push(a[i].clone());
            i += 1;
        } else {
            let v = if ca == cb {
                let v = field.sub_mul(&a[i].1, f, &b[j].1);
                i += 1;
                v
            } else {
                field.neg(&field.mul(f, &b[j].1))
            };
            if !field.is_zero(&v) {
                out.push((cb, v));
            }
            j += 1;
        }
    }
    out
}

/// Rank of the matrix with the given rows, by incremental row echelon form.
pub fn rank<F: ScalarField>(field: &F, rows: impl IntoIterator<Item = SparseRow<F::Elem>>) -> usize {
    let mut pivots: HashMap<usize, SparseRow<F::Elem>> = HashMap::new();
    for mut row in rows {
        row.retain(|(_, v)| !field.is_zero(v));
        while let Some((lead, value)) = row.first().cloned() {
            match pivots.get(&lead) {
                Some(pivot) => row = axpy(field, &row, &value, pivot),
                None => {
                    let inv = field.inv(&value);
                    let normalized = row.into_iter().map(|(c, v)| (c, field.mul(&inv, &v))).collect();
                    pivots.insert(lead, normalized);
                    break;
                }
            }
        }
    }
    pivots.len()
}

/// The field behind a coefficient domain, if it is one.
pub(crate) enum AnyField {
    Rationals(RationalField),
    Prime(Fp),
}

impl AnyField {
    pub(crate) fn for_domain(domain: CoefficientDomain) -> Option<Self> {
        match domain {
            CoefficientDomain::Rationals => Some(AnyField::Rationals(RationalField)),
            CoefficientDomain::PrimeField(p) => Some(AnyField::Prime(Fp::new(p))),
            CoefficientDomain::Integers => None,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dense<F: ScalarField>(field: &F, rows: &[&[i64]]) -> Vec<SparseRow<F::Elem>> {
        rows.iter()
            .map(|r| {
                r.iter()
                    .enumerate()
                    .map(|(c, &v)| (c, field.from_coeff(&Coeff::from_integer(v.into()))))
                    .filter(|(_, v)| !field.is_zero(v))
                    .collect()
            })
            .collect()
    }

    #[test]
    fn rank_over_q_and_fp() {
        let m: &[&[i64]] = &[&[1, 2, 3], &[2, 4, 6], &[1, 0, 1], &[0, 2, 2]];
        assert_eq!(rank(&RationalField, dense(&RationalField, m)), 2);
        let m2: &[&[i64]] = &[&[1, 1], &[1, -1]];
        assert_eq!(rank(&RationalField, dense(&RationalField, m2)), 2);
        assert_eq!(rank(&Fp::new(2), dense(&Fp::new(2), m2)), 1);
        assert_eq!(rank(&Fp::new(3), dense(&Fp::new(3), m2)), 2);
    }

    #[test]
    fn fp_arithmetic() {
        let f = Fp::new(7);
        assert_eq!(f.inv(&3), 5);
        assert_eq!(f.from_coeff(&Coeff::new((-1).into(), 2.into())), 3);
        assert_eq!(f.sub_mul(&1, &2, &4), 0);
    }

    #[test]
    fn empty_rows() {
        assert_eq!(rank(&RationalField, vec![Vec::new(), Vec::new()]), 0);
    }
}
