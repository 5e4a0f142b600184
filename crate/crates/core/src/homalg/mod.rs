//! Cohomology and homology over `R = A[q, q^-1]` (field `A`) from Smith
//! normal forms, monodromy data, and the comparison with the window
//! cohomology of the series module `M`.

mod shift;
mod smith;

use serde::Serialize;

use crate::error::HomalgError;
use crate::filtered_complex::{transpose_complex, CochainComplex};
use crate::laurent::{factor_cyclotomic, CyclotomicFactorization, LaurentPoly, DEFAULT_CYCLOTOMIC_BOUND};

pub use shift::{verify_shift_theorem, verify_shift_theorem_with, ShiftDegree, ShiftReport, WindowPolicy};
pub use smith::{smith_normal_form, SmithDecomposition};

/// `H ≅ R^free_rank ⊕ ⊕_i R/(f_i)` in one degree.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InvariantFactors {
    pub degree: usize,
    pub free_rank: usize,
    /// Normalized nonunit factors, each dividing the next.
    pub torsion: Vec<LaurentPoly>,
}

impl InvariantFactors {
    /// `dim_A` of the torsion part, `Σ span(f_i)`.
    pub fn torsion_dimension(&self) -> usize {
        self.torsion.iter().map(LaurentPoly::span).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }
}

/// `H^k = ker d^k / im d^{k-1}` for every degree of the complex.
///
/// The torsion of `H^k` is the torsion of `coker d^{k-1}` (a torsion class
/// of the cokernel is automatically a cocycle since `C^{k+1}` is free), so it
/// is read off the nonunit invariant factors of `d^{k-1}`.
pub fn cohomology(complex: &CochainComplex) -> Result<Vec<InvariantFactors>, HomalgError> {
    let domain = complex.domain();
    if !domain.is_field() {
        return Err(HomalgError::UnsupportedDomain(domain));
    }
    let smiths = std::thread::scope(|scope| {
        let handles: Vec<_> = complex
            .differentials()
            .iter()
            .map(|d| scope.spawn(move || smith_normal_form(d)))
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("Smith normal form worker panicked"))
            .collect::<Result<Vec<_>, _>>()
    })?;
    let ranks: Vec<usize> = smiths.iter().map(SmithDecomposition::rank).collect();
    Ok((0..=complex.top_degree())
        .map(|k| {
            let out = ranks.get(k).copied().unwrap_or(0);
            let (incoming, torsion) = match k.checked_sub(1) {
                Some(j) => {
                    let factors = smiths[j].invariant_factors();
                    let torsion = factors.iter().filter(|f| !f.is_unit()).cloned().collect();
                    (factors.len(), torsion)
                }
                None => (0, Vec::new()),
            };
            InvariantFactors {
                degree: k,
                free_rank: complex.rank(k) - out - incoming,
                torsion,
            }
        })
        .collect())
}

/// `H_k` of the complex, computed as cohomology of the transpose with the
/// grading reversed. Entry `k` of the result is `H_k`.
pub fn homology(complex: &CochainComplex) -> Result<Vec<InvariantFactors>, HomalgError> {
    let top = complex.top_degree();
    let mut h = cohomology(&transpose_complex(complex))?;
    h.reverse();
    for (k, entry) in h.iter_mut().enumerate() {
        entry.degree = k;
    }
    debug_assert!(h.len() == top + 1);
    Ok(h)
}

/// Characteristic polynomial of `q` acting on the torsion of one cohomology group.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Monodromy {
    /// Degree of the cohomology group of `C`.
    pub cohomology_degree: usize,
    pub charpoly: LaurentPoly,
    pub factorization: CyclotomicFactorization,
}

impl Monodromy {
    /// Degree in the shifted (Milnor fiber) grading, `cohomology_degree - 1`.
    pub fn fiber_degree(&self) -> Option<usize> {
        self.cohomology_degree.checked_sub(1)
    }
}

/// Product of the normalized torsion factors in each degree and its
/// cyclotomic factorization.
pub fn monodromy_char_poly(h: &[InvariantFactors]) -> Result<Vec<Monodromy>, HomalgError> {
    h.iter()
        .map(|entry| {
            let domain = entry
                .torsion
                .first()
                .map_or(crate::laurent::CoefficientDomain::Rationals, LaurentPoly::domain);
            let charpoly = entry
                .torsion
                .iter()
                .fold(LaurentPoly::one(domain), |acc, f| &acc * &f.normalized());
            let factorization = factor_cyclotomic(&charpoly, DEFAULT_CYCLOTOMIC_BOUND)?;
            Ok(Monodromy {
                cohomology_degree: entry.degree,
                charpoly,
                factorization,
            })
        })
        .collect()
}
