//! Subset-indexed cochain complexes over `R = A[q, q^-1]`.
//!
//! A [`PolynomialFamily`] assigns a polynomial `p_{Δ,w}` to each subset `Δ`
//! of `Γ = {1, ..., n}` and each `w ∉ Δ`. When the family satisfies the
//! cocycle relation
//!
//! ```text
//! p_{Δ,w} p_{Δ∪{w},w'} + p_{Δ,w'} p_{Δ∪{w'},w} = 0
//! ```
//!
//! the map `d e_Δ = Σ_w p_{Δ,w} e_{Δ∪{w}}` squares to zero and defines a
//! complex graded by `|Δ|`. Salvetti complexes of Artin groups are the
//! special case `p_{Δ,j} = (-1)^{σ(j,Δ)} W_{Δ∪{j}}(-q) / W_Δ(-q)`.

mod family_file;
mod filtration;
mod koszul;

use std::collections::HashMap;

use crate::coxeter::{poincare_quotient, CoxeterSystem};
use crate::error::ComplexError;
use crate::laurent::{CoefficientDomain, LaurentPoly};
use crate::matrix::PolyMatrix;
use crate::subset::Subset;

pub use family_file::{load_family, write_family};
pub use filtration::{
    induced_differential, is_well_filtered, quotient_complex, standard_filtration, Filtration,
    WellFilteredCheck, WellFilteredFailure,
};
pub use koszul::{koszul_family, random_koszul_family};

/// Families are stored densely; this bounds their size.
pub const MAX_FAMILY_GENERATORS: usize = 12;

/// `(Δ, w) -> p_{Δ,w}` for `Δ ⊆ {1..n}`, `w ∉ Δ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolynomialFamily {
    domain: CoefficientDomain,
    n: usize,
    entries: Vec<Option<LaurentPoly>>,
}

impl PolynomialFamily {
    pub fn new(domain: CoefficientDomain, n: usize) -> Result<Self, ComplexError> {
        if n > MAX_FAMILY_GENERATORS {
            return Err(ComplexError::TooManyGenerators(n));
        }
        Ok(PolynomialFamily {
            domain,
            n,
            entries: vec![None; (1usize << n) * n.max(1)],
        })
    }

    fn slot(&self, delta: Subset, w: usize) -> usize {
        assert!(
            (1..=self.n).contains(&w) && delta.max_generator() <= self.n && !delta.contains(w),
            "({delta:?}, {w}) is not an admissible pair for {} generators",
            self.n
        );
        delta.mask() as usize * self.n + (w - 1)
    }

    pub fn domain(&self) -> CoefficientDomain {
        self.domain
    }

    /// Number of generators `n`.
    pub fn generator_count(&self) -> usize {
        self.n
    }

    pub fn set(&mut self, delta: Subset, w: usize, p: LaurentPoly) {
        assert_eq!(p.domain(), self.domain, "family entry over a different domain");
        let i = self.slot(delta, w);
        self.entries[i] = Some(p);
    }

    pub fn get(&self, delta: Subset, w: usize) -> Option<&LaurentPoly> {
        self.entries[self.slot(delta, w)].as_ref()
    }

    fn require(&self, delta: Subset, w: usize) -> Result<&LaurentPoly, ComplexError> {
        self.get(delta, w).ok_or_else(|| ComplexError::MissingEntry {
            subset: delta.to_string(),
            generator: w,
        })
    }

    /// Every admissible pair `(Δ, w)`, by subset mask then generator.
    pub fn admissible_pairs(&self) -> impl Iterator<Item = (Subset, usize)> + '_ {
        let n = self.n;
        (0..1u64 << n).flat_map(move |m| {
            let delta = Subset::from_mask(m);
            (1..=n).filter(move |&w| !delta.contains(w)).map(move |w| (delta, w))
        })
    }

    /// Admissible triples `(Δ, w, w')` with `w < w'`.
    pub fn admissible_triples(&self) -> impl Iterator<Item = (Subset, usize, usize)> + '_ {
        let n = self.n;
        (0..1u64 << n).flat_map(move |m| {
            let delta = Subset::from_mask(m);
            (1..=n).filter(move |&w| !delta.contains(w)).flat_map(move |w| {
                (w + 1..=n)
                    .filter(move |&v| !delta.contains(v))
                    .map(move |v| (delta, w, v))
            })
        })
    }

    /// First admissible pair without an entry.
    pub fn first_missing(&self) -> Option<(Subset, usize)> {
        self.admissible_pairs().find(|&(d, w)| self.get(d, w).is_none())
    }

    /// First `(Δ, w, w')` for which the cocycle relation fails.
    pub fn first_cocycle_violation(&self) -> Result<Option<(Subset, usize, usize)>, ComplexError> {
        for (delta, w, v) in self.admissible_triples() {
            let lhs = self.require(delta, w)? * self.require(delta.with(w), v)?;
            let rhs = self.require(delta, v)? * self.require(delta.with(v), w)?;
            if !(&lhs + &rhs).is_zero() {
                return Ok(Some((delta, w, v)));
            }
        }
        Ok(None)
    }

    pub fn change_domain(&self, target: CoefficientDomain) -> Result<Self, ComplexError> {
        let entries = self
            .entries
            .iter()
            .map(|e| e.as_ref().map(|p| p.change_domain(target)).transpose())
            .collect::<Result<Vec<_>, _>>()?;
        Ok(PolynomialFamily {
            domain: target,
            n: self.n,
            entries,
        })
    }

    /// `p̄_{Δ,j} = p_{Δ ∪ shift, j}` on the generators `1..=m`.
    pub(crate) fn restrict(&self, m: usize, shift: Subset) -> PolynomialFamily {
        let mut out = PolynomialFamily::new(self.domain, m).expect("restriction is smaller");
        for (delta, w) in out.admissible_pairs().collect::<Vec<_>>() {
            if let Some(p) = self.get(delta.union(shift), w) {
                out.set(delta, w, p.clone());
            }
        }
        out
    }
}

/// True iff the cocycle relation holds for every `Δ` and every pair `w != w'` outside `Δ`.
pub fn check_cocycle_family(family: &PolynomialFamily) -> Result<bool, ComplexError> {
    if let Some((delta, w)) = family.first_missing() {
        return Err(ComplexError::MissingEntry {
            subset: delta.to_string(),
            generator: w,
        });
    }
    Ok(family.first_cocycle_violation()?.is_none())
}

/// Whether the complex computes cohomology (`d: C^k -> C^{k+1}`) or is the
/// transposed chain complex (`∂: C^{k} -> C^{k+1}` after regrading).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Orientation {
    Cochain,
    Chain,
}

/// A finite free graded `R`-module with differentials `d^k: C^k -> C^{k+1}`,
/// stored as `rank(k+1) x rank(k)` matrices acting on column vectors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CochainComplex {
    domain: CoefficientDomain,
    ranks: Vec<usize>,
    differentials: Vec<PolyMatrix>,
    basis: Option<Vec<Vec<Subset>>>,
    family: Option<PolynomialFamily>,
    orientation: Orientation,
}

impl CochainComplex {
    /// A complex from explicit differentials; `ranks[k]` is the rank of `C^k`.
    pub fn from_differentials(
        domain: CoefficientDomain,
        ranks: Vec<usize>,
        differentials: Vec<PolyMatrix>,
    ) -> Result<Self, ComplexError> {
        let ranks = if ranks.is_empty() { vec![0] } else { ranks };
        if differentials.len() + 1 != ranks.len() {
            return Err(ComplexError::RankMismatch);
        }
        for (k, d) in differentials.iter().enumerate() {
            if d.domain() != domain {
                return Err(ComplexError::DomainMismatch {
                    expected: domain,
                    found: d.domain(),
                });
            }
            if d.cols() != ranks[k] || d.rows() != ranks[k + 1] {
                return Err(ComplexError::RankMismatch);
            }
        }
        Ok(CochainComplex {
            domain,
            ranks,
            differentials,
            basis: None,
            family: None,
            orientation: Orientation::Cochain,
        })
    }

    /// The complex with no generators at all.
    pub fn zero(domain: CoefficientDomain) -> Self {
        Self::from_differentials(domain, vec![0], Vec::new()).unwrap()
    }

    pub fn domain(&self) -> CoefficientDomain {
        self.domain
    }

    pub fn top_degree(&self) -> usize {
        self.ranks.len() - 1
    }

    pub fn ranks(&self) -> &[usize] {
        &self.ranks
    }

    /// Rank of `C^k`, zero outside the stored range.
    pub fn rank(&self, k: usize) -> usize {
        self.ranks.get(k).copied().unwrap_or(0)
    }

    pub fn total_rank(&self) -> usize {
        self.ranks.iter().sum()
    }

    /// `d^k: C^k -> C^{k+1}`, if both ends are in range.
    pub fn differential(&self, k: usize) -> Option<&PolyMatrix> {
        self.differentials.get(k)
    }

    pub fn differentials(&self) -> &[PolyMatrix] {
        &self.differentials
    }

    pub fn basis(&self, k: usize) -> Option<&[Subset]> {
        self.basis.as_ref().and_then(|b| b.get(k)).map(Vec::as_slice)
    }

    pub fn family(&self) -> Option<&PolynomialFamily> {
        self.family.as_ref()
    }

    pub fn orientation(&self) -> Orientation {
        self.orientation
    }

    /// Largest span over all differential entries.
    pub fn max_entry_span(&self) -> usize {
        self.differentials.iter().map(PolyMatrix::max_span).max().unwrap_or(0)
    }

    pub fn change_domain(&self, target: CoefficientDomain) -> Result<Self, ComplexError> {
        Ok(CochainComplex {
            domain: target,
            ranks: self.ranks.clone(),
            differentials: self
                .differentials
                .iter()
                .map(|d| d.change_domain(target))
                .collect::<Result<_, _>>()?,
            basis: self.basis.clone(),
            family: self.family.as_ref().map(|f| f.change_domain(target)).transpose()?,
            orientation: self.orientation,
        })
    }
}

/// The complex `C*_Γ` of a family, graded by `|Δ|` with colex basis order.
pub fn build_generic_complex(family: &PolynomialFamily) -> Result<CochainComplex, ComplexError> {
    if let Some((delta, w, v)) = family.first_cocycle_violation()? {
        return Err(ComplexError::CocycleViolation {
            subset: delta.to_string(),
            w,
            w_prime: v,
        });
    }
    let n = family.generator_count();
    let domain = family.domain();
    let basis: Vec<Vec<Subset>> = (0..=n).map(|k| Subset::of_size(n, k)).collect();
    let index: HashMap<Subset, usize> = basis
        .iter()
        .flat_map(|b| b.iter().enumerate().map(|(i, &s)| (s, i)))
        .collect();
    let differentials = (0..n)
        .map(|k| {
            let mut d = PolyMatrix::zeros(domain, basis[k + 1].len(), basis[k].len());
            for (col, &delta) in basis[k].iter().enumerate() {
                for w in (1..=n).filter(|&w| !delta.contains(w)) {
                    let p = family.require(delta, w)?;
                    d.set(index[&delta.with(w)], col, p.clone());
                }
            }
            Ok(d)
        })
        .collect::<Result<Vec<_>, ComplexError>>()?;
    Ok(CochainComplex {
        domain,
        ranks: basis.iter().map(Vec::len).collect(),
        differentials,
        basis: Some(basis),
        family: Some(family.clone()),
        orientation: Orientation::Cochain,
    })
}

/// The family `p_{Δ,j} = (-1)^{σ(j,Δ)} W_{Δ∪{j}}(-q) / W_Δ(-q)`.
pub fn salvetti_family(system: &CoxeterSystem, domain: CoefficientDomain) -> Result<PolynomialFamily, ComplexError> {
    let mut family = PolynomialFamily::new(domain, system.rank())?;
    let mut cache: HashMap<(Subset, usize), LaurentPoly> = HashMap::new();
    for (delta, j) in family.admissible_pairs().collect::<Vec<_>>() {
        let quotient = match cache.get(&(delta, j)) {
            Some(p) => p.clone(),
            None => {
                let p = poincare_quotient(system, delta, j)?.substitute_neg_q();
                cache.insert((delta, j), p.clone());
                p
            }
        };
        let signed = if delta.sigma(j) % 2 == 1 { -quotient } else { quotient };
        family.set(delta, j, signed.change_domain(domain)?);
    }
    Ok(family)
}

/// The Salvetti complex computing `H*(G_W; R_q)` for a finite-type Artin group.
pub fn build_salvetti_complex(system: &CoxeterSystem, domain: CoefficientDomain) -> Result<CochainComplex, ComplexError> {
    build_generic_complex(&salvetti_family(system, domain)?)
}

/// True iff every composite `d^{k+1} d^k` vanishes.
pub fn check_d_squared(complex: &CochainComplex) -> bool {
    complex
        .differentials
        .windows(2)
        .all(|pair| pair[1].mul(&pair[0]).is_zero())
}

/// Transposed matrices with reversed grading: degree `j` of the result is
/// degree `top - j` of the input. Cohomology of the result is the homology
/// of the input.
pub fn transpose_complex(complex: &CochainComplex) -> CochainComplex {
    let mut ranks = complex.ranks.clone();
    ranks.reverse();
    let differentials = complex.differentials.iter().rev().map(PolyMatrix::transpose).collect();
    let basis = complex.basis.clone().map(|mut b| {
        b.reverse();
        b
    });
    CochainComplex {
        domain: complex.domain,
        ranks,
        differentials,
        basis,
        family: complex.family.clone(),
        orientation: match complex.orientation {
            Orientation::Cochain => Orientation::Chain,
            Orientation::Chain => Orientation::Cochain,
        },
    }
}
