//! Degree-by-degree comparison of `dim_A H^k(C ⊗ M)` (window oracle) with
//! the torsion dimension of `H^{k+1}(C)` (Smith normal forms).

use serde::Serialize;

use super::{cohomology, InvariantFactors};
use crate::error::HomalgError;
use crate::filtered_complex::{is_well_filtered, standard_filtration, CochainComplex};
use crate::laurent::CoefficientDomain;
use crate::series_window::{m_cohomology_dim_window, WindowParameters};

/// How window radii are chosen and retried.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct WindowPolicy {
    /// Starting radius; `None` derives it from the complex.
    pub initial_radius: Option<i64>,
    /// How many times the radius is doubled after a disagreement.
    pub retries: u32,
}

impl Default for WindowPolicy {
    fn default() -> Self {
        WindowPolicy {
            initial_radius: None,
            retries: 3,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ShiftDegree {
    /// Degree `k` of the `M`-side cohomology.
    pub degree: usize,
    pub m_side: usize,
    /// `Σ span(f_i)` over the torsion of `H^{k+1}(C)`.
    pub r_side: usize,
    /// Free rank of `H^{k+1}(C)`.
    pub free_rank: usize,
    pub radius: i64,
    pub radius_large: i64,
    pub matches: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ShiftReport {
    pub domain: CoefficientDomain,
    pub degrees: Vec<ShiftDegree>,
    pub cohomology: Vec<InvariantFactors>,
}

impl ShiftReport {
    pub fn all_match(&self) -> bool {
        self.degrees.iter().all(|d| d.matches)
    }
}

pub fn verify_shift_theorem(complex: &CochainComplex, policy: WindowPolicy) -> Result<ShiftReport, HomalgError> {
    verify_shift_theorem_with(complex, policy, |_| true, |_| {})
}

/// As [`verify_shift_theorem`], restricted to the degrees accepted by
/// `select` and calling `progress` as each degree completes.
pub fn verify_shift_theorem_with(
    complex: &CochainComplex,
    policy: WindowPolicy,
    select: impl Fn(usize) -> bool,
    mut progress: impl FnMut(&ShiftDegree),
) -> Result<ShiftReport, HomalgError> {
    let domain = complex.domain();
    if !domain.is_field() {
        return Err(HomalgError::UnsupportedDomain(domain));
    }
    let filtration = standard_filtration(complex).map_err(|e| HomalgError::NotWellFiltered(e.to_string()))?;
    if let Some(failure) = is_well_filtered(complex, &filtration).failure {
        return Err(HomalgError::NotWellFiltered(failure.to_string()));
    }
    let h = cohomology(complex)?;
    let mut degrees = Vec::new();
    for k in (0..=complex.top_degree()).filter(|&k| select(k)) {
        let mut radius = policy
            .initial_radius
            .unwrap_or_else(|| WindowParameters::initial_radius(complex, k));
        let mut attempt = 0;
        let window = loop {
            let w = m_cohomology_dim_window(complex, k, radius)?;
            if w.stabilized {
                break w;
            }
            if attempt == policy.retries {
                w.require_stable()?;
            }
            attempt += 1;
            radius *= 2;
        };
        let (r_side, free_rank) = h
            .get(k + 1)
            .map_or((0, 0), |e| (e.torsion_dimension(), e.free_rank));
        let entry = ShiftDegree {
            degree: k,
            m_side: window.dim,
            r_side,
            free_rank,
            radius: window.radius,
            radius_large: window.radius_large,
            matches: window.dim == r_side && free_rank == 0,
        };
        progress(&entry);
        degrees.push(entry);
    }
    Ok(ShiftReport {
        domain,
        degrees,
        cohomology: h,
    })
}
