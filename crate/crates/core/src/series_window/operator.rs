//! Truncations of a differential `d: M^a -> M^b` to coefficient windows, and
//! the window estimate of `dim_A H^k(C ⊗_R M)`.
//!
//! With `I = [-N, N]` and an enlarged source window `L = I ± β`:
//!
//! ```text
//! dim ρ_I(Z^L) = |I|·r_k - rank D_k^L + rank D_k^L[:, columns outside I]
//! dim ρ_I(B)   = rank of D_{k-1} with rows on I (all inputs visible)
//! ```
//!
//! where `Z^L` are the window cocycles (every fully visible output of `d^k`
//! vanishes) and `B` the global coboundaries. The estimate is the difference.

use super::field::{rank, AnyField, ScalarField, SparseRow};
use super::WindowSeries;
use crate::error::SeriesError;
use crate::filtered_complex::CochainComplex;
use crate::laurent::LaurentPoly;
use crate::matrix::PolyMatrix;

/// A polynomial matrix acting on the coefficients `[lo, hi]` of each source component.
#[derive(Clone, Debug)]
pub struct WindowOperator {
    matrix: PolyMatrix,
    lo: i64,
    hi: i64,
}

impl WindowOperator {
    pub fn new(matrix: PolyMatrix, lo: i64, hi: i64) -> Self {
        assert!(lo <= hi, "empty source window");
        WindowOperator { matrix, lo, hi }
    }

    /// Source window `[-radius, radius]`.
    pub fn centered(matrix: PolyMatrix, radius: i64) -> Self {
        Self::new(matrix, -radius, radius)
    }

    pub fn matrix(&self) -> &PolyMatrix {
        &self.matrix
    }

    pub fn source_window(&self) -> (i64, i64) {
        (self.lo, self.hi)
    }

    pub fn source_rank(&self) -> usize {
        self.matrix.cols()
    }

    pub fn target_rank(&self) -> usize {
        self.matrix.rows()
    }

    /// `t_max - s_min` over the entries, 0 for the zero matrix.
    pub fn bandwidth(&self) -> usize {
        band(&self.matrix)
    }

    /// Output exponents whose value only involves source coefficients inside
    /// the window; `None` when empty or when the matrix is zero.
    pub fn valid_outputs(&self) -> Option<(i64, i64)> {
        let (s, t) = self.matrix.exponent_range()?;
        let (lo, hi) = (self.lo + t, self.hi + s);
        (lo <= hi).then_some((lo, hi))
    }

    /// Column of source component `b` at exponent `e`.
    pub fn column(&self, b: usize, e: i64) -> usize {
        (e - self.lo) as usize * self.source_rank() + b
    }

    /// Exponent of a column.
    pub fn column_exponent(&self, col: usize) -> i64 {
        self.lo + (col / self.source_rank().max(1)) as i64
    }

    /// Rows of the scalar matrix for output exponents `out_lo..=out_hi`,
    /// ordered by exponent then target component. Terms falling outside the
    /// source window are dropped.
    pub fn assemble<F: ScalarField>(&self, field: &F, out_lo: i64, out_hi: i64) -> Vec<SparseRow<F::Elem>> {
        let mut rows = Vec::new();
        for e in out_lo..=out_hi {
            for a in 0..self.target_rank() {
                let mut row: SparseRow<F::Elem> = Vec::new();
                for b in 0..self.source_rank() {
                    for (i, c) in self.matrix.get(a, b).terms() {
                        let x = e - i;
                        if x >= self.lo && x <= self.hi {
                            row.push((self.column(b, x), field.from_coeff(c)));
                        }
                    }
                }
                row.sort_by_key(|entry| entry.0);
                rows.push(row);
            }
        }
        rows
    }

    /// `D · x` on the valid outputs; `x` has one window per source component,
    /// each covering the source window.
    pub fn apply(&self, x: &[WindowSeries]) -> Option<Vec<WindowSeries>> {
        assert_eq!(x.len(), self.source_rank());
        let (lo, hi) = self.valid_outputs()?;
        let d = self.matrix.domain();
        Some(
            (0..self.target_rank())
                .map(|a| {
                    (0..self.source_rank()).fold(WindowSeries::zeros(d, lo, hi), |acc, b| {
                        let entry = self.matrix.get(a, b);
                        if entry.is_zero() {
                            return acc;
                        }
                        let term = x[b].mul_poly(entry).expect("window covers the band").restrict(lo, hi);
                        let coeffs = acc
                            .coefficients()
                            .iter()
                            .zip(term.coefficients())
                            .map(|(u, v)| d.add(u, v))
                            .collect();
                        WindowSeries::new(d, lo, coeffs)
                    })
                })
                .collect(),
        )
    }
}

fn band(m: &PolyMatrix) -> usize {
    m.exponent_range().map_or(0, |(s, t)| (t - s) as usize)
}

/// Boundary margin `β` and radius increment `Δ` for one degree.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct WindowParameters {
    pub margin: i64,
    pub increment: i64,
}

impl WindowParameters {
    /// `β` = widest differential band times the number of degrees;
    /// `Δ` = twice the band of `d^{k-1}` and `d^k`.
    pub fn for_degree(complex: &CochainComplex, k: usize) -> Self {
        let widest = complex.differentials().iter().map(band).max().unwrap_or(0).max(1);
        let local = [k.checked_sub(1), Some(k)]
            .into_iter()
            .flatten()
            .filter_map(|j| complex.differential(j))
            .map(band)
            .max()
            .unwrap_or(0)
            .max(1);
        WindowParameters {
            margin: (widest * (complex.top_degree() + 1)) as i64,
            increment: 2 * local as i64,
        }
    }

    /// Starting radius: eight times the largest total entry span of a
    /// differential, and at least the total span of all entries plus the margin.
    pub fn initial_radius(complex: &CochainComplex, k: usize) -> i64 {
        let totals: Vec<usize> = complex
            .differentials()
            .iter()
            .map(|d| d.entries().map(LaurentPoly::span).sum())
            .collect();
        let largest = totals.iter().copied().max().unwrap_or(0);
        let sum: usize = totals.iter().sum();
        let margin = Self::for_degree(complex, k).margin;
        (8 * largest as i64).max(sum as i64 + margin).max(4)
    }
}

/// Window estimate of `dim_A H^k(C ⊗ M)` at two radii.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct WindowDimension {
    pub degree: usize,
    pub radius: i64,
    pub radius_large: i64,
    pub dim: usize,
    pub dim_large: usize,
    pub stabilized: bool,
}

impl WindowDimension {
    pub fn require_stable(&self) -> Result<usize, SeriesError> {
        if self.stabilized {
            Ok(self.dim)
        } else {
            Err(SeriesError::NotStabilized {
                radius: self.radius,
                radius_large: self.radius_large,
                dim_small: self.dim,
                dim_large: self.dim_large,
            })
        }
    }
}

fn dim_at<F: ScalarField>(field: &F, complex: &CochainComplex, k: usize, radius: i64, margin: i64) -> usize {
    let r = complex.rank(k);
    if r == 0 {
        return 0;
    }
    let interior = |e: i64| (-radius..=radius).contains(&e);
    let cols_i = r * (2 * radius as usize + 1);

    let cocycles = match complex.differential(k).filter(|d| !d.is_zero()) {
        None => cols_i,
        Some(d) => {
            let op = WindowOperator::new(d.clone(), -radius - margin, radius + margin);
            match op.valid_outputs() {
                None => cols_i,
                Some((lo, hi)) => {
                    let rows = op.assemble(field, lo, hi);
                    let outer: Vec<SparseRow<F::Elem>> = rows
                        .iter()
                        .map(|row| {
                            row.iter()
                                .filter(|(c, _)| !interior(op.column_exponent(*c)))
                                .cloned()
                                .collect()
                        })
                        .collect();
                    let full = rank(field, rows);
                    cols_i + rank(field, outer) - full
                }
            }
        }
    };

    let coboundaries = match k.checked_sub(1).and_then(|j| complex.differential(j)) {
        Some(d) if !d.is_zero() => {
            let (s, t) = d.exponent_range().unwrap();
            let op = WindowOperator::new(d.clone(), -radius - t, radius - s);
            rank(field, op.assemble(field, -radius, radius))
        }
        _ => 0,
    };
    cocycles - coboundaries
}

/// `dim_A` of the degree-`k` window cohomology at one radius with an explicit margin.
pub fn window_dimension(complex: &CochainComplex, k: usize, radius: i64, margin: i64) -> Result<usize, SeriesError> {
    assert!(radius >= 0 && margin >= 0);
    match AnyField::for_domain(complex.domain()) {
        Some(AnyField::Rationals(f)) => Ok(dim_at(&f, complex, k, radius, margin)),
        Some(AnyField::Prime(f)) => Ok(dim_at(&f, complex, k, radius, margin)),
        None => Err(SeriesError::UnsupportedDomain(complex.domain())),
    }
}

/// Window estimate of `dim_A H^k(C ⊗_R M)` at radius `N` and `N + Δ`.
///
/// `stabilized` records whether the two agree; use
/// [`WindowDimension::require_stable`] to turn disagreement into an error.
pub fn m_cohomology_dim_window(complex: &CochainComplex, k: usize, radius: i64) -> Result<WindowDimension, SeriesError> {
    let params = WindowParameters::for_degree(complex, k);
    let large = radius + params.increment;
    let (dim, dim_large) = std::thread::scope(|scope| {
        let handle = scope.spawn(|| window_dimension(complex, k, large, params.margin));
        let small = window_dimension(complex, k, radius, params.margin);
        (small, handle.join().expect("window worker panicked"))
    });
    let (dim, dim_large) = (dim?, dim_large?);
    Ok(WindowDimension {
        degree: k,
        radius,
        radius_large: large,
        dim,
        dim_large,
        stabilized: dim == dim_large,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coxeter::finite_type_system;
    use crate::filtered_complex::{build_generic_complex, build_salvetti_complex, koszul_family};
    use crate::laurent::{parse_polynomial, CoefficientDomain};

    const Q: CoefficientDomain = CoefficientDomain::Rationals;

    fn salvetti(label: &str, d: CoefficientDomain) -> CochainComplex {
        build_salvetti_complex(&finite_type_system(label.parse().unwrap()).unwrap(), d).unwrap()
    }

    fn dims(c: &CochainComplex) -> Vec<usize> {
        (0..=c.top_degree())
            .map(|k| {
                let n = WindowParameters::initial_radius(c, k);
                m_cohomology_dim_window(c, k, n).unwrap().require_stable().unwrap()
            })
            .collect()
    }

    #[test]
    fn a1() {
        assert_eq!(dims(&salvetti("A1", Q)), vec![1, 0]);
    }

    #[test]
    fn a2() {
        assert_eq!(dims(&salvetti("A2", Q)), vec![1, 2, 0]);
    }

    #[test]
    fn koszul_pair() {
        let f = |s| parse_polynomial(s, Q).unwrap();
        let c = build_generic_complex(&koszul_family(&[f("1 - q"), f("1 - q")]).unwrap()).unwrap();
        assert_eq!(dims(&c), vec![1, 1, 0]);
    }

    #[test]
    fn zero_complex() {
        let c = CochainComplex::zero(Q);
        assert_eq!(m_cohomology_dim_window(&c, 0, 5).unwrap().dim, 0);
        assert_eq!(m_cohomology_dim_window(&c, 3, 5).unwrap().dim, 0);
    }

    #[test]
    fn integers_rejected() {
        let c = salvetti("A1", CoefficientDomain::Integers);
        assert_eq!(
            m_cohomology_dim_window(&c, 0, 5),
            Err(SeriesError::UnsupportedDomain(CoefficientDomain::Integers))
        );
    }

    #[test]
    fn prime_field_a2() {
        let f3 = CoefficientDomain::prime_field(3).unwrap();
        // 1 - q + q^2 = (q + 1)^2 mod 3 still has span 2
        assert_eq!(dims(&salvetti("A2", f3)), vec![1, 2, 0]);
    }

    #[test]
    fn apply_matches_assembly() {
        let c = salvetti("A2", Q);
        let op = WindowOperator::centered(c.differential(1).unwrap().clone(), 4);
        let x = vec![
            WindowSeries::from_ints(Q, -4, &[1, 0, 2, 0, 0, -1, 3, 0, 1]),
            WindowSeries::from_ints(Q, -4, &[0, 0, 1, 1, 0, 0, 0, 2, 0]),
        ];
        let y = op.apply(&x).unwrap();
        let (lo, hi) = op.valid_outputs().unwrap();
        let rows = op.assemble(&super::super::RationalField, lo, hi);
        for (idx, row) in rows.iter().enumerate() {
            let value = row.iter().fold(Q.zero(), |acc, (col, v)| {
                let b = col % 2;
                let e = op.column_exponent(*col);
                &acc + &(v * x[b].get(e).unwrap())
            });
            assert_eq!(y[0].get(lo + idx as i64).unwrap(), &value);
        }
        assert_eq!(hi - lo + 1, rows.len() as i64);
    }
}
