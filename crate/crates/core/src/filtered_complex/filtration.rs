//! The standard filtration `F_i = span{e_Δ : Δ_i ⊆ Δ}` and the recursive
//! well-filtered test.

use std::collections::HashSet;
use std::fmt;

use super::{build_generic_complex, CochainComplex, Orientation};
use crate::error::ComplexError;
use crate::laurent::LaurentPoly;
use crate::subset::Subset;

/// A decreasing filtration `F_0 ⊇ F_1 ⊇ ... ⊇ F_{n+1} = 0` of a
/// subset-indexed complex, each level given by its spanning basis subsets.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Filtration {
    n: usize,
    levels: Vec<Vec<Subset>>,
}

impl Filtration {
    pub fn generator_count(&self) -> usize {
        self.n
    }

    /// Basis subsets spanning `F_i` (empty for `i > n`).
    pub fn level(&self, i: usize) -> &[Subset] {
        self.levels.get(i).map_or(&[], Vec::as_slice)
    }

    pub fn contains(&self, i: usize, delta: Subset) -> bool {
        self.level(i).contains(&delta)
    }

    /// Basis of the layer `F_i / F_{i+1}`.
    pub fn layer(&self, i: usize) -> Vec<Subset> {
        let next: HashSet<Subset> = self.level(i + 1).iter().copied().collect();
        self.level(i).iter().copied().filter(|d| !next.contains(d)).collect()
    }
}

fn check_subset_indexed(c: &CochainComplex) -> Result<usize, ComplexError> {
    match (c.family(), c.orientation()) {
        (Some(f), Orientation::Cochain) if c.basis(0).is_some() => Ok(f.generator_count()),
        _ => Err(ComplexError::NotSubsetIndexed),
    }
}

/// First differential entry leaving a level of `filtration`, as `(level, source, target)`.
fn escaping_entry(c: &CochainComplex, filtration: &Filtration) -> Option<(usize, Subset, Subset)> {
    for i in 0..filtration.levels.len() {
        for (k, d) in c.differentials().iter().enumerate() {
            let (src, dst) = (c.basis(k).unwrap(), c.basis(k + 1).unwrap());
            for (col, &from) in src.iter().enumerate() {
                if !filtration.contains(i, from) {
                    continue;
                }
                for (row, &to) in dst.iter().enumerate() {
                    if !d.get(row, col).is_zero() && !filtration.contains(i, to) {
                        return Some((i, from, to));
                    }
                }
            }
        }
    }
    None
}

/// `F_i` spanned by `{e_Δ : {n-i+1, ..., n} ⊆ Δ}` for `i = 0..=n+1`.
pub fn standard_filtration(c: &CochainComplex) -> Result<Filtration, ComplexError> {
    let n = check_subset_indexed(c)?;
    let all: Vec<Subset> = (0..=n).flat_map(|k| c.basis(k).unwrap().iter().copied()).collect();
    let mut levels: Vec<Vec<Subset>> = (0..=n)
        .map(|i| {
            let top = Subset::top(n, i);
            all.iter().copied().filter(|d| top.is_subset_of(*d)).collect()
        })
        .collect();
    levels.push(Vec::new());
    let filtration = Filtration { n, levels };
    debug_assert!(escaping_entry(c, &filtration).is_none());
    Ok(filtration)
}

/// `F_i / F_{i+1}` as the generic complex on `Γ_i = {1, ..., n-i-1}` with
/// family `p̄_{Δ,j} = p_{Δ ∪ Δ_i, j}`.
pub fn quotient_complex(c: &CochainComplex, filtration: &Filtration, i: usize) -> Result<CochainComplex, ComplexError> {
    let n = check_subset_indexed(c)?;
    if n != filtration.n {
        return Err(ComplexError::RankMismatch);
    }
    if i > n {
        return Err(ComplexError::IndexOutOfRange { index: i, max: n });
    }
    let m = n.saturating_sub(i + 1);
    build_generic_complex(&c.family().unwrap().restrict(m, Subset::top(n, i)))
}

/// The polynomial by which `F_{n-1}/F_n -> F_n/F_{n+1}` multiplies.
pub fn induced_differential(c: &CochainComplex, filtration: &Filtration) -> Result<LaurentPoly, ComplexError> {
    let n = check_subset_indexed(c)?;
    let (low, high) = (filtration.layer(n.wrapping_sub(1)), filtration.layer(n));
    if n == 0 || low.len() != 1 || high.len() != 1 {
        return Err(ComplexError::RankMismatch);
    }
    let (from, to) = (low[0], high[0]);
    let k = from.len();
    if to.len() != k + 1 {
        return Err(ComplexError::RankMismatch);
    }
    let col = c.basis(k).unwrap().iter().position(|&d| d == from).unwrap();
    let row = c.basis(k + 1).unwrap().iter().position(|&d| d == to).unwrap();
    Ok(c.differential(k).unwrap().get(row, col).clone())
}

/// Where and why the well-filtered test failed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WellFilteredFailure {
    /// One of `'a'`, `'b'`, `'c'`.
    pub condition: char,
    /// Filtration indices of the nested quotients leading to the failure.
    pub path: Vec<usize>,
    pub detail: String,
}

impl fmt::Display for WellFilteredFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "condition ({}) fails at quotient path {:?}: {}",
            self.condition, self.path, self.detail
        )
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WellFilteredCheck {
    pub failure: Option<WellFilteredFailure>,
    /// Number of complexes examined, the input included.
    pub visited: usize,
}

impl WellFilteredCheck {
    pub fn holds(&self) -> bool {
        self.failure.is_none()
    }
}

/// Recursive check of conditions (a)-(d): filtration bounds and closure,
/// rank-one top layers in degrees `n` and `n-1`, an induced differential
/// with invertible extremes, and the same for every quotient `F_i/F_{i+1}`
/// with `i < n-1` under its standard filtration.
///
/// The complex on the empty generating set passes by convention.
pub fn is_well_filtered(c: &CochainComplex, filtration: &Filtration) -> WellFilteredCheck {
    let mut visited = 0;
    let failure = check(c, filtration, &mut Vec::new(), &mut visited);
    WellFilteredCheck { failure, visited }
}

fn fail(path: &[usize], condition: char, detail: String) -> Option<WellFilteredFailure> {
    Some(WellFilteredFailure {
        condition,
        path: path.to_vec(),
        detail,
    })
}

fn check(c: &CochainComplex, filtration: &Filtration, path: &mut Vec<usize>, visited: &mut usize) -> Option<WellFilteredFailure> {
    *visited += 1;
    let n = match check_subset_indexed(c) {
        Ok(n) => n,
        Err(e) => return fail(path, 'a', e.to_string()),
    };
    if c.total_rank() == 0 {
        return None;
    }
    if filtration.n != n || filtration.levels.len() != n + 2 {
        return fail(path, 'a', format!("filtration has {} levels for {n} generators", filtration.levels.len()));
    }
    if filtration.level(0).len() != c.total_rank() {
        return fail(path, 'a', "F_0 is not the whole complex".into());
    }
    if !filtration.level(n + 1).is_empty() {
        return fail(path, 'a', format!("F_{} is not zero", n + 1));
    }
    for i in 0..=n {
        if !filtration.level(i + 1).iter().all(|d| filtration.contains(i, *d)) {
            return fail(path, 'a', format!("F_{} is not contained in F_{i}", i + 1));
        }
    }
    if let Some((i, from, to)) = escaping_entry(c, filtration) {
        return fail(path, 'a', format!("d maps e_{from:?} in F_{i} to e_{to:?} outside it"));
    }
    if n == 0 {
        return None;
    }

    let top = filtration.layer(n);
    let below = filtration.layer(n - 1);
    if top.len() != 1 || top[0].len() != n {
        return fail(path, 'b', format!("F_{n}/F_{} is not rank one in degree {n}", n + 1));
    }
    if below.len() != 1 || below[0].len() != n - 1 {
        return fail(path, 'b', format!("F_{}/F_{n} is not rank one in degree {}", n - 1, n - 1));
    }

    let p = match induced_differential(c, filtration) {
        Ok(p) => p,
        Err(e) => return fail(path, 'c', e.to_string()),
    };
    if p.is_zero() {
        return fail(path, 'c', "induced differential is zero".into());
    }
    if !p.extremes_invertible() {
        return fail(path, 
            'c',
            format!("induced differential {p} has non-invertible extreme coefficients over {}", p.domain()),
        );
    }

    for i in 0..n - 1 {
        let quotient = match quotient_complex(c, filtration, i) {
            Ok(q) => q,
            Err(e) => return fail(path, 'a', format!("quotient F_{i}/F_{}: {e}", i + 1)),
        };
        let sub = standard_filtration(&quotient).expect("quotients are subset indexed");
        path.push(i);
        let inner = check(&quotient, &sub, path, visited);
        path.pop();
        if inner.is_some() {
            return inner;
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coxeter::finite_type_system;
    use crate::filtered_complex::{build_salvetti_complex, koszul_family, PolynomialFamily};
    use crate::laurent::{parse_polynomial, CoefficientDomain};

    const Q: CoefficientDomain = CoefficientDomain::Rationals;
    const Z: CoefficientDomain = CoefficientDomain::Integers;

    fn salvetti(label: &str) -> CochainComplex {
        build_salvetti_complex(&finite_type_system(label.parse().unwrap()).unwrap(), Q).unwrap()
    }

    fn g(gens: &[usize]) -> Subset {
        Subset::from_generators(gens.iter().copied())
    }

    #[test]
    fn a2_levels() {
        let c = salvetti("A2");
        let f = standard_filtration(&c).unwrap();
        assert_eq!(f.level(0).len(), 4);
        assert_eq!(f.level(1), &[g(&[2]), g(&[1, 2])]);
        assert_eq!(f.level(2), &[g(&[1, 2])]);
        assert!(f.level(3).is_empty());
    }

    #[test]
    fn a2_quotients() {
        let c = salvetti("A2");
        let f = standard_filtration(&c).unwrap();
        let q0 = quotient_complex(&c, &f, 0).unwrap();
        assert_eq!(q0.ranks(), &[1, 1]);
        assert_eq!(q0.differential(0).unwrap().get(0, 0), &parse_polynomial("1 - q", Q).unwrap());
        let q2 = quotient_complex(&c, &f, 2).unwrap();
        assert_eq!(q2.ranks(), &[1]);
        assert!(matches!(quotient_complex(&c, &f, 3), Err(ComplexError::IndexOutOfRange { .. })));
    }

    #[test]
    fn induced_differentials() {
        let a1 = salvetti("A1");
        assert_eq!(
            induced_differential(&a1, &standard_filtration(&a1).unwrap()).unwrap(),
            parse_polynomial("1 - q", Q).unwrap()
        );
        let a2 = salvetti("A2");
        assert_eq!(
            induced_differential(&a2, &standard_filtration(&a2).unwrap()).unwrap(),
            parse_polynomial("1 - q + q^2", Q).unwrap()
        );
    }

    #[test]
    fn salvetti_complexes_are_well_filtered() {
        for label in ["A1", "A2", "A3", "B3", "H3", "A4", "D4", "F4"] {
            let c = salvetti(label);
            let check = is_well_filtered(&c, &standard_filtration(&c).unwrap());
            assert!(check.holds(), "{label}: {:?}", check.failure);
        }
    }

    #[test]
    fn unit_group_matters() {
        let fs = |d| vec![parse_polynomial("2 - q", d).unwrap(), parse_polynomial("1 + q", d).unwrap()];
        for (domain, expected) in [(Q, true), (Z, false)] {
            let c = build_generic_complex(&koszul_family(&fs(domain)).unwrap()).unwrap();
            let check = is_well_filtered(&c, &standard_filtration(&c).unwrap());
            assert_eq!(check.holds(), expected);
            if !expected {
                let failure = check.failure.unwrap();
                assert_eq!(failure.condition, 'c');
                assert!(failure.path.is_empty());
            }
        }
    }

    #[test]
    fn zero_entry_fails_condition_c() {
        let f = |s| parse_polynomial(s, Q).unwrap();
        let c = build_generic_complex(&koszul_family(&[LaurentPoly::zero(Q), f("1 + q")]).unwrap()).unwrap();
        let failure = is_well_filtered(&c, &standard_filtration(&c).unwrap()).failure.unwrap();
        assert_eq!(failure.condition, 'c');
        assert!(failure.to_string().starts_with("condition (c) fails at quotient path []"));
    }

    /// `p_{Δ,w} = ±φ(Δ ∪ w) / φ(Δ)` satisfies the cocycle relation for any φ.
    fn family_from_potential(n: usize, phi: impl Fn(Subset) -> LaurentPoly) -> PolynomialFamily {
        let mut fam = PolynomialFamily::new(Z, n).unwrap();
        for (delta, w) in fam.admissible_pairs().collect::<Vec<_>>() {
            let p = phi(delta.with(w)).div_exact(&phi(delta)).unwrap();
            fam.set(delta, w, if delta.sigma(w) % 2 == 1 { -p } else { p });
        }
        fam
    }

    #[test]
    fn nested_failure_reports_path() {
        // φ(12) = φ(23) = φ(123) = 2 - q, all others 1: the top induced
        // differential p_{{2,3},1} is 1, the quotient on {1,2} sees p_{{2},1} = 2 - q
        let bad = parse_polynomial("2 - q", Z).unwrap();
        let fam = family_from_potential(3, |d| {
            if [g(&[1, 2]), g(&[2, 3]), g(&[1, 2, 3])].contains(&d) {
                bad.clone()
            } else {
                LaurentPoly::one(Z)
            }
        });
        let c = build_generic_complex(&fam).unwrap();
        let f = standard_filtration(&c).unwrap();
        assert!(induced_differential(&c, &f).unwrap().is_one());
        let failure = is_well_filtered(&c, &f).failure.unwrap();
        assert_eq!(failure.condition, 'c');
        assert_eq!(failure.path, vec![0]);
        let over_q = c.change_domain(Q).unwrap();
        assert!(is_well_filtered(&over_q, &standard_filtration(&over_q).unwrap()).holds());
    }

    #[test]
    fn empty_generating_set_passes() {
        let c = build_generic_complex(&PolynomialFamily::new(Q, 0).unwrap()).unwrap();
        assert!(is_well_filtered(&c, &standard_filtration(&c).unwrap()).holds());
    }

    #[test]
    fn quotient_matches_submatrix() {
        let c = salvetti("A3");
        let f = standard_filtration(&c).unwrap();
        for i in 0..=3 {
            let q = quotient_complex(&c, &f, i).unwrap();
            let layer = f.layer(i);
            let top = Subset::top(3, i);
            for (k, d) in q.differentials().iter().enumerate() {
                for (col, &from) in q.basis(k).unwrap().iter().enumerate() {
                    for (row, &to) in q.basis(k + 1).unwrap().iter().enumerate() {
                        let (a, b) = (from.union(top), to.union(top));
                        assert!(layer.contains(&a) && layer.contains(&b));
                        let kk = a.len();
                        let cc = c.basis(kk).unwrap().iter().position(|&x| x == a).unwrap();
                        let rr = c.basis(kk + 1).unwrap().iter().position(|&x| x == b).unwrap();
                        assert_eq!(d.get(row, col), c.differential(kk).unwrap().get(rr, cc));
                    }
                }
            }
        }
    }

    #[test]
    fn not_subset_indexed() {
        let c = CochainComplex::zero(Q);
        assert_eq!(standard_filtration(&c), Err(ComplexError::NotSubsetIndexed));
        let t = crate::filtered_complex::transpose_complex(&salvetti("A1"));
        assert_eq!(standard_filtration(&t), Err(ComplexError::NotSubsetIndexed));
    }
}
