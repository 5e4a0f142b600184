use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::PolynomialFamily;
use crate::error::ComplexError;
use crate::laurent::{CoefficientDomain, LaurentPoly};

/// `p_{Δ,w} = (-1)^{σ(w,Δ)} f_w`: the Koszul complex of `f_1, ..., f_n`.
///
/// The cocycle relation holds identically. An empty slice gives the family
/// on no generators over `Q`.
pub fn koszul_family(fs: &[LaurentPoly]) -> Result<PolynomialFamily, ComplexError> {
    let domain = fs.first().map_or(CoefficientDomain::Rationals, LaurentPoly::domain);
    let mut family = PolynomialFamily::new(domain, fs.len())?;
    for (delta, w) in family.admissible_pairs().collect::<Vec<_>>() {
        let f = fs[w - 1].clone();
        family.set(delta, w, if delta.sigma(w) % 2 == 1 { -f } else { f });
    }
    Ok(family)
}

/// Koszul family with random `f_w`: span at most `degree_bound`, valuation in
/// `-2..=2`, extreme coefficients `±1`, interior coefficients in `-3..=3`.
/// Deterministic in `seed`.
pub fn random_koszul_family(
    n: usize,
    seed: u64,
    degree_bound: usize,
    domain: CoefficientDomain,
) -> Result<PolynomialFamily, ComplexError> {
    if n == 0 {
        return PolynomialFamily::new(domain, 0);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let fs: Vec<LaurentPoly> = (0..n)
        .map(|_| {
            let span = rng.gen_range(0..=degree_bound);
            let valuation = rng.gen_range(-2..=2);
            let mut coeffs: Vec<i64> = (0..=span).map(|_| rng.gen_range(-3..=3)).collect();
            coeffs[0] = if rng.gen_bool(0.5) { 1 } else { -1 };
            coeffs[span] = if rng.gen_bool(0.5) { 1 } else { -1 };
            LaurentPoly::from_ints(domain, valuation, &coeffs)
        })
        .collect();
    koszul_family(&fs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::filtered_complex::{build_generic_complex, check_cocycle_family, check_d_squared};
    use crate::laurent::parse_polynomial;
    use crate::subset::Subset;

    const Q: CoefficientDomain = CoefficientDomain::Rationals;

    #[test]
    fn two_generator_family() {
        let fs = [parse_polynomial("1 - q", Q).unwrap(), parse_polynomial("1 + q^3", Q).unwrap()];
        let fam = koszul_family(&fs).unwrap();
        assert!(check_cocycle_family(&fam).unwrap());
        assert_eq!(fam.get(Subset::from_generators([2]), 1), Some(&fs[0]));
        assert_eq!(fam.get(Subset::from_generators([1]), 2), Some(&-fs[1].clone()));
    }

    #[test]
    fn random_families_square_to_zero() {
        for seed in 0..5 {
            let fam = random_koszul_family(3, seed, 4, Q).unwrap();
            assert!(check_d_squared(&build_generic_complex(&fam).unwrap()));
            for (d, w) in fam.admissible_pairs() {
                assert!(fam.get(d, w).unwrap().extremes_invertible());
            }
        }
    }

    #[test]
    fn deterministic_seed() {
        let d = CoefficientDomain::prime_field(5).unwrap();
        assert_eq!(random_koszul_family(4, 9, 3, d), random_koszul_family(4, 9, 3, d));
        assert_ne!(random_koszul_family(4, 9, 3, Q), random_koszul_family(4, 10, 3, Q));
    }
}
