use proptest::prelude::*;
use salvetti::coxeter::{finite_type_system, FiniteTypeLabel};
use salvetti::filtered_complex::{
    build_generic_complex, build_salvetti_complex, check_d_squared, is_well_filtered, load_family, random_koszul_family,
    salvetti_family, standard_filtration, transpose_complex, write_family,
};
use salvetti::homalg::{cohomology, homology};
use salvetti::laurent::CoefficientDomain;

const Q: CoefficientDomain = CoefficientDomain::Rationals;

fn binomial(n: usize, k: usize) -> usize {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn koszul_complexes_are_well_filtered_and_torsion(n in 1usize..=3, seed in any::<u64>(), p in prop::sample::select(vec![0u64, 2, 3, 5])) {
        let domain = if p == 0 { Q } else { CoefficientDomain::prime_field(p).unwrap() };
        let fam = random_koszul_family(n, seed, 3, domain).unwrap();
        let c = build_generic_complex(&fam).unwrap();
        prop_assert!(check_d_squared(&c));
        for k in 0..=n {
            prop_assert_eq!(c.rank(k), binomial(n, k));
        }
        let f = standard_filtration(&c).unwrap();
        prop_assert!(is_well_filtered(&c, &f).holds());
        let h = cohomology(&c).unwrap();
        prop_assert!(h.iter().all(|e| e.free_rank == 0));
        // torsion of H^k(C) and H_{k-1}(C) agree in dimension
        let hh = homology(&c).unwrap();
        for k in 1..=n {
            prop_assert_eq!(h[k].torsion_dimension(), hh[k - 1].torsion_dimension());
        }
        // family files round-trip
        prop_assert_eq!(load_family(&write_family(&fam), domain).unwrap(), fam);
    }
}

#[test]
fn salvetti_ranks_and_euler_characteristic() {
    use FiniteTypeLabel::*;
    for t in [A(3), B(3), D(4), H3, I2(5)] {
        let sys = finite_type_system(t).unwrap();
        let c = build_salvetti_complex(&sys, Q).unwrap();
        let n = sys.rank();
        assert_eq!(c.ranks(), (0..=n).map(|k| binomial(n, k)).collect::<Vec<_>>());
        assert!(check_d_squared(&c));
        // d^0 has the entries W_{j}(-q) = 1 - q
        let d0 = c.differential(0).unwrap();
        for r in 0..d0.rows() {
            assert_eq!(d0.get(r, 0).span(), 1);
        }
        let back = transpose_complex(&transpose_complex(&c));
        assert_eq!(back.differentials(), c.differentials());
    }
}

#[test]
fn salvetti_family_files_round_trip() {
    for t in ["A3", "B3", "H3", "D4"] {
        let sys = finite_type_system(t.parse().unwrap()).unwrap();
        let fam = salvetti_family(&sys, CoefficientDomain::Integers).unwrap();
        let text = write_family(&fam);
        assert_eq!(load_family(&text, CoefficientDomain::Integers).unwrap(), fam);
        let over_q = load_family(&text, Q).unwrap();
        assert_eq!(build_generic_complex(&over_q).unwrap().differentials(), build_salvetti_complex(&sys, Q).unwrap().differentials());
    }
}

#[test]
fn known_cohomology_tables() {
    // torsion dimensions per degree over Q
    let dims = |t: &str| -> Vec<usize> {
        let sys = finite_type_system(t.parse().unwrap()).unwrap();
        let c = build_salvetti_complex(&sys, Q).unwrap();
        cohomology(&c).unwrap().iter().map(|e| e.torsion_dimension()).collect()
    };
    assert_eq!(dims("A1"), [0, 1]);
    assert_eq!(dims("A2"), [0, 1, 2]);
    assert_eq!(dims("A3"), [0, 1, 2, 2]);
    assert_eq!(dims("B3"), [0, 1, 1, 3]);
    assert_eq!(dims("H3"), [0, 1, 0, 7]);
    assert_eq!(dims("I2(8)"), [0, 1, 7]);
}
