use proptest::prelude::*;
use salvetti::laurent::{CoefficientDomain, LaurentPoly};
use salvetti::series_window::{kernel_of_scalar_mul, recurrence_extend, solve_scalar_mul, Direction, WindowSeries};

const Q: CoefficientDomain = CoefficientDomain::Rationals;

fn invertible_extremes(domain: CoefficientDomain) -> impl Strategy<Value = LaurentPoly> {
    (-4i64..4, prop::collection::vec(-4i64..4, 0..6), prop::sample::select(vec![-2i64, -1, 1, 3]), prop::sample::select(vec![-1i64, 1, 2]))
        .prop_map(move |(v, mid, a, b)| {
            let mut cs = vec![a];
            cs.extend(mid);
            cs.push(b);
            LaurentPoly::from_ints(domain, v, &cs)
        })
        .prop_filter("extremes invertible in the domain", |p| p.extremes_invertible())
}

fn series(domain: CoefficientDomain) -> impl Strategy<Value = WindowSeries> {
    (-20i64..20, prop::collection::vec(-5i64..5, 20..40)).prop_map(move |(lo, cs)| WindowSeries::from_ints(domain, lo, &cs))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn kernel_dimension_is_span(p in invertible_extremes(Q)) {
        let k = kernel_of_scalar_mul(&p).unwrap();
        prop_assert_eq!(k.dimension(), p.span());
        for i in 0..k.dimension() {
            let x = k.element(i, -30, 30);
            prop_assert!(x.mul_poly(&p).unwrap().is_zero());
        }
    }

    #[test]
    fn preimages_solve(p in invertible_extremes(Q), rhs in series(Q)) {
        let x = solve_scalar_mul(&p, &rhs).unwrap();
        prop_assert_eq!(x.lo(), rhs.lo() - p.top_exponent());
        prop_assert_eq!(x.hi(), rhs.hi() - p.valuation());
        prop_assert_eq!(x.mul_poly(&p).unwrap(), rhs);
    }

    #[test]
    fn preimages_solve_mod_three(p in invertible_extremes(CoefficientDomain::PrimeField(3)), rhs in series(CoefficientDomain::PrimeField(3))) {
        let x = solve_scalar_mul(&p, &rhs).unwrap();
        prop_assert_eq!(x.mul_poly(&p).unwrap(), rhs);
    }

    #[test]
    fn extension_stays_in_kernel(p in invertible_extremes(Q), seed in prop::collection::vec(-3i64..3, 8)) {
        let seed: Vec<i64> = seed.into_iter().take(p.span().max(1)).collect();
        prop_assume!(seed.len() >= p.span());
        let w = WindowSeries::from_ints(Q, 0, &seed[..p.span()]);
        let right = recurrence_extend(&w, &p, Direction::Right, 15).unwrap();
        let both = recurrence_extend(&right, &p, Direction::Left, 15).unwrap();
        prop_assert!(both.mul_poly(&p).unwrap().is_zero());
        prop_assert_eq!(both.restrict(0, p.span() as i64 - 1), w);
    }
}
