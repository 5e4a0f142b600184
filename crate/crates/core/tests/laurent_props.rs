use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;
use salvetti::laurent::{parse_polynomial, CoefficientDomain, LaurentPoly};

const Q: CoefficientDomain = CoefficientDomain::Rationals;
const Z: CoefficientDomain = CoefficientDomain::Integers;
const F5: CoefficientDomain = CoefficientDomain::PrimeField(5);

fn poly_in(domain: CoefficientDomain) -> impl Strategy<Value = LaurentPoly> {
    (-5i64..5, prop::collection::vec(-6i64..6, 0..7))
        .prop_map(move |(v, cs)| LaurentPoly::from_ints(domain, v, &cs))
}

fn nonzero_in(domain: CoefficientDomain) -> impl Strategy<Value = LaurentPoly> {
    poly_in(domain).prop_filter("nonzero", |p| !p.is_zero())
}

// Schoolbook product on a sparse map, independent of the crate's multiplication.
fn naive_mul(a: &[(i64, i64)], b: &[(i64, i64)]) -> BTreeMap<i64, i64> {
    let mut out = BTreeMap::new();
    for &(ea, ca) in a {
        for &(eb, cb) in b {
            *out.entry(ea + eb).or_insert(0) += ca * cb;
        }
    }
    out.retain(|_, c| *c != 0);
    out
}

fn as_map(p: &LaurentPoly) -> BTreeMap<i64, i64> {
    p.terms()
        .map(|(e, c)| (e, c.to_integer().try_into().unwrap()))
        .collect()
}

macro_rules! ring_axioms {
    ($name:ident, $domain:expr) => {
        mod $name {
            use super::*;

            proptest! {
                #![proptest_config(ProptestConfig::with_cases(1000))]

                #[test]
                fn additive_group(a in poly_in($domain), b in poly_in($domain), c in poly_in($domain)) {
                    let zero = LaurentPoly::zero($domain);
                    prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
                    prop_assert_eq!(&a + &b, &b + &a);
                    prop_assert_eq!(&a + &zero, a.clone());
                    prop_assert!((&a - &a).is_zero());
                    prop_assert_eq!(&a + &(-a.clone()), zero);
                }

                #[test]
                fn multiplicative_monoid(a in poly_in($domain), b in poly_in($domain), c in poly_in($domain)) {
                    let one = LaurentPoly::one($domain);
                    prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
                    prop_assert_eq!(&a * &b, &b * &a);
                    prop_assert_eq!(&a * &one, a.clone());
                    prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
                }

                #[test]
                fn exact_division(a in poly_in($domain), b in nonzero_in($domain)) {
                    let ab = &a * &b;
                    prop_assert_eq!(ab.div_exact(&b).unwrap(), a.clone());
                    prop_assert!(b.divides(&ab));
                }

                #[test]
                fn span_is_additive(a in nonzero_in($domain), b in nonzero_in($domain)) {
                    let ab = &a * &b;
                    prop_assert_eq!(ab.span(), a.span() + b.span());
                    prop_assert_eq!(ab.valuation(), a.valuation() + b.valuation());
                }

                #[test]
                fn trim_is_idempotent(v in -5i64..5, cs in prop::collection::vec(-3i64..3, 0..6), pad in 0usize..4) {
                    let mut padded = vec![0; pad];
                    padded.extend(&cs);
                    padded.extend(std::iter::repeat(0).take(pad));
                    let p = LaurentPoly::from_ints($domain, v - pad as i64, &padded);
                    prop_assert_eq!(&p, &LaurentPoly::from_ints($domain, v, &cs));
                    let again = LaurentPoly::from_coeffs($domain, p.valuation(), p.coefficients().to_vec()).unwrap();
                    prop_assert_eq!(&again, &p);
                    if !p.is_zero() {
                        let zero = BigRational::from_integer(BigInt::from(0));
                        prop_assert!(p.leading_coeff().unwrap() != &zero);
                        prop_assert!(p.trailing_coeff().unwrap() != &zero);
                    }
                }

                #[test]
                fn canonical_text(a in poly_in($domain)) {
                    prop_assert_eq!(parse_polynomial(&a.to_string(), $domain).unwrap(), a);
                }
            }
        }
    };
}

ring_axioms!(rationals, Q);
ring_axioms!(integers, Z);
ring_axioms!(mod_five, F5);

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn product_matches_schoolbook(
        a in prop::collection::vec((-8i64..8, -5i64..5), 0..6),
        b in prop::collection::vec((-8i64..8, -5i64..5), 0..6),
    ) {
        let build = |terms: &[(i64, i64)]| {
            terms.iter().fold(LaurentPoly::zero(Z), |acc, &(e, c)| &acc + &LaurentPoly::from_ints(Z, e, &[c]))
        };
        let merge = |terms: &[(i64, i64)]| {
            let mut m = BTreeMap::new();
            for &(e, c) in terms { *m.entry(e).or_insert(0) += c; }
            m.into_iter().collect::<Vec<_>>()
        };
        let (ma, mb) = (merge(&a), merge(&b));
        prop_assert_eq!(as_map(&(&build(&a) * &build(&b))), naive_mul(&ma, &mb));
    }

    #[test]
    fn euclidean_division(a in poly_in(Q), b in nonzero_in(Q)) {
        let (quot, rem) = a.div_rem(&b).unwrap();
        prop_assert_eq!(&(&quot * &b) + &rem, a);
        prop_assert!(rem.is_zero() || rem.span() < b.span());
    }

    #[test]
    fn evaluation_is_a_homomorphism(a in poly_in(Q), b in poly_in(Q)) {
        let x = BigRational::new(BigInt::from(3), BigInt::from(2));
        prop_assert_eq!((&a * &b).eval(&x), a.eval(&x) * b.eval(&x));
        prop_assert_eq!((&a + &b).eval(&x), a.eval(&x) + b.eval(&x));
    }

    #[test]
    fn normal_form(a in nonzero_in(Q)) {
        let (unit, normal) = a.normalize();
        prop_assert!(unit.is_unit());
        prop_assert_eq!(normal.valuation(), 0);
        prop_assert!(normal.leading_coeff().unwrap() == &BigRational::from_integer(1.into()));
        prop_assert_eq!(&unit * &normal, a);
    }

    #[test]
    fn reduction_mod_p_is_a_ring_map(a in poly_in(Z), b in poly_in(Z)) {
        let r = |p: &LaurentPoly| p.change_domain(F5).unwrap();
        prop_assert_eq!(r(&(&a * &b)), &r(&a) * &r(&b));
        prop_assert_eq!(r(&(&a + &b)), &r(&a) + &r(&b));
    }

    #[test]
    fn gcd_divides_both(a in nonzero_in(Q), b in nonzero_in(Q), c in nonzero_in(Q)) {
        let g = (&a * &c).gcd(&(&b * &c)).unwrap();
        prop_assert!(g.divides(&(&a * &c)) && g.divides(&(&b * &c)));
        prop_assert!(c.normalized().divides(&g));
    }
}
