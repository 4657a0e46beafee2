mod common;

use std::collections::BTreeMap;

use common::*;
use num_bigint::BigUint;
use proptest::prelude::*;
use qrecur::arith::{ParamPoly, Rational};
use qrecur::engine::{compute_a_with, compute_h, expand_product, Summation};
use qrecur::qtoolkit::{gaussian_polynomial, partition_oracle, partition_p};
use qrecur::series::{QSeries, TSeries};

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn rational_field_laws(a in rational(), b in rational(), c in rational()) {
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a - &a, Rational::zero());
        if !a.is_zero() {
            prop_assert_eq!(&a * &a.recip().unwrap(), Rational::one());
        }
    }

    #[test]
    fn rational_display_parse(a in rational()) {
        prop_assert_eq!(a.to_string().parse::<Rational>().unwrap(), a);
    }

    #[test]
    fn poly_ring_laws(x in poly(), y in poly(), z in poly()) {
        prop_assert_eq!(&(&x * &y) * &z, &x * &(&y * &z));
        prop_assert_eq!(&x * &y, &y * &x);
        prop_assert_eq!(&x * &(&y + &z), &(&x * &y) + &(&x * &z));
        prop_assert!((&x - &x).is_zero());
        prop_assert_eq!(&x * &ParamPoly::one(&params()), x.clone());
    }

    #[test]
    fn poly_has_no_zero_terms(x in poly(), y in poly()) {
        for (_, c) in (&x * &y).terms().chain((&x - &y).terms()) {
            prop_assert!(!c.is_zero());
        }
    }

    #[test]
    fn poly_display_parse(x in poly()) {
        prop_assert_eq!(ParamPoly::parse(&params(), &x.to_string()).unwrap(), x);
    }

    #[test]
    fn poly_eval_is_a_homomorphism(x in poly(), y in poly(), va in rational(), vb in rational()) {
        let at: BTreeMap<String, Rational> = [("a".to_string(), va), ("b".to_string(), vb)].into();
        prop_assert_eq!((&x * &y).eval(&at).unwrap(), &x.eval(&at).unwrap() * &y.eval(&at).unwrap());
        prop_assert_eq!((&x + &y).eval(&at).unwrap(), &x.eval(&at).unwrap() + &y.eval(&at).unwrap());
    }

    #[test]
    fn qseries_ring_laws(x in qseries(6), y in qseries(6), z in qseries(6)) {
        prop_assert_eq!(&(&x * &y) * &z, &x * &(&y * &z));
        prop_assert_eq!(&x * &y, &y * &x);
        prop_assert_eq!(&x * &(&y + &z), &(&x * &y) + &(&x * &z));
        prop_assert_eq!(&x * &QSeries::one(&params(), 6), x.clone());
    }

    #[test]
    fn truncation_commutes_with_arithmetic(x in qseries(8), y in qseries(8), k in 0usize..=8) {
        let t = |s: &QSeries| s.truncate(k).unwrap();
        prop_assert_eq!(t(&(&x * &y)), &t(&x) * &t(&y));
        prop_assert_eq!(t(&(&x + &y)), &t(&x) + &t(&y));
    }

    #[test]
    fn invert_is_a_two_sided_inverse(
        s in scalar_qseries(10),
        c in prop::sample::select(vec![(1i64, 1i64), (-1, 1), (1, 2), (-1, 2), (3, 7)]),
    ) {
        let p = params();
        let mut coeffs = s.coeffs().to_vec();
        coeffs[0] = ParamPoly::constant(&p, Rational::new(c.0, c.1).unwrap());
        let s = QSeries::from_coeffs(&p, coeffs).unwrap();
        let inv = s.invert().unwrap();
        prop_assert_eq!(&s * &inv, QSeries::one(&p, 10));
        prop_assert_eq!(inv.invert().unwrap(), s);
    }

    #[test]
    fn theta_is_a_derivation(f in tseries(3, 4), g in tseries(3, 4)) {
        let lhs = (&f * &g).t_derivative();
        let rhs = &(&f.t_derivative() * &g) + &(&f * &g.t_derivative());
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn expand_factor_exponents_add(
        e in 0usize..=3,
        c1 in (-4i64..=4, 1i64..=3),
        c2 in (-4i64..=4, 1i64..=3),
    ) {
        let p = params();
        let a = ParamPoly::var(&p, "a").unwrap();
        let c1 = Rational::new(c1.0, c1.1).unwrap();
        let c2 = Rational::new(c2.0, c2.1).unwrap();
        let f = |c: &Rational| TSeries::expand_factor(&a, e, c, 4, 8);
        prop_assert_eq!(&f(&c1) * &f(&c2), f(&(&c1 + &c2)));
    }

    #[test]
    fn expand_factor_unit_exponent_is_geometric(e in 0usize..=3) {
        let p = params();
        let a = ParamPoly::var(&p, "a").unwrap();
        let f = TSeries::expand_factor(&a, e, &Rational::one(), 5, 10);
        for (k, coeff) in f.coeffs().iter().enumerate() {
            let expected = QSeries::monomial(a.pow(k as u32), e * k, 10);
            prop_assert_eq!(coeff, &expected);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn recurrence_matches_expansion(spec in small_spec()) {
        let expansion = expand_product(&spec, 5, 12).unwrap();
        let a = compute_a_with(&spec, 5, 12, Summation::Ascending).unwrap();
        prop_assert_eq!(&a[..], expansion.coeffs());
    }

    #[test]
    fn summation_orders_agree(spec in small_spec()) {
        let up = compute_a_with(&spec, 5, 12, Summation::Ascending).unwrap();
        let down = compute_a_with(&spec, 5, 12, Summation::Descending).unwrap();
        prop_assert_eq!(up, down);
    }

    #[test]
    fn h_is_additive_under_products(s1 in small_spec(), s2 in small_spec(), m in 1usize..=5) {
        let both = s1.concat(&s2, "both").unwrap();
        let sum = &compute_h(&s1, m, 12).unwrap() + &compute_h(&s2, m, 12).unwrap();
        prop_assert_eq!(compute_h(&both, m, 12).unwrap(), sum);
    }

    #[test]
    fn recurrence_is_truncation_stable(spec in small_spec(), extra in 1usize..=6) {
        let base = compute_a_with(&spec, 4, 10, Summation::Ascending).unwrap();
        let wide = compute_a_with(&spec, 4, 10 + extra, Summation::Ascending).unwrap();
        for (b, w) in base.iter().zip(&wide) {
            prop_assert_eq!(b, &w.truncate(10).unwrap());
        }
    }

    #[test]
    fn partitions_match_enumeration(n in 0u32..=25) {
        let p = partition_p(n).unwrap();
        prop_assert_eq!(&p[n as usize], &BigUint::from(partition_oracle(n).unwrap()));
    }

    #[test]
    fn gaussian_symmetry(n in 0usize..=14, m in 0usize..=14) {
        prop_assume!(m <= n);
        let g = gaussian_polynomial(n, m as i64);
        prop_assert_eq!(&g, &gaussian_polynomial(n, (n - m) as i64));
        let mut rev = g.clone();
        rev.reverse();
        prop_assert_eq!(g, rev);
    }
}
