//! Strategies shared by the property and acceptance suites.

#![allow(dead_code)]

use proptest::prelude::*;
use qrecur::arith::{ParamPoly, ParamSet, Rational};
use qrecur::engine::{ArithmeticFn, Factor, ProductSpec};
use qrecur::series::{QSeries, TSeries};

pub fn params() -> ParamSet {
    ParamSet::new(["a", "b"]).unwrap()
}

pub fn rational() -> impl Strategy<Value = Rational> {
    (-30i64..=30, 1i64..=12).prop_map(|(n, d)| Rational::new(n, d).unwrap())
}

pub fn nonzero_rational() -> impl Strategy<Value = Rational> {
    rational().prop_filter("nonzero", |r| !r.is_zero())
}

/// Up to four terms in `a`, `b` with exponents at most 2.
pub fn poly() -> impl Strategy<Value = ParamPoly> {
    prop::collection::vec((0u32..=2, 0u32..=2, rational()), 0..=4).prop_map(|terms| {
        let p = params();
        terms
            .into_iter()
            .fold(ParamPoly::zero(&p), |acc, (i, j, c)| {
                &acc + &ParamPoly::monomial(&p, vec![i, j], c)
            })
    })
}

/// Mostly-zero coefficients keep products cheap.
pub fn qseries(qorder: usize) -> impl Strategy<Value = QSeries> {
    let coeff = prop_oneof![2 => Just(None), 3 => poly().prop_map(Some)];
    prop::collection::vec(coeff, qorder + 1).prop_map(|cs| {
        let p = params();
        let coeffs = cs
            .into_iter()
            .map(|c| c.unwrap_or_else(|| ParamPoly::zero(&p)))
            .collect();
        QSeries::from_coeffs(&p, coeffs).unwrap()
    })
}

pub fn scalar_qseries(qorder: usize) -> impl Strategy<Value = QSeries> {
    prop::collection::vec(rational(), qorder + 1).prop_map(|cs| {
        let p = params();
        let coeffs = cs.into_iter().map(|c| ParamPoly::constant(&p, c)).collect();
        QSeries::from_coeffs(&p, coeffs).unwrap()
    })
}

pub fn tseries(torder: usize, qorder: usize) -> impl Strategy<Value = TSeries> {
    prop::collection::vec(qseries(qorder), torder + 1)
        .prop_map(|cs| TSeries::from_coeffs(cs).unwrap())
}

/// A random factor `(1 - a t q^beta)^(-f(n)/n)` family within the small-spec
/// bounds: `alpha <= 3`, `beta <= 4`, `b` and linear `c` in `-2..=2`.
pub fn factor(params: ParamSet) -> impl Strategy<Value = Factor> {
    let a_choice = 0usize..6;
    (a_choice, -2i64..=2, 1usize..=3, 0usize..=4, -2i64..=2).prop_map(
        move |(ai, b, alpha, beta, c)| {
            let one = ParamPoly::one(&params);
            let x = ParamPoly::var(&params, "x").unwrap();
            let a = match ai {
                0 => one,
                1 => -&one,
                2 => ParamPoly::constant(&params, Rational::from(2)),
                3 => ParamPoly::constant(&params, Rational::new(-1, 2).unwrap()),
                4 => x,
                _ => &one + &x,
            };
            Factor::new(a, Rational::from(b), alpha, beta, ArithmeticFn::linear(c)).unwrap()
        },
    )
}

pub fn small_spec() -> impl Strategy<Value = ProductSpec> {
    let p = ParamSet::new(["x"]).unwrap();
    prop::collection::vec(factor(p.clone()), 1..=3)
        .prop_map(move |factors| ProductSpec::new("random", &p, factors).unwrap())
}
