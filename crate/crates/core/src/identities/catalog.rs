//! Built-in product specs and closed forms of their `t^n` coefficients.

use crate::arith::{ParamPoly, ParamSet, Rational};
use crate::engine::{compute_a, ArithmeticFn, EngineError, Factor, ProductSpec};
use crate::qtoolkit::{pochhammer, q_pochhammer, rogers_szego, triangular_weight, PochhammerSpec};
use crate::series::QSeries;

use super::IdentityError;

fn factor(a: ParamPoly, b: i64, alpha: usize, beta: usize, c: i64) -> Factor {
    Factor::new(a, Rational::from(b), alpha, beta, ArithmeticFn::linear(c)).expect("alpha >= 1")
}

pub fn params_a() -> ParamSet {
    ParamSet::new(["a"]).expect("valid name")
}

pub fn params_x() -> ParamSet {
    ParamSet::new(["x"]).expect("valid name")
}

/// `(1-t)^-1 prod (1-tq^n)^-1 = sum t^n/(q)_n`.
pub fn euler1() -> ProductSpec {
    let p = ParamSet::empty();
    ProductSpec::new("euler1", &p, vec![factor(ParamPoly::one(&p), 1, 1, 0, 1)])
        .expect("valid spec")
}

/// `(1+t) prod (1+tq^n) = sum q^(n(n-1)/2) t^n/(q)_n`.
pub fn euler2() -> ProductSpec {
    let p = ParamSet::empty();
    ProductSpec::new(
        "euler2",
        &p,
        vec![factor(-ParamPoly::one(&p), -1, 1, 0, -1)],
    )
    .expect("valid spec")
}

/// Product of the two Euler generating functions.
pub fn theorem2() -> ProductSpec {
    euler1()
        .concat(&euler2(), "theorem2")
        .expect("shared parameters")
}

/// `prod (1-atq^n)/(1-tq^n) = sum (a)_n/(q)_n t^n`.
pub fn cauchy() -> ProductSpec {
    let p = params_a();
    let a = ParamPoly::var(&p, "a").expect("declared");
    ProductSpec::new(
        "cauchy",
        &p,
        vec![
            factor(a, -1, 1, 0, -1),
            factor(ParamPoly::one(&p), 1, 1, 0, 1),
        ],
    )
    .expect("valid spec")
}

/// `1/((t)_inf (xt)_inf) = sum H_n(x)/(q)_n t^n`.
pub fn rogers_szego_spec() -> ProductSpec {
    let p = params_x();
    let x = ParamPoly::var(&p, "x").expect("declared");
    ProductSpec::new(
        "rogers_szego",
        &p,
        vec![
            factor(ParamPoly::one(&p), 1, 1, 0, 1),
            factor(x, 1, 1, 0, 1),
        ],
    )
    .expect("valid spec")
}

/// `(-tq^2;q^6)_inf (-tq^4;q^6)_inf (-tq^5;q^6)_inf / (t;q^6)_inf`.
pub fn lambda_spec() -> ProductSpec {
    let p = ParamSet::empty();
    let minus_one = -ParamPoly::one(&p);
    ProductSpec::new(
        "lambda",
        &p,
        vec![
            factor(minus_one.clone(), -1, 6, 2, -1),
            factor(minus_one.clone(), -1, 6, 4, -1),
            factor(minus_one, -1, 6, 5, -1),
            factor(ParamPoly::one(&p), 1, 6, 0, 1),
        ],
    )
    .expect("valid spec")
}

pub fn catalog() -> Vec<ProductSpec> {
    vec![
        euler1(),
        euler2(),
        theorem2(),
        cauchy(),
        rogers_szego_spec(),
        lambda_spec(),
    ]
}

pub fn catalog_spec(name: &str) -> Option<ProductSpec> {
    catalog().into_iter().find(|s| s.name() == name)
}

pub(crate) fn inv_q_pochhammer(params: &ParamSet, n: usize, qorder: usize) -> QSeries {
    q_pochhammer(params, n, qorder)
        .invert()
        .expect("(q)_n has constant term 1")
}

/// `(q^6;q^6)_n`.
pub fn q6_pochhammer(n: usize, qorder: usize) -> QSeries {
    let p = ParamSet::empty();
    pochhammer(
        &PochhammerSpec::new(ParamPoly::one(&p), 6, 6, n).expect("positive step"),
        qorder,
    )
}

/// `sum_{l=0}^{j} q^((j-l)(j-l-1)/2) / ((q)_l (q)_(j-l))`, the `t^j`
/// coefficient of the product of the two Euler generating functions.
pub(crate) fn euler_product_coefficient(j: usize, qorder: usize) -> QSeries {
    let p = ParamSet::empty();
    let mut acc = QSeries::zero(&p, qorder);
    for l in 0..=j {
        let term = &(&triangular_weight(&p, j - l, qorder) * &inv_q_pochhammer(&p, l, qorder))
            * &inv_q_pochhammer(&p, j - l, qorder);
        acc = &acc + &term;
    }
    acc
}

/// `t^n` coefficient of `(-tq^shift; q^6)_inf`, from Euler's identity in
/// base `q^6`: `q^(3j(j-1) + shift*j) / (q^6;q^6)_j`.
fn euler_q6_coefficient(j: usize, shift: usize, qorder: usize) -> QSeries {
    let p = ParamSet::empty();
    let exp = 3 * j * j.saturating_sub(1) + shift * j;
    let weight = QSeries::monomial(ParamPoly::one(&p), exp, qorder);
    &weight * &q6_pochhammer(j, qorder).invert().expect("constant term 1")
}

/// `Lambda_n / (q^6;q^6)_n` as a four-fold convolution of Euler-type
/// coefficients. Shares no code with the recurrence engine.
pub(crate) fn lambda_over_q6_closed_form(n: usize, qorder: usize) -> QSeries {
    let p = ParamSet::empty();
    let series = |shift: Option<usize>| -> Vec<QSeries> {
        (0..=n)
            .map(|j| match shift {
                Some(s) => euler_q6_coefficient(j, s, qorder),
                None => q6_pochhammer(j, qorder).invert().expect("constant term 1"),
            })
            .collect()
    };
    let convolve = |lhs: &[QSeries], rhs: &[QSeries]| -> Vec<QSeries> {
        (0..=n)
            .map(|m| {
                (0..=m).fold(QSeries::zero(&p, qorder), |acc, i| {
                    &acc + &(&lhs[i] * &rhs[m - i])
                })
            })
            .collect()
    };
    let two = convolve(&series(Some(2)), &series(Some(4)));
    let three = convolve(&two, &series(Some(5)));
    let four = convolve(&three, &series(None));
    four[n].clone()
}

/// The `t^n` coefficient of a catalog product, built from the q-toolkit
/// without the recurrence engine.
pub fn closed_form(name: &str, n: usize, qorder: usize) -> Result<QSeries, IdentityError> {
    let empty = ParamSet::empty();
    Ok(match name {
        "euler1" => inv_q_pochhammer(&empty, n, qorder),
        "euler2" => &triangular_weight(&empty, n, qorder) * &inv_q_pochhammer(&empty, n, qorder),
        "theorem2" => euler_product_coefficient(n, qorder),
        "cauchy" => {
            let p = params_a();
            let a = ParamPoly::var(&p, "a").expect("declared");
            &pochhammer(&PochhammerSpec::with_prefactor(a, n), qorder)
                * &inv_q_pochhammer(&p, n, qorder)
        }
        "rogers_szego" => {
            let p = params_x();
            &rogers_szego(&p, n, qorder)? * &inv_q_pochhammer(&p, n, qorder)
        }
        "lambda" => lambda_over_q6_closed_form(n, qorder),
        other => return Err(IdentityError::UnknownSpec(other.to_string())),
    })
}

/// `Lambda_0..=Lambda_{n_max}`, each the recurrence coefficient `A(n)`
/// multiplied by `(q^6;q^6)_n`.
pub fn lambda_sequence(n_max: usize, qorder: usize) -> Result<Vec<QSeries>, EngineError> {
    let a = compute_a(&lambda_spec(), n_max, qorder)?;
    Ok(a.iter()
        .enumerate()
        .map(|(n, an)| an * &q6_pochhammer(n, qorder))
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::engine::{compute_h, expand_product};

    fn ints(n: usize, v: &[i64]) -> QSeries {
        QSeries::from_integers(&ParamSet::empty(), n, v)
    }

    #[test]
    fn catalog_names() {
        let names: Vec<String> = catalog().iter().map(|s| s.name().to_string()).collect();
        assert_eq!(
            names,
            [
                "euler1",
                "euler2",
                "theorem2",
                "cauchy",
                "rogers_szego",
                "lambda"
            ]
        );
        assert!(catalog_spec("cauchy").is_some());
        assert!(catalog_spec("nope").is_none());
        assert!(matches!(
            closed_form("nope", 1, 4),
            Err(IdentityError::UnknownSpec(_))
        ));
    }

    #[test]
    fn theorem2_h_vanishes_at_even_m() {
        let spec = theorem2();
        for m in [2, 4, 6] {
            assert!(compute_h(&spec, m, 30).unwrap().is_zero());
        }
        // odd m: 2/(1-q^m)
        let expected: Vec<i64> = (0..=30).map(|k| if k % 3 == 0 { 2 } else { 0 }).collect();
        assert_eq!(compute_h(&spec, 3, 30).unwrap(), ints(30, &expected));
    }

    #[test]
    fn lambda_h_at_one() {
        // (1 + q^2 + q^4 + q^5) / (1 - q^6)
        let n = 24;
        let numer = ints(n, &[1, 0, 1, 0, 1, 1]);
        let expected = &numer
            * &QSeries::one_minus(ParamPoly::one(&ParamSet::empty()), 6, n)
                .invert()
                .unwrap();
        assert_eq!(compute_h(&lambda_spec(), 1, n).unwrap(), expected);
    }

    #[test]
    fn lambda_linear_coefficient_by_hand() {
        // t-linear terms of (1+tq^2)(1+tq^4)(1+tq^5)(1-t)^-1(1-tq^6)^-1 mod q^7
        let f = expand_product(&lambda_spec(), 1, 6).unwrap();
        assert_eq!(f.coeff(1).unwrap(), &ints(6, &[1, 0, 1, 0, 1, 1, 1]));
    }

    #[test]
    fn lambda_sequence_first_terms() {
        let n = 30;
        let lam = lambda_sequence(2, n).unwrap();
        assert_eq!(lam[0], ints(n, &[1]));
        assert_eq!(lam[1], ints(n, &[1, 0, 1, 0, 1, 1]));
        let f = expand_product(&lambda_spec(), 2, n).unwrap();
        assert_eq!(lam[2], f.coeff(2).unwrap() * &q6_pochhammer(2, n));
    }

    #[test]
    fn lambda_closed_form_matches_expansion() {
        let n = 30;
        let f = expand_product(&lambda_spec(), 3, n).unwrap();
        for j in 0..=3 {
            assert_eq!(
                &lambda_over_q6_closed_form(j, n),
                f.coeff(j).unwrap(),
                "n={j}"
            );
        }
    }
}
