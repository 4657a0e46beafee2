use std::collections::BTreeMap;

use super::catalog::{
    euler_product_coefficient, inv_q_pochhammer, lambda_sequence, params_a, params_x, q6_pochhammer,
};
use super::{IdentityCase, IdentityError, IdentityForm, IdentityId};
use crate::arith::{ParamPoly, ParamSet, Rational};
use crate::qtoolkit::{pochhammer, rogers_szego, triangular_weight, PochhammerSpec};
use crate::series::QSeries;

/// How `x` is treated in the Rogers-Szegő identity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum XValue {
    Symbolic,
    Value(Rational),
}

fn geometric(params: &ParamSet, k: usize, qorder: usize) -> QSeries {
    QSeries::one_minus(ParamPoly::one(params), k, qorder)
        .invert()
        .expect("constant term 1")
}

fn times(n: usize, s: &QSeries) -> QSeries {
    s.scale(&Rational::from(n as i64))
}

fn sum(params: &ParamSet, qorder: usize, terms: impl Iterator<Item = QSeries>) -> QSeries {
    terms.fold(QSeries::zero(params, qorder), |acc, t| &acc + &t)
}

fn check_n(n: usize) -> Result<(), IdentityError> {
    if n == 0 {
        Err(IdentityError::ZeroN)
    } else {
        Ok(())
    }
}

/// `sum_{k=1}^n 1/(1-q^k) * 1/(q)_{n-k} = n/(q)_n`.
pub fn verify_t1a(n: usize, qorder: usize) -> Result<IdentityCase, IdentityError> {
    Ok(IdentityCase::compare(
        IdentityId::T1a,
        n,
        &t1a_forms(n, qorder)?,
    ))
}

fn t1a_forms(n: usize, qorder: usize) -> Result<Vec<IdentityForm>, IdentityError> {
    check_n(n)?;
    let p = ParamSet::empty();
    let lhs = sum(
        &p,
        qorder,
        (1..=n).map(|k| &geometric(&p, k, qorder) * &inv_q_pochhammer(&p, n - k, qorder)),
    );
    let rhs = times(n, &inv_q_pochhammer(&p, n, qorder));
    Ok(vec![IdentityForm::new("stated", lhs, rhs)])
}

/// `sum_{k=1}^n (-1)^(k-1)/(1-q^k) * q^T(n-k)/(q)_{n-k} = n q^T(n)/(q)_n`
/// with `T(j) = j(j-1)/2`.
pub fn verify_t1b(n: usize, qorder: usize) -> Result<IdentityCase, IdentityError> {
    Ok(IdentityCase::compare(
        IdentityId::T1b,
        n,
        &t1b_forms(n, qorder)?,
    ))
}

fn t1b_forms(n: usize, qorder: usize) -> Result<Vec<IdentityForm>, IdentityError> {
    check_n(n)?;
    let p = ParamSet::empty();
    let lhs = sum(
        &p,
        qorder,
        (1..=n).map(|k| {
            let term = &(&geometric(&p, k, qorder) * &triangular_weight(&p, n - k, qorder))
                * &inv_q_pochhammer(&p, n - k, qorder);
            if k % 2 == 1 {
                term
            } else {
                -&term
            }
        }),
    );
    let rhs = times(
        n,
        &(&triangular_weight(&p, n, qorder) * &inv_q_pochhammer(&p, n, qorder)),
    );
    Ok(vec![IdentityForm::new("stated", lhs, rhs)])
}

/// Left side of the odd-part identity:
/// `sum_{k=1}^{ceil(n/2)} 2/(1-q^(2k-1)) * C(n-2k+1)`, where `C(j)` is the
/// `t^j` coefficient of the product of both Euler generating functions.
fn t2_lhs(n: usize, qorder: usize) -> QSeries {
    let p = ParamSet::empty();
    sum(
        &p,
        qorder,
        (1..=n.div_ceil(2)).map(|k| {
            (&geometric(&p, 2 * k - 1, qorder) * &euler_product_coefficient(n + 1 - 2 * k, qorder))
                .scale(&Rational::from(2))
        }),
    )
}

/// `n C(n)` on the right, with `C(n) = sum_k q^T(n-k)/((q)_k (q)_{n-k})`.
pub fn verify_t2(n: usize, qorder: usize) -> Result<IdentityCase, IdentityError> {
    let mut case = IdentityCase::compare(IdentityId::T2, n, &t2_forms(n, qorder)?);
    case.notes.insert(
        0,
        "right side uses sum_k q^T(n-k)/((q)_k (q)_{n-k}); the printed form drops 1/(q)_k".into(),
    );
    Ok(case)
}

fn t2_forms(n: usize, qorder: usize) -> Result<Vec<IdentityForm>, IdentityError> {
    check_n(n)?;
    let rhs = times(n, &euler_product_coefficient(n, qorder));
    Ok(vec![IdentityForm::new("stated", t2_lhs(n, qorder), rhs)])
}

/// The right side exactly as printed, `n sum_k q^T(n-k)/(q)_{n-k}`, which
/// is missing the factor `1/(q)_k` and fails from `n = 1`.
pub fn verify_t2_displayed(n: usize, qorder: usize) -> Result<IdentityCase, IdentityError> {
    check_n(n)?;
    let p = ParamSet::empty();
    let rhs = times(
        n,
        &sum(
            &p,
            qorder,
            (0..=n).map(|k| {
                &triangular_weight(&p, n - k, qorder) * &inv_q_pochhammer(&p, n - k, qorder)
            }),
        ),
    );
    Ok(IdentityCase::compare(
        IdentityId::T2,
        n,
        &[IdentityForm::new("printed", t2_lhs(n, qorder), rhs)],
    ))
}

/// `sum_{k=1}^n (a)_{n-k}/(q)_{n-k} * (1-a^k)/(1-q^k) = n (a)_n/(q)_n`,
/// with `a` symbolic.
pub fn verify_t3(n: usize, qorder: usize) -> Result<IdentityCase, IdentityError> {
    let (lhs, rhs) = t3_sides(n, qorder)?;
    Ok(IdentityCase::compare(
        IdentityId::T3,
        n,
        &[IdentityForm::new("stated", lhs, rhs)],
    ))
}

pub(crate) fn t3_sides(n: usize, qorder: usize) -> Result<(QSeries, QSeries), IdentityError> {
    check_n(n)?;
    let p = params_a();
    let a = ParamPoly::var(&p, "a").expect("declared");
    let ratio = |j: usize| {
        &pochhammer(&PochhammerSpec::with_prefactor(a.clone(), j), qorder)
            * &inv_q_pochhammer(&p, j, qorder)
    };
    let lhs = sum(
        &p,
        qorder,
        (1..=n).map(|k| {
            let one_minus_ak = &ParamPoly::one(&p) - &a.pow(k as u32);
            (&ratio(n - k) * &geometric(&p, k, qorder))
                .scale_poly(&one_minus_ak)
                .expect("same parameters")
        }),
    );
    let rhs = times(n, &ratio(n));
    Ok((lhs, rhs))
}

fn rogers_szego_terms(n: usize, qorder: usize, x: &XValue) -> Result<Vec<QSeries>, IdentityError> {
    let p = params_x();
    let assignment: Option<BTreeMap<String, Rational>> = match x {
        XValue::Symbolic => None,
        XValue::Value(v) => Some([("x".to_string(), v.clone())].into()),
    };
    (0..=n)
        .map(|j| {
            let h = &rogers_szego(&p, j, qorder)? * &inv_q_pochhammer(&p, j, qorder);
            Ok(match &assignment {
                None => h,
                Some(values) => h
                    .try_map_coeffs(|c| c.specialize(values))
                    .expect("x is declared"),
            })
        })
        .collect()
}

/// Both printed forms of the Rogers-Szegő recurrence with kernel
/// `2/(1-q^k)`:
/// `n H_n/(q)_n = sum_{k=1}^n 2 H_{n-k}/((q)_{n-k}(1-q^k))
///              = sum_{k=0}^{n-1} 2 H_k/((q)_k (1-q^(n-k)))`.
///
/// The kernel is only right at `x = 1`; for symbolic `x` the case fails.
pub fn verify_t4(n: usize, qorder: usize, x: XValue) -> Result<IdentityCase, IdentityError> {
    check_n(n)?;
    let p = params_x();
    let kernel = |k: usize| geometric(&p, k, qorder).scale(&Rational::from(2));
    let mut case = t4_case(n, qorder, &rogers_szego_terms(n, qorder, &x)?, kernel);
    let label = match &x {
        XValue::Symbolic => "x symbolic".to_string(),
        XValue::Value(v) => format!("x = {v}"),
    };
    case.notes.insert(0, format!("kernel 2/(1-q^k), {label}"));
    Ok(case)
}

/// `(1+x^k)/(1-q^k)`.
fn engine_kernel(k: usize, qorder: usize) -> QSeries {
    let p = params_x();
    let x = ParamPoly::var(&p, "x").expect("declared");
    geometric(&p, k, qorder)
        .scale_poly(&(&ParamPoly::one(&p) + &x.pow(k as u32)))
        .expect("same parameters")
}

/// The same recurrence with the kernel `(1+x^k)/(1-q^k)` that the
/// generating function actually produces, for symbolic `x`.
pub fn verify_t4_engine_form(n: usize, qorder: usize) -> Result<IdentityCase, IdentityError> {
    check_n(n)?;
    let terms = rogers_szego_terms(n, qorder, &XValue::Symbolic)?;
    let mut case = t4_case(n, qorder, &terms, |k| engine_kernel(k, qorder));
    case.notes
        .insert(0, "kernel (1+x^k)/(1-q^k), x symbolic".into());
    Ok(case)
}

/// `h_over_q[j] = H_j/(q)_j`.
fn t4_case(
    n: usize,
    qorder: usize,
    h_over_q: &[QSeries],
    kernel: impl Fn(usize) -> QSeries,
) -> IdentityCase {
    IdentityCase::compare(IdentityId::T4, n, &t4_forms(n, qorder, h_over_q, kernel))
}

fn t4_forms(
    n: usize,
    qorder: usize,
    h_over_q: &[QSeries],
    kernel: impl Fn(usize) -> QSeries,
) -> Vec<IdentityForm> {
    let (lhs, first, second) = t4_sides(n, qorder, h_over_q, kernel);
    vec![
        IdentityForm::new("k=1..n", lhs.clone(), first),
        IdentityForm::new("k=0..n-1", lhs, second),
    ]
}

pub(crate) fn t4_sides(
    n: usize,
    qorder: usize,
    h_over_q: &[QSeries],
    kernel: impl Fn(usize) -> QSeries,
) -> (QSeries, QSeries, QSeries) {
    let p = params_x();
    let lhs = times(n, &h_over_q[n]);
    let first = sum(&p, qorder, (1..=n).map(|k| &h_over_q[n - k] * &kernel(k)));
    let second = sum(&p, qorder, (0..n).map(|k| &h_over_q[k] * &kernel(n - k)));
    (lhs, first, second)
}

pub(crate) fn t4_engine_sides(
    n: usize,
    qorder: usize,
) -> Result<(QSeries, QSeries), IdentityError> {
    check_n(n)?;
    let terms = rogers_szego_terms(n, qorder, &XValue::Symbolic)?;
    let (lhs, first, _) = t4_sides(n, qorder, &terms, |k| engine_kernel(k, qorder));
    Ok((lhs, first))
}

/// `((-1)^(k+1)(q^2k + q^4k + q^5k) + 1) / (1 - q^6k)`.
fn lambda_kernel(k: usize, qorder: usize) -> QSeries {
    let p = ParamSet::empty();
    let sign = if k % 2 == 1 { 1 } else { -1 };
    let mut numer = QSeries::one(&p, qorder);
    for shift in [2, 4, 5] {
        numer = &numer
            + &QSeries::monomial(
                ParamPoly::constant(&p, Rational::from(sign)),
                shift * k,
                qorder,
            );
    }
    &numer * &geometric(&p, 6 * k, qorder)
}

/// `n Lambda_n/(q^6;q^6)_n = sum_{k=1}^n Lambda_{n-k}/(q^6;q^6)_{n-k} * kernel(k)`,
/// together with its reindexing over `k = 0..n-1`.
pub fn verify_t5(n: usize, qorder: usize) -> Result<IdentityCase, IdentityError> {
    Ok(IdentityCase::compare(
        IdentityId::T5,
        n,
        &t5_forms(n, qorder)?,
    ))
}

fn t5_forms(n: usize, qorder: usize) -> Result<Vec<IdentityForm>, IdentityError> {
    check_n(n)?;
    let p = ParamSet::empty();
    let lambda = lambda_sequence(n, qorder)?;
    let ratio: Vec<QSeries> = lambda
        .iter()
        .enumerate()
        .map(|(j, l)| l * &q6_pochhammer(j, qorder).invert().expect("constant term 1"))
        .collect();
    let lhs = times(n, &ratio[n]);
    let first = sum(
        &p,
        qorder,
        (1..=n).map(|k| &ratio[n - k] * &lambda_kernel(k, qorder)),
    );
    let second = sum(
        &p,
        qorder,
        (0..n).map(|k| &ratio[k] * &lambda_kernel(n - k, qorder)),
    );
    Ok(vec![
        IdentityForm::new("k=1..n", lhs.clone(), first),
        IdentityForm::new("k=0..n-1", lhs, second),
    ])
}

/// Runs the default check for `id`. `T4` is evaluated at `x = 1`, the only
/// value where its printed kernel holds.
pub fn verify(id: IdentityId, n: usize, qorder: usize) -> Result<IdentityCase, IdentityError> {
    match id {
        IdentityId::T1a => verify_t1a(n, qorder),
        IdentityId::T1b => verify_t1b(n, qorder),
        IdentityId::T2 => verify_t2(n, qorder),
        IdentityId::T3 => verify_t3(n, qorder),
        IdentityId::T4 => verify_t4(n, qorder, XValue::Value(Rational::one())),
        IdentityId::T5 => verify_t5(n, qorder),
    }
}

/// The series compared by [`verify`], one entry per form of the identity.
pub fn forms(id: IdentityId, n: usize, qorder: usize) -> Result<Vec<IdentityForm>, IdentityError> {
    match id {
        IdentityId::T1a => t1a_forms(n, qorder),
        IdentityId::T1b => t1b_forms(n, qorder),
        IdentityId::T2 => t2_forms(n, qorder),
        IdentityId::T3 => {
            let (lhs, rhs) = t3_sides(n, qorder)?;
            Ok(vec![IdentityForm::new("stated", lhs, rhs)])
        }
        IdentityId::T4 => {
            check_n(n)?;
            let p = params_x();
            let terms = rogers_szego_terms(n, qorder, &XValue::Value(Rational::one()))?;
            Ok(t4_forms(n, qorder, &terms, |k| {
                geometric(&p, k, qorder).scale(&Rational::from(2))
            }))
        }
        IdentityId::T5 => t5_forms(n, qorder),
    }
}

/// Left and right sides of the identities that carry a formal parameter:
/// `T3` in `a`, `T4` (generating-function kernel) in `x`.
pub fn sides(id: IdentityId, n: usize, qorder: usize) -> Result<(QSeries, QSeries), IdentityError> {
    match id {
        IdentityId::T3 => t3_sides(n, qorder),
        IdentityId::T4 => t4_engine_sides(n, qorder),
        other => Err(IdentityError::NoParameter(other)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_n_rejected() {
        assert_eq!(verify_t1a(0, 10), Err(IdentityError::ZeroN));
        assert_eq!(verify_t5(0, 10), Err(IdentityError::ZeroN));
    }

    #[test]
    fn small_cases_pass() {
        for id in IdentityId::ALL {
            for n in 1..=3 {
                let case = verify(id, n, 20).unwrap();
                assert!(case.pass, "{id} n={n}: {:?}", case.first_mismatch);
            }
        }
    }

    #[test]
    fn t1a_n1_is_single_geometric_term() {
        let case = verify_t1a(1, 7).unwrap();
        assert!(case.pass);
        assert_eq!(case.qorder, 7);
    }

    #[test]
    fn t2_printed_form_fails_at_n1() {
        // 2/(1-q) against 1/(1-q) + 1, first difference at q^1
        let case = verify_t2_displayed(1, 10).unwrap();
        assert!(!case.pass);
        let m = case.first_mismatch.unwrap();
        assert_eq!(
            (m.q_exp, m.lhs_term.as_str(), m.rhs_term.as_str()),
            (1, "2", "1")
        );
    }

    #[test]
    fn t3_specialized_at_one_vanishes() {
        let (lhs, rhs) = t3_sides(4, 12).unwrap();
        let at_one: BTreeMap<String, Rational> = [("a".to_string(), Rational::one())].into();
        for side in [lhs, rhs] {
            for c in side.coeffs() {
                assert!(c.eval(&at_one).unwrap().is_zero());
            }
        }
    }

    #[test]
    fn t4_symbolic_printed_kernel_fails_at_n1() {
        let case = verify_t4(1, 10, XValue::Symbolic).unwrap();
        assert!(!case.pass);
        let m = case.first_mismatch.unwrap();
        assert_eq!(m.q_exp, 0);
        assert_eq!(m.lhs_term, "1 + x");
        assert_eq!(m.rhs_term, "2");
        assert!(verify_t4_engine_form(1, 10).unwrap().pass);
    }

    #[test]
    fn headroom_note() {
        let case = verify_t1a(5, 20).unwrap();
        assert!(case.notes.iter().any(|n| n.contains("recommended 45")));
        assert!(verify_t1a(5, 45).unwrap().notes.is_empty());
    }
}
