use serde::{Deserialize, Serialize};

use super::{EngineError, Factor, ProductSpec};
use crate::arith::{ParamPoly, ParamSet, Rational};
use crate::series::{first_mismatch, Mismatch, QSeries, TSeries};

/// Largest `k >= 1` with `m (k alpha + beta) <= qorder`, or 0 if none.
fn last_inner_index(factor: &Factor, m: usize, qorder: usize) -> usize {
    let limit = qorder / m;
    if limit < factor.alpha + factor.beta {
        0
    } else {
        (limit - factor.beta) / factor.alpha
    }
}

fn ensure_tabulated(factor: &Factor, index: usize, required: usize) -> Result<(), EngineError> {
    match factor.f.available() {
        Some(available) if available < required => Err(EngineError::TabulationExhausted {
            factor: index,
            required,
            available,
        }),
        _ => Ok(()),
    }
}

/// `h(m) = sum_j b_j a_j^m q^(beta_j m) + sum_j sum_{k>=1} a_j^m f_j(k)/k q^(m (k alpha_j + beta_j))`,
/// truncated at `q^qorder`.
pub fn compute_h(spec: &ProductSpec, m: usize, qorder: usize) -> Result<QSeries, EngineError> {
    if m == 0 {
        return Err(EngineError::ZeroM);
    }
    let params = spec.params();
    let mut coeffs = vec![ParamPoly::zero(params); qorder + 1];
    for (j, factor) in spec.factors().iter().enumerate() {
        let k_max = last_inner_index(factor, m, qorder);
        ensure_tabulated(factor, j, k_max)?;
        let a_m = factor.a.pow(m as u32);
        let head = factor.beta * m;
        if head <= qorder {
            coeffs[head].add_assign_compatible(&a_m.scale(&factor.b));
        }
        for k in 1..=k_max {
            let ratio = factor.f.ratio(k).expect("table length checked above");
            coeffs[m * (k * factor.alpha + factor.beta)].add_assign_compatible(&a_m.scale(&ratio));
        }
    }
    Ok(QSeries::from_coeffs(params, coeffs)?)
}

/// Which of the two equivalent index orders the convolution runs in.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Summation {
    /// `sum_{k=0}^{n-1} A(k) h(n-k)`
    Ascending,
    /// `sum_{k=1}^{n} A(n-k) h(k)`
    Descending,
}

/// `A(0..=n_max)` from `A(0) = 1`, `n A(n) = sum_{k=0}^{n-1} A(k) h(n-k)`.
pub fn compute_a(
    spec: &ProductSpec,
    n_max: usize,
    qorder: usize,
) -> Result<Vec<QSeries>, EngineError> {
    compute_a_with(spec, n_max, qorder, Summation::Ascending)
}

pub fn compute_a_with(
    spec: &ProductSpec,
    n_max: usize,
    qorder: usize,
    order: Summation,
) -> Result<Vec<QSeries>, EngineError> {
    let h = (1..=n_max)
        .map(|m| compute_h(spec, m, qorder))
        .collect::<Result<Vec<_>, _>>()?;
    solve_recurrence(spec.params(), qorder, &h, order)
}

/// Runs the convolution for an explicit sequence `h[m-1] = h(m)`,
/// returning `A(0..=h.len())`.
pub fn solve_recurrence(
    params: &ParamSet,
    qorder: usize,
    h: &[QSeries],
    order: Summation,
) -> Result<Vec<QSeries>, EngineError> {
    let h_at = |m: usize| &h[m - 1];
    let mut a = vec![QSeries::one(params, qorder)];
    for n in 1..=h.len() {
        let mut acc = QSeries::zero(params, qorder);
        match order {
            Summation::Ascending => {
                for (k, ak) in a.iter().enumerate() {
                    acc = acc.checked_add(&ak.checked_mul(h_at(n - k))?)?;
                }
            }
            Summation::Descending => {
                for k in 1..=n {
                    acc = acc.checked_add(&a[n - k].checked_mul(h_at(k))?)?;
                }
            }
        }
        a.push(acc.scale(&Rational::new(1, n as i64)?));
    }
    Ok(a)
}

/// Multiplies out the product directly, modulo `(t^(M+1), q^(N+1))`.
/// Factors whose `q`-exponent exceeds `qorder` are 1 and skipped.
pub fn expand_product(
    spec: &ProductSpec,
    torder: usize,
    qorder: usize,
) -> Result<TSeries, EngineError> {
    let mut acc = TSeries::one(spec.params(), torder, qorder);
    for (j, factor) in spec.factors().iter().enumerate() {
        let head = TSeries::expand_factor(&factor.a, factor.beta, &factor.b, torder, qorder);
        acc = acc.checked_mul(&head)?;
        let n_max = last_inner_index(factor, 1, qorder);
        ensure_tabulated(factor, j, n_max)?;
        for n in 1..=n_max {
            let ratio = factor.f.ratio(n).expect("table length checked above");
            if ratio.is_zero() {
                continue;
            }
            let exp = factor.alpha * n + factor.beta;
            acc = acc.checked_mul(&TSeries::expand_factor(
                &factor.a, exp, &ratio, torder, qorder,
            ))?;
        }
    }
    Ok(acc)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoefficientCheck {
    pub n: usize,
    pub pass: bool,
    /// First disagreement between the recurrence (lhs) and the direct
    /// expansion (rhs).
    pub mismatch: Option<Mismatch>,
}

/// Per-coefficient comparison of the recurrence against the expansion.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub spec: String,
    pub torder: usize,
    pub qorder: usize,
    pub pass: bool,
    pub rows: Vec<CoefficientCheck>,
}

impl VerificationReport {
    pub fn first_failure(&self) -> Option<&CoefficientCheck> {
        self.rows.iter().find(|r| !r.pass)
    }
}

pub fn verify_spec(
    spec: &ProductSpec,
    torder: usize,
    qorder: usize,
) -> Result<VerificationReport, EngineError> {
    verify_pair(spec, spec, torder, qorder)
}

/// Runs the recurrence on `recurrence_spec` and expands `expansion_spec`.
/// With two different specs this checks that a modification is detected.
pub fn verify_pair(
    recurrence_spec: &ProductSpec,
    expansion_spec: &ProductSpec,
    torder: usize,
    qorder: usize,
) -> Result<VerificationReport, EngineError> {
    let recurrence = compute_a(recurrence_spec, torder, qorder)?;
    let expansion = expand_product(expansion_spec, torder, qorder)?;
    let rows: Vec<CoefficientCheck> = recurrence
        .iter()
        .zip(expansion.coeffs())
        .enumerate()
        .map(|(n, (lhs, rhs))| {
            let mismatch = first_mismatch(lhs, rhs);
            CoefficientCheck {
                n,
                pass: mismatch.is_none(),
                mismatch,
            }
        })
        .collect();
    Ok(VerificationReport {
        spec: recurrence_spec.name().to_string(),
        torder,
        qorder,
        pass: rows.iter().all(|r| r.pass),
        rows,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::engine::ArithmeticFn;

    fn empty() -> ParamSet {
        ParamSet::empty()
    }

    fn euler(params: &ParamSet) -> ProductSpec {
        let f = Factor::new(
            ParamPoly::one(params),
            Rational::one(),
            1,
            0,
            ArithmeticFn::linear(1),
        )
        .unwrap();
        ProductSpec::new("euler1", params, vec![f]).unwrap()
    }

    fn ints(n: usize, v: &[i64]) -> QSeries {
        QSeries::from_integers(&empty(), n, v)
    }

    #[test]
    fn euler_h_is_geometric() {
        let spec = euler(&empty());
        for m in 1..=5 {
            let expected: Vec<i64> = (0..=12).map(|k| (k % m == 0) as i64).collect();
            assert_eq!(compute_h(&spec, m, 12).unwrap(), ints(12, &expected));
        }
        assert_eq!(compute_h(&spec, 0, 12), Err(EngineError::ZeroM));
    }

    #[test]
    fn euler_expansion_by_hand() {
        // (1-t)^{-1}(1-tq)^{-1}(1-tq^2)^{-1} mod (t^3, q^3)
        let f = expand_product(&euler(&empty()), 2, 2).unwrap();
        assert_eq!(f.coeff(0).unwrap(), &ints(2, &[1]));
        assert_eq!(f.coeff(1).unwrap(), &ints(2, &[1, 1, 1]));
        assert_eq!(f.coeff(2).unwrap(), &ints(2, &[1, 1, 2]));
    }

    #[test]
    fn a_zero_is_one() {
        let a = compute_a(&euler(&empty()), 0, 5).unwrap();
        assert_eq!(a, vec![ints(5, &[1])]);
    }

    #[test]
    fn summation_orders_agree() {
        let spec = euler(&empty());
        assert_eq!(
            compute_a_with(&spec, 6, 15, Summation::Ascending).unwrap(),
            compute_a_with(&spec, 6, 15, Summation::Descending).unwrap()
        );
    }

    #[test]
    fn tabulated_exhaustion_reports_bound() {
        let params = empty();
        let f = Factor::new(
            ParamPoly::one(&params),
            Rational::one(),
            1,
            0,
            ArithmeticFn::Tabulated(vec![Rational::one(); 3]),
        )
        .unwrap();
        let spec = ProductSpec::new("short", &params, vec![f]).unwrap();
        assert!(compute_h(&spec, 2, 6).is_ok());
        assert_eq!(
            compute_h(&spec, 1, 6),
            Err(EngineError::TabulationExhausted {
                factor: 0,
                required: 6,
                available: 3
            })
        );
        assert!(matches!(
            expand_product(&spec, 3, 6),
            Err(EngineError::TabulationExhausted { required: 6, .. })
        ));
    }

    #[test]
    fn tabulated_linear_equivalence() {
        let params = empty();
        let table = ArithmeticFn::Tabulated((1..=20).map(|n| Rational::from(n as i64)).collect());
        let f = Factor::new(ParamPoly::one(&params), Rational::one(), 1, 0, table).unwrap();
        let spec = ProductSpec::new("tab", &params, vec![f]).unwrap();
        assert_eq!(
            compute_a(&spec, 5, 20).unwrap(),
            compute_a(&euler(&params), 5, 20).unwrap()
        );
    }

    #[test]
    fn zero_alpha_rejected() {
        let params = empty();
        assert_eq!(
            Factor::new(
                ParamPoly::one(&params),
                Rational::one(),
                0,
                0,
                ArithmeticFn::linear(1)
            ),
            Err(EngineError::ZeroAlpha { factor: 0 })
        );
        assert_eq!(
            ProductSpec::new("none", &params, vec![]),
            Err(EngineError::NoFactors)
        );
    }

    #[test]
    fn corrupted_spec_fails_at_first_coefficient() {
        let spec = euler(&empty());
        assert!(verify_spec(&spec, 8, 30).unwrap().pass);
        let report = verify_pair(&spec.with_b_negated(), &spec, 4, 10).unwrap();
        assert!(!report.pass);
        let failure = report.first_failure().unwrap();
        assert_eq!(failure.n, 1);
        assert_eq!(failure.mismatch.as_ref().unwrap().q_exp, 0);
    }
}
