//! Named q-objects: generalized q-Pochhammer products, Gaussian polynomials,
//! Rogers-Szegő polynomials, divisor sums and partition counts.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::arith::{ParamPoly, ParamSet, Rational};
use crate::series::QSeries;

/// Default bound for exhaustive partition enumeration.
pub const DEFAULT_ORACLE_BOUND: u32 = 40;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ToolkitError {
    #[error("sigma is undefined at 0")]
    SigmaOfZero,
    #[error("partition oracle bound {bound} exceeded by n = {n}")]
    OracleBoundExceeded { n: u32, bound: u32 },
    #[error("parameter `{0}` is not declared")]
    MissingParameter(String),
    #[error("internal error: {value}/{n} is not an integer in the partition recurrence")]
    NonIntegral { n: u32, value: BigInt },
    #[error("Pochhammer step must be positive")]
    ZeroStep,
}

/// `prod_{k=0}^{n-1} (1 - a q^(e0 + k*step))`, covering `(a;q)_n`,
/// `(q;q)_n` and `(q^6;q^6)_n` alike.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PochhammerSpec {
    pub a: ParamPoly,
    pub e0: usize,
    pub step: usize,
    pub n: usize,
}

impl PochhammerSpec {
    pub fn new(a: ParamPoly, e0: usize, step: usize, n: usize) -> Result<Self, ToolkitError> {
        if step == 0 {
            return Err(ToolkitError::ZeroStep);
        }
        Ok(PochhammerSpec { a, e0, step, n })
    }

    /// `(q;q)_n`.
    pub fn q(params: &ParamSet, n: usize) -> Self {
        PochhammerSpec {
            a: ParamPoly::one(params),
            e0: 1,
            step: 1,
            n,
        }
    }

    /// `(a;q)_n` for a prefactor `a`.
    pub fn with_prefactor(a: ParamPoly, n: usize) -> Self {
        PochhammerSpec {
            a,
            e0: 0,
            step: 1,
            n,
        }
    }
}

pub fn pochhammer(spec: &PochhammerSpec, qorder: usize) -> QSeries {
    let mut acc = QSeries::one(spec.a.params(), qorder);
    for k in 0..spec.n {
        let exp = spec.e0 + k * spec.step;
        if exp > qorder {
            // 1 - a q^exp is 1 modulo q^(N+1)
            break;
        }
        acc = &acc * &QSeries::one_minus(spec.a.clone(), exp, qorder);
    }
    acc
}

/// `(q;q)_n`.
pub fn q_pochhammer(params: &ParamSet, n: usize, qorder: usize) -> QSeries {
    pochhammer(&PochhammerSpec::q(params, n), qorder)
}

/// Integer coefficients of the Gaussian polynomial `[n m]`, by the
/// q-Pascal rule `[n m] = [n-1 m-1] + q^m [n-1 m]`. Empty when `m` is out
/// of range.
pub fn gaussian_polynomial(n: usize, m: i64) -> Vec<BigInt> {
    if m < 0 || m as usize > n {
        return Vec::new();
    }
    let m = m as usize;
    // row[j] holds [i j] for the current i, j <= m
    let mut row: Vec<Vec<BigInt>> = vec![Vec::new(); m + 1];
    row[0] = vec![BigInt::one()];
    for i in 1..=n {
        for j in (1..=m.min(i)).rev() {
            let mut next = vec![BigInt::zero(); j * (i - j) + 1];
            for (k, c) in row[j - 1].iter().enumerate() {
                next[k] += c;
            }
            for (k, c) in row[j].iter().enumerate() {
                next[k + j] += c;
            }
            row[j] = next;
        }
    }
    std::mem::take(&mut row[m])
}

/// `[n m]` as a series; exact whenever `m(n-m) <= qorder`, otherwise the
/// truncation of the polynomial (see [`gaussian_is_exact`]).
pub fn gaussian_binomial(params: &ParamSet, n: usize, m: i64, qorder: usize) -> QSeries {
    let poly = gaussian_polynomial(n, m);
    let coeffs = (0..=qorder)
        .map(|k| {
            let c = poly.get(k).cloned().unwrap_or_default();
            ParamPoly::constant(params, Rational::from(c))
        })
        .collect();
    QSeries::from_coeffs(params, coeffs).expect("coefficients share the parameter set")
}

pub fn gaussian_is_exact(n: usize, m: i64, qorder: usize) -> bool {
    m < 0 || m as usize > n || (m as usize) * (n - m as usize) <= qorder
}

/// `H_n(x) = sum_j [n j] x^j`. The parameter set must declare `x`.
pub fn rogers_szego(params: &ParamSet, n: usize, qorder: usize) -> Result<QSeries, ToolkitError> {
    let x = ParamPoly::var(params, "x").map_err(|_| ToolkitError::MissingParameter("x".into()))?;
    let mut acc = QSeries::zero(params, qorder);
    let mut x_pow = ParamPoly::one(params);
    for j in 0..=n {
        let g = gaussian_binomial(params, n, j as i64, qorder);
        acc = &acc + &g.scale_poly(&x_pow).expect("same parameter set");
        x_pow = &x_pow * &x;
    }
    Ok(acc)
}

/// Sum of the positive divisors of `k`.
pub fn sigma(k: u64) -> Result<u64, ToolkitError> {
    if k == 0 {
        return Err(ToolkitError::SigmaOfZero);
    }
    let mut total = 0;
    let mut d = 1;
    while d * d <= k {
        if k.is_multiple_of(d) {
            total += d;
            if d * d != k {
                total += k / d;
            }
        }
        d += 1;
    }
    Ok(total)
}

/// `p(0..=n_max)` from `n p(n) = sum_{k=1}^n sigma(k) p(n-k)`.
pub fn partition_p(n_max: u32) -> Result<Vec<BigUint>, ToolkitError> {
    let sigmas: Vec<BigInt> = (1..=n_max as u64)
        .map(|k| sigma(k).map(BigInt::from))
        .collect::<Result<_, _>>()?;
    let mut p: Vec<BigInt> = vec![BigInt::one()];
    for n in 1..=n_max as usize {
        let sum: BigInt = (1..=n).map(|k| &sigmas[k - 1] * &p[n - k]).sum();
        let (quot, rem) = sum.div_rem(&BigInt::from(n));
        if !rem.is_zero() {
            return Err(ToolkitError::NonIntegral {
                n: n as u32,
                value: sum,
            });
        }
        p.push(quot);
    }
    Ok(p.into_iter()
        .map(|v| v.to_biguint().expect("partition counts are nonnegative"))
        .collect())
}

/// Counts partitions of `n` by walking every nonincreasing sequence of
/// parts. Refuses `n` above `bound`.
pub fn partition_oracle_bounded(n: u32, bound: u32) -> Result<u64, ToolkitError> {
    if n > bound {
        return Err(ToolkitError::OracleBoundExceeded { n, bound });
    }
    fn walk(remaining: u32, max_part: u32) -> u64 {
        if remaining == 0 {
            return 1;
        }
        (1..=max_part.min(remaining))
            .map(|part| walk(remaining - part, part))
            .sum()
    }
    Ok(walk(n, n))
}

pub fn partition_oracle(n: u32) -> Result<u64, ToolkitError> {
    partition_oracle_bounded(n, DEFAULT_ORACLE_BOUND)
}

/// The monomial `q^(n(n-1)/2)`, zero once the exponent passes `qorder`.
pub fn triangular_weight(params: &ParamSet, n: usize, qorder: usize) -> QSeries {
    let exp = n * n.saturating_sub(1) / 2;
    QSeries::monomial(ParamPoly::one(params), exp, qorder)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::ToPrimitive;

    fn empty() -> ParamSet {
        ParamSet::empty()
    }

    fn ints(n: usize, v: &[i64]) -> QSeries {
        QSeries::from_integers(&empty(), n, v)
    }

    #[test]
    fn pochhammer_examples() {
        let e = empty();
        assert_eq!(q_pochhammer(&e, 0, 5), ints(5, &[1]));
        assert_eq!(q_pochhammer(&e, 2, 3), ints(3, &[1, -1, -1, 1]));
        let six = PochhammerSpec::new(ParamPoly::one(&e), 6, 6, 2).unwrap();
        let mut expected = vec![0i64; 13];
        expected[0] = 1;
        expected[6] = -1;
        expected[12] = -1;
        assert_eq!(pochhammer(&six, 12), ints(12, &expected));
        assert!(PochhammerSpec::new(ParamPoly::one(&e), 1, 0, 2).is_err());
    }

    #[test]
    fn pochhammer_matches_explicit_factors() {
        let e = empty();
        for n in 0..=8 {
            let mut acc = ints(10, &[1]);
            for k in 1..=n {
                acc = &acc * &QSeries::one_minus(ParamPoly::one(&e), k, 10);
            }
            assert_eq!(q_pochhammer(&e, n, 10), acc);
        }
    }

    #[test]
    fn gaussian_examples() {
        let e = empty();
        assert_eq!(gaussian_binomial(&e, 5, 0, 10), ints(10, &[1]));
        assert!(gaussian_binomial(&e, 3, 4, 10).is_zero());
        assert!(gaussian_binomial(&e, 3, -1, 10).is_zero());
        assert_eq!(gaussian_binomial(&e, 4, 2, 8), ints(8, &[1, 1, 2, 1, 1]));
        assert!(gaussian_is_exact(4, 2, 4));
        assert!(!gaussian_is_exact(4, 2, 3));
    }

    #[test]
    fn gaussian_by_quotient() {
        let e = empty();
        let n = 8;
        let quotient = &(&q_pochhammer(&e, 4, n) * &q_pochhammer(&e, 2, n).invert().unwrap())
            * &q_pochhammer(&e, 2, n).invert().unwrap();
        assert_eq!(quotient, ints(n, &[1, 1, 2, 1, 1]));
    }

    #[test]
    fn gaussian_symmetry_degree_positivity() {
        for n in 0..=12usize {
            for m in 0..=n {
                let poly = gaussian_polynomial(n, m as i64);
                assert_eq!(poly, gaussian_polynomial(n, (n - m) as i64));
                assert_eq!(poly.len() - 1, m * (n - m));
                assert!(poly.last().is_some_and(|c| !c.is_zero()));
                assert!(poly.iter().all(|c| c >= &BigInt::zero()));
            }
        }
    }

    #[test]
    fn rogers_szego_examples() {
        let params = ParamSet::new(["x"]).unwrap();
        let p = |s: &str| ParamPoly::parse(&params, s).unwrap();
        let series = |cs: &[&str]| {
            let mut coeffs: Vec<ParamPoly> = cs.iter().map(|c| p(c)).collect();
            coeffs.resize(6, p("0"));
            QSeries::from_coeffs(&params, coeffs).unwrap()
        };
        assert_eq!(rogers_szego(&params, 0, 5).unwrap(), series(&["1"]));
        assert_eq!(rogers_szego(&params, 1, 5).unwrap(), series(&["1 + x"]));
        assert_eq!(
            rogers_szego(&params, 2, 5).unwrap(),
            series(&["1 + x + x^2", "x"])
        );
        assert_eq!(
            rogers_szego(&empty(), 2, 5),
            Err(ToolkitError::MissingParameter("x".into()))
        );
    }

    #[test]
    fn sigma_examples() {
        assert_eq!(sigma(1), Ok(1));
        assert_eq!(sigma(6), Ok(12));
        assert_eq!(sigma(7), Ok(8));
        assert_eq!(sigma(36), Ok(91));
        assert_eq!(sigma(0), Err(ToolkitError::SigmaOfZero));
    }

    #[test]
    fn sigma_matches_divisor_enumeration() {
        for k in 1..=200u64 {
            let brute: u64 = (1..=k).filter(|d| k % d == 0).sum();
            assert_eq!(sigma(k).unwrap(), brute);
        }
    }

    #[test]
    fn partitions_small() {
        let p = partition_p(10).unwrap();
        let p: Vec<u64> = p.iter().map(|v| v.to_u64().unwrap()).collect();
        assert_eq!(p, vec![1, 1, 2, 3, 5, 7, 11, 15, 22, 30, 42]);
        assert_eq!(partition_oracle(0), Ok(1));
        assert_eq!(partition_oracle(1), Ok(1));
        assert_eq!(partition_oracle(5), Ok(7));
        assert_eq!(
            partition_oracle(41),
            Err(ToolkitError::OracleBoundExceeded { n: 41, bound: 40 })
        );
        assert_eq!(partition_oracle_bounded(41, 50), Ok(44583));
    }

    #[test]
    fn partition_recurrence_matches_oracle() {
        let p = partition_p(30).unwrap();
        for n in 0..=30u32 {
            assert_eq!(p[n as usize].to_u64(), Some(partition_oracle(n).unwrap()));
        }
    }

    #[test]
    fn triangular_weights() {
        let e = empty();
        assert_eq!(triangular_weight(&e, 0, 8), ints(8, &[1]));
        assert_eq!(triangular_weight(&e, 1, 8), ints(8, &[1]));
        assert_eq!(triangular_weight(&e, 4, 8), ints(8, &[0, 0, 0, 0, 0, 0, 1]));
        assert!(triangular_weight(&e, 5, 8).is_zero());
    }
}
