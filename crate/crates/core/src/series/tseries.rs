use std::fmt;
use std::ops::{Add, Mul, Sub};

use serde::{Deserialize, Serialize};

use super::{QSeries, QSeriesRecord, SeriesError};
use crate::arith::{gbinom, ParamPoly, ParamSet, Rational};

/// A power series in `t` truncated after `t^M`, whose coefficients are
/// [`QSeries`] of one common `q`-order.
#[derive(Clone, PartialEq, Eq)]
pub struct TSeries {
    params: ParamSet,
    qorder: usize,
    coeffs: Vec<QSeries>,
}

impl TSeries {
    pub fn zero(params: &ParamSet, torder: usize, qorder: usize) -> Self {
        TSeries {
            params: params.clone(),
            qorder,
            coeffs: vec![QSeries::zero(params, qorder); torder + 1],
        }
    }

    pub fn one(params: &ParamSet, torder: usize, qorder: usize) -> Self {
        let mut s = Self::zero(params, torder, qorder);
        s.coeffs[0] = QSeries::one(params, qorder);
        s
    }

    pub fn from_coeffs(coeffs: Vec<QSeries>) -> Result<Self, SeriesError> {
        let first = coeffs.first().ok_or(SeriesError::WrongLength {
            expected: 1,
            got: 0,
        })?;
        let params = first.params().clone();
        let qorder = first.qorder();
        for c in &coeffs {
            if c.qorder() != qorder {
                return Err(SeriesError::QOrderMismatch {
                    left: qorder,
                    right: c.qorder(),
                });
            }
            params.ensure_same(c.params())?;
        }
        Ok(TSeries {
            params,
            qorder,
            coeffs,
        })
    }

    /// Expansion of the single factor `(1 - a*t*q^e)^(-c)`:
    /// `sum_k gbinom(c, k) a^k q^(e*k) t^k`.
    pub fn expand_factor(
        a: &ParamPoly,
        e: usize,
        c: &Rational,
        torder: usize,
        qorder: usize,
    ) -> Self {
        let params = a.params();
        let mut s = Self::zero(params, torder, qorder);
        let mut a_pow = ParamPoly::one(params);
        for k in 0..=torder {
            let exp = e.saturating_mul(k);
            if exp > qorder {
                break;
            }
            let coeff = a_pow.scale(&gbinom(c, k as u32));
            s.coeffs[k] = QSeries::monomial(coeff, exp, qorder);
            a_pow = &a_pow * a;
        }
        s
    }

    pub fn torder(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn qorder(&self) -> usize {
        self.qorder
    }

    pub fn params(&self) -> &ParamSet {
        &self.params
    }

    pub fn coeff(&self, n: usize) -> Option<&QSeries> {
        self.coeffs.get(n)
    }

    pub fn coeffs(&self) -> &[QSeries] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(QSeries::is_zero)
    }

    fn ensure_compatible(&self, rhs: &TSeries) -> Result<(), SeriesError> {
        if self.torder() != rhs.torder() {
            return Err(SeriesError::TOrderMismatch {
                left: self.torder(),
                right: rhs.torder(),
            });
        }
        if self.qorder != rhs.qorder {
            return Err(SeriesError::QOrderMismatch {
                left: self.qorder,
                right: rhs.qorder,
            });
        }
        self.params.ensure_same(&rhs.params)?;
        Ok(())
    }

    pub fn checked_add(&self, rhs: &TSeries) -> Result<TSeries, SeriesError> {
        self.ensure_compatible(rhs)?;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&rhs.coeffs)
            .map(|(l, r)| l.checked_add(r))
            .collect::<Result<_, _>>()?;
        Ok(TSeries {
            params: self.params.clone(),
            qorder: self.qorder,
            coeffs,
        })
    }

    pub fn checked_sub(&self, rhs: &TSeries) -> Result<TSeries, SeriesError> {
        self.ensure_compatible(rhs)?;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&rhs.coeffs)
            .map(|(l, r)| l.checked_sub(r))
            .collect::<Result<_, _>>()?;
        Ok(TSeries {
            params: self.params.clone(),
            qorder: self.qorder,
            coeffs,
        })
    }

    /// Cauchy product of the `t`-coefficients.
    pub fn checked_mul(&self, rhs: &TSeries) -> Result<TSeries, SeriesError> {
        self.ensure_compatible(rhs)?;
        let m = self.torder();
        let mut out = TSeries::zero(&self.params, m, self.qorder);
        for i in 0..=m {
            if self.coeffs[i].is_zero() {
                continue;
            }
            for j in 0..=(m - i) {
                if rhs.coeffs[j].is_zero() {
                    continue;
                }
                let prod = self.coeffs[i].checked_mul(&rhs.coeffs[j])?;
                out.coeffs[i + j] = out.coeffs[i + j].checked_add(&prod)?;
            }
        }
        Ok(out)
    }

    /// The operator `t d/dt`: coefficient `n` is multiplied by `n`.
    pub fn t_derivative(&self) -> TSeries {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(n, c)| c.scale(&Rational::from(n as i64)))
            .collect();
        TSeries {
            params: self.params.clone(),
            qorder: self.qorder,
            coeffs,
        }
    }

    pub fn truncate(&self, torder: usize, qorder: usize) -> Result<TSeries, SeriesError> {
        if torder > self.torder() {
            return Err(SeriesError::CannotExtend {
                from: self.torder(),
                to: torder,
            });
        }
        let coeffs = self.coeffs[..=torder]
            .iter()
            .map(|c| c.truncate(qorder))
            .collect::<Result<_, _>>()?;
        Ok(TSeries {
            params: self.params.clone(),
            qorder,
            coeffs,
        })
    }

    pub fn to_record(&self) -> TSeriesRecord {
        TSeriesRecord {
            torder: self.torder(),
            qorder: self.qorder,
            coeffs: self.coeffs.iter().map(QSeries::to_record).collect(),
        }
    }
}

/// Structured form of a [`TSeries`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TSeriesRecord {
    pub torder: usize,
    pub qorder: usize,
    pub coeffs: Vec<QSeriesRecord>,
}

impl fmt::Display for TSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (n, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                f.write_str(" + ")?;
            }
            match n {
                0 => write!(f, "({c})")?,
                1 => write!(f, "({c})*t")?,
                _ => write!(f, "({c})*t^{n}")?,
            }
            first = false;
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

impl fmt::Debug for TSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "TSeries[M={}, N={}]({self})", self.torder(), self.qorder)
    }
}

impl Add for &TSeries {
    type Output = TSeries;
    fn add(self, rhs: &TSeries) -> TSeries {
        self.checked_add(rhs).expect("TSeries addition")
    }
}

impl Sub for &TSeries {
    type Output = TSeries;
    fn sub(self, rhs: &TSeries) -> TSeries {
        self.checked_sub(rhs).expect("TSeries subtraction")
    }
}

impl Mul for &TSeries {
    type Output = TSeries;
    fn mul(self, rhs: &TSeries) -> TSeries {
        self.checked_mul(rhs).expect("TSeries multiplication")
    }
}
