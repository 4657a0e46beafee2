use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use super::SeriesError;
use crate::arith::{ParamPoly, ParamSet, Rational};

/// A power series in `q` truncated after `q^N`, with coefficients
/// polynomial in the formal parameters.
#[derive(Clone, PartialEq, Eq)]
pub struct QSeries {
    params: ParamSet,
    coeffs: Vec<ParamPoly>,
}

impl QSeries {
    pub fn zero(params: &ParamSet, qorder: usize) -> Self {
        QSeries {
            params: params.clone(),
            coeffs: vec![ParamPoly::zero(params); qorder + 1],
        }
    }

    pub fn one(params: &ParamSet, qorder: usize) -> Self {
        Self::monomial(ParamPoly::one(params), 0, qorder)
    }

    /// `coeff * q^exp`, which is zero when `exp > qorder`.
    pub fn monomial(coeff: ParamPoly, exp: usize, qorder: usize) -> Self {
        let mut s = Self::zero(coeff.params(), qorder);
        if exp <= qorder {
            s.coeffs[exp] = coeff;
        }
        s
    }

    pub fn from_coeffs(params: &ParamSet, coeffs: Vec<ParamPoly>) -> Result<Self, SeriesError> {
        if coeffs.is_empty() {
            return Err(SeriesError::WrongLength {
                expected: 1,
                got: 0,
            });
        }
        for c in &coeffs {
            params.ensure_same(c.params())?;
        }
        Ok(QSeries {
            params: params.clone(),
            coeffs,
        })
    }

    /// A parameter-free series from integer coefficients; entries past
    /// `qorder` are dropped, missing ones are zero.
    pub fn from_integers(params: &ParamSet, qorder: usize, values: &[i64]) -> Self {
        let mut s = Self::zero(params, qorder);
        for (k, &v) in values.iter().enumerate().take(qorder + 1) {
            s.coeffs[k] = ParamPoly::constant(params, Rational::from(v));
        }
        s
    }

    /// `1 - c*q^exp`.
    pub fn one_minus(coeff: ParamPoly, exp: usize, qorder: usize) -> Self {
        let params = coeff.params().clone();
        let one = Self::one(&params, qorder);
        &one - &Self::monomial(coeff, exp, qorder)
    }

    pub fn qorder(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn params(&self) -> &ParamSet {
        &self.params
    }

    pub fn coeff(&self, k: usize) -> Option<&ParamPoly> {
        self.coeffs.get(k)
    }

    pub fn coeffs(&self) -> &[ParamPoly] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(ParamPoly::is_zero)
    }

    /// Largest exponent with a nonzero coefficient.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.iter().rposition(|c| !c.is_zero())
    }

    fn ensure_compatible(&self, rhs: &QSeries) -> Result<(), SeriesError> {
        if self.qorder() != rhs.qorder() {
            return Err(SeriesError::QOrderMismatch {
                left: self.qorder(),
                right: rhs.qorder(),
            });
        }
        self.params.ensure_same(&rhs.params)?;
        Ok(())
    }

    pub fn checked_add(&self, rhs: &QSeries) -> Result<QSeries, SeriesError> {
        self.ensure_compatible(rhs)?;
        let mut out = self.clone();
        for (o, r) in out.coeffs.iter_mut().zip(&rhs.coeffs) {
            o.add_assign_compatible(r);
        }
        Ok(out)
    }

    pub fn checked_sub(&self, rhs: &QSeries) -> Result<QSeries, SeriesError> {
        self.ensure_compatible(rhs)?;
        let mut out = self.clone();
        for (o, r) in out.coeffs.iter_mut().zip(&rhs.coeffs) {
            o.sub_assign_compatible(r);
        }
        Ok(out)
    }

    pub fn checked_mul(&self, rhs: &QSeries) -> Result<QSeries, SeriesError> {
        self.ensure_compatible(rhs)?;
        let n = self.qorder();
        let lhs_support = self.support();
        let rhs_support = rhs.support();
        let mut out = QSeries::zero(&self.params, n);
        for &i in &lhs_support {
            for &j in &rhs_support {
                if i + j > n {
                    break;
                }
                out.coeffs[i + j].add_product_compatible(&self.coeffs[i], &rhs.coeffs[j]);
            }
        }
        Ok(out)
    }

    fn support(&self) -> Vec<usize> {
        (0..self.coeffs.len())
            .filter(|&k| !self.coeffs[k].is_zero())
            .collect()
    }

    pub fn scale(&self, c: &Rational) -> QSeries {
        QSeries {
            params: self.params.clone(),
            coeffs: self.coeffs.iter().map(|p| p.scale(c)).collect(),
        }
    }

    /// Multiplies every coefficient by a parameter polynomial.
    pub fn scale_poly(&self, p: &ParamPoly) -> Result<QSeries, SeriesError> {
        self.params.ensure_same(p.params())?;
        Ok(QSeries {
            params: self.params.clone(),
            coeffs: self.coeffs.iter().map(|c| c * p).collect(),
        })
    }

    /// Multiplication by `q^e`.
    pub fn shift(&self, e: usize) -> QSeries {
        let n = self.qorder();
        let mut out = QSeries::zero(&self.params, n);
        for k in e..=n {
            out.coeffs[k] = self.coeffs[k - e].clone();
        }
        out
    }

    /// The multiplicative inverse modulo `q^(N+1)`. The constant term must
    /// be a nonzero scalar.
    pub fn invert(&self) -> Result<QSeries, SeriesError> {
        let c0 = self.coeffs[0]
            .constant_value()
            .filter(|c| !c.is_zero())
            .ok_or_else(|| SeriesError::NotInvertible(self.coeffs[0].to_string()))?;
        let inv0 = c0.recip()?;
        let neg_inv0 = -&inv0;
        let n = self.qorder();
        let support: Vec<usize> = self.support().into_iter().filter(|&k| k > 0).collect();
        let mut out = QSeries::zero(&self.params, n);
        out.coeffs[0] = ParamPoly::constant(&self.params, inv0);
        for k in 1..=n {
            let mut acc = ParamPoly::zero(&self.params);
            for &i in &support {
                if i > k {
                    break;
                }
                acc.add_product_compatible(&self.coeffs[i], &out.coeffs[k - i]);
            }
            out.coeffs[k] = acc.scale(&neg_inv0);
        }
        Ok(out)
    }

    /// Drops every coefficient above `q^qorder`.
    pub fn truncate(&self, qorder: usize) -> Result<QSeries, SeriesError> {
        if qorder > self.qorder() {
            return Err(SeriesError::CannotExtend {
                from: self.qorder(),
                to: qorder,
            });
        }
        Ok(QSeries {
            params: self.params.clone(),
            coeffs: self.coeffs[..=qorder].to_vec(),
        })
    }

    /// Applies a coefficientwise map, e.g. a parameter specialization.
    pub fn try_map_coeffs<F, E>(&self, f: F) -> Result<QSeries, E>
    where
        F: FnMut(&ParamPoly) -> Result<ParamPoly, E>,
    {
        Ok(QSeries {
            params: self.params.clone(),
            coeffs: self.coeffs.iter().map(f).collect::<Result<_, _>>()?,
        })
    }

    pub fn to_record(&self) -> QSeriesRecord {
        QSeriesRecord {
            qorder: self.qorder(),
            coeffs: self.coeffs.iter().map(ToString::to_string).collect(),
        }
    }

    pub fn from_record(params: &ParamSet, record: &QSeriesRecord) -> Result<QSeries, SeriesError> {
        if record.coeffs.len() != record.qorder + 1 {
            return Err(SeriesError::WrongLength {
                expected: record.qorder + 1,
                got: record.coeffs.len(),
            });
        }
        let coeffs = record
            .coeffs
            .iter()
            .map(|c| ParamPoly::parse(params, c))
            .collect::<Result<Vec<_>, _>>()?;
        QSeries::from_coeffs(params, coeffs)
    }
}

/// Structured form of a [`QSeries`]: one canonical polynomial string per
/// coefficient.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct QSeriesRecord {
    pub qorder: usize,
    pub coeffs: Vec<String>,
}

/// The first place where two series disagree.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Mismatch {
    pub q_exp: usize,
    /// The first parameter monomial, in canonical order, whose coefficient
    /// differs; `"1"` for the parameter-free part.
    pub param_term: String,
    pub lhs_term: String,
    pub rhs_term: String,
}

/// Compares two series of the same shape coefficient by coefficient.
pub fn first_mismatch(lhs: &QSeries, rhs: &QSeries) -> Option<Mismatch> {
    let params = lhs.params();
    let len = lhs.coeffs.len().max(rhs.coeffs.len());
    let zero = ParamPoly::zero(params);
    for k in 0..len {
        let l = lhs.coeffs.get(k).unwrap_or(&zero);
        let r = rhs.coeffs.get(k).unwrap_or(&zero);
        if l == r {
            continue;
        }
        let diff = l.checked_sub(r).unwrap_or_else(|_| l.clone());
        let param_term = diff
            .terms()
            .next()
            .map(|(exps, _)| {
                ParamPoly::monomial(params, exps.to_vec(), Rational::one()).to_string()
            })
            .unwrap_or_else(|| "1".to_string());
        return Some(Mismatch {
            q_exp: k,
            param_term,
            lhs_term: l.to_string(),
            rhs_term: r.to_string(),
        });
    }
    None
}

impl fmt::Display for QSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let q_part = match k {
                0 => String::new(),
                1 => "q".to_string(),
                _ => format!("q^{k}"),
            };
            let rendered = c.to_string();
            let (negative, body) = if k == 0 {
                match rendered.strip_prefix('-') {
                    Some(rest) if c.is_monomial() => (true, rest.to_string()),
                    _ => (false, rendered),
                }
            } else if c.is_monomial() {
                let (neg, mag) = match rendered.strip_prefix('-') {
                    Some(rest) => (true, rest.to_string()),
                    None => (false, rendered),
                };
                if mag == "1" {
                    (neg, q_part)
                } else {
                    (neg, format!("{mag}*{q_part}"))
                }
            } else {
                (false, format!("({rendered})*{q_part}"))
            };
            match (first, negative) {
                (true, false) => write!(f, "{body}")?,
                (true, true) => write!(f, "-{body}")?,
                (false, false) => write!(f, " + {body}")?,
                (false, true) => write!(f, " - {body}")?,
            }
            first = false;
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

impl fmt::Debug for QSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "QSeries[N={}]({self})", self.qorder())
    }
}

// Operator forms panic on mismatched orders or parameter sets.
impl Add for &QSeries {
    type Output = QSeries;
    fn add(self, rhs: &QSeries) -> QSeries {
        self.checked_add(rhs).expect("QSeries addition")
    }
}

impl Sub for &QSeries {
    type Output = QSeries;
    fn sub(self, rhs: &QSeries) -> QSeries {
        self.checked_sub(rhs).expect("QSeries subtraction")
    }
}

impl Mul for &QSeries {
    type Output = QSeries;
    fn mul(self, rhs: &QSeries) -> QSeries {
        self.checked_mul(rhs).expect("QSeries multiplication")
    }
}

impl Neg for &QSeries {
    type Output = QSeries;
    fn neg(self) -> QSeries {
        let mut out = self.clone();
        out.coeffs.iter_mut().for_each(ParamPoly::neg_in_place);
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(n: usize, v: &[i64]) -> QSeries {
        QSeries::from_integers(&ParamSet::empty(), n, v)
    }

    #[test]
    fn telescoping_product() {
        assert_eq!(&ints(2, &[1, -1]) * &ints(2, &[1, 1, 1]), ints(2, &[1]));
    }

    #[test]
    fn additive_identity_and_square() {
        let s = ints(4, &[3, 0, -2, 7]);
        assert_eq!(&s + &QSeries::zero(&ParamSet::empty(), 4), s);
        let one_plus_q = ints(4, &[1, 1]);
        assert_eq!(&one_plus_q * &one_plus_q, ints(4, &[1, 2, 1]));
    }

    #[test]
    fn order_mismatch_is_an_error() {
        assert_eq!(
            ints(3, &[1]).checked_mul(&ints(4, &[1])),
            Err(SeriesError::QOrderMismatch { left: 3, right: 4 })
        );
    }

    #[test]
    fn inversion_examples() {
        assert_eq!(
            ints(4, &[1, -1]).invert().unwrap(),
            ints(4, &[1, 1, 1, 1, 1])
        );
        assert_eq!(ints(7, &[1]).invert().unwrap(), ints(7, &[1]));
    }

    #[test]
    fn inverse_of_q_pochhammer_two_counts_partitions_into_parts_at_most_two() {
        // brute force: number of (i, j) with i + 2j = n
        let counts: Vec<i64> = (0..=5)
            .map(|n| (0..=n).filter(|j| 2 * j <= n).count() as i64)
            .collect();
        let q2 = &ints(5, &[1, -1]) * &ints(5, &[1, 0, -1]);
        assert_eq!(q2.invert().unwrap(), ints(5, &counts));
        assert_eq!(counts, vec![1, 1, 2, 2, 3, 3]);
    }

    #[test]
    fn non_invertible_constant_terms() {
        assert!(matches!(
            ints(3, &[0, 1]).invert(),
            Err(SeriesError::NotInvertible(_))
        ));
        let params = ParamSet::new(["a"]).unwrap();
        let a = ParamPoly::var(&params, "a").unwrap();
        assert!(QSeries::monomial(a, 0, 3).invert().is_err());
    }

    #[test]
    fn shifts() {
        assert_eq!(ints(4, &[1, 1]).shift(2), ints(4, &[0, 0, 1, 1]));
        let s = ints(4, &[5, 1, 2]);
        assert_eq!(s.shift(0), s);
        assert!(ints(4, &[1]).shift(5).is_zero());
    }

    #[test]
    fn rendering() {
        let params = ParamSet::new(["a"]).unwrap();
        let s = QSeries::from_coeffs(
            &params,
            vec![
                ParamPoly::parse(&params, "1").unwrap(),
                ParamPoly::parse(&params, "-1").unwrap(),
                ParamPoly::parse(&params, "1 + a").unwrap(),
                ParamPoly::parse(&params, "3/2*a").unwrap(),
                ParamPoly::parse(&params, "-2").unwrap(),
            ],
        )
        .unwrap();
        assert_eq!(s.to_string(), "1 - q + (1 + a)*q^2 + 3/2*a*q^3 - 2*q^4");
        assert_eq!(ints(3, &[]).to_string(), "0");
        assert_eq!(ints(3, &[-1, 0, 1]).to_string(), "-1 + q^2");
    }

    #[test]
    fn record_round_trip() {
        let params = ParamSet::new(["a"]).unwrap();
        let s = QSeries::one_minus(ParamPoly::parse(&params, "2*a - 1/3").unwrap(), 2, 5);
        let back = QSeries::from_record(&params, &s.to_record()).unwrap();
        assert_eq!(back, s);
    }

    #[test]
    fn mismatch_location() {
        let params = ParamSet::new(["a"]).unwrap();
        let lhs = QSeries::monomial(ParamPoly::parse(&params, "1 + a").unwrap(), 2, 4);
        let rhs = QSeries::monomial(ParamPoly::parse(&params, "1").unwrap(), 2, 4);
        let m = first_mismatch(&lhs, &rhs).unwrap();
        assert_eq!(m.q_exp, 2);
        assert_eq!(m.param_term, "a");
        assert_eq!(m.lhs_term, "1 + a");
        assert!(first_mismatch(&lhs, &lhs).is_none());
    }
}
