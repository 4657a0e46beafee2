use crate::arith::{ParamPoly, ParamSet, Rational};

use super::EngineError;

/// An arithmetic function `f` entering the product through `f(n)/n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ArithmeticFn {
    /// `f(n) = c*n`.
    Linear(Rational),
    /// `f(1), f(2), ...`; querying past the end is an error.
    Tabulated(Vec<Rational>),
}

impl ArithmeticFn {
    pub fn linear(c: impl Into<Rational>) -> Self {
        ArithmeticFn::Linear(c.into())
    }

    /// `f(n)/n`, or `None` at `n = 0` and past the end of a table.
    pub fn ratio(&self, n: usize) -> Option<Rational> {
        if n == 0 {
            return None;
        }
        match self {
            ArithmeticFn::Linear(c) => Some(c.clone()),
            ArithmeticFn::Tabulated(values) => {
                let v = values.get(n - 1)?;
                Some(v * &Rational::new(1, n as i64).expect("n >= 1"))
            }
        }
    }

    /// Number of indices that can be queried, `None` when unbounded.
    pub fn available(&self) -> Option<usize> {
        match self {
            ArithmeticFn::Linear(_) => None,
            ArithmeticFn::Tabulated(v) => Some(v.len()),
        }
    }
}

/// One factor `(1 - a t q^beta)^(-b) prod_{n>=1} (1 - a t q^(alpha n + beta))^(-f(n)/n)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Factor {
    pub a: ParamPoly,
    pub b: Rational,
    pub alpha: usize,
    pub beta: usize,
    pub f: ArithmeticFn,
}

impl Factor {
    pub fn new(
        a: ParamPoly,
        b: Rational,
        alpha: usize,
        beta: usize,
        f: ArithmeticFn,
    ) -> Result<Self, EngineError> {
        if alpha == 0 {
            return Err(EngineError::ZeroAlpha { factor: 0 });
        }
        Ok(Factor {
            a,
            b,
            alpha,
            beta,
            f,
        })
    }
}

/// A named product of [`Factor`]s over one parameter set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProductSpec {
    name: String,
    params: ParamSet,
    factors: Vec<Factor>,
}

impl ProductSpec {
    pub fn new(
        name: impl Into<String>,
        params: &ParamSet,
        factors: Vec<Factor>,
    ) -> Result<Self, EngineError> {
        if factors.is_empty() {
            return Err(EngineError::NoFactors);
        }
        for (i, f) in factors.iter().enumerate() {
            if f.alpha == 0 {
                return Err(EngineError::ZeroAlpha { factor: i });
            }
            params.ensure_same(f.a.params())?;
        }
        Ok(ProductSpec {
            name: name.into(),
            params: params.clone(),
            factors,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn params(&self) -> &ParamSet {
        &self.params
    }

    pub fn factors(&self) -> &[Factor] {
        &self.factors
    }

    /// The product of `self` and `other`, which must share parameters.
    pub fn concat(
        &self,
        other: &ProductSpec,
        name: impl Into<String>,
    ) -> Result<ProductSpec, EngineError> {
        let mut factors = self.factors.clone();
        factors.extend(other.factors.iter().cloned());
        ProductSpec::new(name, &self.params, factors)
    }

    /// A copy with every factor's `b` negated; used to build failing specs.
    pub fn with_b_negated(&self) -> ProductSpec {
        let mut out = self.clone();
        for f in &mut out.factors {
            f.b = -&f.b;
        }
        out.name = format!("{}-b-negated", self.name);
        out
    }
}
