//! Coefficient recurrences for generating functions of the form
//!
//! ```text
//! F(t) = prod_j (1 - a_j t q^beta_j)^(-b_j) * prod_{n>=1} (1 - a_j t q^(alpha_j n + beta_j))^(-f_j(n)/n)
//! ```
//!
//! Writing `F(t) = sum A(n) t^n`, the logarithmic derivative
//! `t F'(t) / F(t) = sum_{m>=1} h(m) t^m` turns the product into the
//! convolution `n A(n) = sum_{k=0}^{n-1} A(k) h(n-k)` with `A(0) = 1`.
//! [`compute_a`] runs that recurrence; [`expand_product`] multiplies the
//! factors out directly and serves as the independent check.

mod format;
mod recurrence;
mod spec;

pub use format::{FactorFile, FnFile, ProductSpecFile, SpecFileError};
pub use recurrence::{
    compute_a, compute_a_with, compute_h, expand_product, solve_recurrence, verify_pair,
    verify_spec, CoefficientCheck, Summation, VerificationReport,
};
pub use spec::{ArithmeticFn, Factor, ProductSpec};

use thiserror::Error;

use crate::arith::ArithError;
use crate::series::SeriesError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EngineError {
    #[error("factor {factor}: alpha must be at least 1")]
    ZeroAlpha { factor: usize },
    #[error("a product needs at least one factor")]
    NoFactors,
    #[error("factor {factor}: tabulated f has {available} values but index {required} is needed")]
    TabulationExhausted {
        factor: usize,
        required: usize,
        available: usize,
    },
    #[error("h(m) is only defined for m >= 1")]
    ZeroM,
    #[error(transparent)]
    Arith(#[from] ArithError),
    #[error(transparent)]
    Series(#[from] SeriesError),
}
