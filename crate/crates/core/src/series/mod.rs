//! Truncated formal power series.
//!
//! [`QSeries`] is a dense series in `q` with [`ParamPoly`](crate::arith::ParamPoly)
//! coefficients, exact modulo `q^(N+1)`. [`TSeries`] is a dense series in `t`
//! whose coefficients are `QSeries` sharing one `q`-order. The truncation
//! order belongs to each value and is checked whenever two values meet.

mod qseries;
mod tseries;

pub use qseries::{first_mismatch, Mismatch, QSeries, QSeriesRecord};
pub use tseries::{TSeries, TSeriesRecord};

use thiserror::Error;

use crate::arith::ArithError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SeriesError {
    #[error("q-orders differ: {left} vs {right}")]
    QOrderMismatch { left: usize, right: usize },
    #[error("t-orders differ: {left} vs {right}")]
    TOrderMismatch { left: usize, right: usize },
    #[error("constant term {0} is not an invertible scalar")]
    NotInvertible(String),
    #[error("cannot raise truncation order from {from} to {to}")]
    CannotExtend { from: usize, to: usize },
    #[error("expected {expected} coefficients, got {got}")]
    WrongLength { expected: usize, got: usize },
    #[error(transparent)]
    Arith(#[from] ArithError),
}
