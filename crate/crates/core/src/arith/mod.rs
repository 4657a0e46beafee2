//! Exact scalar arithmetic: rationals and sparse polynomials in a fixed set
//! of formal parameters. These form the coefficient ring of every series.

mod poly;
mod rational;

pub use poly::{ParamPoly, ParamSet};
pub use rational::{gbinom, rat_arith, ArithOp, Rational};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ArithError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("parameter sets differ: [{left}] vs [{right}]")]
    ParamMismatch { left: String, right: String },
    #[error("no value assigned to parameter `{0}`")]
    MissingParameter(String),
    #[error("unknown parameter `{0}`")]
    UnknownParameter(String),
    #[error("invalid parameter set: {0}")]
    InvalidParamSet(String),
    #[error("cannot parse {input:?}: {reason}")]
    Parse { input: String, reason: String },
}
