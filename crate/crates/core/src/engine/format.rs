use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::{ArithmeticFn, EngineError, Factor, ProductSpec};
use crate::arith::{ArithError, ParamPoly, ParamSet, Rational};

/// On-disk form of a [`ProductSpec`]:
///
/// ```json
/// { "name": "cauchy", "parameters": ["a"],
///   "factors": [ { "a": "a", "b": "-1", "alpha": 1, "beta": 0,
///                  "f": { "type": "linear", "c": "-1" } } ] }
/// ```
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProductSpecFile {
    pub name: String,
    #[serde(default)]
    pub parameters: Vec<String>,
    pub factors: Vec<FactorFile>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FactorFile {
    pub a: String,
    pub b: String,
    pub alpha: i64,
    pub beta: i64,
    pub f: FnFile,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase", deny_unknown_fields)]
pub enum FnFile {
    Linear { c: String },
    Tabulated { values: Vec<String> },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SpecFileError {
    #[error("line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("parameters: {0}")]
    Parameters(ArithError),
    #[error("factors[{factor}].{field}: {message}")]
    Field {
        factor: usize,
        field: String,
        message: String,
    },
    #[error("{0}")]
    Spec(EngineError),
}

impl ProductSpecFile {
    pub fn parse(text: &str) -> Result<ProductSpec, SpecFileError> {
        let file: ProductSpecFile =
            serde_json::from_str(text).map_err(|e| SpecFileError::Syntax {
                line: e.line(),
                column: e.column(),
                message: e.to_string(),
            })?;
        file.to_spec()
    }

    pub fn to_spec(&self) -> Result<ProductSpec, SpecFileError> {
        let params =
            ParamSet::new(self.parameters.iter().cloned()).map_err(SpecFileError::Parameters)?;
        let mut factors = Vec::with_capacity(self.factors.len());
        for (i, f) in self.factors.iter().enumerate() {
            let field_err = |field: &str, message: String| SpecFileError::Field {
                factor: i,
                field: field.to_string(),
                message,
            };
            let a = ParamPoly::parse(&params, &f.a).map_err(|e| field_err("a", e.to_string()))?;
            let b: Rational =
                f.b.parse()
                    .map_err(|e: ArithError| field_err("b", e.to_string()))?;
            if f.alpha < 1 {
                return Err(field_err(
                    "alpha",
                    format!("must be at least 1, got {}", f.alpha),
                ));
            }
            if f.beta < 0 {
                return Err(field_err(
                    "beta",
                    format!("must be nonnegative, got {}", f.beta),
                ));
            }
            let func = match &f.f {
                FnFile::Linear { c } => ArithmeticFn::Linear(
                    c.parse()
                        .map_err(|e: ArithError| field_err("f.c", e.to_string()))?,
                ),
                FnFile::Tabulated { values } => ArithmeticFn::Tabulated(
                    values
                        .iter()
                        .enumerate()
                        .map(|(k, v)| {
                            v.parse().map_err(|e: ArithError| {
                                field_err(&format!("f.values[{k}]"), e.to_string())
                            })
                        })
                        .collect::<Result<_, _>>()?,
                ),
            };
            factors.push(Factor {
                a,
                b,
                alpha: f.alpha as usize,
                beta: f.beta as usize,
                f: func,
            });
        }
        ProductSpec::new(self.name.clone(), &params, factors).map_err(SpecFileError::Spec)
    }

    pub fn from_spec(spec: &ProductSpec) -> Self {
        ProductSpecFile {
            name: spec.name().to_string(),
            parameters: spec.params().names().to_vec(),
            factors: spec
                .factors()
                .iter()
                .map(|f| FactorFile {
                    a: f.a.to_string(),
                    b: f.b.to_string(),
                    alpha: f.alpha as i64,
                    beta: f.beta as i64,
                    f: match &f.f {
                        ArithmeticFn::Linear(c) => FnFile::Linear { c: c.to_string() },
                        ArithmeticFn::Tabulated(v) => FnFile::Tabulated {
                            values: v.iter().map(ToString::to_string).collect(),
                        },
                    },
                })
                .collect(),
        }
    }
}
