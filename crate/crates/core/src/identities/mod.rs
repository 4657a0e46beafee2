//! Convolution identities for q-Pochhammer quotients, Rogers-Szegő
//! polynomials and the `Lambda_n` sequence, each checked as an exact
//! equality of truncated series.

mod catalog;
mod spot;
mod theorems;

pub use catalog::{
    catalog, catalog_spec, cauchy, closed_form, euler1, euler2, lambda_sequence, lambda_spec,
    params_a, params_x, q6_pochhammer, rogers_szego_spec, theorem2,
};
pub use spot::{rogers_szego_analysis, spot_check, RogersSzegoAnalysis, SpotCheckReport};
pub use theorems::{
    forms, sides, verify, verify_t1a, verify_t1b, verify_t2, verify_t2_displayed, verify_t3,
    verify_t4, verify_t4_engine_form, verify_t5, XValue,
};

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::engine::EngineError;
use crate::qtoolkit::ToolkitError;
use crate::series::{first_mismatch, Mismatch, QSeries};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum IdentityId {
    T1a,
    T1b,
    T2,
    T3,
    T4,
    T5,
}

impl IdentityId {
    pub const ALL: [IdentityId; 6] = [
        IdentityId::T1a,
        IdentityId::T1b,
        IdentityId::T2,
        IdentityId::T3,
        IdentityId::T4,
        IdentityId::T5,
    ];
}

impl fmt::Display for IdentityId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            IdentityId::T1a => "T1a",
            IdentityId::T1b => "T1b",
            IdentityId::T2 => "T2",
            IdentityId::T3 => "T3",
            IdentityId::T4 => "T4",
            IdentityId::T5 => "T5",
        };
        f.write_str(s)
    }
}

impl FromStr for IdentityId {
    type Err = IdentityError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        IdentityId::ALL
            .into_iter()
            .find(|id| id.to_string().eq_ignore_ascii_case(s))
            .ok_or_else(|| IdentityError::UnknownIdentity(s.to_string()))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum IdentityError {
    #[error("identities are indexed from n = 1")]
    ZeroN,
    #[error("unknown identity `{0}`")]
    UnknownIdentity(String),
    #[error("unknown catalog spec `{0}`")]
    UnknownSpec(String),
    #[error("{0} has no formal parameter to spot-check")]
    NoParameter(IdentityId),
    #[error(transparent)]
    Engine(#[from] EngineError),
    #[error(transparent)]
    Toolkit(#[from] ToolkitError),
}

/// Outcome of checking one identity at one `n`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdentityCase {
    pub id: IdentityId,
    pub n: usize,
    pub qorder: usize,
    pub pass: bool,
    pub first_mismatch: Option<Mismatch>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

/// One way of writing an identity: both sides as truncated series.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdentityForm {
    pub label: String,
    pub lhs: QSeries,
    pub rhs: QSeries,
}

impl IdentityForm {
    pub fn new(label: impl Into<String>, lhs: QSeries, rhs: QSeries) -> Self {
        IdentityForm {
            label: label.into(),
            lhs,
            rhs,
        }
    }
}

/// `N >= n(n+1)/2 + 6n` leaves room for the triangular exponents and the
/// `q^6`-step denominators to show up below the truncation.
pub fn recommended_qorder(n: usize) -> usize {
    n * (n + 1) / 2 + 6 * n
}

impl IdentityCase {
    pub(crate) fn compare(id: IdentityId, n: usize, forms: &[IdentityForm]) -> IdentityCase {
        let qorder = forms[0].lhs.qorder();
        let mut notes = Vec::new();
        let mut mismatch = None;
        for form in forms {
            if let Some(m) = first_mismatch(&form.lhs, &form.rhs) {
                if mismatch.is_none() {
                    mismatch = Some(m);
                }
                notes.push(format!("{} form fails", form.label));
            }
        }
        if qorder < recommended_qorder(n) {
            notes.push(format!(
                "qorder {qorder} is below the recommended {} for n = {n}",
                recommended_qorder(n)
            ));
        }
        IdentityCase {
            id,
            n,
            qorder,
            pass: mismatch.is_none(),
            first_mismatch: mismatch,
            notes,
        }
    }
}
