use std::fmt::Write as _;
use std::io::{self, Write};

use qrecur::engine::CoefficientCheck;
use qrecur::identities::{IdentityCase, RogersSzegoAnalysis, SpotCheckReport};
use qrecur::series::Mismatch;
use serde::{Deserialize, Serialize};

use crate::args::Format;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AnalysisRecord {
    pub pass: bool,
    pub summary: String,
    #[serde(flatten)]
    pub detail: RogersSzegoAnalysis,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoefficientRecord {
    #[serde(flatten)]
    pub check: CoefficientCheck,
    pub value: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RowRecord {
    pub n: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub m: Option<i64>,
    pub value: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct Summary {
    pub total: usize,
    pub passed: usize,
    pub failed: usize,
}

/// One line of output. In structured mode the `record` field names the variant.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "record", rename_all = "snake_case")]
pub enum Record {
    Case(IdentityCase),
    SpotCheck(SpotCheckReport),
    Analysis(AnalysisRecord),
    Coefficient(CoefficientRecord),
    Row(RowRecord),
    Summary(Summary),
}

impl Record {
    /// Pass/fail outcome for records that are checks.
    pub fn outcome(&self) -> Option<bool> {
        match self {
            Record::Case(c) => Some(c.pass),
            Record::SpotCheck(s) => Some(s.pass),
            Record::Analysis(a) => Some(a.pass),
            Record::Coefficient(c) => Some(c.check.pass),
            Record::Row(_) | Record::Summary(_) => None,
        }
    }
}

pub fn summarize(records: &[Record]) -> Summary {
    let mut s = Summary::default();
    for pass in records.iter().filter_map(Record::outcome) {
        s.total += 1;
        if pass {
            s.passed += 1;
        } else {
            s.failed += 1;
        }
    }
    s
}

fn verdict(pass: bool) -> &'static str {
    if pass {
        "pass"
    } else {
        "FAIL"
    }
}

fn mismatch_text(m: &Mismatch) -> String {
    let term = if m.param_term == "1" {
        String::new()
    } else {
        format!(" [{}]", m.param_term)
    };
    format!(
        "at q^{}{term}: lhs {}, rhs {}",
        m.q_exp, m.lhs_term, m.rhs_term
    )
}

fn text(record: &Record) -> String {
    let mut line = String::new();
    match record {
        Record::Case(c) => {
            let _ = write!(
                line,
                "{} n={} qorder={} {}",
                c.id,
                c.n,
                c.qorder,
                verdict(c.pass)
            );
            if let Some(m) = &c.first_mismatch {
                let _ = write!(line, " {}", mismatch_text(m));
            }
            for note in &c.notes {
                let _ = write!(line, "\n  note: {note}");
            }
        }
        Record::SpotCheck(s) => {
            let _ = write!(
                line,
                "{} n={} qorder={} spot check ({} samples) {}",
                s.id,
                s.n,
                s.qorder,
                s.samples,
                verdict(s.pass)
            );
            if let Some(f) = &s.failure {
                let _ = write!(
                    line,
                    " at {}, q^{}: lhs {}, rhs {}",
                    f.assignment, f.q_exp, f.lhs, f.rhs
                );
            }
        }
        Record::Analysis(a) => {
            let _ = write!(
                line,
                "T4 analysis n<={} qorder={} {}\n  {}",
                a.detail.n_max,
                a.detail.qorder,
                verdict(a.pass),
                a.summary
            );
        }
        Record::Coefficient(c) => {
            let _ = write!(line, "n={} {}", c.check.n, verdict(c.check.pass));
            match &c.check.mismatch {
                Some(m) => {
                    let _ = write!(line, " {}", mismatch_text(m));
                }
                None => {
                    let _ = write!(line, ": {}", c.value);
                }
            }
        }
        Record::Row(r) => {
            let _ = match r.m {
                Some(m) => write!(line, "{} {} {}", r.n, m, r.value),
                None => write!(line, "{} {}", r.n, r.value),
            };
        }
        Record::Summary(s) => {
            let _ = write!(
                line,
                "total {}: {} passed, {} failed",
                s.total, s.passed, s.failed
            );
        }
    }
    line
}

pub fn emit(out: &mut impl Write, format: Format, records: &[Record]) -> io::Result<()> {
    for record in records {
        match format {
            Format::Text => writeln!(out, "{}", text(record))?,
            Format::Structured => {
                serde_json::to_writer(&mut *out, record)?;
                writeln!(out)?;
            }
        }
    }
    Ok(())
}
