use std::error::Error;
use std::io::Write;
use std::process::ExitCode;

use qrecur::arith::{ParamSet, Rational};
use qrecur::engine::{expand_product, verify_spec, ProductSpecFile};
use qrecur::identities::{
    lambda_sequence, params_x, recommended_qorder, rogers_szego_analysis, spot_check, verify,
    verify_t4, IdentityError, IdentityId, XValue,
};
use qrecur::qtoolkit::{gaussian_binomial, partition_p, rogers_szego};
use rayon::prelude::*;

use crate::args::{Cli, Command, NRange, SequenceKind, VerifyOpts};
use crate::report::{emit, summarize, AnalysisRecord, CoefficientRecord, Record, RowRecord};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Success,
    Failure,
    Usage,
}

impl From<Status> for ExitCode {
    fn from(s: Status) -> Self {
        ExitCode::from(match s {
            Status::Success => 0,
            Status::Failure => 1,
            Status::Usage => 2,
        })
    }
}

type RunResult<T> = Result<T, Box<dyn Error>>;

pub fn default_qorder(n_max: usize) -> usize {
    recommended_qorder(n_max).max(40)
}

pub fn run(cli: &Cli, out: &mut impl Write) -> RunResult<Status> {
    let (mut records, checked) = match &cli.command {
        Command::Verify { id, opts, x } => (verify_records(&[*id], opts, &parse_x(x)?)?, true),
        Command::VerifyAll { opts } => (
            verify_records(&IdentityId::ALL, opts, &XValue::Value(Rational::one()))?,
            true,
        ),
        Command::Sequence {
            kind,
            max,
            qorder,
            m,
        } => (sequence_records(*kind, *max, *qorder, *m)?, false),
        Command::Expand {
            spec,
            torder,
            qorder,
        } => (expand_records(spec, *torder, *qorder)?, true),
    };
    let summary = summarize(&records);
    if checked {
        records.push(Record::Summary(summary));
    }
    emit(out, cli.format, &records)?;
    Ok(if summary.failed > 0 {
        Status::Failure
    } else {
        Status::Success
    })
}

fn parse_x(s: &str) -> RunResult<XValue> {
    if s.eq_ignore_ascii_case("symbolic") {
        Ok(XValue::Symbolic)
    } else {
        Ok(XValue::Value(s.parse().map_err(|e| format!("--x: {e}"))?))
    }
}

fn case_records(
    id: IdentityId,
    n: usize,
    qorder: usize,
    opts: &VerifyOpts,
    x: &XValue,
) -> Result<Vec<Record>, IdentityError> {
    let case = match id {
        IdentityId::T4 => verify_t4(n, qorder, x.clone())?,
        _ => verify(id, n, qorder)?,
    };
    let mut records = vec![Record::Case(case)];
    if matches!(id, IdentityId::T3 | IdentityId::T4) && opts.samples > 0 {
        let seed = opts.seed.wrapping_add(n as u64);
        records.push(Record::SpotCheck(spot_check(
            id,
            n,
            qorder,
            seed,
            opts.samples,
        )?));
    }
    Ok(records)
}

fn verify_records(ids: &[IdentityId], opts: &VerifyOpts, x: &XValue) -> RunResult<Vec<Record>> {
    let NRange { lo, hi } = opts.n;
    let qorder = opts.qorder.unwrap_or_else(|| default_qorder(hi));
    let jobs: Vec<(IdentityId, usize)> = ids
        .iter()
        .flat_map(|&id| (lo..=hi).map(move |n| (id, n)))
        .collect();
    let results: Vec<Vec<Record>> = jobs
        .par_iter()
        .map(|&(id, n)| case_records(id, n, qorder, opts, x))
        .collect::<Result<_, _>>()?;
    let mut records = Vec::new();
    for (i, batch) in results.into_iter().enumerate() {
        records.extend(batch);
        let (id, n) = jobs[i];
        if id == IdentityId::T4 && n == hi {
            let detail = rogers_szego_analysis(hi, qorder)?;
            records.push(Record::Analysis(AnalysisRecord {
                pass: detail.engine_h_is_one_plus_x_power && detail.engine_reproduces_closed_form,
                summary: detail.summary(),
                detail,
            }));
        }
    }
    Ok(records)
}

fn sequence_records(
    kind: SequenceKind,
    max: usize,
    qorder: Option<usize>,
    m: Option<i64>,
) -> RunResult<Vec<Record>> {
    let row = |n: usize, m: Option<i64>, value: String| Record::Row(RowRecord { n, m, value });
    let mut records = Vec::new();
    match kind {
        SequenceKind::Partitions => {
            let max = u32::try_from(max).map_err(|_| "--max is too large")?;
            for (n, p) in partition_p(max)?.into_iter().enumerate() {
                records.push(row(n, None, p.to_string()));
            }
        }
        SequenceKind::Lambda => {
            let qorder = qorder.unwrap_or_else(|| default_qorder(max));
            for (n, l) in lambda_sequence(max, qorder)?.into_iter().enumerate() {
                records.push(row(n, None, l.to_string()));
            }
        }
        SequenceKind::Gaussian => {
            let empty = ParamSet::empty();
            for n in 0..=max {
                let ms: Vec<i64> = match m {
                    Some(m) => vec![m],
                    None => (0..=n as i64).collect(),
                };
                for m in ms {
                    let degree = if (0..=n as i64).contains(&m) {
                        m as usize * (n - m as usize)
                    } else {
                        0
                    };
                    let series = gaussian_binomial(&empty, n, m, qorder.unwrap_or(degree));
                    records.push(row(n, Some(m), series.to_string()));
                }
            }
        }
        SequenceKind::RogersSzego => {
            let p = params_x();
            for n in 0..=max {
                // H_n has q-degree floor(n^2/4)
                let exact = (n * n / 4).max(1);
                records.push(row(
                    n,
                    None,
                    rogers_szego(&p, n, qorder.unwrap_or(exact))?.to_string(),
                ));
            }
        }
    }
    Ok(records)
}

fn expand_records(path: &std::path::Path, torder: usize, qorder: usize) -> RunResult<Vec<Record>> {
    let text = std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    let spec = ProductSpecFile::parse(&text).map_err(|e| format!("{}: {e}", path.display()))?;
    let report = verify_spec(&spec, torder, qorder)?;
    let expansion = expand_product(&spec, torder, qorder)?;
    Ok(report
        .rows
        .into_iter()
        .map(|check| {
            let value = expansion
                .coeff(check.n)
                .map(ToString::to_string)
                .unwrap_or_default();
            Record::Coefficient(CoefficientRecord { check, value })
        })
        .collect())
}
