use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use qrecur::identities::IdentityId;

#[derive(Debug, Parser)]
#[command(
    name = "qrecur",
    version,
    about = "Exact truncated q-series identity checker"
)]
pub struct Cli {
    /// Output as human-readable lines or one JSON object per line.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    pub format: Format,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Structured,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check one identity over a range of n.
    Verify {
        #[arg(value_parser = parse_identity)]
        id: IdentityId,
        #[command(flatten)]
        opts: VerifyOpts,
        /// Value of x for T4: a rational or `symbolic`.
        #[arg(long, default_value = "1")]
        x: String,
    },
    /// Check every identity over a range of n.
    VerifyAll {
        #[command(flatten)]
        opts: VerifyOpts,
    },
    /// Print a table of sequence values.
    Sequence {
        #[arg(value_enum)]
        kind: SequenceKind,
        /// Largest n to print.
        #[arg(long)]
        max: usize,
        /// Truncation order in q. Polynomial tables are exact when omitted.
        #[arg(long)]
        qorder: Option<usize>,
        /// Lower index for gaussian; all 0 <= m <= n when omitted.
        #[arg(long)]
        m: Option<i64>,
    },
    /// Expand a product spec and check the recurrence against direct expansion.
    Expand {
        #[arg(long)]
        spec: PathBuf,
        #[arg(long)]
        torder: usize,
        #[arg(long, value_parser = parse_positive)]
        qorder: usize,
    },
}

#[derive(Debug, clap::Args)]
pub struct VerifyOpts {
    /// Inclusive range `lo..hi`, or a single n.
    #[arg(long, value_parser = parse_range)]
    pub n: NRange,
    /// Truncation order in q; defaults to max(40, n(n+1)/2 + 6n) at the top of the range.
    #[arg(long, value_parser = parse_positive)]
    pub qorder: Option<usize>,
    /// Seed for the random specializations used by T3 and T4.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Random specializations per case for T3 and T4.
    #[arg(long, default_value_t = 20)]
    pub samples: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SequenceKind {
    Partitions,
    Lambda,
    Gaussian,
    RogersSzego,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct NRange {
    pub lo: usize,
    pub hi: usize,
}

fn parse_identity(s: &str) -> Result<IdentityId, String> {
    s.parse()
        .map_err(|e: qrecur::identities::IdentityError| e.to_string())
}

fn parse_positive(s: &str) -> Result<usize, String> {
    match s.parse::<usize>() {
        Ok(0) => Err("must be at least 1".into()),
        Ok(n) => Ok(n),
        Err(_) => Err(format!("`{s}` is not a positive integer")),
    }
}

fn parse_range(s: &str) -> Result<NRange, String> {
    let parse = |t: &str| {
        t.trim()
            .parse::<usize>()
            .map_err(|_| format!("`{t}` is not a nonnegative integer"))
    };
    let (lo, hi) = match s.split_once("..") {
        Some((lo, hi)) => (parse(lo)?, parse(hi.strip_prefix('=').unwrap_or(hi))?),
        None => {
            let n = parse(s)?;
            (n, n)
        }
    };
    if lo == 0 {
        return Err("identities start at n = 1".into());
    }
    if lo > hi {
        return Err(format!("empty range {lo}..{hi}"));
    }
    Ok(NRange { lo, hi })
}
