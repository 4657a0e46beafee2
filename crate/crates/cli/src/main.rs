//! `qrecur`: verify q-series convolution identities, print coefficient
//! tables and expand product specs from the command line.

mod args;
mod report;
mod run;

use std::process::ExitCode;

use clap::Parser;

fn main() -> ExitCode {
    let cli = args::Cli::parse();
    let mut out = std::io::stdout().lock();
    match run::run(&cli, &mut out) {
        Ok(status) => status.into(),
        Err(err) => {
            eprintln!("error: {err}");
            run::Status::Usage.into()
        }
    }
}
