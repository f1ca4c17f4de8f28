//! `prodlabel`: label, verify, query oracles and sweep graph corpora.
//!
//! Exit codes: 0 ok, 1 requirement not met, 2 usage or precondition,
//! 3 construction anomaly, 4 search budget exhausted.

mod error;
mod input;
mod label;
mod oracle;
mod report;
mod sweep;
mod verify;

use std::process::ExitCode;

use clap::{Parser, Subcommand};

use error::EXIT_USAGE;

#[derive(Debug, Parser)]
#[command(name = "prodlabel", version, about = "Product-distinguishing edge labellings")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Run a construction and report the labelling with recomputed verdicts.
    Label(label::LabelArgs),
    /// Check a labelling against a requirement.
    Verify(verify::VerifyArgs),
    /// Exhaustive search for a graph parameter or witness.
    Oracle(oracle::OracleArgs),
    /// Run one check over a graph6 stream or the built-in enumerator.
    Sweep(sweep::SweepArgs),
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_USAGE } else { 0 });
        }
    };
    let result = match cli.command {
        Command::Label(a) => label::run(a),
        Command::Verify(a) => verify::run(a),
        Command::Oracle(a) => oracle::run(a),
        Command::Sweep(a) => sweep::run(a),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.code)
        }
    }
}
