// `!(x >= 0.0)` style guards are used on purpose so that NaN is rejected.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

mod args;
mod experiments;
mod output;

use args::{Cli, Command, Experiment};
use clap::Parser;
use std::process::ExitCode;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Run {
            experiment,
            overrides,
        } => experiments::run(experiment, overrides, &cli.out),
        Command::Ensemble { overrides } => {
            experiments::run(Experiment::Ensemble, overrides, &cli.out)
        }
        Command::Enumerate { overrides } => {
            experiments::run(Experiment::Enumerate, overrides, &cli.out)
        }
        Command::Accept => experiments::run(Experiment::Acceptance, Default::default(), &cli.out),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("wormlab: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
