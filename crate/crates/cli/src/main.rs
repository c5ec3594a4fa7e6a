//! `msgkit` command-line tool.
//!
//! Exit status is 0 on success, 1 when a check finds a counterexample and 2
//! on bad input or an exceeded enumeration budget.

mod args;
mod commands;
mod grid;

use std::process::ExitCode;

use clap::Parser;

use args::{Cli, Command};
use commands::Failure;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match &cli.command {
        Command::Rho(a) => commands::rho(a),
        Command::CheckPoint(a) => commands::check_point(a),
        Command::Scan(a) => commands::scan_cmd(a),
        Command::Verify(a) => commands::verify(a),
        Command::NormalForm(a) => commands::normal_form(a),
    };
    match outcome {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Mismatch) => ExitCode::from(1),
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
