//! `qverify`: circuit equivalence checking and variational redesign.
//!
//! Exit codes for `check`: 0 = Equivalent, 1 = NotEquivalent,
//! 2 = Inconclusive, 3 = any error (parsing, mismatched registers, I/O).
//! Other subcommands exit 0 on success and 3 on error.

mod args;
mod commands;
mod input;
mod manifest;

use clap::error::ErrorKind;
use clap::Parser;
use std::process::ExitCode;

fn main() -> ExitCode {
    let cli = match args::Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) => {
            print!("{e}");
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            eprint!("{e}");
            return ExitCode::from(3);
        }
    };
    match commands::run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(3)
        }
    }
}
