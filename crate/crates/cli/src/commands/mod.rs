mod bench;
mod check;
mod perturb;
mod reconstruct;
mod sweep;
mod train_disc;

use crate::args::{Cli, Command};
use anyhow::Result;

/// Runs the selected subcommand and returns the process exit code.
pub fn run(cli: Cli) -> Result<u8> {
    match cli.command {
        Command::Check(args) => check::run(args),
        Command::TrainDisc(args) => train_disc::run(args),
        Command::Reconstruct(args) => reconstruct::run(args),
        Command::Sweep(args) => sweep::run(args),
        Command::Bench(args) => bench::run(args),
        Command::Perturb(args) => perturb::run(args),
    }
}
