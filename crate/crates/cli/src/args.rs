use clap::{Args, Parser, Subcommand, ValueEnum};
use std::path::PathBuf;

/// Default seed: `QVERIFY_SEED` when set, otherwise 7.
pub fn default_seed() -> u64 {
    std::env::var("QVERIFY_SEED").ok().and_then(|s| s.parse().ok()).unwrap_or(7)
}

#[derive(Debug, Parser)]
#[command(
    name = "qverify",
    version,
    about = "Quantum circuit equivalence checking and variational redesign"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check whether two circuits realize the same unitary (up to global phase).
    Check(CheckArgs),
    /// Train the discriminator's error-compensation angles on zero states.
    TrainDisc(TrainDiscArgs),
    /// Variationally fit an ansatz circuit to a reference circuit.
    Reconstruct(ReconstructArgs),
    /// Sweep a distortion knob and tabulate mean failure probabilities.
    Sweep(SweepArgs),
    /// Run the insert-identity / insert-Rx(1.23) benchmark over a directory.
    Bench(BenchArgs),
    /// Write a perturbed variant of a QASM file.
    Perturb(PerturbArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    Analytic,
    Sampled,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FreeSymbolsArg {
    Reject,
    Shared,
    All,
}

#[derive(Debug, Args)]
pub struct CheckArgs {
    /// Reference circuit: a QASM path or `builtin:<name>`.
    pub reference: String,
    /// Candidate circuit: a QASM path or `builtin:<name>`.
    pub generator: String,
    /// Random input states.
    #[arg(long, default_value_t = 100)]
    pub states: usize,
    #[arg(long, value_enum, default_value_t = ModeArg::Analytic)]
    pub mode: ModeArg,
    /// Shots per state in sampled mode.
    #[arg(long, default_value_t = 1000)]
    pub shots: u64,
    #[arg(long, default_value_t = default_seed())]
    pub seed: u64,
    /// Standard deviation of the coherent CZ error model (0 = no noise).
    #[arg(long, default_value_t = 0.0)]
    pub noise_sigma: f64,
    /// JSON file with trained discriminator angles `{"thetas": [...]}`.
    #[arg(long)]
    pub theta_file: Option<PathBuf>,
    /// Bind a symbol before checking, e.g. `--bind delta=0`.
    #[arg(long, value_name = "NAME=VALUE")]
    pub bind: Vec<String>,
    /// Free-symbol handling: reject, shared (sample symbols common to both
    /// circuits), or all (sample every free symbol).
    #[arg(long, value_enum, default_value_t = FreeSymbolsArg::Shared)]
    pub free_symbols: FreeSymbolsArg,
    /// Write the full equivalence report as JSON.
    #[arg(long)]
    pub json: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct TrainDiscArgs {
    /// Number of qubit pairs (the discriminator spans twice this).
    #[arg(long, default_value_t = 2)]
    pub pairs: usize,
    #[arg(long, default_value_t = 0.02)]
    pub noise_sigma: f64,
    #[arg(long, default_value_t = 500)]
    pub steps: u64,
    #[arg(long, default_value_t = 0.1)]
    pub lr: f64,
    #[arg(long, default_value_t = default_seed())]
    pub seed: u64,
    /// Write the training log as JSON.
    #[arg(long)]
    pub log: Option<PathBuf>,
    /// Write the (step, p_failure) trace as CSV.
    #[arg(long)]
    pub csv: Option<PathBuf>,
    /// Write the trained angles as JSON (loadable via `check --theta-file`).
    #[arg(long)]
    pub theta_out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct ReconstructArgs {
    /// Reference circuit: a QASM path or `builtin:<name>`.
    pub reference: String,
    /// Ansatz to train: `builtin:<name>` or a builtin name.
    #[arg(long)]
    pub ansatz: String,
    #[arg(long, default_value_t = 500)]
    pub steps: u64,
    #[arg(long, default_value_t = 0.1)]
    pub lr: f64,
    #[arg(long, default_value_t = 4)]
    pub batch: usize,
    #[arg(long, default_value_t = default_seed())]
    pub seed: u64,
    /// Bind a symbol of either circuit beforehand, e.g. `--bind delta=0`.
    #[arg(long, value_name = "NAME=VALUE")]
    pub bind: Vec<String>,
    /// States for the post-training equivalence check (0 skips the check).
    #[arg(long, default_value_t = 100)]
    pub check_states: usize,
    #[arg(long)]
    pub log: Option<PathBuf>,
    #[arg(long)]
    pub csv: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    /// Circuit pair: `flipper` or `cry`.
    #[arg(long)]
    pub pair: String,
    /// Grid as `start:end:points`, end inclusive (radians).
    #[arg(long, default_value = "0:6.283185307179586:17")]
    pub delta_grid: String,
    #[arg(long, default_value_t = 100)]
    pub states: usize,
    /// Random draws of the shared symbols per state (cry pair).
    #[arg(long, default_value_t = 1)]
    pub betas: usize,
    #[arg(long, default_value_t = default_seed())]
    pub seed: u64,
    #[arg(long)]
    pub csv: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct BenchArgs {
    /// Directory of QASM files.
    pub dir: PathBuf,
    #[arg(long, default_value_t = 100)]
    pub states: usize,
    #[arg(long, default_value_t = default_seed())]
    pub seed: u64,
    #[arg(long)]
    pub csv: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct PerturbArgs {
    /// Input QASM file.
    pub input: PathBuf,
    /// What to insert: `id`, a bare gate (`x`, `h`, …), or `rx:1.23` style.
    #[arg(long)]
    pub insert: String,
    /// Where: `random:<seed>` or `<gate_index>:<qubit>`.
    #[arg(long)]
    pub position: String,
    /// Output QASM path.
    #[arg(long)]
    pub out: PathBuf,
}
