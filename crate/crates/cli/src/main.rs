//! `noisyvqe`: single runs, study sweeps, randomized-compiling averages,
//! exact references and circuit dumps for noisy VQE / ADAPT-VQE.

mod commands;
mod record;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use noisyvqe::circuit::AnsatzFamily;
use noisyvqe::optim::OptimizerKind;
use noisyvqe::vqe::GradientNorm;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    /// Bad flags or invalid input files; exit code 2.
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Runtime(String),
    #[error(transparent)]
    Core(#[from] noisyvqe::Error),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
}

impl CliError {
    fn is_broken_pipe(&self) -> bool {
        let io = match self {
            CliError::Io(e) => Some(e),
            CliError::Csv(e) => match e.kind() {
                csv::ErrorKind::Io(e) => Some(e),
                _ => None,
            },
            _ => None,
        };
        io.is_some_and(|e| e.kind() == std::io::ErrorKind::BrokenPipe)
    }

    fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 2,
            _ => 1,
        }
    }
}

#[derive(Parser, Debug)]
#[command(name = "noisyvqe", version, about = "Noisy VQE / ADAPT-VQE density-matrix lab")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Optimize a fixed ansatz (UCCD or singlet UCCSD).
    Vqe(VqeArgs),
    /// Grow an ansatz from the singlet pool with ADAPT-VQE.
    Adapt(AdaptArgs),
    /// Run every cell of a sweep manifest.
    Sweep(SweepArgs),
    /// Exact spectrum of a Hamiltonian.
    Exact(ExactArgs),
    /// Dump a compiled circuit in text form.
    Compile(CompileArgs),
}

#[derive(Args, Debug, Clone)]
#[group(required = true, multiple = false)]
pub struct HamiltonianSource {
    /// Use the bundled NaH Hamiltonian (r = 1.91438 A, STO-3G).
    #[arg(long)]
    pub bundled: bool,
    /// Hamiltonian text file.
    #[arg(long, value_name = "PATH")]
    pub hamiltonian: Option<PathBuf>,
}

#[derive(Args, Debug, Clone)]
pub struct HamiltonianArgs {
    #[command(flatten)]
    pub source: HamiltonianSource,
    /// Bond length recorded in the output, overriding the file header.
    #[arg(long, value_name = "ANGSTROM")]
    pub bond_length: Option<f64>,
}

#[derive(Args, Debug, Clone)]
pub struct NoiseArgs {
    /// Single-qubit depolarizing probability; CNOTs use 10 * p1.
    #[arg(long, default_value_t = 0.0)]
    pub p1: f64,
    /// Apply noise after Z and RZ gates as well.
    #[arg(long)]
    pub noisy_diagonal: bool,
}

#[derive(Args, Debug, Clone)]
pub struct OptimizerArgs {
    #[arg(long, default_value = "cobyla", value_parser = parse_optimizer)]
    pub optimizer: OptimizerKind,
    /// Defaults to 1000 (cobyla) or 500000 (lbfgs).
    #[arg(long)]
    pub max_iterations: Option<usize>,
    /// Defaults to 1e-6 (cobyla) or 1e-4 (lbfgs).
    #[arg(long)]
    pub tolerance: Option<f64>,
    /// Central-difference step for lbfgs, radians.
    #[arg(long, default_value_t = 1e-4)]
    pub fd_step: f64,
    /// Comma-separated starting parameters; zeros by default.
    #[arg(long, value_delimiter = ',', allow_negative_numbers = true)]
    pub initial_point: Option<Vec<f64>>,
}

#[derive(Args, Debug, Clone)]
pub struct AdaptOptions {
    /// Stop once the pool gradient norm falls below this.
    #[arg(long, default_value_t = 1e-2)]
    pub grad_threshold: f64,
    #[arg(long, default_value_t = 20)]
    pub max_depth: usize,
    /// Gradient norm: l2 or max.
    #[arg(long, default_value = "l2", value_parser = parse_norm)]
    pub norm: GradientNorm,
    /// Select operators from gradients of the noisy state instead of the
    /// noiseless one.
    #[arg(long)]
    pub noisy_gradients: bool,
    #[arg(long, default_value_t = 2)]
    pub electrons: usize,
}

#[derive(Args, Debug)]
pub struct VqeArgs {
    #[command(flatten)]
    pub hamiltonian: HamiltonianArgs,
    /// uccd or uccsd-singlet.
    #[arg(long, default_value = "uccd", value_parser = parse_fixed_ansatz)]
    pub ansatz: AnsatzFamily,
    #[command(flatten)]
    pub noise: NoiseArgs,
    #[command(flatten)]
    pub optimizer: OptimizerArgs,
    /// Base seed for randomized compiling; run k uses seed + k.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Average over N randomized compilations (10 when given without a value).
    #[arg(long, value_name = "N", num_args = 0..=1, default_value_t = 0, default_missing_value = "10")]
    pub rc: usize,
    /// Write CSV here instead of stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct AdaptArgs {
    #[command(flatten)]
    pub hamiltonian: HamiltonianArgs,
    #[command(flatten)]
    pub noise: NoiseArgs,
    #[command(flatten)]
    pub optimizer: OptimizerArgs,
    #[command(flatten)]
    pub adapt: AdaptOptions,
    /// Recorded in the output; ADAPT runs are deterministic.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct SweepArgs {
    /// Sweep manifest.
    pub manifest: PathBuf,
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Worker threads; all cores by default.
    #[arg(long, env = "NOISYVQE_JOBS")]
    pub jobs: Option<usize>,
    /// Also write a gnuplot script for the CSV (requires --out).
    #[arg(long, value_name = "PATH")]
    pub plot: Option<PathBuf>,
    /// Apply noise after Z and RZ gates as well.
    #[arg(long)]
    pub noisy_diagonal: bool,
    #[command(flatten)]
    pub adapt: AdaptOptions,
}

#[derive(Args, Debug)]
pub struct ExactArgs {
    #[command(flatten)]
    pub hamiltonian: HamiltonianArgs,
    /// Also print the ground-state vector.
    #[arg(long)]
    pub state: bool,
}

#[derive(Args, Debug)]
pub struct CompileArgs {
    /// uccd, uccsd-singlet or adapt.
    #[arg(long, default_value = "uccd", value_parser = parse_ansatz)]
    pub ansatz: AnsatzFamily,
    /// Comma-separated values to bind; the symbolic circuit otherwise.
    #[arg(long, value_delimiter = ',', allow_negative_numbers = true)]
    pub params: Option<Vec<f64>>,
    /// Randomized-compiling seed (needs --params).
    #[arg(long)]
    pub rc_seed: Option<u64>,
    /// Pool identifiers for an ADAPT circuit, e.g. "D(0,0->1,1)" (repeatable).
    #[arg(long = "generator")]
    pub generators: Vec<String>,
    #[arg(long, default_value_t = 4)]
    pub qubits: usize,
    #[arg(long, default_value_t = 2)]
    pub electrons: usize,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

fn parse_optimizer(s: &str) -> Result<OptimizerKind, String> {
    s.parse().map_err(|e: noisyvqe::Error| e.to_string())
}

fn parse_norm(s: &str) -> Result<GradientNorm, String> {
    s.parse().map_err(|e: noisyvqe::Error| e.to_string())
}

fn parse_ansatz(s: &str) -> Result<AnsatzFamily, String> {
    s.parse().map_err(|e: noisyvqe::Error| e.to_string())
}

fn parse_fixed_ansatz(s: &str) -> Result<AnsatzFamily, String> {
    match parse_ansatz(s)? {
        AnsatzFamily::Adapt => Err("use the adapt subcommand for ADAPT-VQE".into()),
        f => Ok(f),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(2) } else { ExitCode::SUCCESS };
        }
    };
    let outcome = match cli.command {
        Command::Vqe(a) => commands::vqe(&a),
        Command::Adapt(a) => commands::adapt(&a),
        Command::Sweep(a) => commands::sweep(&a),
        Command::Exact(a) => commands::exact(&a),
        Command::Compile(a) => commands::compile(&a),
    };
    match outcome {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) if e.is_broken_pipe() => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
