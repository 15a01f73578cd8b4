//! `pagelab` command-line interface.
//!
//! Exit codes: 0 success, 1 verification failure or runtime error,
//! 2 usage error, 3 resource guard.

mod commands;
mod input;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(name = "pagelab", version, about = "Average subsystem entropy of random pure states")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Estimate mean subsystem entropy and purity for every subsystem size.
    PageCurve(CurveArgs),
    /// Compare sampled subsystem purity with (d_A + d_B)/(d_A d_B + 1).
    VerifyLubkin(LubkinArgs),
    /// Split Σ⟨g⟩² into A-local and global Pauli strings.
    PauliBudget(BudgetArgs),
    /// Schmidt coefficients of a state read from an amplitude file.
    Schmidt(SchmidtArgs),
    /// Page curve of marginal Shannon entropies for flat random distributions.
    Classical(CurveArgs),
    /// Spread of the half-cut purity as the register grows.
    Concentration(ConcentrationArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Json,
    Svg,
}

impl Format {
    fn extension(self) -> &'static str {
        match self {
            Format::Csv => "csv",
            Format::Json => "json",
            Format::Svg => "svg",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Base {
    #[value(name = "2")]
    Two,
    #[value(name = "e")]
    E,
}

impl From<Base> for pagelab::entropy::LogBase {
    fn from(b: Base) -> Self {
        match b {
            Base::Two => pagelab::entropy::LogBase::Two,
            Base::E => pagelab::entropy::LogBase::E,
        }
    }
}

#[derive(Debug, Args)]
struct Common {
    /// Random seed.
    #[arg(long, env = "PAGELAB_SEED", default_value_t = 0)]
    seed: u64,
    /// Worker threads (0 = all cores). Never changes the output.
    #[arg(long, env = "PAGELAB_WORKERS", default_value_t = 0)]
    workers: usize,
    /// Output path; stdout when omitted.
    #[arg(long, env = "PAGELAB_OUTPUT")]
    output: Option<PathBuf>,
    /// Memory budget, in bytes or with a K/M/G suffix (binary units).
    #[arg(long, env = "PAGELAB_MEMORY_LIMIT", default_value = "2G", value_parser = parse_bytes)]
    memory_limit: u64,
}

#[derive(Debug, Args)]
struct CurveArgs {
    /// Number of qubits (bits for the classical curve).
    #[arg(long, env = "PAGELAB_QUBITS")]
    qubits: usize,
    /// Rényi order; 1 selects von Neumann.
    #[arg(long, env = "PAGELAB_Q", default_value_t = 1.0)]
    q: f64,
    /// Logarithm base.
    #[arg(long, env = "PAGELAB_BASE", value_enum, default_value = "2")]
    base: Base,
    /// Samples per subsystem size.
    #[arg(long, env = "PAGELAB_SAMPLES", default_value_t = 2000)]
    samples: usize,
    /// Output formats; several may be given (comma separated).
    #[arg(long, env = "PAGELAB_OUT", value_enum, value_delimiter = ',', default_value = "csv")]
    out: Vec<Format>,
    /// Draw subsystem A as a random subset for every sample.
    #[arg(long)]
    random_subsets: bool,
    #[command(flatten)]
    common: Common,
}

#[derive(Debug, Args)]
struct LubkinArgs {
    #[arg(long, env = "PAGELAB_QUBITS")]
    qubits: usize,
    #[arg(long, env = "PAGELAB_SAMPLES", default_value_t = 2000)]
    samples: usize,
    /// Acceptance band in standard errors.
    #[arg(long, default_value_t = 3.0)]
    sigmas: f64,
    #[command(flatten)]
    common: Common,
}

#[derive(Debug, Args)]
struct PartitionArgs {
    /// Subsystem A = the first NA qubits.
    #[arg(long, env = "PAGELAB_NA", conflicts_with = "partition")]
    na: Option<usize>,
    /// Subsystem A as a comma-separated list of qubit indices.
    #[arg(long, env = "PAGELAB_PARTITION", value_delimiter = ',')]
    partition: Option<Vec<usize>>,
}

#[derive(Debug, Args)]
struct BudgetArgs {
    /// Number of qubits; inferred from --state or --basis when omitted.
    #[arg(long, env = "PAGELAB_QUBITS")]
    qubits: Option<usize>,
    #[command(flatten)]
    partition: PartitionArgs,
    /// Number of Haar-random states to report.
    #[arg(long, env = "PAGELAB_SAMPLES", default_value_t = 5)]
    samples: usize,
    /// Computational basis states as bit strings (qubit 0 first).
    #[arg(long, value_delimiter = ',', conflicts_with = "state")]
    basis: Vec<String>,
    /// Amplitude file.
    #[arg(long)]
    state: Option<PathBuf>,
    /// Strings drawn per estimate when the register is too large to enumerate.
    #[arg(long, default_value_t = 4000)]
    strings: usize,
    #[command(flatten)]
    common: Common,
}

#[derive(Debug, Args)]
struct SchmidtArgs {
    /// Amplitude file.
    #[arg(long)]
    state: PathBuf,
    #[command(flatten)]
    partition: PartitionArgs,
    #[arg(long, env = "PAGELAB_Q", default_value_t = 1.0)]
    q: f64,
    #[arg(long, env = "PAGELAB_BASE", value_enum, default_value = "2")]
    base: Base,
    #[command(flatten)]
    common: Common,
}

#[derive(Debug, Args)]
struct ConcentrationArgs {
    /// Register sizes, comma separated.
    #[arg(long, value_delimiter = ',', default_value = "2,4,6,8")]
    sizes: Vec<usize>,
    #[arg(long, env = "PAGELAB_SAMPLES", default_value_t = 2000)]
    samples: usize,
    #[command(flatten)]
    common: Common,
}

fn parse_bytes(s: &str) -> Result<u64, String> {
    let s = s.trim();
    let (digits, mult) = match s.chars().last() {
        Some('K' | 'k') => (&s[..s.len() - 1], 1u64 << 10),
        Some('M' | 'm') => (&s[..s.len() - 1], 1 << 20),
        Some('G' | 'g') => (&s[..s.len() - 1], 1 << 30),
        Some('T' | 't') => (&s[..s.len() - 1], 1 << 40),
        _ => (s, 1),
    };
    digits
        .parse::<u64>()
        .ok()
        .and_then(|v| v.checked_mul(mult))
        .ok_or_else(|| format!("invalid byte count '{s}'"))
}

/// How a command ended, mapped onto the process exit code.
#[derive(Debug)]
pub enum Failure {
    Usage(String),
    Verification(String),
    Resource(String),
    Runtime(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Verification(_) | Failure::Runtime(_) => 1,
            Failure::Usage(_) => 2,
            Failure::Resource(_) => 3,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Usage(m) | Failure::Verification(m) | Failure::Resource(m) | Failure::Runtime(m) => m,
        }
    }
}

impl From<pagelab::Error> for Failure {
    fn from(e: pagelab::Error) -> Self {
        use pagelab::Error as E;
        match e {
            E::MemoryGuard { .. } => Failure::Resource(e.to_string()),
            E::Io(_) | E::Json(_) | E::Numerical(_) | E::DegenerateSample => Failure::Runtime(e.to_string()),
            _ => Failure::Usage(e.to_string()),
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::PageCurve(args) => commands::page_curve(args, pagelab::lab::Ensemble::Quantum),
        Command::Classical(args) => commands::page_curve(args, pagelab::lab::Ensemble::Classical),
        Command::VerifyLubkin(args) => commands::verify_lubkin(args),
        Command::PauliBudget(args) => commands::pauli_budget(args),
        Command::Schmidt(args) => commands::schmidt(args),
        Command::Concentration(args) => commands::concentration(args),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("pagelab: {}", f.message());
            ExitCode::from(f.code())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use clap::CommandFactory;

    #[test]
    fn cli_is_well_formed() {
        Cli::command().debug_assert();
    }

    #[test]
    fn byte_suffixes() {
        assert_eq!(parse_bytes("2G").unwrap(), 2 << 30);
        assert_eq!(parse_bytes("512k").unwrap(), 512 << 10);
        assert_eq!(parse_bytes("100").unwrap(), 100);
        assert!(parse_bytes("lots").is_err());
        assert!(parse_bytes("99999999999T").is_err());
    }
}
