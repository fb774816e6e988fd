use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(
    name = "oracle-disc",
    version,
    about = "Deutsch-Jozsa oracle classes as channel discrimination"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Numerical tolerance for state validation and certainty checks.
    #[arg(long, global = true, default_value_t = 1e-9)]
    pub tol: f64,

    /// Seed for randomized states.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,

    /// Write the report here instead of standard output.
    #[arg(long, short = 'o', global = true)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Discriminate the constant and balanced channel outputs for one input state.
    Discriminate(DiscriminateArgs),
    /// Thermal-ensemble error bounds and the qubit count needed for an advantage.
    ThermalBound(ThermalBoundArgs),
    /// Counts over the balanced functions for a pair of arguments.
    Enumerate(EnumerateArgs),
    /// Apply oracles to a state and measure.
    Run(RunArgs),
    /// Success probability of the deterministic classical strategy.
    Classical(ClassicalArgs),
}

#[derive(Debug, Args)]
pub struct DiscriminateArgs {
    /// Number of qubits.
    #[arg(short = 'n', long = "qubits")]
    pub n: u32,

    /// Initial state: uniform, phases:<list|file>, mixed:maximal,
    /// thermal:<alpha list>, file:<json>, random:pure, random:mixed.
    #[arg(long, default_value = "uniform")]
    pub state: String,

    /// Prior probability of the constant class.
    #[arg(long, default_value_t = 0.5)]
    pub p_const: f64,

    /// Also build the balanced channel by enumeration and report the deviation.
    #[arg(long)]
    pub bruteforce: bool,

    /// Thermal states: linearized `I/N - rho_dev` or the exact Boltzmann state.
    #[arg(long, value_enum, default_value_t = ThermalModeArg::Linearized)]
    pub thermal_mode: ThermalModeArg,

    /// Include the full channel output matrices.
    #[arg(long)]
    pub full: bool,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum ThermalModeArg {
    Linearized,
    Exact,
}

#[derive(Debug, Args)]
pub struct ThermalBoundArgs {
    /// Per-qubit polarizations, comma separated.
    #[arg(
        long,
        value_delimiter = ',',
        conflicts_with = "alpha1",
        required_unless_present = "alpha1"
    )]
    pub alphas: Option<Vec<f64>>,

    /// Largest polarization; every qubit is given this value.
    #[arg(long)]
    pub alpha1: Option<f64>,

    /// Number of qubits for --alpha1.
    #[arg(short = 'n', long = "qubits", default_value_t = 1)]
    pub n: usize,

    /// Report only the minimum qubit count for an advantage.
    #[arg(long, requires = "alpha1")]
    pub min_qubits: bool,

    /// Sweep the qubit count over start:end:step.
    #[arg(long, requires = "alpha1", conflicts_with = "min_qubits")]
    pub sweep: Option<String>,

    /// Emit the sweep as CSV.
    #[arg(long, requires = "sweep")]
    pub csv: bool,
}

#[derive(Debug, Args)]
pub struct EnumerateArgs {
    /// Number of qubits.
    #[arg(short = 'n', long = "qubits")]
    pub n: u32,

    /// Arguments x and y for the pair sum.
    #[arg(long, num_args = 2, value_names = ["X", "Y"])]
    pub pair: Option<Vec<usize>>,

    /// Count balanced functions by the values they take on the pair
    /// (0 and 1 unless --pair is given).
    #[arg(long)]
    pub table: bool,
}

#[derive(Debug, Args)]
pub struct RunArgs {
    /// Number of qubits.
    #[arg(short = 'n', long = "qubits")]
    pub n: u32,

    /// Initial state, as for discriminate.
    #[arg(long, default_value = "uniform")]
    pub state: String,

    /// Truth table in hex, bit x = f(x).
    #[arg(
        short = 'f',
        long = "function",
        conflicts_with = "all",
        required_unless_present = "all"
    )]
    pub function: Option<String>,

    /// Every constant and balanced function.
    #[arg(long)]
    pub all: bool,

    /// Thermal states: linearized or exact.
    #[arg(long, value_enum, default_value_t = ThermalModeArg::Linearized)]
    pub thermal_mode: ThermalModeArg,
}

#[derive(Debug, Args)]
pub struct ClassicalArgs {
    /// Number of qubits.
    #[arg(short = 'n', long = "qubits")]
    pub n: u32,

    /// Number of queries; all k up to N/2 + 1 when omitted.
    #[arg(long)]
    pub k: Option<u64>,
}
