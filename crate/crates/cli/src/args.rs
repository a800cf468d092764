use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

/// Exact Riccati-Schrodinger functions and spectra of translationally
/// shape-invariant potentials.
#[derive(Debug, Parser)]
#[command(name = "tsip", version)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print the family catalog.
    List(OutputArgs),
    /// Exact energies E_0..E_n.
    Spectrum(LevelArgs),
    /// The RS function w_n as exact numerator and denominator coefficients.
    Rs(LevelArgs),
    /// Sample the normalized ψ_n to CSV and write its closed-form descriptor.
    Wavefunction(WavefunctionArgs),
    /// Solve the ground-state ansatz of a family or of raw potential coefficients.
    Ground(GroundArgs),
    /// Run the verification suite and emit reports; exits 1 if any check fails.
    Verify(VerifyArgs),
    /// Barclay-Maxwell class of a family instance.
    Classify(ClassifyArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum BranchArg {
    Plus,
    Minus,
}

#[derive(Debug, Args)]
pub struct OutputArgs {
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Output file; standard output when omitted.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct InstanceArgs {
    /// Family name, as printed by `tsip list`.
    #[arg(long)]
    pub family: String,
    /// `name=value` with the value as `p/q`, an integer or a terminating decimal.
    #[arg(long = "param", value_name = "NAME=VALUE")]
    pub params: Vec<String>,
}

#[derive(Debug, Args)]
pub struct LevelArgs {
    #[command(flatten)]
    pub instance: InstanceArgs,
    /// Level index (the highest level, for `spectrum`).
    #[arg(long)]
    pub n: usize,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct WavefunctionArgs {
    #[command(flatten)]
    pub instance: InstanceArgs,
    #[arg(long)]
    pub n: usize,
    /// Number of samples.
    #[arg(long, default_value_t = 401)]
    pub points: usize,
    /// Sampling interval; defaults to the window where ψ_n is not negligible.
    #[arg(long, allow_hyphen_values = true)]
    pub x_min: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub x_max: Option<f64>,
    /// Output directory.
    #[arg(long, env = "TSIP_OUT_DIR", default_value = ".")]
    pub out: PathBuf,
}

#[derive(Debug, Args)]
pub struct GroundArgs {
    #[arg(long, required_unless_present = "raw", conflicts_with = "raw")]
    pub family: Option<String>,
    /// Family parameters, or with `--raw` the coefficients lambda2, lambda1,
    /// lambda0, mu2 and alpha of `V = λ2·y² + λ1·y + λ0 + μ2/y²`, `dy/dx = α ± α·y²`.
    #[arg(long = "param", value_name = "NAME=VALUE")]
    pub params: Vec<String>,
    #[arg(long)]
    pub raw: bool,
    /// Sign in `dy/dx = α ± α·y²` for `--raw`.
    #[arg(long, value_enum, default_value_t = BranchArg::Plus)]
    pub branch: BranchArg,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct GridArgs {
    /// Numerov grid points.
    #[arg(long)]
    pub points: Option<usize>,
    #[arg(long, allow_hyphen_values = true)]
    pub x_min: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub x_max: Option<f64>,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// Verify the catalog example of every family.
    #[arg(long, conflicts_with_all = ["family", "params"])]
    pub all: bool,
    #[arg(long, required_unless_present = "all")]
    pub family: Option<String>,
    #[arg(long = "param", value_name = "NAME=VALUE")]
    pub params: Vec<String>,
    /// Highest level checked, clamped to the last bound state.
    #[arg(long, default_value_t = 4)]
    pub n: usize,
    #[command(flatten)]
    pub grid: GridArgs,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct ClassifyArgs {
    #[command(flatten)]
    pub instance: InstanceArgs,
    #[command(flatten)]
    pub output: OutputArgs,
}
