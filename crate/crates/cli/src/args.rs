use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Deserialize;

#[derive(Debug, Parser)]
#[command(
    name = "legdet",
    version,
    about = "Verify Legendre-symbol determinant identities exactly"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Compute determinants and compare them with their closed forms.
    Verify(VerifyArgs),
    /// Tabulate fundamental units, class numbers and unit-power coordinates.
    Constants(ConstantsArgs),
    /// Compare a canonical verify report against a stored golden file.
    Golden(GoldenArgs),
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, ValueEnum, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Json,
    Csv,
}

/// Flags of `verify`. The same fields are read from a golden config file.
#[derive(Debug, Clone, Args, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VerifyArgs {
    /// Comma-separated family tags, or `all`.
    #[arg(long, default_value = "all")]
    #[serde(default = "all_families")]
    pub family: String,

    /// Inclusive prime range `lo:hi`.
    #[arg(long)]
    pub primes: String,

    /// Keep only primes in this class mod 4.
    #[arg(long)]
    #[serde(default)]
    pub mod4: Option<u8>,

    /// Primes p ≡ 1 (mod 4) for the cyclotomic checks, comma-separated.
    /// Without it the checks run only for `--family all`, on primes up to 61.
    #[arg(long)]
    #[serde(default)]
    pub decomp_primes: Option<String>,

    /// Values of x for the decomposition checks.
    #[arg(long, default_value = DEFAULT_X_SAMPLES, allow_hyphen_values = true)]
    #[serde(default = "default_x_samples")]
    pub x_samples: String,

    /// Worker threads; defaults to the number of logical cores.
    #[arg(long)]
    #[serde(skip)]
    pub jobs: Option<usize>,

    #[arg(long, value_enum, default_value_t = Format::Json)]
    #[serde(default)]
    pub format: Format,

    /// Write the report here instead of stdout.
    #[arg(long)]
    #[serde(skip)]
    pub out: Option<PathBuf>,

    /// Zero all timing fields so reports are reproducible byte for byte.
    #[arg(long)]
    #[serde(skip)]
    pub canonical: bool,
}

pub const DEFAULT_X_SAMPLES: &str = "0,1,-1,-3/2";

fn all_families() -> String {
    "all".into()
}

fn default_x_samples() -> String {
    DEFAULT_X_SAMPLES.into()
}

#[derive(Debug, Clone, Args)]
pub struct ConstantsArgs {
    /// Inclusive prime range `lo:hi`.
    #[arg(long)]
    pub primes: String,

    #[arg(long)]
    pub mod4: Option<u8>,

    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,

    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct GoldenArgs {
    /// JSON file holding `verify` options (family, primes, mod4,
    /// decomp_primes, x_samples).
    #[arg(long)]
    pub config: PathBuf,

    #[arg(long)]
    pub golden: PathBuf,

    /// Overwrite the golden file with the fresh report.
    #[arg(long)]
    pub bless: bool,

    #[arg(long)]
    pub jobs: Option<usize>,
}
