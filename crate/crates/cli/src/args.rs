use std::path::PathBuf;

use clap::builder::RangedU64ValueParser;
use clap::{Args, Parser, Subcommand, ValueEnum};
use dhcube_core::verify::Suite;

/// Largest dimension for interference and sorkin runs without `--force-large`.
pub const MAX_INTERFERENCE_DIM: usize = 8;
/// Largest dimension for span sampling without `--force-large`.
pub const MAX_SPAN_DIM: usize = 4;
/// Largest dimension for verification suites without `--force-large`.
pub const MAX_VERIFY_DIM: usize = 5;

#[derive(Debug, Parser)]
#[command(name = "dhcube", version, about = "Density hypercube interference runs, orbit census and property suites")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Slit probabilities, Sorkin terms and shape counts for U = {1..k}
    Interference(OrderArgs),
    /// Inclusion-exclusion decompositions of P[+|{1..k}], term by term
    Sorkin(OrderArgs),
    /// Component classes, symmetry orbits, parameter count and span rank
    Census(CensusArgs),
    /// Run a property suite on sampled states and maps
    Verify(VerifyArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SuiteName {
    Causality,
    Classical,
    Quantum,
    Idempotence,
    Symmetry,
    Extension,
    All,
}

impl From<SuiteName> for Suite {
    fn from(s: SuiteName) -> Self {
        match s {
            SuiteName::Causality => Suite::Causality,
            SuiteName::Classical => Suite::Classical,
            SuiteName::Quantum => Suite::Quantum,
            SuiteName::Idempotence => Suite::Idempotence,
            SuiteName::Symmetry => Suite::Symmetry,
            SuiteName::Extension => Suite::Extension,
            SuiteName::All => Suite::All,
        }
    }
}

#[derive(Debug, Clone, Args)]
pub struct Common {
    /// Hilbert space dimension (number of slits)
    #[arg(long, default_value_t = 3, value_parser = positive())]
    pub dim: usize,

    /// Numerical tolerance for pass/fail decisions
    #[arg(long, env = "DH_DEFAULT_TOL", default_value_t = dhcube_core::DEFAULT_TOL, value_parser = positive_tol)]
    pub tol: f64,

    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,

    /// Write the report here instead of stdout
    #[arg(long)]
    pub out: Option<PathBuf>,

    /// Lift the desk-scale dimension guards
    #[arg(long)]
    pub force_large: bool,
}

#[derive(Debug, Clone, Args)]
pub struct OrderArgs {
    #[command(flatten)]
    pub common: Common,

    /// Largest subset size; defaults to the dimension
    #[arg(long, value_parser = positive())]
    pub max_order: Option<usize>,
}

#[derive(Debug, Clone, Args)]
pub struct CensusArgs {
    #[command(flatten)]
    pub common: Common,

    /// Random states for the span rank; defaults to 2 d^4
    #[arg(long)]
    pub span_samples: Option<usize>,

    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Debug, Clone, Args)]
pub struct VerifyArgs {
    #[command(flatten)]
    pub common: Common,

    #[arg(long, value_enum, default_value_t = SuiteName::All)]
    pub suite: SuiteName,

    #[arg(long, default_value_t = 100, value_parser = positive())]
    pub trials: usize,

    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

fn positive_tol(s: &str) -> Result<f64, String> {
    let v: f64 = s.parse().map_err(|e| format!("{e}"))?;
    if v.is_finite() && v > 0.0 {
        Ok(v)
    } else {
        Err(format!("tolerance must be positive and finite, got {v}"))
    }
}

fn positive() -> RangedU64ValueParser<usize> {
    RangedU64ValueParser::new().range(1..)
}
