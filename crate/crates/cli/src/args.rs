use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use markov_nikolskii::NormParam;

use crate::grid::{parse_grid, parse_range, Grid, Range};

#[derive(Debug, Parser)]
#[command(
    name = "markov-nikolskii",
    version,
    about = "Extremal constants, verification suites and growth sweeps for derivative-to-norm ratios of polynomials"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Table of exact extremal constants.
    Constants(ConstantsArgs),
    /// Run a verification suite and report every check.
    Verify(VerifyArgs),
    /// Measure a family over a grid of n and fit its growth exponents.
    Sweep(SweepArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Args)]
pub struct Common {
    /// Output format.
    #[arg(long, value_enum)]
    pub format: Option<Format>,
    /// Write to this file instead of standard output.
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Debug, Args)]
pub struct ConstantsArgs {
    /// Degree or inclusive range, e.g. `5` or `2..10`.
    #[arg(long, value_parser = parse_range)]
    pub n: Range,
    /// Class order; adds the sup-norm and L1 constants of Δ_n^(k).
    #[arg(long)]
    pub k: Option<usize>,
    /// Include the exact constant of the monotone class.
    #[arg(long)]
    pub bernstein: bool,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    Remez,
    KeyInequality,
    Oracle,
    Qseries,
    All,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(long, value_enum)]
    pub suite: Suite,
    /// Random trials per check; defaults to 500 for remez and 200 for
    /// key-inequality.
    #[arg(long)]
    pub trials: Option<usize>,
    /// Degree for the oracle suite.
    #[arg(long, default_value_t = 3)]
    pub n: usize,
    /// Random starts for the oracle suite.
    #[arg(long, default_value_t = 20_000)]
    pub budget: usize,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum FamilyName {
    Lower,
    Powerramp,
    Chebybump,
    KsExact,
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    #[arg(long, value_enum)]
    pub family: FamilyName,
    #[arg(long, default_value_t = 1)]
    pub k: usize,
    /// Power of the series factor in the lower family.
    #[arg(long, default_value_t = 1)]
    pub m: usize,
    /// Derivative order.
    #[arg(long, default_value_t = 1)]
    pub l: usize,
    /// Exponent of the norm on P: decimal, fraction or `inf`.
    #[arg(long, default_value = "inf", value_parser = parse_exponent)]
    pub p: NormParam,
    /// Exponent of the norm on the derivative.
    #[arg(long, default_value = "inf", value_parser = parse_exponent)]
    pub q: NormParam,
    /// `a:b` for every integer, `a:b:xS` for a geometric grid.
    #[arg(long, value_parser = parse_grid)]
    pub grid: Grid,
    #[command(flatten)]
    pub common: Common,
}

fn parse_exponent(s: &str) -> Result<NormParam, String> {
    s.parse()
        .map_err(|e: markov_nikolskii::Error| e.to_string())
}
