use std::path::PathBuf;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};
use cyclojones::{KnotSpec, Variable};

use crate::error::CliError;
use crate::format::Format;
use crate::verify::Suite;

#[derive(Debug, Parser)]
#[command(name = "cyclojones", version, about = "Cyclotomic expansions and colored Jones polynomials of double twist knots")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print the cyclotomic coefficients H_0..H_max_k.
    Coeffs(CoeffsArgs),
    /// Print the normalized colored Jones polynomial J'_N.
    Jones(JonesArgs),
    /// Run verification suites.
    Verify(VerifyArgs),
    /// Evaluate J'_1..J'_N at a root of unity.
    Eval(EvalArgs),
}

#[derive(Debug, Args)]
pub struct KnotArgs {
    /// Full twists in the first region.
    #[arg(long, allow_hyphen_values = true)]
    pub p: i64,
    /// Odd number of half twists in the second region.
    #[arg(long, allow_hyphen_values = true, conflicts_with = "r")]
    pub s: Option<i64>,
    /// Full twists in the second region.
    #[arg(long, allow_hyphen_values = true)]
    pub r: Option<i64>,
}

impl KnotArgs {
    pub fn knot(&self) -> Result<KnotSpec, CliError> {
        match (self.s, self.r) {
            (Some(s), None) => Ok(KnotSpec::half(self.p, s)?),
            (None, Some(r)) => Ok(KnotSpec::full(self.p, r)?),
            _ => Err(CliError::Usage("give exactly one of --s or --r".into())),
        }
    }
}

fn parse_variable(s: &str) -> Result<Variable, String> {
    Variable::from_str(s).map_err(|_| format!("unknown display variable {s:?} (use A, 𝔮/frak or q)"))
}

#[derive(Debug, Args)]
pub struct OutputArgs {
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Variable used in text, CSV and LaTeX output.
    #[arg(long, value_parser = parse_variable, default_value = "𝔮")]
    pub display: Variable,
}

#[derive(Debug, Args)]
pub struct CoeffsArgs {
    #[command(flatten)]
    pub knot: KnotArgs,
    #[command(flatten)]
    pub output: OutputArgs,
    #[arg(long = "max-k", default_value_t = 10)]
    pub max_k: u32,
    /// Also check every H_k against the chain-sum route.
    #[arg(long)]
    pub cross_check: bool,
    #[arg(long = "cache-dir", env = "CYCLOJONES_CACHE")]
    pub cache_dir: Option<PathBuf>,
    /// Fraction of cache hits recomputed and compared.
    #[arg(long = "cache-check", default_value_t = 0.1)]
    pub cache_check: f64,
    #[arg(long)]
    pub jobs: Option<usize>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum RouteArg {
    Theorem,
    Walsh,
    Both,
}

#[derive(Debug, Args)]
pub struct JonesArgs {
    #[command(flatten)]
    pub knot: KnotArgs,
    #[command(flatten)]
    pub output: OutputArgs,
    #[arg(long = "N")]
    pub n: u32,
    #[arg(long, value_enum, default_value_t = RouteArg::Theorem)]
    pub route: RouteArg,
    #[arg(long)]
    pub jobs: Option<usize>,
}

/// Inclusive integer range written `a..b` or a single value.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct IntRange {
    pub lo: i64,
    pub hi: i64,
}

impl FromStr for IntRange {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let parse = |t: &str| t.trim().parse::<i64>().map_err(|_| format!("bad range {s:?}"));
        let (lo, hi) = match s.split_once("..") {
            Some((a, b)) => (parse(a)?, parse(b.trim_start_matches('='))?),
            None => (parse(s)?, parse(s)?),
        };
        if lo > hi {
            return Err(format!("empty range {s:?}"));
        }
        Ok(IntRange { lo, hi })
    }
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(long, value_enum, default_value_t = Suite::All)]
    pub suite: Suite,
    /// Overrides every suite's default index bound.
    #[arg(long = "max-k")]
    pub max_k: Option<u32>,
    #[arg(long = "max-N", default_value_t = 8)]
    pub max_n: u32,
    /// Twist counts p (zero is skipped).
    #[arg(long = "p-range", allow_hyphen_values = true, default_value = "-3..3")]
    pub p_range: IntRange,
    /// Values of m, with s = 2m - 1.
    #[arg(long = "m-range", allow_hyphen_values = true, default_value = "1..3")]
    pub m_range: IntRange,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    #[arg(long)]
    pub jobs: Option<usize>,
}

#[derive(Debug, Args)]
pub struct EvalArgs {
    #[command(flatten)]
    pub knot: KnotArgs,
    /// Largest colour; one row per N = 1..=N.
    #[arg(long = "N")]
    pub n: u32,
    /// Evaluate at A = exp(2πi k/n) with this k.
    #[arg(long = "root-k", allow_hyphen_values = true, default_value_t = 1)]
    pub root_k: i64,
    #[arg(long = "root-n", default_value_t = 16)]
    pub root_n: u64,
    #[arg(long, default_value_t = 40)]
    pub digits: u32,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    #[arg(long)]
    pub jobs: Option<usize>,
}
