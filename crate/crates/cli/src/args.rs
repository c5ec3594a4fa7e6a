use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use msgkit::{FieldSpec, RhoVariant};

#[derive(Parser, Debug)]
#[command(name = "msgkit", version, about = "Tangent spaces of multiply symplectic Grassmannians")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Brill-Noether expected dimensions over a parameter grid.
    Rho(RhoArgs),
    /// Tangent dimension, Phi kernel and pencil analysis at one point.
    CheckPoint(FileArgs),
    /// Histogram of tangent-dimension excess at random points.
    Scan(ScanArgs),
    /// Compare tangent excess with pencil degeneracy over many points.
    Verify(VerifyArgs),
    /// Skew normal form of an alternating matrix.
    NormalForm(FileArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Plain,
    Csv,
}

#[derive(Args, Debug)]
pub struct OutputArgs {
    /// Write to this file instead of stdout.
    #[arg(long)]
    pub output: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
}

/// Integer flags take a value `5` or an inclusive range `2..10`. `--d` also
/// accepts a linear expression in the genus such as `2g-2`.
#[derive(Args, Debug)]
pub struct RhoArgs {
    #[arg(long)]
    pub r: String,
    #[arg(long)]
    pub d: String,
    #[arg(long)]
    pub k: String,
    #[arg(long)]
    pub g: String,
    /// `h^1` of the determinant; adds the special-locus bound.
    #[arg(long)]
    pub m: Option<String>,
    /// Omit to report both variants.
    #[arg(long, value_parser = parse_variant)]
    pub variant: Option<RhoVariant>,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Args, Debug)]
pub struct FileArgs {
    #[arg(long)]
    pub input: PathBuf,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Args, Debug)]
pub struct FieldArgs {
    /// Prime modulus.
    #[arg(long, conflicts_with = "field")]
    pub p: Option<u64>,
    /// `Q`, or a prime such as `7` or `F_7`.
    #[arg(long, value_parser = parse_field)]
    pub field: Option<FieldSpec>,
}

impl FieldArgs {
    pub fn resolve(&self) -> msgkit::Result<FieldSpec> {
        match (self.p, self.field) {
            (Some(p), _) => FieldSpec::prime(p),
            (None, Some(f)) => Ok(f),
            (None, None) => FieldSpec::prime(3),
        }
    }
}

#[derive(Args, Debug)]
pub struct ScanArgs {
    #[arg(long)]
    pub n: usize,
    #[arg(long)]
    pub k: usize,
    #[arg(long, default_value_t = 2)]
    pub m: usize,
    #[command(flatten)]
    pub field: FieldArgs,
    #[arg(long, default_value_t = 100)]
    pub samples: u64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = 1)]
    pub workers: usize,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ScopeArg {
    Exhaustive,
    Sampled,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    #[arg(long)]
    pub n: usize,
    #[arg(long)]
    pub k: usize,
    #[command(flatten)]
    pub field: FieldArgs,
    /// Number of random form pairs.
    #[arg(long, default_value_t = 10)]
    pub pairs: usize,
    #[arg(long, value_enum, default_value_t = ScopeArg::Exhaustive)]
    pub scope: ScopeArg,
    /// Points per pair in sampled scope.
    #[arg(long, default_value_t = 20)]
    pub samples: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = 1)]
    pub workers: usize,
    /// Self-test: drop one tangency condition so the run must fail.
    #[arg(long)]
    pub inject_fault: bool,
    #[command(flatten)]
    pub out: OutputArgs,
}

fn parse_variant(s: &str) -> Result<RhoVariant, String> {
    s.parse().map_err(|e: msgkit::Error| e.to_string())
}

fn parse_field(s: &str) -> Result<FieldSpec, String> {
    let t = s.trim();
    if matches!(t, "Q" | "q" | "rational") {
        return Ok(FieldSpec::rational());
    }
    let digits = t.strip_prefix("F_").or_else(|| t.strip_prefix("F")).unwrap_or(t);
    let p: u64 = digits.parse().map_err(|_| format!("unknown field {s:?}"))?;
    FieldSpec::prime(p).map_err(|e| e.to_string())
}
