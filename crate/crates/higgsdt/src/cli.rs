use clap::{Args, Parser, Subcommand, ValueEnum};
use higgsdt_core::dt::CurveParams;

/// Donaldson–Thomas invariants and moduli volumes of twisted Higgs bundles.
#[derive(Debug, Parser)]
#[command(name = "higgsdt", version, about)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Tabulate IDT°_r, Ω_r and moduli volumes for r ≤ rmax.
    Compute(ComputeArgs),
    /// Run a named verification suite.
    Verify(VerifyArgs),
    /// Brute-force stack volume on the projective line.
    #[command(name = "oracle-p1")]
    OracleP1(OracleArgs),
    /// Evaluate IDT°_r(q,1) at concrete Weil numbers.
    Specialize(SpecializeArgs),
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum Format {
    #[default]
    Json,
    Csv,
    Latex,
}

#[derive(Clone, Debug, Args)]
pub struct CurveArgs {
    /// Genus of the curve.
    #[arg(long, default_value_t = 0)]
    pub genus: usize,
    /// Degree of the twisting bundle; defaults to max(2g − 1, 1).
    #[arg(long, allow_negative_numbers = true, conflicts_with = "canonical")]
    pub ell: Option<i64>,
    /// Twist by the canonical bundle (ℓ = 2g − 2).
    #[arg(long)]
    pub canonical: bool,
}

impl CurveArgs {
    pub fn params(&self) -> higgsdt_core::Result<CurveParams> {
        if self.canonical {
            CurveParams::canonical(self.genus)
        } else {
            let ell = self.ell.unwrap_or((2 * self.genus as i64 - 1).max(1));
            CurveParams::twisted(self.genus, ell)
        }
    }
}

#[derive(Debug, Args)]
pub struct ComputeArgs {
    #[command(flatten)]
    pub curve: CurveArgs,
    /// Largest rank.
    #[arg(long, default_value_t = 6)]
    pub rmax: usize,
    #[arg(long, value_enum, default_value_t)]
    pub format: Format,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    ExpLog,
    Integrality,
    RankOne,
    Weyl,
    Alternative,
    Stabilization,
    Combinatorics,
    FFunction,
    Oracle,
    Specialize,
    Canonical,
    All,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(value_enum)]
    pub suite: Suite,
    #[command(flatten)]
    pub curve: CurveArgs,
    /// Largest rank checked.
    #[arg(long, default_value_t = 3)]
    pub rmax: usize,
    /// t-expansion depth for stabilization; defaults to max(8, r(ℓ + 2)).
    #[arg(long)]
    pub depth: Option<usize>,
    /// Field size for the oracle suite.
    #[arg(long, default_value_t = 2)]
    pub q: u64,
    #[command(flatten)]
    pub zeta: ZetaArgs,
    #[arg(long, value_enum, default_value_t)]
    pub format: Format,
}

#[derive(Debug, Args)]
pub struct OracleArgs {
    #[arg(long)]
    pub q: u64,
    #[arg(long, default_value_t = 1)]
    pub ell: i64,
    #[arg(long, default_value_t = 1)]
    pub rank: usize,
    #[arg(long, default_value_t = 1, allow_negative_numbers = true)]
    pub deg: i64,
    /// Largest number of Higgs fields enumerated per splitting type.
    #[arg(long, default_value_t = higgsdt_core::oracle::DEFAULT_CAP)]
    pub cap: u128,
    #[arg(long, value_enum, default_value_t)]
    pub format: Format,
}

#[derive(Clone, Debug, Default, Args)]
pub struct ZetaArgs {
    /// Size of the finite field.
    #[arg(long)]
    pub q0: Option<u64>,
    /// Frobenius traces, one per pair of Weil numbers.
    #[arg(long, value_delimiter = ',', allow_negative_numbers = true, conflicts_with = "weil")]
    pub trace: Vec<i64>,
    /// Weil numbers as `re:im` pairs separated by commas.
    #[arg(long, allow_hyphen_values = true)]
    pub weil: Option<String>,
}

#[derive(Debug, Args)]
pub struct SpecializeArgs {
    /// Twisting degree; defaults to max(2g − 1, 1) with g the number of Weil pairs.
    #[arg(long, allow_negative_numbers = true, conflicts_with = "canonical")]
    pub ell: Option<i64>,
    #[arg(long)]
    pub canonical: bool,
    #[arg(long, default_value_t = 1)]
    pub rmax: usize,
    #[command(flatten)]
    pub zeta: ZetaArgs,
    /// Largest accepted distance to an integer.
    #[arg(long, default_value_t = higgsdt_core::zeta::DEFAULT_TOL)]
    pub tol: f64,
    #[arg(long, value_enum, default_value_t)]
    pub format: Format,
}
