// SPDX-License-Identifier: Apache-2.0

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use exactq_core::SymStrategy;

#[derive(Debug, Parser)]
#[command(name = "exactq", version, about = "Exact quantum query algorithms, verified exhaustively")]
pub struct Cli {
    #[command(flatten)]
    pub common: Common,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct Common {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    pub format: Format,
    /// Write output here instead of standard output.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Numerical tolerance for exactness and residual checks.
    #[arg(long, env = "EXACTQ_TOL", default_value_t = 1e-9, global = true)]
    pub tol: f64,
    /// Include per-input or per-leaf detail.
    #[arg(long, short, global = true)]
    pub verbose: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run a plan on every input and compare with its target function.
    Verify(VerifyArgs),
    /// Tabulate a gamma chain.
    Gamma(GammaArgs),
    /// Dump the acceptance polynomial, its symmetrization and a degree audit.
    Poly(PolyArgs),
    /// Print the rotation constants of one recursive step.
    Constants(ConstantsArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Family {
    Equality,
    Xor,
    Constant,
    Balanced,
    Exact,
    Exactkl,
    Unb,
    Unbr,
    General,
    Uw,
    Sym,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Strategy {
    Center,
    Outward,
}

impl From<Strategy> for SymStrategy {
    fn from(s: Strategy) -> Self {
        match s {
            Strategy::Center => SymStrategy::TwoSidedCenterSweep,
            Strategy::Outward => SymStrategy::OutwardSweep,
        }
    }
}

/// Parameters shared by every command that builds a plan.
#[derive(Debug, Clone, Args)]
pub struct PlanArgs {
    #[arg(long, value_enum)]
    pub family: Family,
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long)]
    pub k: Option<usize>,
    #[arg(long)]
    pub l: Option<usize>,
    #[arg(long)]
    pub d: Option<usize>,
    #[arg(long)]
    pub u: Option<usize>,
    #[arg(long)]
    pub w: Option<usize>,
    /// Symmetric function values by weight, e.g. `0011000`.
    #[arg(long)]
    pub a: Option<String>,
    #[arg(long)]
    pub g: Option<usize>,
    #[arg(long, value_enum, default_value_t = Strategy::Center)]
    pub strategy: Strategy,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[command(flatten)]
    pub plan: PlanArgs,
    /// Branches below this probability are not followed.
    #[arg(long, default_value_t = exactq_core::state::EPS_BRANCH)]
    pub branch_tol: f64,
    /// Worker threads for the input sweep; 1 runs sequentially.
    #[arg(long, default_value_t = 0)]
    pub parallel: usize,
}

#[derive(Debug, Args)]
pub struct GammaArgs {
    #[arg(long)]
    pub d: usize,
    /// Starting step; defaults to 1 for d = 3 and 0 otherwise.
    #[arg(long)]
    pub k0: Option<usize>,
    #[arg(long, default_value_t = 41)]
    pub n_max: usize,
}

#[derive(Debug, Args)]
pub struct PolyArgs {
    #[command(flatten)]
    pub plan: PlanArgs,
}

#[derive(Debug, Args)]
pub struct ConstantsArgs {
    #[arg(long, required_unless_present = "base_table")]
    pub n: Option<usize>,
    #[arg(long, required_unless_present = "base_table")]
    pub d: Option<usize>,
    /// The 18-constant table of the d = 3, n = 5 base step.
    #[arg(long = "appendix-a", conflicts_with_all = ["n", "d"])]
    pub base_table: bool,
}
