use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(name = "pinsker", version, about = "Pinsker-type inequalities for f-divergences: evaluation, certification, exact identities")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Emit JSON mirroring the CSV tables.
    #[arg(long, global = true)]
    pub json: bool,

    /// Write to PATH instead of stdout.
    #[arg(long, global = true, value_name = "PATH")]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug, Clone, Default)]
pub struct GeneratorArgs {
    /// Built-in generator name, or `expr` together with --expr.
    #[arg(long)]
    pub generator: Option<String>,

    /// Order for rel_info_alpha, tsallis and cressie_read; a fraction like 1/2 stays exact.
    #[arg(long, allow_hyphen_values = true)]
    pub alpha: Option<String>,

    /// Exponent for triangular_nu.
    #[arg(long)]
    pub nu: Option<u32>,

    /// User generator in u, e.g. "-log(u)" (KL).
    #[arg(long, allow_hyphen_values = true)]
    pub expr: Option<String>,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Divergences of a pair and their Pinsker-type bound checks.
    Eval {
        #[command(flatten)]
        generator: GeneratorArgs,
        /// First distribution: inline weights `0.5,0.3,0.2` or a CSV file.
        #[arg(long)]
        p: String,
        /// Second distribution.
        #[arg(long)]
        q: String,
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
    },
    /// Exact best-possible coefficients c2, w2, c4, w4.
    Coeffs {
        #[command(flatten)]
        generator: GeneratorArgs,
    },
    /// Grid certification of the sufficient conditions.
    Certify {
        #[arg(value_enum)]
        kind: CertifyKind,
        #[command(flatten)]
        generator: GeneratorArgs,
        /// `lo:hi:points[:log]` or `standard`.
        #[arg(long, default_value = "standard")]
        grid_spec: String,
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
    },
    /// Exact polynomial identities and certificates.
    Identity {
        #[arg(long, value_enum)]
        name: IdentityName,
        #[arg(long, allow_hyphen_values = true)]
        alpha: Option<String>,
        /// Dump coefficient lists as exact fractions instead of the table.
        #[arg(long)]
        emit_poly: bool,
    },
    /// Binary lower envelope of D_f at fixed V.
    Envelope {
        #[command(flatten)]
        generator: GeneratorArgs,
        /// `lo:hi:step` or a comma list.
        #[arg(long, default_value = "0.1:1.9:0.1")]
        v: String,
        /// Compare the KL envelope with the eighth-order polynomial bound.
        #[arg(long)]
        topsoe: bool,
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
    },
    /// Ratios along binary pairs approaching P, with extrapolated limits.
    Sweep {
        #[arg(value_enum)]
        order: SweepOrder,
        #[command(flatten)]
        generator: GeneratorArgs,
        /// Fixed p for the second-order sweep.
        #[arg(long, default_value_t = 0.5)]
        p: f64,
        #[arg(long, default_value = "0.2,0.1,0.05,0.02,0.01")]
        v: String,
    },
    /// Rényi information gain: evaluation, fourth-order check, violation search.
    Renyi {
        #[arg(long, allow_hyphen_values = true)]
        alpha: String,
        #[arg(long)]
        search_violation: bool,
        #[arg(long)]
        p: Option<String>,
        #[arg(long)]
        q: Option<String>,
        /// Random binary pairs for the fourth-order check.
        #[arg(long, default_value_t = 10_000)]
        samples: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
    },
    /// Plot data.
    Figure {
        #[arg(value_enum)]
        kind: FigureKind,
        #[command(flatten)]
        generator: GeneratorArgs,
        /// Comma list of weights.
        #[arg(long, default_value = "0.2,0.3333333333333333,0.5")]
        w: String,
        #[arg(long, default_value = "0.01:100:2001:log")]
        grid_spec: String,
    },
    /// Numeric exploration of the sixth-order conjectures (never a certificate).
    Conjecture {
        #[arg(long, value_enum)]
        name: ConjectureName,
        #[arg(long, default_value = "standard")]
        grid_spec: String,
        #[arg(long, default_value = "0.4,0.2,0.1")]
        v: String,
    },
    /// Runs every check and bundles the results.
    Report,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum CertifyKind {
    Second,
    Fourth,
    SecondSign,
    FourthSign,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum IdentityName {
    KlSixth,
    P10,
    AlphaChain,
    AlphaBracket,
    DivisionSearch,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum SweepOrder {
    Second,
    Fourth,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum FigureKind {
    Hw,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum ConjectureName {
    Log6,
    Surplus,
}
