use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(name = "wspin", version, about = "Superpotential analysis, spin-curve bookkeeping and radial W-spin solutions")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,

    /// Seed for every randomized search.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,

    /// Relative tolerance for the residue-energy identity.
    #[arg(long, global = true, env = "WSPIN_DEFAULT_TOL", default_value_t = 1e-6)]
    pub tol: f64,

    /// Write the report (or, for `solve`, the profile CSV) to this file.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Weights, growth exponents, compactness ranges and non-degeneracy of W.
    Analyze { poly: String },
    /// Diagonal symmetry group of W.
    Group { poly: String },
    /// Ramond/NS classification, bundle degrees and index shifts for a curve spec file.
    Curve {
        spec: PathBuf,
        /// Sobolev exponent for the index shift, as "p/q".
        #[arg(long, default_value = "5/2")]
        p: String,
    },
    /// Elimination polynomial of one variable of the gradient system.
    Eliminate { poly: String, var: String },
    /// Certified (or, with --empirical, sampled) bounds on solutions of ∇W(u) = s.
    Bound {
        poly: String,
        /// Gradient values, one per variable; complex values as `a+bi`.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        s: Vec<String>,
        /// Sample the gradient-bound ratio over doubling polydiscs instead.
        #[arg(long)]
        empirical: bool,
        /// Samples per polydisc in empirical mode.
        #[arg(long, default_value_t = 4000)]
        samples: usize,
    },
    /// Global radial solution: identity report, profile CSV to --out.
    Solve(SolveArgs),
    /// Samples one member of the radial family.
    Profile(ProfileArgs),
    /// Residue-energy identity check.
    Identity {
        #[arg(long)]
        r: u32,
        #[arg(long)]
        u0: f64,
    },
}

#[derive(Debug, Args)]
pub struct Grid {
    #[arg(long, default_value_t = 1e-8)]
    pub rho_min: f64,
    #[arg(long, default_value_t = 1e4)]
    pub rho_max: f64,
    #[arg(long, default_value_t = 241)]
    pub points: usize,
}

#[derive(Debug, Args)]
pub struct SolveArgs {
    #[arg(long)]
    pub r: u32,
    #[arg(long)]
    pub u0: f64,
    #[command(flatten)]
    pub grid: Grid,
}

#[derive(Debug, Args)]
pub struct ProfileArgs {
    #[arg(long)]
    pub r: u32,
    /// Global solution with this value at the origin.
    #[arg(long, conflicts_with_all = ["c", "singular"])]
    pub u0: Option<f64>,
    /// Local solution with this constant.
    #[arg(long, conflicts_with = "singular")]
    pub c: Option<f64>,
    /// The singular limit.
    #[arg(long)]
    pub singular: bool,
    #[command(flatten)]
    pub grid: Grid,
}
