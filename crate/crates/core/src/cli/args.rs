use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::trace::Branch;

#[derive(Debug, Parser)]
#[command(
    name = "darboux",
    version,
    about = "Darboux frames, curve classification and isophote tracing on surfaces"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Sample Darboux and Frenet frames along a curve on a surface.
    Frames(FramesArgs),
    /// Classify a curve on a surface and write a JSON report.
    Classify {
        #[command(flatten)]
        curve: CurveArgs,
        /// Non-zero constant scaling the family position vectors.
        #[arg(long, default_value_t = 1.0, allow_hyphen_values = true)]
        c: f64,
    },
    /// Trace an isophote on a parametric surface from a chart seed `u,v`.
    Trace(TraceArgs),
    /// Trace an isophote on a level set from a point seed `x,y,z`.
    TraceImplicit(TraceArgs),
    /// Find a point on an isophote near a guess (`u,v` or `x,y,z`).
    SeedFind(SeedArgs),
    /// List the built-in surfaces.
    Catalog,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
    Obj,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum BranchArg {
    Plus,
    Minus,
}

impl From<BranchArg> for Branch {
    fn from(b: BranchArg) -> Branch {
        match b {
            BranchArg::Plus => Branch::Plus,
            BranchArg::Minus => Branch::Minus,
        }
    }
}

#[derive(Debug, Args)]
pub struct CurveArgs {
    /// Surface spec: builtin:<name>[?k=v&...], param:x=..;y=..;z=..;u=a,b;v=a,b or implicit:f=..
    #[arg(long)]
    pub surface: String,
    /// Curve spec: param:u=<expr in s>;v=<expr in s>, space:x=..;y=..;z=.. or csv:<trace.csv>
    #[arg(long)]
    pub curve: String,
    /// Parameter range `a,b` of param:/space: curves.
    #[arg(long, default_value = "0,2*pi", allow_hyphen_values = true)]
    pub range: String,
    /// Number of uniform arclength samples.
    #[arg(long, default_value_t = 200)]
    pub samples: usize,
    /// Knots of the arclength table used to reparametrize param:/space: curves.
    #[arg(long, default_value_t = 257)]
    pub knots: usize,
    /// Output file; standard output when omitted.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct FramesArgs {
    #[command(flatten)]
    pub curve: CurveArgs,
    /// Output format; inferred from --out's extension, else csv.
    #[arg(long, value_enum)]
    pub format: Option<Format>,
}

#[derive(Debug, Args)]
pub struct TraceArgs {
    #[arg(long)]
    pub surface: String,
    /// Light axis `x,y,z`, normalized on input.
    #[arg(long, allow_hyphen_values = true)]
    pub axis: String,
    /// Angle φ between the normal and the axis, in degrees.
    #[arg(long, allow_hyphen_values = true)]
    pub angle: Option<f64>,
    /// Starting guess, refined onto the isophote unless --exact-seed is given.
    #[arg(long, allow_hyphen_values = true)]
    pub seed: String,
    /// Use the seed as given; it must already lie on the isophote.
    #[arg(long)]
    pub exact_seed: bool,
    /// Arclength to trace unless the curve closes or stops first.
    #[arg(long, default_value_t = 10.0)]
    pub length: f64,
    /// Fixed RK4 arclength step.
    #[arg(long, default_value_t = 1e-3)]
    pub step: f64,
    /// Which of the two opposite directions to follow.
    #[arg(long, value_enum, default_value_t = BranchArg::Plus)]
    pub branch: BranchArg,
    /// Largest seed gap accepted when closing a loop.
    #[arg(long, default_value_t = 1e-6)]
    pub closure_tol: f64,
    /// Singularity threshold; overrides DARBOUX_EPS_SING.
    #[arg(long)]
    pub eps_sing: Option<f64>,
    /// |f| targeted when projecting implicit steps.
    #[arg(long, default_value_t = 1e-12)]
    pub projection_tol: f64,
    /// Also project implicit steps onto the isophote level.
    #[arg(long)]
    pub project_isophote: bool,
    /// Sweep `n` angles from `a` to `b` degrees, traced concurrently.
    #[arg(long, value_name = "A:B:N")]
    pub family: Option<String>,
    /// Output file, required with --family; standard output otherwise.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Output format; inferred from --out's extension, else csv.
    #[arg(long, value_enum)]
    pub format: Option<Format>,
}

#[derive(Debug, Args)]
pub struct SeedArgs {
    #[arg(long)]
    pub surface: String,
    #[arg(long, allow_hyphen_values = true)]
    pub axis: String,
    /// Angle in degrees.
    #[arg(long, allow_hyphen_values = true)]
    pub angle: f64,
    /// Guess: `u,v` (chart) or `x,y,z` (level set).
    #[arg(long, allow_hyphen_values = true)]
    pub seed: String,
}
