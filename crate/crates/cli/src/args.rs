use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(name = "tractrix", version, about = "Circular tractrices and pseudospheres")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Sample one tractrix as CSV (t, x, y, z, speed, kappa, tau).
    EvalCurve(CurveArgs),
    /// Triangulated OBJ mesh of the pseudosphere plus a cuspidal-edge sidecar.
    EvalSurface(SurfaceArgs),
    /// Run the invariant suite and print a JSON report.
    Verify(VerifyArgs),
    /// Surface area by adaptive quadrature.
    Area(MeasureArgs),
    /// Enclosed volume (with multiplicities) by adaptive quadrature.
    Volume(MeasureArgs),
    /// Integrate the rear-track ODE and compare with the closed form.
    RearTrack(RearTrackArgs),
    /// Period, rotation angle and petal counts for R < 1.
    Petals(PetalArgs),
    /// Run a command described by a JSON config whose keys mirror the flags.
    Run {
        config: PathBuf,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum RegimeArg {
    Supercritical,
    Critical,
    Subcritical,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum BranchArg {
    Plus,
    Minus,
}

#[derive(Debug, Clone, Args)]
pub struct ParamArgs {
    /// Directrix radius.
    #[arg(long = "R")]
    pub radius: Option<f64>,
    /// Regime; must agree with R when both are given (critical implies R = 1).
    #[arg(long, value_enum)]
    pub regime: Option<RegimeArg>,
    /// Point on the constraint curve of the constants.
    #[arg(long, allow_hyphen_values = true, conflicts_with_all = ["c1", "c2"])]
    pub selector: Option<f64>,
    #[arg(long, allow_hyphen_values = true, requires = "c2")]
    pub c1: Option<f64>,
    #[arg(long, allow_hyphen_values = true, requires = "c1")]
    pub c2: Option<f64>,
    /// Component of a subcritical surface (sign of c1).
    #[arg(long, value_enum, default_value_t = BranchArg::Plus)]
    pub branch: BranchArg,
}

#[derive(Debug, Clone, Args)]
pub struct CurveArgs {
    #[command(flatten)]
    pub params: ParamArgs,
    #[arg(long, allow_hyphen_values = true, default_value_t = -5.0)]
    pub t_min: f64,
    #[arg(long, allow_hyphen_values = true, default_value_t = 5.0)]
    pub t_max: f64,
    #[arg(long, default_value_t = 201)]
    pub samples: usize,
    /// Output file; stdout when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct SurfaceArgs {
    #[command(flatten)]
    pub params: ParamArgs,
    #[arg(long, allow_hyphen_values = true)]
    pub t_min: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub t_max: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub alpha_min: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub alpha_max: Option<f64>,
    /// Grid points along t per regular segment.
    #[arg(long, default_value_t = 40)]
    pub t_samples: usize,
    #[arg(long, default_value_t = 48)]
    pub alpha_samples: usize,
    /// OBJ output; the cuspidal edges go to `<out>.edges.json`.
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Debug, Clone, Args)]
pub struct VerifyArgs {
    #[command(flatten)]
    pub params: ParamArgs,
    #[arg(long, default_value_t = 1000)]
    pub samples: usize,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct MeasureArgs {
    #[command(flatten)]
    pub params: ParamArgs,
    #[arg(long, default_value_t = 1e-6)]
    pub tol: f64,
    /// Subcritical unit index n (t from nπ/λ to (n+1)π/λ).
    #[arg(long, allow_hyphen_values = true, default_value_t = 0)]
    pub unit: i64,
    #[arg(long, allow_hyphen_values = true)]
    pub t_min: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub t_max: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub alpha_min: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub alpha_max: Option<f64>,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct RearTrackArgs {
    #[command(flatten)]
    pub params: ParamArgs,
    #[arg(long, allow_hyphen_values = true, default_value_t = 0.5)]
    pub t0: f64,
    /// End of the window; defaults to t0 + 5.
    #[arg(long, allow_hyphen_values = true)]
    pub t1: Option<f64>,
    #[arg(long, default_value_t = 1e-3)]
    pub h: f64,
    /// Largest accepted deviation from the closed form.
    #[arg(long, default_value_t = 1e-6)]
    pub max_error: f64,
    /// Sampled directrix (CSV t,x,y,z) instead of the circle; needs --x0.
    #[arg(long, requires = "x0")]
    pub directrix: Option<PathBuf>,
    /// Initial rear point `x,y,z` for a sampled directrix.
    #[arg(long, allow_hyphen_values = true, value_delimiter = ',', num_args = 3)]
    pub x0: Option<Vec<f64>>,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct PetalArgs {
    #[command(flatten)]
    pub params: ParamArgs,
    /// Exact value of √(1−R²) as p/q; R is derived from it when absent.
    #[arg(long)]
    pub nu: Option<String>,
    #[arg(long)]
    pub out: Option<PathBuf>,
}
