use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(
    name = "alpha-disk",
    version,
    about = "Kernels, Dirichlet solver and estimate sweeps for the weighted Laplacian on the unit disk"
)]
pub struct Cli {
    #[command(flatten)]
    pub common: CommonArgs,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct CommonArgs {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    /// Write to this file instead of stdout.
    #[arg(long, short, global = true)]
    pub output: Option<PathBuf>,
    #[arg(long, global = true)]
    pub circle_nodes: Option<usize>,
    /// Gauss-Legendre nodes per radial segment.
    #[arg(long, global = true)]
    pub radial_nodes: Option<usize>,
    #[arg(long, global = true)]
    pub ring_levels: Option<usize>,
    #[arg(long, global = true)]
    pub abs_tol: Option<f64>,
    #[arg(long, global = true)]
    pub rel_tol: Option<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Tabulate P_alpha, the v-kernel, G_alpha, q and h.
    Kernel(KernelArgs),
    /// Solve the Dirichlet problem on an evaluation grid.
    Solve(SolveArgs),
    /// Run a verification sweep; exits 1 when a bound fails.
    Verify(VerifyArgs),
}

/// `NrxNt` grid size.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GridSize {
    pub radial: usize,
    pub angular: usize,
}

pub fn parse_grid(s: &str) -> Result<GridSize, String> {
    let (a, b) = s
        .split_once(['x', 'X'])
        .ok_or_else(|| format!("expected NrxNt, got '{s}'"))?;
    let radial: usize = a.trim().parse().map_err(|_| format!("bad radial count '{a}'"))?;
    let angular: usize = b.trim().parse().map_err(|_| format!("bad angular count '{b}'"))?;
    if radial == 0 || angular == 0 {
        return Err("grid counts must be positive".into());
    }
    Ok(GridSize { radial, angular })
}

#[derive(Args, Debug)]
pub struct KernelArgs {
    #[arg(long, allow_negative_numbers = true)]
    pub alpha: f64,
    /// Polar grid with radii (i+1)/(Nr+1) and angles 2 pi j / Nt.
    #[arg(long, value_parser = parse_grid, conflicts_with = "point")]
    pub grid: Option<GridSize>,
    /// A single point `RE IM`.
    #[arg(long, num_args = 2, value_names = ["RE", "IM"], allow_negative_numbers = true)]
    pub point: Option<Vec<f64>>,
    /// Second argument of G_alpha and q.
    #[arg(long, num_args = 2, value_names = ["RE", "IM"], allow_negative_numbers = true)]
    pub partner: Option<Vec<f64>>,
    /// Boundary angle for the v-kernel column.
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    pub theta: f64,
}

#[derive(Args, Debug)]
pub struct SolveArgs {
    #[arg(long, allow_negative_numbers = true)]
    pub alpha: f64,
    /// Boundary data: zero, one, cos, sin, cosk:<k>, abs-sin, or a CSV file (theta,re,im).
    #[arg(long, default_value = "zero")]
    pub f: String,
    /// Right-hand side: zero, one, manufactured1, envelope:<beta>, or a CSV file (r,theta,re,im).
    #[arg(long, default_value = "zero")]
    pub g: String,
    /// Envelope exponent to declare for a sampled right-hand side.
    #[arg(long)]
    pub g_envelope: Option<f64>,
    /// Node count for built-in boundary signals.
    #[arg(long, default_value_t = 256)]
    pub signal_nodes: usize,
    /// Evaluation grid with radii r_max (i+1)/Nr and angles 2 pi j / Nt.
    #[arg(long, value_parser = parse_grid, default_value = "6x8")]
    pub grid: GridSize,
    #[arg(long, default_value_t = 0.9)]
    pub r_max: f64,
    /// Evaluation points from a CSV file (re,im); overrides --grid.
    #[arg(long)]
    pub points: Option<PathBuf>,
    #[arg(long, default_value_t = 8)]
    pub residual_probes: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Sweep {
    M1,
    CirclePower,
    I1,
    I2,
    GreenBounds,
    GrinLip,
    Hilbert,
    ConjugateIdentity,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    #[arg(value_enum)]
    pub sweep: Sweep,
    #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
    pub alpha: f64,
    /// Random pairs for green-bounds.
    #[arg(long, default_value_t = 500)]
    pub pairs: usize,
    #[arg(long, default_value_t = 20_240_601)]
    pub seed: u64,
    /// Constant in the d/dw majorant.
    #[arg(long, default_value_t = 1.0)]
    pub c_alpha: f64,
    /// Sample count for hilbert.
    #[arg(long, default_value_t = 512)]
    pub nodes: usize,
    /// Radius for conjugate-identity.
    #[arg(long, default_value_t = 0.5)]
    pub radius: f64,
    /// Right-hand side for grin-lip (default: envelope:<alpha>).
    #[arg(long)]
    pub g: Option<String>,
    /// Points per ray for the grin-lip Lipschitz check (0 skips it).
    #[arg(long, default_value_t = 56)]
    pub lipschitz_points: usize,
}
