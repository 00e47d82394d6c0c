use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(
    name = "hdo",
    version,
    about = "Exact and large-D moments and entropies of D-dimensional oscillator states"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Radial moments <r^k> or <p^k>, exact and asymptotic.
    Moments(MomentsArgs),
    /// Rényi entropies (and the matching Tsallis values).
    Renyi(RenyiArgs),
    /// Shannon entropies, exact or conjectured.
    Shannon(ShannonArgs),
    /// J1 Laguerre functional: quadrature vs expansion over an alpha grid.
    Asym(AsymArgs),
    /// Position-momentum Rényi and Shannon uncertainty sums against their bounds.
    Sums(SumsArgs),
    /// Exact-vs-asymptotic relative errors over a D grid with a log-log slope fit.
    Converge(ConvergeArgs),
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Moments(_) => "moments",
            Command::Renyi(_) => "renyi",
            Command::Shannon(_) => "shannon",
            Command::Asym(_) => "asym",
            Command::Sums(_) => "sums",
            Command::Converge(_) => "converge",
        }
    }

    pub fn output(&self) -> &OutputArgs {
        match self {
            Command::Moments(a) => &a.output,
            Command::Renyi(a) => &a.output,
            Command::Shannon(a) => &a.output,
            Command::Asym(a) => &a.output,
            Command::Sums(a) => &a.output,
            Command::Converge(a) => &a.output,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SpaceArg {
    Position,
    Momentum,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    Exact,
    Asymptotic,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum QuantityArg {
    Moment,
    #[value(name = "renyi_total", alias = "renyi-total")]
    RenyiTotal,
    #[value(name = "renyi_radial", alias = "renyi-radial")]
    RenyiRadial,
    #[value(name = "renyi_angular", alias = "renyi-angular")]
    RenyiAngular,
    Shannon,
}

#[derive(Debug, Clone, Args)]
pub struct OutputArgs {
    /// Output file; stdout when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    /// Quadrature relative tolerance (default 1e-10, or OSC_DEFAULT_TOL).
    #[arg(long)]
    pub tol: Option<f64>,
    #[arg(long, default_value_t = 1)]
    pub parallelism: usize,
}

/// A single state, or a template swept over dimensions.
#[derive(Debug, Clone, Args)]
pub struct StateArgs {
    /// `D=..;lambda=..;n=..;mu=v^count,...`
    #[arg(long)]
    pub state: Option<String>,
    /// Comma-separated dimensions.
    #[arg(long = "grid-D", visible_alias = "D-grid", value_delimiter = ',')]
    pub grid_d: Option<Vec<usize>>,
    /// Principal number for grid templates without --state.
    #[arg(long, default_value_t = 0)]
    pub n: u32,
    /// Orbital number for grid templates without --state; the chain is l repeated.
    #[arg(long, default_value_t = 0)]
    pub l: i64,
    #[arg(long, default_value_t = 1.0)]
    pub lambda: f64,
}

#[derive(Debug, Clone, Args)]
pub struct MomentsArgs {
    #[command(flatten)]
    pub state: StateArgs,
    #[arg(long, value_delimiter = ',', default_value = "2")]
    pub k: Vec<f64>,
    #[arg(long, value_enum, default_value_t = SpaceArg::Position)]
    pub space: SpaceArg,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Args)]
pub struct RenyiArgs {
    #[command(flatten)]
    pub state: StateArgs,
    #[arg(long, value_delimiter = ',', default_value = "2")]
    pub q: Vec<f64>,
    #[arg(long, value_enum, default_value_t = SpaceArg::Position)]
    pub space: SpaceArg,
    #[arg(long, value_enum, default_value_t = ModeArg::Exact)]
    pub mode: ModeArg,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Args)]
pub struct ShannonArgs {
    #[command(flatten)]
    pub state: StateArgs,
    #[arg(long, value_enum, default_value_t = SpaceArg::Position)]
    pub space: SpaceArg,
    #[arg(long, value_enum, default_value_t = ModeArg::Exact)]
    pub mode: ModeArg,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Args)]
pub struct AsymArgs {
    #[arg(long)]
    pub sigma: f64,
    #[arg(long)]
    pub rate: f64,
    #[arg(long)]
    pub kappa: f64,
    #[arg(long)]
    pub m: u32,
    #[arg(long = "alpha-grid", value_delimiter = ',', required = true)]
    pub alpha_grid: Vec<f64>,
    #[arg(long, default_value_t = 0)]
    pub order: u32,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Args)]
pub struct SumsArgs {
    #[command(flatten)]
    pub state: StateArgs,
    #[arg(long, value_delimiter = ',', default_value = "2")]
    pub q: Vec<f64>,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Args)]
pub struct ConvergeArgs {
    #[command(flatten)]
    pub state: StateArgs,
    #[arg(long, value_enum, default_value_t = QuantityArg::RenyiTotal)]
    pub quantity: QuantityArg,
    #[arg(long, default_value_t = 2.0)]
    pub q: f64,
    /// Moment order for `--quantity moment`.
    #[arg(long, default_value_t = 2.0)]
    pub k: f64,
    #[arg(long, value_enum, default_value_t = SpaceArg::Position)]
    pub space: SpaceArg,
    #[command(flatten)]
    pub output: OutputArgs,
}
