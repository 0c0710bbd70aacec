//! Command-line arguments. Every command is also a [`RunConfig`]: it is
//! written next to the outputs as `run.json` and `pvcolor replay` runs it
//! again.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

#[derive(Parser, Debug)]
#[command(name = "pvcolor", version, about = "Poisson-Voronoi maps, peeling and colorings")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "command", rename_all = "kebab-case")]
pub enum Command {
    /// Sample a Poisson point set.
    Sample(SampleCmd),
    /// Delaunay triangulation of sampled or given points.
    Triangulate(TriangulateCmd),
    /// Deterministic 6-coloring.
    #[command(name = "color-det6")]
    ColorDet6(Det6Cmd),
    /// Randomized symbol/component coloring.
    ColorRand(RandCmd),
    /// Three-coloring of a 1-D Poisson sample.
    #[command(name = "color-1d")]
    #[serde(rename = "color-1d")]
    Color1d(LineCmd),
    /// Synchronous low-degree peeling.
    Peel(PeelCmd),
    /// Monte-Carlo experiments.
    Experiment(ExperimentCmd),
    /// SVG figure of a colored map.
    Render(RenderCmd),
    /// Check a coloring CSV against a triangulation.
    Verify(VerifyCmd),
    /// Re-run a saved `run.json`.
    Replay(ReplayCmd),
}

impl Command {
    pub fn out_dir(&self) -> Option<&PathBuf> {
        match self {
            Command::Sample(c) => Some(&c.out.out),
            Command::Triangulate(c) => Some(&c.out.out),
            Command::ColorDet6(c) => Some(&c.out.out),
            Command::ColorRand(c) => Some(&c.out.out),
            Command::Color1d(c) => Some(&c.out.out),
            Command::Peel(c) => Some(&c.out.out),
            Command::Experiment(c) => Some(&c.out),
            Command::Render(c) => Some(&c.out.out),
            Command::Verify(_) | Command::Replay(_) => None,
        }
    }

    pub fn set_out_dir(&mut self, dir: PathBuf) {
        match self {
            Command::Sample(c) => c.out.out = dir,
            Command::Triangulate(c) => c.out.out = dir,
            Command::ColorDet6(c) => c.out.out = dir,
            Command::ColorRand(c) => c.out.out = dir,
            Command::Color1d(c) => c.out.out = dir,
            Command::Peel(c) => c.out.out = dir,
            Command::Experiment(c) => c.out = dir,
            Command::Render(c) => c.out.out = dir,
            Command::Verify(_) | Command::Replay(_) => {}
        }
    }
}

/// A persisted invocation.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunConfig {
    pub version: String,
    #[serde(flatten)]
    pub command: Command,
}

#[derive(Args, Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct SampleArgs {
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Half side of the analysis window Q(0, h).
    #[arg(long, default_value_t = 50.0)]
    pub half_side: f64,
    /// Extra margin sampled around the analysis window.
    #[arg(long, default_value_t = 20.0)]
    pub pad: f64,
    #[arg(long, default_value_t = 1.0)]
    pub intensity: f64,
}

#[derive(Args, Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct OutArgs {
    /// Output directory (created if missing).
    #[arg(long, default_value = ".")]
    pub out: PathBuf,
}

#[derive(Args, Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SampleCmd {
    #[command(flatten)]
    #[serde(flatten)]
    pub sample: SampleArgs,
    #[command(flatten)]
    #[serde(flatten)]
    pub out: OutArgs,
}

#[derive(Args, Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TriangulateCmd {
    /// `x y` point file to triangulate instead of sampling.
    #[arg(long)]
    pub points: Option<PathBuf>,
    #[command(flatten)]
    #[serde(flatten)]
    pub sample: SampleArgs,
    #[command(flatten)]
    #[serde(flatten)]
    pub out: OutArgs,
}

#[derive(Args, Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Det6Cmd {
    #[command(flatten)]
    #[serde(flatten)]
    pub sample: SampleArgs,
    /// Also write `map.svg`.
    #[arg(long)]
    #[serde(default)]
    pub svg: bool,
    #[command(flatten)]
    #[serde(flatten)]
    pub out: OutArgs,
}

#[derive(Args, Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct RandCmd {
    #[command(flatten)]
    #[serde(flatten)]
    pub sample: SampleArgs,
    #[arg(long, default_value_t = 2)]
    pub num_symbols: u32,
    #[arg(long, default_value_t = pvcolor::chromatics::DEFAULT_COMPONENT_CAP)]
    pub component_cap: usize,
    #[arg(long, default_value_t = pvcolor::chromatics::DEFAULT_NODE_BUDGET)]
    pub node_budget: u64,
    #[arg(long)]
    #[serde(default)]
    pub svg: bool,
    #[command(flatten)]
    #[serde(flatten)]
    pub out: OutArgs,
}

#[derive(Args, Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LineCmd {
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = 1000.0)]
    pub length: f64,
    #[arg(long, default_value_t = 1.0)]
    pub intensity: f64,
    #[command(flatten)]
    #[serde(flatten)]
    pub out: OutArgs,
}

#[derive(Args, Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct PeelCmd {
    #[command(flatten)]
    #[serde(flatten)]
    pub sample: SampleArgs,
    #[arg(long, default_value_t = 5)]
    pub max_deg: usize,
    /// Only vertices in Q(0, r) may be deleted.
    #[arg(long)]
    pub region_half_side: Option<f64>,
    #[arg(long)]
    pub max_rounds: Option<usize>,
    #[command(flatten)]
    #[serde(flatten)]
    pub out: OutArgs,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum RenderScheme {
    Det6,
    Rand,
    /// Peel level modulo the palette.
    Levels,
}

#[derive(Args, Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct RenderCmd {
    #[command(flatten)]
    #[serde(flatten)]
    pub sample: SampleArgs,
    #[arg(long, value_enum, default_value_t = RenderScheme::Det6)]
    pub scheme: RenderScheme,
    #[arg(long, default_value_t = 2)]
    pub num_symbols: u32,
    /// Half side of the drawn region; defaults to the analysis window.
    #[arg(long)]
    pub viewport: Option<f64>,
    #[arg(long, default_value_t = 0.05)]
    pub stroke_width: f64,
    #[arg(long, default_value_t = 800)]
    pub pixels: u32,
    #[arg(long)]
    #[serde(default)]
    pub delaunay: bool,
    #[arg(long)]
    #[serde(default)]
    pub show_levels: bool,
    #[command(flatten)]
    #[serde(flatten)]
    pub out: OutArgs,
}

#[derive(Args, Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerifyCmd {
    #[arg(long)]
    pub coloring: PathBuf,
    /// Triangulation JSON.
    #[arg(long)]
    pub graph: PathBuf,
    /// Check contaminated vertices too.
    #[arg(long)]
    #[serde(default)]
    pub all: bool,
}

#[derive(Args, Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ReplayCmd {
    #[arg(long)]
    pub config: PathBuf,
    /// Write outputs here instead of the recorded directory.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExperimentCmd {
    #[command(subcommand)]
    #[serde(flatten)]
    pub kind: Experiment,
    #[arg(long, default_value_t = 0, global = true)]
    #[serde(rename = "seedBase")]
    pub seed_base: u64,
    /// Output directory (created if missing).
    #[arg(long, default_value = ".", global = true)]
    pub out: PathBuf,
}

#[derive(Subcommand, Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "experiment", rename_all = "kebab-case", rename_all_fields = "camelCase")]
pub enum Experiment {
    /// P(Q(0,R) not alpha-sealed) against the closed-form bound.
    Sealed {
        #[arg(long = "r-grid", alias = "R", value_delimiter = ',', default_values_t = [10.0, 20.0])]
        r_grid: Vec<f64>,
        #[arg(long = "alpha-grid", alias = "alpha", value_delimiter = ',', default_values_t = [3.0, 4.0, 5.0])]
        alpha_grid: Vec<f64>,
        #[arg(long, default_value_t = 10_000)]
        trials: u64,
    },
    /// Frequency of long Delaunay edges meeting Q(0, rho).
    LongEdge {
        #[arg(long, default_value_t = 20.0)]
        rho: f64,
        #[arg(long = "ell-grid", alias = "ell", value_delimiter = ',', default_values_t = [15.0, 20.0])]
        ell_grid: Vec<f64>,
        #[arg(long, default_value_t = 500)]
        trials: u64,
    },
    /// The five events Omega_0..Omega_4 per R.
    Omega {
        #[arg(long = "r-grid", alias = "R", value_delimiter = ',', default_values_t = [10.0, 20.0, 40.0])]
        r_grid: Vec<f64>,
        #[arg(long, default_value_t = 200)]
        trials: u64,
    },
    /// Survivors of maxDeg-5 peeling restricted to Q(0, 3R) inside Q(0, R).
    Core {
        #[arg(long = "r-grid", alias = "R", value_delimiter = ',', default_values_t = [10.0, 20.0, 40.0])]
        r_grid: Vec<f64>,
        #[arg(long)]
        max_rounds: Option<usize>,
        #[arg(long, default_value_t = 200)]
        trials: u64,
    },
    /// Open clusters of a dependent site process.
    Sites {
        #[arg(long, value_enum, default_value_t = SiteKind::Removal)]
        predicate: SiteKind,
        #[arg(long = "r-grid", alias = "R", value_delimiter = ',', default_values_t = [10.0])]
        r_grid: Vec<f64>,
        #[arg(long)]
        max_rounds: Option<usize>,
        /// Area interval for the area predicate.
        #[arg(long, default_value_t = 1.0)]
        lo: f64,
        #[arg(long, default_value_t = 1.0001)]
        hi: f64,
        #[arg(long, default_value_t = 20)]
        cols: usize,
        #[arg(long, default_value_t = 20)]
        rows: usize,
        #[arg(long, default_value_t = 5)]
        trials: u64,
    },
    /// Peel-round components, 4-core, predecessor radii and area statistics.
    Explore {
        #[arg(long, default_value_t = 50.0)]
        half_side: f64,
        #[arg(long, default_value_t = 20.0)]
        pad: f64,
        #[arg(long, default_value_t = 5)]
        trials: u64,
    },
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SiteKind {
    Removal,
    Area,
}
