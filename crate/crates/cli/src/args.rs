use std::path::PathBuf;

use anchor_energy::{MMSet, SolverConfig};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::error::{CliError, CliResult};
use crate::io::{load_graph_mmset, load_mmset};
use crate::metric::Metric;

#[derive(Debug, Parser)]
#[command(
    name = "anchor",
    version,
    about = "Anchor-feature distances between measured metric sets"
)]
pub struct Cli {
    /// Worker threads for parallel sections (default: all cores).
    #[arg(long, global = true, env = "ANCHOR_THREADS")]
    pub threads: Option<usize>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Distance between two MMSets.
    Dist(DistArgs),
    /// Transport plan between two MMSets, optionally with a node matching.
    Plan(PlanArgs),
    /// Single-worker timing of every method on growing inputs.
    Bench(BenchArgs),
    /// Energy-distance permutation test between two graph families.
    Test2(Test2Args),
    /// Leave-one-out nearest-neighbor retrieval over a labeled corpus.
    Knn(KnnArgs),
    /// Random graph generation.
    Gen(GenArgs),
    /// Geodesic cost matrix of an edge-list graph.
    Geodesic(GeodesicArgs),
    /// Re-encode a matrix file (format chosen by output extension).
    Convert(ConvertArgs),
}

/// Two MMSets, each from a cost matrix (`--c1`) or an edge-list graph (`--g1`).
#[derive(Debug, Args)]
pub struct PairInputs {
    /// Cost matrix of the first set (CSV or AEM1 binary).
    #[arg(long, conflicts_with = "g1")]
    pub c1: Option<PathBuf>,
    /// Cost matrix of the second set.
    #[arg(long, conflicts_with = "g2")]
    pub c2: Option<PathBuf>,
    /// Edge list of the first set; geodesic distances become the costs.
    #[arg(long)]
    pub g1: Option<PathBuf>,
    /// Edge list of the second set.
    #[arg(long)]
    pub g2: Option<PathBuf>,
    /// Weights of the first set (default uniform).
    #[arg(long)]
    pub w1: Option<PathBuf>,
    /// Weights of the second set (default uniform).
    #[arg(long)]
    pub w2: Option<PathBuf>,
    /// Replace costs by their normalized ranks.
    #[arg(long)]
    pub rank: bool,
}

impl PairInputs {
    pub fn load(&self) -> CliResult<(MMSet, MMSet)> {
        let one =
            |c: &Option<PathBuf>, g: &Option<PathBuf>, w: &Option<PathBuf>, k: u8| match (c, g) {
                (Some(c), None) => load_mmset(c, w.as_deref(), self.rank),
                (None, Some(g)) => load_graph_mmset(g, w.as_deref(), self.rank),
                _ => Err(CliError::Usage(format!(
                    "exactly one of --c{k} and --g{k} is required"
                ))),
            };
        Ok((
            one(&self.c1, &self.g1, &self.w1, 1)?,
            one(&self.c2, &self.g2, &self.w2, 2)?,
        ))
    }

    pub fn to_json(&self) -> Value {
        json!({
            "c1": self.c1, "c2": self.c2, "g1": self.g1, "g2": self.g2,
            "w1": self.w1, "w2": self.w2, "rank": self.rank,
        })
    }
}

#[derive(Debug, Clone, Args)]
pub struct SolverArgs {
    /// Sinkhorn iteration limit.
    #[arg(long, default_value_t = 10_000)]
    pub max_iter: usize,
    /// Relative plan-change tolerance.
    #[arg(long, default_value_t = 1e-6)]
    pub tol: f64,
    /// Outer iteration limit for GW.
    #[arg(long, default_value_t = 200)]
    pub outer_max_iter: usize,
    /// Random restarts for GW after the product coupling.
    #[arg(long, default_value_t = 0)]
    pub restarts: usize,
}

impl SolverArgs {
    pub fn config(&self, epsilon: f64) -> CliResult<SolverConfig> {
        let cfg = SolverConfig {
            epsilon,
            rel_tol: self.tol,
            max_iter: self.max_iter,
            outer_max_iter: self.outer_max_iter,
            restarts: self.restarts,
        };
        cfg.validate()?;
        Ok(cfg)
    }
}

#[derive(Debug, Args)]
pub struct DistArgs {
    #[arg(long, value_enum)]
    pub metric: Metric,
    #[command(flatten)]
    pub inputs: PairInputs,
    /// Ground-cost exponent (1 or 2).
    #[arg(long, default_value_t = 1)]
    pub p: u32,
    /// Entropic regularization; required for aw and gw.
    #[arg(long)]
    pub eps: Option<f64>,
    #[command(flatten)]
    pub solver: SolverArgs,
    /// Emit a JSON run record instead of a bare value.
    #[arg(long)]
    pub json: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum PlanKind {
    Aep,
    Aw,
    Gw,
}

#[derive(Debug, Args)]
pub struct PlanArgs {
    #[arg(long, value_enum)]
    pub kind: PlanKind,
    #[command(flatten)]
    pub inputs: PairInputs,
    /// Ground-cost exponent for aw.
    #[arg(long, default_value_t = 1)]
    pub p: u32,
    /// Entropic regularization (default 1e-5 for aw, 10 for gw).
    #[arg(long)]
    pub eps: Option<f64>,
    #[command(flatten)]
    pub solver: SolverArgs,
    /// Plan output file (CSV, or binary for .bin/.aem).
    #[arg(long)]
    pub out: PathBuf,
    /// Also write the row-argmax matching here and print its order correlation.
    #[arg(long = "match")]
    pub match_out: Option<PathBuf>,
    /// Latent order of the first set's points (one real per point).
    #[arg(long, requires = "order2")]
    pub order1: Option<PathBuf>,
    /// Latent order of the second set's points.
    #[arg(long, requires = "order1")]
    pub order2: Option<PathBuf>,
    #[arg(long)]
    pub json: bool,
}

#[derive(Debug, Args)]
pub struct BenchArgs {
    /// Point counts, comma separated (each at least 32).
    #[arg(long, value_delimiter = ',', required = true)]
    pub sizes: Vec<usize>,
    /// Timed runs per (method, size); the minimum is reported.
    #[arg(long, default_value_t = 3)]
    pub repeats: usize,
    /// Methods to time.
    #[arg(
        long,
        value_enum,
        value_delimiter = ',',
        default_value = "ae,ae-naive,aw,gw"
    )]
    pub methods: Vec<Metric>,
    /// CSV output (default stdout).
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Subsample this cost matrix instead of generating point clouds.
    #[arg(long)]
    pub cost: Option<PathBuf>,
    /// Largest size at which ae-naive is timed.
    #[arg(long, default_value_t = 1024)]
    pub naive_max: usize,
    /// Largest size at which aw and gw are timed.
    #[arg(long, default_value_t = 256)]
    pub solver_max: usize,
    #[arg(long, default_value_t = crate::metric::AW_DEFAULT_EPS)]
    pub aw_eps: f64,
    #[arg(long, default_value_t = crate::metric::GW_DEFAULT_EPS)]
    pub gw_eps: f64,
    #[command(flatten)]
    pub solver: SolverArgs,
    /// Dimension of generated point clouds.
    #[arg(long, default_value_t = 3)]
    pub dim: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Feature {
    Degree,
    Clustering,
}

#[derive(Debug, Args)]
pub struct Test2Args {
    /// Directory of edge lists, or a manifest listing them.
    #[arg(long)]
    pub dir1: PathBuf,
    #[arg(long)]
    pub dir2: PathBuf,
    #[arg(long, value_enum, default_value = "degree")]
    pub feature: Feature,
    #[arg(long, default_value_t = 199)]
    pub nperm: usize,
    #[arg(long, default_value_t = 0.05)]
    pub alpha: f64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Debug, Args)]
pub struct KnnArgs {
    /// Directory of cost matrices (.csv/.bin/.aem) and edge lists (.edges/.el).
    #[arg(long)]
    pub corpus: PathBuf,
    /// Lines of `item label`; items are file names or stems.
    #[arg(long)]
    pub labels: PathBuf,
    #[arg(long, value_enum)]
    pub metric: Metric,
    #[arg(long, default_value_t = 1)]
    pub p: u32,
    /// Entropic regularization (default 1e-5 for aw, 10 for gw).
    #[arg(long)]
    pub eps: Option<f64>,
    #[command(flatten)]
    pub solver: SolverArgs,
    #[arg(long)]
    pub rank: bool,
    /// Per-pair CSV of (item1, item2, distance, seconds).
    #[arg(long)]
    pub pairs: Option<PathBuf>,
    /// Also write the summary JSON here.
    #[arg(long)]
    pub summary: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Model {
    Ba,
    Er,
}

#[derive(Debug, Args)]
pub struct GenArgs {
    #[arg(long, value_enum)]
    pub model: Model,
    #[arg(long)]
    pub n: usize,
    /// Attachments per arriving node (ba).
    #[arg(long, default_value_t = 2)]
    pub m: usize,
    /// Edge probability (er).
    #[arg(long, default_value_t = 0.1)]
    pub p_edge: f64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Number of graphs; graph k uses seed + k.
    #[arg(long, default_value_t = 1)]
    pub count: usize,
    /// Output file, or directory when count > 1 (default stdout).
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct GeodesicArgs {
    #[arg(long)]
    pub graph: PathBuf,
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Debug, Args)]
pub struct ConvertArgs {
    #[arg(long)]
    pub input: PathBuf,
    #[arg(long)]
    pub output: PathBuf,
}
