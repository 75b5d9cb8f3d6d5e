use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use dynhh::NodeId;

#[derive(Debug, Parser)]
#[command(
    name = "dynhh",
    version,
    about = "Highway-hierarchy route planning with dynamic travel times"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Build a hierarchy from a graph file and print its level sizes.
    Preprocess(PreprocessArgs),
    /// Answer one query on a hierarchy.
    Query(QueryArgs),
    /// Exact bidirectional Dijkstra on a graph file.
    Oracle(OracleArgs),
    /// Compare oracle, heuristic and naive queries under random travel times.
    Bench(BenchArgs),
    /// Draw a random travel-time scenario for a graph.
    GenWeights(GenWeightsArgs),
    /// Answer one query and write the path to a file.
    ExportPath(ExportPathArgs),
}

#[derive(Debug, Args)]
pub struct PreprocessArgs {
    /// Graph in the edge-list text format.
    #[arg(long)]
    pub graph: PathBuf,
    /// Neighbourhood size H.
    #[arg(long = "hh-H", value_name = "N")]
    pub neighborhood_size: u32,
    /// Number of levels above the input graph.
    #[arg(long, value_name = "N")]
    pub levels: u32,
    #[arg(long)]
    pub out: PathBuf,
    /// Largest in-degree of a bypassable node.
    #[arg(long, default_value_t = 4)]
    pub max_in: u32,
    /// Largest out-degree of a bypassable node.
    #[arg(long, default_value_t = 4)]
    pub max_out: u32,
    /// Allowed excess of shortcuts over removed arcs when bypassing a node.
    #[arg(long, default_value_t = 2)]
    pub bypass_slack: u32,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    /// Hierarchy search with dynamic keys.
    Heuristic,
    /// Static hierarchy path re-costed with dynamic weights.
    Naive,
    /// Exact bidirectional Dijkstra with dynamic weights.
    Oracle,
}

#[derive(Debug, Args)]
pub struct RouteArgs {
    /// Hierarchy file written by `preprocess`.
    #[arg(long)]
    pub hh: PathBuf,
    #[arg(long)]
    pub source: NodeId,
    #[arg(long)]
    pub target: NodeId,
    /// Dynamic travel times as `<arc_id> <weight_ms>` lines.
    #[arg(long)]
    pub weights: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Mode::Heuristic)]
    pub mode: Mode,
}

#[derive(Debug, Args)]
pub struct QueryArgs {
    #[command(flatten)]
    pub route: RouteArgs,
}

#[derive(Debug, Args)]
pub struct OracleArgs {
    #[arg(long)]
    pub graph: PathBuf,
    #[arg(long)]
    pub source: NodeId,
    #[arg(long)]
    pub target: NodeId,
    #[arg(long)]
    pub weights: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct BenchArgs {
    #[arg(long)]
    pub hh: PathBuf,
    /// Number of reachable source–target pairs to evaluate.
    #[arg(long, value_name = "N")]
    pub queries: usize,
    #[arg(long)]
    pub seed: u64,
    #[arg(long, default_value_t = 1)]
    pub min_factor: u64,
    #[arg(long, default_value_t = 15)]
    pub max_factor: u64,
    /// Only use targets settled at or after this position by a static
    /// Dijkstra search from the source.
    #[arg(long, value_name = "N")]
    pub min_rank: Option<usize>,
    /// Arc ids that keep their static weight in every scenario.
    #[arg(long)]
    pub exclude: Option<PathBuf>,
    /// Also write the key=value report to this file.
    #[arg(long)]
    pub report: Option<PathBuf>,
    /// Time every query three times and report the median.
    #[arg(long)]
    pub median_of_3: bool,
}

#[derive(Debug, Args)]
pub struct GenWeightsArgs {
    #[arg(long)]
    pub graph: PathBuf,
    #[arg(long)]
    pub seed: u64,
    #[arg(long)]
    pub min_factor: u64,
    #[arg(long)]
    pub max_factor: u64,
    /// Arc ids (one per line) to leave out of the scenario.
    #[arg(long)]
    pub exclude: Option<PathBuf>,
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum PathFormat {
    /// One node id per line, source first.
    Nodes,
    /// One `<arc_id> <tail> <head> <weight_ms>` line per arc.
    Arcs,
}

#[derive(Debug, Args)]
pub struct ExportPathArgs {
    #[command(flatten)]
    pub route: RouteArgs,
    #[arg(long)]
    pub out: PathBuf,
    #[arg(long, value_enum, default_value_t = PathFormat::Nodes)]
    pub format: PathFormat,
}
