use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(
    name = "fcgp",
    version,
    about = "alpha-fixed cardinality graph partitioning solvers"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Solve one instance read from an edge-list file.
    Solve(SolveArgs),
    /// Write a generated instance as an edge list plus JSON sidecar.
    Generate(GenerateArgs),
    /// Run an oracle-checked sweep and print a CSV table.
    Experiment(ExperimentArgs),
    /// Print the heuristic nice tree decomposition of a graph.
    Decompose(DecomposeArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Algo {
    Brute,
    Bnb,
    Greedy,
    Fptas,
    Topdeg,
    Subexp,
    /// Top-k degree sum; only valid for alpha = 1/3.
    ClosedForm,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    Max,
    Min,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Json,
    Csv,
}

#[derive(Clone, Debug, Args)]
pub struct SolveArgs {
    /// Edge-list file (`n m` header, then `u v` lines with u < v).
    pub graph: PathBuf,
    #[arg(long)]
    pub k: usize,
    /// Edge weight as `a/b`.
    #[arg(long)]
    pub alpha: String,
    #[arg(long, value_enum, default_value = "max")]
    pub mode: Mode,
    #[arg(long, value_enum)]
    pub algo: Algo,
    /// Approximation parameter as `a/b` (fptas, topdeg).
    #[arg(long)]
    pub epsilon: Option<String>,
    /// Largest decomposition width the subexp solver accepts.
    #[arg(long)]
    pub width_budget: Option<usize>,
    /// Accepted for scripting symmetry; every solver is deterministic.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, value_enum, default_value = "json")]
    pub out: OutputFormat,
    /// Also compute the exact optimum and report the ratio.
    #[arg(long)]
    pub oracle: bool,
    /// Report wall time as 0 so output is byte-reproducible.
    #[arg(long)]
    pub no_timing: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Family {
    Gap,
    Gnm,
    Grid,
    Regular,
}

#[derive(Clone, Debug, Args)]
pub struct GenerateArgs {
    #[arg(long, value_enum)]
    pub family: Family,
    /// gap: clique size.
    #[arg(long)]
    pub k: Option<usize>,
    /// gap: number of hub vertices.
    #[arg(long = "N")]
    pub hubs: Option<usize>,
    /// gap: alpha = 1/3 - mu, as `a/b`.
    #[arg(long)]
    pub mu: Option<String>,
    /// gnm, regular: vertex count.
    #[arg(long)]
    pub n: Option<usize>,
    /// gnm: edge count.
    #[arg(long)]
    pub m: Option<usize>,
    /// regular: degree.
    #[arg(long)]
    pub d: Option<usize>,
    #[arg(long)]
    pub rows: Option<usize>,
    #[arg(long)]
    pub cols: Option<usize>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Output path stem; `.edges` and `.json` are appended.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    Approx,
    Gap,
    Subexp,
    Exchange,
}

#[derive(Clone, Debug, Args)]
pub struct ExperimentArgs {
    #[arg(long, value_enum)]
    pub suite: Suite,
    #[arg(long, default_value_t = 100)]
    pub trials: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = 12)]
    pub max_n: usize,
    #[arg(long, default_value_t = 4)]
    pub max_k: usize,
    /// gap: clique size.
    #[arg(long, default_value_t = 30)]
    pub k: usize,
    /// gap: a single mu as `a/b` (default sweeps 1/10 and 1/6).
    #[arg(long)]
    pub mu: Option<String>,
    /// gap: hub count (default k).
    #[arg(long = "N")]
    pub hubs: Option<usize>,
    /// subexp: width budget (default max(ceil(3 sqrt k), 4)).
    #[arg(long)]
    pub width_budget: Option<usize>,
    /// Report wall times as 0 so output is byte-reproducible.
    #[arg(long)]
    pub no_timing: bool,
    /// Where violating instances are written.
    #[arg(long, default_value = "fcgp-repro")]
    pub repro_dir: PathBuf,
}

#[derive(Clone, Debug, Args)]
pub struct DecomposeArgs {
    pub graph: PathBuf,
}
