//! `parcore`: batch core maintenance from the command line.
//!
//! Exit codes: 0 ok, 1 runtime or I/O failure, 2 usage, 3 verification mismatch.

mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use parcore::generate::GraphModel;
use parcore::{BatchMode, WORKERS_ENV};

#[derive(Parser, Debug)]
#[command(
    name = "parcore",
    version,
    about = "Batch k-core maintenance over superior edge sets"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Insert a batch of edges and report the maintenance run.
    Insert(UpdateArgs),
    /// Delete a batch of edges and report the maintenance run.
    Delete(UpdateArgs),
    /// Check a core file against a fresh decomposition of the graph.
    Verify(VerifyArgs),
    /// Time the engine over one or more worker counts; one TSV row each.
    Bench(BenchArgs),
    /// Write a synthetic graph, and optionally a batch for it.
    Gen(GenArgs),
}

#[derive(Args, Debug)]
pub struct UpdateArgs {
    /// Edge list of the starting graph.
    #[arg(long)]
    pub graph: PathBuf,
    /// Edge list of the batch.
    #[arg(long)]
    pub batch: PathBuf,
    #[arg(long, env = WORKERS_ENV, default_value_t = 1, value_parser = clap::value_parser!(u16).range(1..))]
    pub threads: u16,
    /// Apply edges one at a time instead of in superior edge set rounds.
    #[arg(long)]
    pub baseline: bool,
    /// Write `id core` lines for the final graph.
    #[arg(long)]
    pub out_cores: Option<PathBuf>,
    /// Write the per-round change log.
    #[arg(long)]
    pub log: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    #[arg(long)]
    pub graph: PathBuf,
    #[arg(long)]
    pub cores: PathBuf,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    Insert,
    Delete,
}

impl From<ModeArg> for BatchMode {
    fn from(m: ModeArg) -> Self {
        match m {
            ModeArg::Insert => BatchMode::Insert,
            ModeArg::Delete => BatchMode::Delete,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ModelArg {
    Er,
    Ba,
}

impl From<ModelArg> for GraphModel {
    fn from(m: ModelArg) -> Self {
        match m {
            ModelArg::Er => GraphModel::Er,
            ModelArg::Ba => GraphModel::Ba,
        }
    }
}

#[derive(Args, Debug)]
pub struct Synthetic {
    #[arg(long = "gen", value_enum)]
    pub model: Option<ModelArg>,
    #[arg(long, default_value_t = 1 << 15)]
    pub n: usize,
    /// Edges contributed per vertex (mean degree is twice this).
    #[arg(long, default_value_t = 8)]
    pub deg: usize,
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
}

#[derive(Args, Debug)]
pub struct BenchArgs {
    /// Benchmark on this edge list instead of a generated graph.
    #[arg(long, conflicts_with = "model")]
    pub graph: Option<PathBuf>,
    #[command(flatten)]
    pub synthetic: Synthetic,
    #[arg(long, value_enum, default_value = "insert")]
    pub mode: ModeArg,
    #[arg(long, default_value_t = 10_000)]
    pub batch_size: usize,
    /// Delete-then-reinsert or delete a share of the edges at this level
    /// instead of uniform sampling.
    #[arg(long)]
    pub core_stratum: Option<u32>,
    /// Share of the stratum's edges to use with `--core-stratum`.
    #[arg(long, default_value_t = 0.2)]
    pub stratum_fraction: f64,
    #[arg(long, env = WORKERS_ENV, value_delimiter = ',', default_value = "1", value_parser = clap::value_parser!(u16).range(1..))]
    pub threads: Vec<u16>,
    /// Also time the one-edge-at-a-time path and report speedups against it.
    #[arg(long)]
    pub baseline: bool,
    /// Time the baseline on only the first N batch edges.
    #[arg(long, requires = "baseline")]
    pub baseline_sample: Option<usize>,
}

#[derive(Args, Debug)]
pub struct GenArgs {
    #[command(flatten)]
    pub synthetic: Synthetic,
    /// Output edge list; standard output if absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Also write a batch of `--batch-size` edges for `--mode`.
    #[arg(long, requires = "batch_size")]
    pub batch: Option<PathBuf>,
    #[arg(long)]
    pub batch_size: Option<usize>,
    #[arg(long, value_enum, default_value = "insert")]
    pub mode: ModeArg,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("parcore: {err}");
            ExitCode::from(err.exit_code())
        }
    }
}
