use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use xbench_core::graphcut::{DEFAULT_LAMBDA, Pattern};

/// Cross-runtime algorithm benchmark suite.
#[derive(Debug, Parser)]
#[command(name = "xbench", version)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run workloads and write benchmark records.
    Run(RunArgs),
    /// Render a comparison table from one or more result files.
    Report(ReportArgs),
    /// Threshold a PGM image and solve the foreground expansion move.
    Segment(SegmentArgs),
    /// Write the foreground expansion graph of a PGM image.
    ExtractGraph(ExtractArgs),
    /// Generate a synthetic PGM test image.
    GenImage(GenImageArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum RunFormat {
    Json,
    Csv,
    Md,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ReportFormat {
    Md,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum PgmEncoding {
    /// ASCII P2.
    Plain,
    /// Binary P5.
    Raw,
}

#[derive(Debug, Args)]
pub struct RunArgs {
    /// Comma-separated workload ids, or `all`.
    #[arg(long, default_value = "all")]
    pub suite: String,
    /// Seed for input generation; falls back to XBENCH_SEED, then 42.
    #[arg(long, env = "XBENCH_SEED", default_value_t = 42)]
    pub seed: u64,
    /// Measured repetitions per workload.
    #[arg(long, default_value_t = 10)]
    pub reps: u64,
    /// Unmeasured runs before the measured ones.
    #[arg(long, default_value_t = 1)]
    pub warmup: u64,
    /// Override inner_iterations for every selected workload.
    #[arg(long)]
    pub inner: Option<u64>,
    /// Parameter override, `key=value` (every selected workload that has the
    /// key) or `workload.key=value`. Repeatable.
    #[arg(long = "param", value_name = "KEY=VALUE")]
    pub params: Vec<String>,
    /// Output file; the formatted result goes to stdout when omitted.
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = RunFormat::Json)]
    pub format: RunFormat,
    /// Environment tag stored in each record.
    #[arg(long, default_value = "native")]
    pub env: String,
    /// Leave timestamp and host empty.
    #[arg(long)]
    pub no_meta: bool,
}

#[derive(Debug, Args)]
pub struct ReportArgs {
    /// Result files (schema v1 JSON).
    #[arg(required = true)]
    pub files: Vec<PathBuf>,
    #[arg(long, value_enum, default_value_t = ReportFormat::Md)]
    pub format: ReportFormat,
    /// Environment tag speedups are relative to; defaults to the first seen.
    #[arg(long)]
    pub baseline: Option<String>,
    /// Pool samples of duplicate (workload, environment) pairs.
    #[arg(long)]
    pub merge: bool,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct SegmentArgs {
    pub image: PathBuf,
    #[arg(long, default_value_t = 128)]
    pub threshold: u8,
    #[arg(long, default_value_t = DEFAULT_LAMBDA)]
    pub lambda: u64,
    /// Output PGM with the segmented labeling.
    #[arg(long)]
    pub out: PathBuf,
    #[arg(long, value_enum, default_value_t = PgmEncoding::Plain)]
    pub pgm: PgmEncoding,
}

#[derive(Debug, Args)]
pub struct ExtractArgs {
    pub image: PathBuf,
    #[arg(long, default_value_t = 128)]
    pub threshold: u8,
    #[arg(long, default_value_t = DEFAULT_LAMBDA)]
    pub lambda: u64,
    /// Graph file; stdout when omitted.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct GenImageArgs {
    #[arg(long)]
    pub width: usize,
    #[arg(long)]
    pub height: usize,
    #[arg(long, default_value = "blobs")]
    pub pattern: Pattern,
    #[arg(long, env = "XBENCH_SEED", default_value_t = 42)]
    pub seed: u64,
    #[arg(long)]
    pub out: PathBuf,
    #[arg(long, value_enum, default_value_t = PgmEncoding::Plain)]
    pub pgm: PgmEncoding,
}
