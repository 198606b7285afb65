use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use documint_core::embed::{DEFAULT_DIMENSION, MIN_DIMENSION};
use documint_core::harness::DEFAULT_MAX_IN_FLIGHT;
use documint_core::RepoThresholds;

#[derive(Debug, Parser)]
#[command(name = "documint", version, about = "Mine docstring corpora and score generated docstrings")]
pub struct Cli {
    /// Diagnostic verbosity on standard error.
    #[arg(long, global = true, value_enum, default_value_t = LogLevel::Warn, env = "DOCUMINT_LOG_LEVEL")]
    pub log_level: LogLevel,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum LogLevel {
    Error,
    Warn,
    Info,
    Debug,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Filter repositories from a manifest and export an Alpaca corpus.
    Mine(MineArgs),
    /// Score one model's docstrings for a function set.
    Bench(BenchArgs),
    /// Compare a base and a tuned scores file.
    Compare(CompareArgs),
    /// Tabulate one or more scores files.
    Report(ReportArgs),
    /// Score a single docstring.
    Score(ScoreArgs),
}

#[derive(Debug, Args)]
pub struct MineArgs {
    /// JSON array of {repo_id, contributors, commits, stars, forks, root_path}.
    #[arg(long)]
    pub manifest: PathBuf,
    /// Corpus output; statistics go to <out>.stats.json.
    #[arg(long)]
    pub out: PathBuf,
    /// Repositories need strictly more stars than this.
    #[arg(long, default_value_t = RepoThresholds::default().stars)]
    pub min_stars: u64,
    #[arg(long, default_value_t = RepoThresholds::default().forks)]
    pub min_forks: u64,
    #[arg(long, default_value_t = RepoThresholds::default().commits)]
    pub min_commits: u64,
    #[arg(long, default_value_t = RepoThresholds::default().contributors)]
    pub min_contributors: u64,
    /// Include class methods (default).
    #[arg(long, overrides_with = "no_include_methods")]
    pub include_methods: bool,
    #[arg(long, overrides_with = "include_methods")]
    pub no_include_methods: bool,
    /// Include functions nested in other functions (default).
    #[arg(long, overrides_with = "no_include_nested")]
    pub include_nested: bool,
    #[arg(long, overrides_with = "include_nested")]
    pub no_include_nested: bool,
    /// Minimum non-whitespace characters in a docstring.
    #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u64).range(1..))]
    pub min_chars: u64,
    /// Glob over repository-relative paths to skip; repeatable.
    #[arg(long, value_name = "GLOB")]
    pub exclude: Vec<String>,
    /// Parser threads (defaults to one per core).
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    pub threads: Option<u64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum EmbedderKind {
    Builtin,
    Remote,
}

#[derive(Debug, Args)]
pub struct EmbedArgs {
    #[arg(long, value_enum, default_value_t = EmbedderKind::Builtin)]
    pub embedder: EmbedderKind,
    /// Embedding service for --embedder remote.
    #[arg(long, env = "DOCUMINT_EMBED_URL")]
    pub embed_url: Option<String>,
    /// Bucket count of the builtin embedder.
    #[arg(long, default_value_t = DEFAULT_DIMENSION as u64, value_parser = clap::value_parser!(u64).range(MIN_DIMENSION as u64..))]
    pub embed_dim: u64,
    /// Per-request timeout in seconds for remote services.
    #[arg(long, default_value_t = 30, value_parser = clap::value_parser!(u64).range(1..))]
    pub timeout: u64,
}

#[derive(Debug, Args)]
pub struct BenchArgs {
    /// JSON array of {task_id, source, reference_docstring, origin_tag}.
    #[arg(long)]
    pub functions: PathBuf,
    /// JSON Lines of {task_id, model_id, docstring}; replaces --model-url.
    #[arg(long)]
    pub pregenerated: Option<PathBuf>,
    /// Generation endpoint (POST {"prompt"} -> {"text"}).
    #[arg(long, env = "DOCUMINT_GEN_URL")]
    pub model_url: Option<String>,
    /// Model name; selects a model in multi-model pregenerated files.
    #[arg(long)]
    pub model_id: Option<String>,
    #[arg(long, default_value_t = DEFAULT_MAX_IN_FLIGHT as u64, value_parser = clap::value_parser!(u64).range(1..))]
    pub max_in_flight: u64,
    #[command(flatten)]
    pub embed: EmbedArgs,
    /// Scores JSON output.
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Md,
    Csv,
}

#[derive(Debug, Args)]
pub struct CompareArgs {
    #[arg(long)]
    pub base: PathBuf,
    #[arg(long)]
    pub tuned: PathBuf,
    #[arg(long, value_enum, default_value_t = Format::Md)]
    pub format: Format,
    /// Write here instead of standard output.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct ReportArgs {
    #[arg(long, required = true, num_args = 1..)]
    pub scores: Vec<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Md)]
    pub format: Format,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
#[command(group(clap::ArgGroup::new("input").required(true).args(["text", "file"])))]
pub struct ScoreArgs {
    /// Docstring text.
    #[arg(long)]
    pub text: Option<String>,
    /// File holding the docstring.
    #[arg(long)]
    pub file: Option<PathBuf>,
    /// Reference docstring; enables the accuracy metric.
    #[arg(long, conflicts_with = "reference_file")]
    pub reference: Option<String>,
    #[arg(long)]
    pub reference_file: Option<PathBuf>,
    #[command(flatten)]
    pub embed: EmbedArgs,
}
