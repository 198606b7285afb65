//! Docstring mining and quality scoring for Python code.
pub mod cancel;
pub mod embed;
pub mod fsio;
pub mod hash;
mod http;
pub mod metrics;
pub mod harness;
pub mod miner;
pub mod parser;

pub use cancel::CancelToken;
pub use embed::{embed_builtin, embed_remote, BuiltinEmbedder, EmbedError, Embedder, EmbeddingVector, ProviderConfig, ProviderKind, RemoteEmbedder};
pub use http::TransportError;
pub use metrics::{accuracy, aggregate, band_verdict, clarity, conciseness, relative_improvement, text_stats, BandVerdict, ClarityBand, ConcisenessBand, Improvement, MetricError, MetricVector, TextStats};
pub use miner::{content_hash, dedup_samples, export_alpaca, filter_repo, load_manifest, mine_tree, mine_trees, CorpusSample, FilterVerdict, MineConfig, MineError, MiningStats, RepoMeta, RepoThresholds, SampleOrigin};
pub use parser::{parse_single_function, scan_module, scan_str, strip_docstring, DocstringBlock, FunctionRecord, Param, ParseFailure, QuoteStyle, SourceSpan};
pub use harness::{
    build_prompt, collect_pregenerated, collect_remote, compare_runs, load_function_set, load_pregenerated, load_scores,
    parse_function_set, parse_scores, render_report, score_run, unwrap_generation, ComparisonReport, Deltas,
    FunctionTask, GenerationEndpoint, GenerationRecord, HarnessError, OriginTag, ReportFormat, ReportInput, RunScore,
    TaskScore,
};
