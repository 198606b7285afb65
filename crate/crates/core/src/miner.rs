//! Instruction-corpus mining: repository filtering, tree walking,
//! deduplication and Alpaca export.

use std::fmt;
use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};

use globset::{Glob, GlobSet, GlobSetBuilder};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use walkdir::WalkDir;

use crate::cancel::CancelToken;
use crate::fsio::write_atomic;
use crate::hash::fnv1a_64;
use crate::parser::{parse_single_function, scan_module, strip_docstring, FunctionRecord};

#[derive(Debug, thiserror::Error)]
pub enum MineError {
    #[error("cannot read source tree {path}: {source}")]
    Walk {
        path: PathBuf,
        #[source]
        source: io::Error,
    },
    #[error("invalid exclude pattern {pattern:?}: {message}")]
    InvalidGlob { pattern: String, message: String },
    #[error("cannot build worker pool: {0}")]
    Pool(String),
    #[error("cannot read manifest {path}: {message}")]
    Manifest { path: PathBuf, message: String },
    #[error("mining cancelled")]
    Cancelled,
}

/// Repository metadata as supplied by the input manifest.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RepoMeta {
    pub repo_id: String,
    pub contributors: u64,
    pub commits: u64,
    pub stars: u64,
    pub forks: u64,
    pub root_path: PathBuf,
}

/// Strict lower bounds a repository must exceed on every count.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct RepoThresholds {
    pub contributors: u64,
    pub commits: u64,
    pub stars: u64,
    pub forks: u64,
}

impl Default for RepoThresholds {
    fn default() -> Self {
        Self {
            contributors: 50,
            commits: 5_000,
            stars: 35_000,
            forks: 10_000,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RepoCriterion {
    Contributors,
    Commits,
    Stars,
    Forks,
}

impl fmt::Display for RepoCriterion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            RepoCriterion::Contributors => "contributors",
            RepoCriterion::Commits => "commits",
            RepoCriterion::Stars => "stars",
            RepoCriterion::Forks => "forks",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FilterVerdict {
    Accept,
    /// First criterion (in contributors, commits, stars, forks order) that
    /// was not strictly exceeded.
    Reject {
        criterion: RepoCriterion,
        value: u64,
        threshold: u64,
    },
}

impl FilterVerdict {
    pub fn is_accept(&self) -> bool {
        matches!(self, FilterVerdict::Accept)
    }
}

pub fn filter_repo(meta: &RepoMeta, thresholds: &RepoThresholds) -> FilterVerdict {
    let checks = [
        (RepoCriterion::Contributors, meta.contributors, thresholds.contributors),
        (RepoCriterion::Commits, meta.commits, thresholds.commits),
        (RepoCriterion::Stars, meta.stars, thresholds.stars),
        (RepoCriterion::Forks, meta.forks, thresholds.forks),
    ];
    checks
        .into_iter()
        .find(|(_, value, threshold)| value <= threshold)
        .map_or(FilterVerdict::Accept, |(criterion, value, threshold)| {
            FilterVerdict::Reject {
                criterion,
                value,
                threshold,
            }
        })
}

#[derive(Debug, Clone)]
pub struct MineConfig {
    pub include_methods: bool,
    pub include_nested: bool,
    /// Minimum non-whitespace characters in a docstring.
    pub min_chars: usize,
    /// Globs matched against paths relative to the tree root.
    pub exclude: Vec<String>,
    /// Worker threads for parsing; `None` uses the global pool.
    pub threads: Option<usize>,
    pub cancel: Option<CancelToken>,
}

impl Default for MineConfig {
    fn default() -> Self {
        Self {
            include_methods: true,
            include_nested: true,
            min_chars: 1,
            exclude: Vec::new(),
            threads: None,
            cancel: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SampleOrigin {
    pub repo_id: String,
    /// Path relative to the repository root, `/`-separated.
    pub path: String,
    pub qualified_name: String,
}

/// One instruction/response training pair.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CorpusSample {
    /// Function source with its docstring removed.
    pub instruction: String,
    /// Cleaned docstring content.
    pub response: String,
    pub origin: SampleOrigin,
    pub content_hash: u64,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct MiningStats {
    pub files_seen: u64,
    pub files_parsed: u64,
    pub parse_failures: u64,
    pub functions_seen: u64,
    pub functions_with_docstring: u64,
    pub filtered_by_config: u64,
    pub duplicates_removed: u64,
    pub samples_exported: u64,
}

impl MiningStats {
    pub fn invariants_hold(&self) -> bool {
        self.files_seen == self.files_parsed + self.parse_failures
            && self.functions_with_docstring <= self.functions_seen
            && self.samples_exported + self.duplicates_removed + self.filtered_by_config
                == self.functions_with_docstring
    }

    fn absorb(&mut self, other: &MiningStats) {
        self.files_seen += other.files_seen;
        self.files_parsed += other.files_parsed;
        self.parse_failures += other.parse_failures;
        self.functions_seen += other.functions_seen;
        self.functions_with_docstring += other.functions_with_docstring;
        self.filtered_by_config += other.filtered_by_config;
    }
}

/// Collapses runs of spaces and tabs to one space and strips trailing
/// whitespace from every line and from the text.
pub fn normalize_whitespace(text: &str) -> String {
    let mut out = String::with_capacity(text.len());
    for (i, line) in text.split('\n').enumerate() {
        if i > 0 {
            out.push('\n');
        }
        let mut in_run = false;
        for c in line.trim_end().chars() {
            if c == ' ' || c == '\t' {
                if !in_run {
                    out.push(' ');
                }
                in_run = true;
            } else {
                out.push(c);
                in_run = false;
            }
        }
    }
    out.truncate(out.trim_end().len());
    out
}

pub fn content_hash(instruction: &str, response: &str) -> u64 {
    let mut buf = normalize_whitespace(instruction).into_bytes();
    buf.push(0);
    buf.extend_from_slice(normalize_whitespace(response).as_bytes());
    fnv1a_64(&buf)
}

/// Drops samples whose content hash was already seen; first occurrence
/// wins and order is preserved.
pub fn dedup_samples(samples: Vec<CorpusSample>) -> (Vec<CorpusSample>, u64) {
    let mut seen = std::collections::HashSet::with_capacity(samples.len());
    let before = samples.len();
    let unique: Vec<CorpusSample> = samples
        .into_iter()
        .filter(|s| seen.insert(s.content_hash))
        .collect();
    let removed = (before - unique.len()) as u64;
    (unique, removed)
}

fn build_excludes(patterns: &[String]) -> Result<GlobSet, MineError> {
    let mut builder = GlobSetBuilder::new();
    for p in patterns {
        let glob = Glob::new(p).map_err(|e| MineError::InvalidGlob {
            pattern: p.clone(),
            message: e.to_string(),
        })?;
        builder.add(glob);
    }
    builder.build().map_err(|e| MineError::InvalidGlob {
        pattern: patterns.join(","),
        message: e.to_string(),
    })
}

fn is_python_file(path: &Path) -> bool {
    path.extension()
        .and_then(|e| e.to_str())
        .is_some_and(|e| e.eq_ignore_ascii_case("py"))
}

/// Lists `.py` files under `root`, relative and `/`-separated, sorted.
fn discover(root: &Path, excludes: &GlobSet) -> Result<Vec<(String, PathBuf)>, MineError> {
    fs::metadata(root).map_err(|source| MineError::Walk {
        path: root.to_path_buf(),
        source,
    })?;
    let mut files = Vec::new();
    for entry in WalkDir::new(root).follow_links(false) {
        let entry = match entry {
            Ok(e) => e,
            Err(e) if e.depth() == 0 => {
                return Err(MineError::Walk {
                    path: root.to_path_buf(),
                    source: e.into(),
                })
            }
            Err(e) => {
                tracing::warn!(error = %e, "skipping unreadable directory entry");
                continue;
            }
        };
        if !entry.file_type().is_file() || !is_python_file(entry.path()) {
            continue;
        }
        let rel = entry
            .path()
            .strip_prefix(root)
            .unwrap_or(entry.path())
            .components()
            .map(|c| c.as_os_str().to_string_lossy())
            .collect::<Vec<_>>()
            .join("/");
        let rel = if rel.is_empty() {
            entry.file_name().to_string_lossy().into_owned()
        } else {
            rel
        };
        if excludes.is_match(&rel) {
            continue;
        }
        files.push((rel, entry.into_path()));
    }
    files.sort_by(|a, b| a.0.cmp(&b.0));
    Ok(files)
}

struct FileOutcome {
    stats: MiningStats,
    samples: Vec<CorpusSample>,
}

fn keep(record: &FunctionRecord, config: &MineConfig) -> bool {
    let Some(doc) = &record.docstring else {
        return false;
    };
    if record.is_method && !config.include_methods {
        return false;
    }
    if record.is_nested && !config.include_nested {
        return false;
    }
    doc.content.chars().filter(|c| !c.is_whitespace()).count() >= config.min_chars.max(1)
}

fn mine_file(repo_id: &str, rel: &str, path: &Path, config: &MineConfig) -> FileOutcome {
    let mut stats = MiningStats {
        files_seen: 1,
        ..MiningStats::default()
    };
    let records = match fs::read(path) {
        Ok(bytes) => scan_module(&bytes, rel).map_err(|e| e.to_string()),
        Err(e) => Err(format!("unreadable: {e}")),
    };
    let records = match records {
        Ok(r) => r,
        Err(reason) => {
            tracing::debug!(file = rel, %reason, "parse failure");
            stats.parse_failures = 1;
            return FileOutcome {
                stats,
                samples: Vec::new(),
            };
        }
    };
    stats.files_parsed = 1;
    stats.functions_seen = records.len() as u64;

    let mut samples = Vec::new();
    for record in &records {
        let Some(doc) = &record.docstring else {
            continue;
        };
        stats.functions_with_docstring += 1;
        if !keep(record, config) {
            stats.filtered_by_config += 1;
            continue;
        }
        let instruction = strip_docstring(record);
        let reparsed = parse_single_function(&instruction);
        if !reparsed.as_ref().is_ok_and(|r| r.docstring.is_none()) {
            tracing::warn!(file = rel, function = %record.qualified_name, "stripped source does not re-parse; skipped");
            stats.filtered_by_config += 1;
            continue;
        }
        samples.push(CorpusSample {
            content_hash: content_hash(&instruction, &doc.content),
            response: doc.content.clone(),
            instruction,
            origin: SampleOrigin {
                repo_id: repo_id.to_string(),
                path: rel.to_string(),
                qualified_name: record.qualified_name.clone(),
            },
        });
    }
    FileOutcome { stats, samples }
}

fn run_in_pool<T: Send>(threads: Option<usize>, job: impl FnOnce() -> T + Send) -> Result<T, MineError> {
    match threads {
        Some(n) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(n.max(1))
                .build()
                .map_err(|e| MineError::Pool(e.to_string()))?;
            Ok(pool.install(job))
        }
        None => Ok(job()),
    }
}

/// Mines several trees into one deduplicated corpus. Output order is
/// tree order, then path order, then source order within a file.
pub fn mine_trees(
    trees: &[(String, PathBuf)],
    config: &MineConfig,
) -> Result<(Vec<CorpusSample>, MiningStats), MineError> {
    let excludes = build_excludes(&config.exclude)?;
    let mut stats = MiningStats::default();
    let mut all = Vec::new();
    for (repo_id, root) in trees {
        let files = discover(root, &excludes)?;
        let outcomes: Vec<Option<FileOutcome>> = run_in_pool(config.threads, || {
            files
                .par_iter()
                .map(|(rel, path)| {
                    if config.cancel.as_ref().is_some_and(CancelToken::is_cancelled) {
                        return None;
                    }
                    Some(mine_file(repo_id, rel, path, config))
                })
                .collect()
        })?;
        for outcome in outcomes {
            let outcome = outcome.ok_or(MineError::Cancelled)?;
            stats.absorb(&outcome.stats);
            all.extend(outcome.samples);
        }
    }
    let (unique, removed) = dedup_samples(all);
    stats.duplicates_removed = removed;
    stats.samples_exported = unique.len() as u64;
    debug_assert!(stats.invariants_hold(), "{stats:?}");
    Ok((unique, stats))
}

pub fn mine_tree(
    root: &Path,
    repo_id: &str,
    config: &MineConfig,
) -> Result<(Vec<CorpusSample>, MiningStats), MineError> {
    mine_trees(&[(repo_id.to_string(), root.to_path_buf())], config)
}

/// Reads a manifest; relative `root_path`s resolve against its directory.
pub fn load_manifest(path: &Path) -> Result<Vec<RepoMeta>, MineError> {
    let err = |message: String| MineError::Manifest {
        path: path.to_path_buf(),
        message,
    };
    let raw = fs::read_to_string(path).map_err(|e| err(e.to_string()))?;
    let mut repos: Vec<RepoMeta> = serde_json::from_str(&raw).map_err(|e| err(e.to_string()))?;
    let base = path.parent().unwrap_or(Path::new(""));
    for repo in &mut repos {
        if repo.root_path.is_relative() {
            repo.root_path = base.join(&repo.root_path);
        }
    }
    Ok(repos)
}

#[derive(Serialize)]
struct AlpacaRow<'a> {
    instruction: &'a str,
    response: &'a str,
}

/// Writes the compact Alpaca JSON array. Returns bytes written.
pub fn write_alpaca(samples: &[CorpusSample], out: &mut dyn Write) -> io::Result<()> {
    let rows: Vec<AlpacaRow<'_>> = samples
        .iter()
        .map(|s| AlpacaRow {
            instruction: &s.instruction,
            response: &s.response,
        })
        .collect();
    serde_json::to_writer(out, &rows).map_err(io::Error::other)
}

/// Atomically writes the Alpaca corpus to `out_path`.
pub fn export_alpaca(samples: &[CorpusSample], out_path: &Path) -> io::Result<u64> {
    write_atomic(out_path, |w| write_alpaca(samples, w))
}

/// `<out>.stats.json` next to a corpus file.
pub fn stats_path(out_path: &Path) -> PathBuf {
    let mut name = out_path.as_os_str().to_owned();
    name.push(".stats.json");
    PathBuf::from(name)
}

pub fn write_stats(stats: &MiningStats, path: &Path) -> io::Result<u64> {
    write_atomic(path, |w| {
        serde_json::to_writer_pretty(&mut *w, stats).map_err(io::Error::other)?;
        w.write_all(b"\n")
    })
}
