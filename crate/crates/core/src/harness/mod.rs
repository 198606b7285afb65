//! Benchmark pipeline: function sets, prompts, generation collection,
//! scoring and run comparison.

mod report;

use std::collections::{BTreeSet, HashMap, HashSet};
use std::fs;
use std::path::{Path, PathBuf};
use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::cancel::CancelToken;
use crate::embed::{EmbedError, Embedder};
use crate::http::{self, TransportError};
use crate::metrics::{
    self, band_verdict, relative_improvement, text_stats, BandVerdict, ClarityBand, ConcisenessBand,
    Improvement, MetricError, MetricVector,
};
use crate::parser::parse_single_function;

pub use report::{format_half_even, render_report, ReportFormat, ReportInput};

pub const DEFAULT_MAX_IN_FLIGHT: usize = 4;

/// Instruction block placed before every function source.
pub const PROMPT_HEADER: &str = "You are a helpful AI assistant that specializes in generating high-quality docstrings for Python code functions. Your task is to create docstrings that are:\n\nAccurate: Cover functionality, parameters, return values, and exceptions.\n\nConcise: Brief and to the point, focusing on essential information.\n\nClear: Use simple language and avoid ambiguity.\n\nGenerate docstring in this format: \"\"\"<generated docstring>\"\"\".";

#[derive(Debug, thiserror::Error)]
pub enum HarnessError {
    #[error("{}: {message}", location(.file, .task_id))]
    Schema {
        file: Option<PathBuf>,
        task_id: Option<String>,
        message: String,
    },
    #[error("no generation for task {0}")]
    MissingGeneration(String),
    #[error("generation for task {task_id}: {source}")]
    Transport {
        task_id: String,
        #[source]
        source: TransportError,
    },
    #[error("task {task_id}: {source}")]
    Embed {
        task_id: String,
        #[source]
        source: EmbedError,
    },
    #[error("task {task_id}: {source}")]
    Metric {
        task_id: String,
        #[source]
        source: MetricError,
    },
    #[error("runs cover different task sets (only in base: {only_base:?}; only in tuned: {only_tuned:?})")]
    TaskSetMismatch {
        only_base: Vec<String>,
        only_tuned: Vec<String>,
    },
    #[error("cannot read {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("cancelled")]
    Cancelled,
}

fn location(file: &Option<PathBuf>, task_id: &Option<String>) -> String {
    match (file, task_id) {
        (Some(f), Some(t)) => format!("{} (task {t})", f.display()),
        (Some(f), None) => f.display().to_string(),
        (None, Some(t)) => format!("task {t}"),
        (None, None) => "input".to_string(),
    }
}

fn schema(file: Option<&Path>, task_id: Option<&str>, message: impl Into<String>) -> HarnessError {
    HarnessError::Schema {
        file: file.map(Path::to_path_buf),
        task_id: task_id.map(str::to_string),
        message: message.into(),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OriginTag {
    Mbpp,
    Humaneval,
    Apps,
    Custom,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FunctionTask {
    pub task_id: String,
    /// Docstring-free function definition.
    pub source: String,
    pub reference_docstring: String,
    pub origin_tag: OriginTag,
}

/// Parses and validates a function-set JSON document. `file` is only used
/// in error messages.
pub fn parse_function_set(json: &str, file: Option<&Path>) -> Result<Vec<FunctionTask>, HarnessError> {
    let tasks: Vec<FunctionTask> =
        serde_json::from_str(json).map_err(|e| schema(file, None, e.to_string()))?;
    if tasks.is_empty() {
        return Err(schema(file, None, "function set is empty"));
    }
    let mut ids = HashSet::new();
    for task in &tasks {
        let id = Some(task.task_id.as_str());
        if task.task_id.trim().is_empty() {
            return Err(schema(file, id, "empty task_id"));
        }
        if !ids.insert(task.task_id.as_str()) {
            return Err(schema(file, id, "duplicate task_id"));
        }
        if task.reference_docstring.trim().is_empty() {
            return Err(schema(file, id, "reference_docstring is empty"));
        }
        let record = parse_single_function(&task.source)
            .map_err(|e| schema(file, id, format!("source does not parse as one function: {e}")))?;
        if record.docstring.is_some() {
            return Err(schema(file, id, "source must not contain a docstring"));
        }
    }
    Ok(tasks)
}

pub fn load_function_set(path: &Path) -> Result<Vec<FunctionTask>, HarnessError> {
    let raw = fs::read_to_string(path).map_err(|source| HarnessError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    parse_function_set(&raw, Some(path))
}

pub fn build_prompt(task: &FunctionTask) -> String {
    format!("{PROMPT_HEADER}\n\n{}", task.source)
}

/// Removes surrounding whitespace and, if present, one enclosing pair of
/// triple quotes (either style) plus the whitespace just inside it.
pub fn unwrap_generation(text: &str) -> String {
    let trimmed = text.trim();
    for q in ["\"\"\"", "'''"] {
        if trimmed.len() >= 6 && trimmed.starts_with(q) && trimmed.ends_with(q) {
            return trimmed[3..trimmed.len() - 3].trim().to_string();
        }
    }
    trimmed.to_string()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GenerationRecord {
    pub task_id: String,
    pub model_id: String,
    pub generated_docstring: String,
    #[serde(default, skip_serializing_if = "Option::is_none", with = "opt_millis")]
    pub latency: Option<Duration>,
}

mod opt_millis {
    use std::time::Duration;

    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &Option<Duration>, s: S) -> Result<S::Ok, S::Error> {
        match v {
            Some(d) => s.serialize_u64(d.as_millis() as u64),
            None => s.serialize_none(),
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<Duration>, D::Error> {
        Ok(Option::<u64>::deserialize(d)?.map(Duration::from_millis))
    }
}

#[derive(Deserialize)]
struct PregeneratedLine {
    task_id: String,
    model_id: String,
    docstring: String,
}

/// Reads pregenerated JSON Lines. When the file holds more than one model,
/// `model_id` selects which one to use. Records come back in task order.
pub fn collect_pregenerated(
    tasks: &[FunctionTask],
    jsonl: &str,
    model_id: Option<&str>,
    file: Option<&Path>,
) -> Result<Vec<GenerationRecord>, HarnessError> {
    let known: HashSet<&str> = tasks.iter().map(|t| t.task_id.as_str()).collect();
    let mut by_key: HashMap<(String, String), String> = HashMap::new();
    let mut models = BTreeSet::new();
    for (i, line) in jsonl.lines().enumerate() {
        if line.trim().is_empty() {
            continue;
        }
        let row: PregeneratedLine = serde_json::from_str(line)
            .map_err(|e| schema(file, None, format!("line {}: {e}", i + 1)))?;
        if !known.contains(row.task_id.as_str()) {
            return Err(schema(file, Some(&row.task_id), "unknown task_id"));
        }
        models.insert(row.model_id.clone());
        let key = (row.task_id, row.model_id);
        if by_key.contains_key(&key) {
            return Err(schema(
                file,
                Some(&key.0),
                format!("duplicate generation for model {}", key.1),
            ));
        }
        by_key.insert(key, row.docstring);
    }
    let model = match model_id {
        Some(m) => m.to_string(),
        None if models.len() == 1 => models.into_iter().next().unwrap_or_default(),
        None if models.is_empty() => String::new(),
        None => {
            return Err(schema(
                file,
                None,
                format!("file holds several models ({}); choose one", models.into_iter().collect::<Vec<_>>().join(", ")),
            ))
        }
    };
    tasks
        .iter()
        .map(|task| {
            let doc = by_key
                .remove(&(task.task_id.clone(), model.clone()))
                .ok_or_else(|| HarnessError::MissingGeneration(task.task_id.clone()))?;
            Ok(GenerationRecord {
                task_id: task.task_id.clone(),
                model_id: model.clone(),
                generated_docstring: unwrap_generation(&doc),
                latency: None,
            })
        })
        .collect()
}

pub fn load_pregenerated(
    tasks: &[FunctionTask],
    path: &Path,
    model_id: Option<&str>,
) -> Result<Vec<GenerationRecord>, HarnessError> {
    let raw = fs::read_to_string(path).map_err(|source| HarnessError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    collect_pregenerated(tasks, &raw, model_id, Some(path))
}

#[derive(Debug, Clone)]
pub struct GenerationEndpoint {
    pub url: String,
    pub model_id: String,
    pub timeout: Duration,
    pub max_in_flight: usize,
}

#[derive(Serialize)]
struct GenerateRequest<'a> {
    prompt: &'a str,
}

#[derive(Deserialize)]
struct GenerateResponse {
    text: String,
}

/// Asks a remote endpoint for one docstring per task, with at most
/// `max_in_flight` concurrent requests. Records come back in task order.
pub fn collect_remote(
    tasks: &[FunctionTask],
    endpoint: &GenerationEndpoint,
    cancel: Option<&CancelToken>,
) -> Result<Vec<GenerationRecord>, HarnessError> {
    let client = http::client(endpoint.timeout).map_err(|source| HarnessError::Transport {
        task_id: String::new(),
        source,
    })?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(endpoint.max_in_flight.max(1))
        .build()
        .map_err(|e| schema(None, None, format!("cannot start workers: {e}")))?;
    pool.install(|| {
        tasks
            .par_iter()
            .map(|task| {
                if cancel.is_some_and(CancelToken::is_cancelled) {
                    return Err(HarnessError::Cancelled);
                }
                let prompt = build_prompt(task);
                let started = Instant::now();
                let resp: GenerateResponse =
                    http::post_json(&client, &endpoint.url, &GenerateRequest { prompt: &prompt })
                        .map_err(|source| HarnessError::Transport {
                            task_id: task.task_id.clone(),
                            source,
                        })?;
                Ok(GenerationRecord {
                    task_id: task.task_id.clone(),
                    model_id: endpoint.model_id.clone(),
                    generated_docstring: unwrap_generation(&resp.text),
                    latency: Some(started.elapsed()),
                })
            })
            .collect()
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TaskScore {
    pub task_id: String,
    #[serde(flatten)]
    pub metrics: MetricVector,
    pub bands: BandVerdict,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunScore {
    pub model_id: String,
    /// Sorted by task_id. May be empty for runs known only by aggregate.
    pub per_task: Vec<TaskScore>,
    pub aggregate: MetricVector,
}

impl RunScore {
    /// A run described only by its aggregate.
    pub fn from_aggregate(model_id: impl Into<String>, aggregate: MetricVector) -> Self {
        Self {
            model_id: model_id.into(),
            per_task: Vec::new(),
            aggregate,
        }
    }

    fn task_ids(&self) -> BTreeSet<&str> {
        self.per_task.iter().map(|t| t.task_id.as_str()).collect()
    }
}

fn score_task(
    task: &FunctionTask,
    record: &GenerationRecord,
    embedder: &dyn Embedder,
) -> Result<TaskScore, HarnessError> {
    let metric_err = |source| HarnessError::Metric {
        task_id: task.task_id.clone(),
        source,
    };
    let generated = record.generated_docstring.as_str();
    let vectors = embedder
        .embed(&[generated, task.reference_docstring.as_str()])
        .map_err(|source| HarnessError::Embed {
            task_id: task.task_id.clone(),
            source,
        })?;
    let accuracy = metrics::accuracy(&vectors[0].values, &vectors[1].values).map_err(metric_err)?;
    let conciseness = metrics::conciseness(generated).map_err(metric_err)?;
    let clarity = metrics::clarity(&text_stats(generated).map_err(metric_err)?);
    let m = MetricVector {
        accuracy,
        conciseness,
        clarity,
    };
    Ok(TaskScore {
        task_id: task.task_id.clone(),
        bands: band_verdict(&m),
        metrics: m,
    })
}

/// Scores one model's generations against the task references.
pub fn score_run(
    records: &[GenerationRecord],
    tasks: &[FunctionTask],
    embedder: &dyn Embedder,
) -> Result<RunScore, HarnessError> {
    let model_id = records
        .first()
        .map(|r| r.model_id.clone())
        .ok_or_else(|| schema(None, None, "no generation records"))?;
    let mut by_task: HashMap<&str, &GenerationRecord> = HashMap::new();
    for r in records {
        if r.model_id != model_id {
            return Err(schema(
                None,
                Some(&r.task_id),
                format!("records mix models {model_id} and {}", r.model_id),
            ));
        }
        if by_task.insert(r.task_id.as_str(), r).is_some() {
            return Err(schema(None, Some(&r.task_id), "duplicate generation record"));
        }
    }
    let mut per_task = tasks
        .par_iter()
        .map(|task| {
            let record = by_task
                .get(task.task_id.as_str())
                .ok_or_else(|| HarnessError::MissingGeneration(task.task_id.clone()))?;
            score_task(task, record, embedder)
        })
        .collect::<Result<Vec<_>, _>>()?;
    per_task.sort_by(|a, b| a.task_id.cmp(&b.task_id));
    let vectors: Vec<MetricVector> = per_task.iter().map(|t| t.metrics).collect();
    let aggregate = metrics::aggregate(&vectors).map_err(|source| HarnessError::Metric {
        task_id: String::new(),
        source,
    })?;
    Ok(RunScore {
        model_id,
        per_task,
        aggregate,
    })
}

const AGGREGATE_TOLERANCE: f64 = 1e-9;

fn validate_run(run: &RunScore, file: Option<&Path>) -> Result<(), HarnessError> {
    let a = &run.aggregate;
    if ![a.accuracy, a.conciseness, a.clarity].iter().all(|v| v.is_finite()) {
        return Err(schema(file, None, format!("run {}: non-finite aggregate", run.model_id)));
    }
    if run.per_task.is_empty() {
        return Ok(());
    }
    let vectors: Vec<MetricVector> = run.per_task.iter().map(|t| t.metrics).collect();
    let mean = metrics::aggregate(&vectors).map_err(|e| schema(file, None, e.to_string()))?;
    let close = |x: f64, y: f64| (x - y).abs() <= AGGREGATE_TOLERANCE * x.abs().max(1.0);
    if !(close(mean.accuracy, a.accuracy) && close(mean.conciseness, a.conciseness) && close(mean.clarity, a.clarity)) {
        return Err(schema(
            file,
            None,
            format!("run {}: aggregate is not the mean of per_task", run.model_id),
        ));
    }
    Ok(())
}

/// Parses a scores document holding either one run or an array of runs.
pub fn parse_scores(json: &str, file: Option<&Path>) -> Result<Vec<RunScore>, HarnessError> {
    let value: serde_json::Value = serde_json::from_str(json).map_err(|e| schema(file, None, e.to_string()))?;
    let runs = match value {
        serde_json::Value::Array(_) => serde_json::from_value::<Vec<RunScore>>(value),
        _ => serde_json::from_value::<RunScore>(value).map(|r| vec![r]),
    }
    .map_err(|e| schema(file, None, e.to_string()))?;
    if runs.is_empty() {
        return Err(schema(file, None, "no runs"));
    }
    for run in &runs {
        validate_run(run, file)?;
    }
    Ok(runs)
}

pub fn load_scores(path: &Path) -> Result<Vec<RunScore>, HarnessError> {
    let raw = fs::read_to_string(path).map_err(|source| HarnessError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    parse_scores(&raw, Some(path))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct BandMovement<B> {
    pub from: B,
    pub to: B,
}

impl<B: PartialEq> BandMovement<B> {
    pub fn moved(&self) -> bool {
        self.from != self.to
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Deltas {
    /// Percent change, truncated to one decimal.
    pub accuracy: Improvement,
    pub conciseness: Improvement,
    pub conciseness_band: BandMovement<ConcisenessBand>,
    /// tuned minus base, in reading-ease points.
    pub clarity_raw: f64,
    pub clarity_band: BandMovement<ClarityBand>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ComparisonReport {
    pub base: RunScore,
    pub tuned: RunScore,
    pub deltas: Deltas,
}

pub fn compare_runs(base: &RunScore, tuned: &RunScore) -> Result<ComparisonReport, HarnessError> {
    let (b_ids, t_ids) = (base.task_ids(), tuned.task_ids());
    if b_ids != t_ids {
        return Err(HarnessError::TaskSetMismatch {
            only_base: b_ids.difference(&t_ids).map(|s| s.to_string()).collect(),
            only_tuned: t_ids.difference(&b_ids).map(|s| s.to_string()).collect(),
        });
    }
    let (b, t) = (&base.aggregate, &tuned.aggregate);
    let improvement = |x, y| {
        relative_improvement(x, y).map_err(|source| HarnessError::Metric {
            task_id: String::new(),
            source,
        })
    };
    let (bb, tb) = (band_verdict(b), band_verdict(t));
    Ok(ComparisonReport {
        deltas: Deltas {
            accuracy: improvement(b.accuracy, t.accuracy)?,
            conciseness: improvement(b.conciseness, t.conciseness)?,
            conciseness_band: BandMovement {
                from: bb.conciseness,
                to: tb.conciseness,
            },
            clarity_raw: t.clarity - b.clarity,
            clarity_band: BandMovement {
                from: bb.clarity,
                to: tb.clarity,
            },
        },
        base: base.clone(),
        tuned: tuned.clone(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::embed::BuiltinEmbedder;

    fn task(id: &str, source: &str, reference: &str) -> FunctionTask {
        FunctionTask {
            task_id: id.into(),
            source: source.into(),
            reference_docstring: reference.into(),
            origin_tag: OriginTag::Custom,
        }
    }

    #[test]
    fn prompt_layout() {
        let t = task("t", "def f(x):\n    return x", "Identity.");
        let p = build_prompt(&t);
        assert!(p.starts_with("You are a helpful AI assistant that specializes in generating high-quality docstrings"));
        assert!(p.ends_with("format: \"\"\"<generated docstring>\"\"\".\n\ndef f(x):\n    return x"));
        assert_eq!(p, build_prompt(&task("u", "def f(x):\n    return x", "Other.")));
    }

    #[test]
    fn unwrap_rules() {
        assert_eq!(unwrap_generation("\"\"\"Adds.\"\"\""), "Adds.");
        assert_eq!(unwrap_generation("  '''\n  Adds two.\n  '''\n"), "Adds two.");
        assert_eq!(unwrap_generation("Adds."), "Adds.");
        assert_eq!(unwrap_generation("\"\"\"Adds."), "\"\"\"Adds.");
        assert_eq!(unwrap_generation("\"\"\"\"\"\""), "");
    }

    #[test]
    fn function_set_validation() {
        let ok = r#"[{"task_id":"a","source":"def f():\n    return 1","reference_docstring":"One.","origin_tag":"mbpp"}]"#;
        assert_eq!(parse_function_set(ok, None).unwrap().len(), 1);
        let dup = r#"[{"task_id":"a","source":"def f():\n    return 1","reference_docstring":"One.","origin_tag":"mbpp"},
                      {"task_id":"a","source":"def g():\n    return 2","reference_docstring":"Two.","origin_tag":"apps"}]"#;
        assert!(matches!(parse_function_set(dup, None), Err(HarnessError::Schema { task_id: Some(t), .. }) if t == "a"));
        let doc = r#"[{"task_id":"d","source":"def f():\n    \"\"\"Doc.\"\"\"\n    return 1","reference_docstring":"One.","origin_tag":"humaneval"}]"#;
        assert!(matches!(parse_function_set(doc, None), Err(HarnessError::Schema { .. })));
        assert!(matches!(parse_function_set("[]", None), Err(HarnessError::Schema { .. })));
    }

    #[test]
    fn pregenerated_coverage() {
        let tasks = vec![task("a", "def f():\n    pass", "A."), task("b", "def g():\n    pass", "B.")];
        let full = "{\"task_id\":\"b\",\"model_id\":\"m\",\"docstring\":\"\\\"\\\"\\\"Bee.\\\"\\\"\\\"\"}\n{\"task_id\":\"a\",\"model_id\":\"m\",\"docstring\":\"Ay.\"}\n";
        let recs = collect_pregenerated(&tasks, full, None, None).unwrap();
        assert_eq!(recs.iter().map(|r| r.task_id.as_str()).collect::<Vec<_>>(), ["a", "b"]);
        assert_eq!(recs[1].generated_docstring, "Bee.");
        let partial = "{\"task_id\":\"a\",\"model_id\":\"m\",\"docstring\":\"Ay.\"}\n";
        assert!(matches!(
            collect_pregenerated(&tasks, partial, None, None),
            Err(HarnessError::MissingGeneration(t)) if t == "b"
        ));
    }

    #[test]
    fn identity_run_scores_accuracy_one() {
        let tasks = vec![
            task("a", "def f():\n    pass", "Return nothing at all."),
            task("b", "def g():\n    pass", "Compute the sum of two numbers."),
        ];
        let records: Vec<GenerationRecord> = tasks
            .iter()
            .map(|t| GenerationRecord {
                task_id: t.task_id.clone(),
                model_id: "control".into(),
                generated_docstring: t.reference_docstring.clone(),
                latency: None,
            })
            .collect();
        let run = score_run(&records, &tasks, &BuiltinEmbedder::default()).unwrap();
        assert_eq!(run.aggregate.accuracy, 1.0);
        let single = score_run(&records[..1], &tasks[..1], &BuiltinEmbedder::default()).unwrap();
        assert_eq!(single.aggregate, single.per_task[0].metrics);
    }

    #[test]
    fn base_tuned_comparison() {
        let base = RunScore::from_aggregate("base", MetricVector { accuracy: 0.516, conciseness: 0.425, clarity: 91.69 });
        let tuned = RunScore::from_aggregate("tuned", MetricVector { accuracy: 0.582, conciseness: 0.521, clarity: 58.75 });
        let c = compare_runs(&base, &tuned).unwrap();
        assert_eq!(c.deltas.accuracy.to_string(), "12.7");
        assert_eq!(c.deltas.conciseness.to_string(), "22.5");
        assert!((c.deltas.clarity_raw + 32.94).abs() < 1e-9);
        assert_eq!(c.deltas.clarity_band, BandMovement { from: ClarityBand::TooSimple, to: ClarityBand::Ideal });

        let same = compare_runs(&base, &base).unwrap();
        assert_eq!(same.deltas.accuracy.tenths(), 0);
        assert_eq!(same.deltas.clarity_raw, 0.0);
        assert!(!same.deltas.clarity_band.moved() && !same.deltas.conciseness_band.moved());
    }

    #[test]
    fn disjoint_tasks_mismatch() {
        let ts = |id: &str| TaskScore {
            task_id: id.into(),
            metrics: MetricVector { accuracy: 0.5, conciseness: 0.5, clarity: 60.0 },
            bands: band_verdict(&MetricVector { accuracy: 0.5, conciseness: 0.5, clarity: 60.0 }),
        };
        let mut a = RunScore::from_aggregate("a", ts("x").metrics);
        a.per_task = vec![ts("x")];
        let mut b = a.clone();
        b.per_task = vec![ts("y")];
        assert!(matches!(compare_runs(&a, &b), Err(HarnessError::TaskSetMismatch { .. })));
    }

    #[test]
    fn scores_round_trip_and_validation() {
        let run = RunScore::from_aggregate("m", MetricVector { accuracy: 0.6, conciseness: 0.5, clarity: 60.0 });
        let json = serde_json::to_string(&run).unwrap();
        assert_eq!(parse_scores(&json, None).unwrap(), vec![run.clone()]);
        let arr = serde_json::to_string(&vec![run.clone(), run]).unwrap();
        assert_eq!(parse_scores(&arr, None).unwrap().len(), 2);
        let bad = r#"{"model_id":"m","per_task":[{"task_id":"a","accuracy":0.1,"conciseness":0.5,"clarity":60.0,"bands":{"conciseness":"ideal","clarity":"ideal"}}],"aggregate":{"accuracy":0.9,"conciseness":0.5,"clarity":60.0}}"#;
        assert!(matches!(parse_scores(bad, None), Err(HarnessError::Schema { .. })));
    }
}
