mod args;

use std::fs;
use std::io::{self, Write};
use std::path::Path;
use std::process::ExitCode;
use std::time::Duration;

use anyhow::{bail, Context, Result};
use clap::error::ErrorKind;
use clap::{CommandFactory, Parser};
use documint_core::embed::Embedder;
use documint_core::fsio::write_atomic;
use documint_core::harness::{collect_remote, load_pregenerated, GenerationEndpoint};
use documint_core::metrics::{clarity_band, conciseness_band};
use documint_core::miner::{stats_path, write_stats};
use documint_core::{
    accuracy, clarity, compare_runs, conciseness, export_alpaca, filter_repo, load_function_set, load_manifest,
    load_scores, mine_trees, render_report, score_run, text_stats, CancelToken, FilterVerdict, HarnessError,
    MineConfig, MineError, ProviderConfig, ReportFormat, ReportInput, RepoThresholds,
};
use serde_json::json;

use args::{BenchArgs, Cli, Command, CompareArgs, EmbedArgs, EmbedderKind, Format, LogLevel, MineArgs, ReportArgs, ScoreArgs};

const EXIT_DOMAIN: u8 = 1;
const EXIT_CANCELLED: u8 = 130;

fn init_logging(level: LogLevel) {
    let level = match level {
        LogLevel::Error => tracing::Level::ERROR,
        LogLevel::Warn => tracing::Level::WARN,
        LogLevel::Info => tracing::Level::INFO,
        LogLevel::Debug => tracing::Level::DEBUG,
    };
    tracing_subscriber::fmt()
        .with_writer(io::stderr)
        .with_max_level(level)
        .with_target(false)
        .init();
}

fn install_cancel_handler() -> CancelToken {
    let token = CancelToken::new();
    let flag = token.clone();
    let installed = ctrlc::set_handler(move || {
        if flag.is_cancelled() {
            std::process::exit(i32::from(EXIT_CANCELLED));
        }
        flag.cancel();
    });
    if let Err(e) = installed {
        tracing::warn!(error = %e, "cannot install interrupt handler");
    }
    token
}

fn report_format(f: Format) -> ReportFormat {
    match f {
        Format::Md => ReportFormat::Markdown,
        Format::Csv => ReportFormat::Csv,
    }
}

fn emit(text: &str, out: Option<&Path>) -> Result<()> {
    match out {
        Some(path) => {
            write_atomic(path, |w| w.write_all(text.as_bytes()))
                .with_context(|| format!("cannot write {}", path.display()))?;
        }
        None => io::stdout().lock().write_all(text.as_bytes())?,
    }
    Ok(())
}

fn embedder(args: &EmbedArgs) -> Result<Box<dyn Embedder>> {
    let config = match args.embedder {
        EmbedderKind::Builtin => ProviderConfig::builtin(args.embed_dim as usize),
        EmbedderKind::Remote => {
            let Some(url) = args.embed_url.as_deref() else {
                usage_error(ErrorKind::MissingRequiredArgument, "--embedder remote needs --embed-url or DOCUMINT_EMBED_URL");
            };
            ProviderConfig::remote(url, Duration::from_secs(args.timeout))
        }
    };
    Ok(config.build()?)
}

fn usage_error(kind: ErrorKind, message: &str) -> ! {
    Cli::command().error(kind, message).exit()
}

fn mine(args: MineArgs, cancel: CancelToken) -> Result<()> {
    let thresholds = RepoThresholds {
        contributors: args.min_contributors,
        commits: args.min_commits,
        stars: args.min_stars,
        forks: args.min_forks,
    };
    let repos = load_manifest(&args.manifest)?;
    let mut accepted = Vec::new();
    for repo in &repos {
        match filter_repo(repo, &thresholds) {
            FilterVerdict::Accept => accepted.push((repo.repo_id.clone(), repo.root_path.clone())),
            FilterVerdict::Reject { criterion, value, threshold } => {
                tracing::info!(repo = %repo.repo_id, %criterion, value, threshold, "repository rejected");
            }
        }
    }
    let config = MineConfig {
        include_methods: !args.no_include_methods,
        include_nested: !args.no_include_nested,
        min_chars: args.min_chars as usize,
        exclude: args.exclude,
        threads: args.threads.map(|n| n as usize),
        cancel: Some(cancel),
    };
    let (samples, stats) = mine_trees(&accepted, &config)?;
    if stats.files_seen > 0 && stats.files_parsed == 0 {
        bail!("none of the {} source files could be parsed", stats.files_seen);
    }
    export_alpaca(&samples, &args.out).with_context(|| format!("cannot write {}", args.out.display()))?;
    let sidecar = stats_path(&args.out);
    write_stats(&stats, &sidecar).with_context(|| format!("cannot write {}", sidecar.display()))?;
    eprintln!(
        "{} of {} repositories accepted; {} samples from {} files ({} parse failures, {} duplicates removed)",
        accepted.len(),
        repos.len(),
        stats.samples_exported,
        stats.files_seen,
        stats.parse_failures,
        stats.duplicates_removed
    );
    Ok(())
}

fn bench(args: BenchArgs, cancel: CancelToken) -> Result<()> {
    let tasks = load_function_set(&args.functions)?;
    let records = match (&args.pregenerated, &args.model_url) {
        (Some(path), _) => load_pregenerated(&tasks, path, args.model_id.as_deref())?,
        (None, Some(url)) => {
            let Some(model_id) = args.model_id.clone() else {
                usage_error(ErrorKind::MissingRequiredArgument, "--model-url needs --model-id");
            };
            let endpoint = GenerationEndpoint {
                url: url.clone(),
                model_id,
                timeout: Duration::from_secs(args.embed.timeout),
                max_in_flight: args.max_in_flight as usize,
            };
            collect_remote(&tasks, &endpoint, Some(&cancel))?
        }
        (None, None) => usage_error(
            ErrorKind::MissingRequiredArgument,
            "either --pregenerated or --model-url (or DOCUMINT_GEN_URL) is required",
        ),
    };
    if cancel.is_cancelled() {
        return Err(HarnessError::Cancelled.into());
    }
    let embedder = embedder(&args.embed)?;
    let run = score_run(&records, &tasks, embedder.as_ref())?;
    write_atomic(&args.out, |w| {
        serde_json::to_writer_pretty(&mut *w, &run).map_err(io::Error::other)?;
        w.write_all(b"\n")
    })
    .with_context(|| format!("cannot write {}", args.out.display()))?;
    eprintln!(
        "{}: accuracy {:.3}, conciseness {:.3}, clarity {:.2} over {} tasks",
        run.model_id,
        run.aggregate.accuracy,
        run.aggregate.conciseness,
        run.aggregate.clarity,
        run.per_task.len()
    );
    Ok(())
}

fn single_run(path: &Path) -> Result<documint_core::RunScore> {
    let mut runs = load_scores(path)?;
    if runs.len() != 1 {
        bail!("{}: expected one run, found {}", path.display(), runs.len());
    }
    Ok(runs.remove(0))
}

fn compare(args: CompareArgs) -> Result<()> {
    let base = single_run(&args.base)?;
    let tuned = single_run(&args.tuned)?;
    let report = compare_runs(&base, &tuned)?;
    let text = render_report(ReportInput::Comparison(&report), report_format(args.format));
    emit(&text, args.out.as_deref())
}

fn report(args: ReportArgs) -> Result<()> {
    let mut runs = Vec::new();
    for path in &args.scores {
        runs.extend(load_scores(path)?);
    }
    let text = render_report(ReportInput::Runs(&runs), report_format(args.format));
    emit(&text, args.out.as_deref())
}

fn read_text(inline: Option<String>, file: Option<&Path>) -> Result<Option<String>> {
    match (inline, file) {
        (Some(t), _) => Ok(Some(t)),
        (None, Some(p)) => Ok(Some(fs::read_to_string(p).with_context(|| format!("cannot read {}", p.display()))?)),
        (None, None) => Ok(None),
    }
}

fn score(args: ScoreArgs) -> Result<()> {
    let text = read_text(args.text, args.file.as_deref())?.unwrap_or_default();
    let reference = read_text(args.reference, args.reference_file.as_deref())?;
    let stats = text_stats(&text)?;
    let conc = conciseness(&text)?;
    let clar = clarity(&stats);
    let mut out = json!({
        "words": stats.words,
        "sentences": stats.sentences,
        "syllables": stats.syllables,
        "conciseness": conc,
        "clarity": clar,
        "bands": { "conciseness": conciseness_band(conc), "clarity": clarity_band(clar) },
    });
    if let Some(reference) = reference {
        let embedder = embedder(&args.embed)?;
        let v = embedder.embed(&[text.as_str(), reference.as_str()])?;
        out["accuracy"] = json!(accuracy(&v[0].values, &v[1].values)?);
        out["provider_id"] = json!(embedder.provider_id());
    }
    emit(&format!("{}\n", serde_json::to_string_pretty(&out)?), None)
}

fn is_cancellation(err: &anyhow::Error) -> bool {
    err.chain().any(|e| {
        matches!(e.downcast_ref::<HarnessError>(), Some(HarnessError::Cancelled))
            || matches!(e.downcast_ref::<MineError>(), Some(MineError::Cancelled))
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    init_logging(cli.log_level);
    let cancel = install_cancel_handler();
    let result = match cli.command {
        Command::Mine(a) => mine(a, cancel),
        Command::Bench(a) => bench(a, cancel),
        Command::Compare(a) => compare(a),
        Command::Report(a) => report(a),
        Command::Score(a) => score(a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) if is_cancellation(&err) => {
            eprintln!("documint: interrupted");
            ExitCode::from(EXIT_CANCELLED)
        }
        Err(err) => {
            eprintln!("documint: {err:#}");
            ExitCode::from(EXIT_DOMAIN)
        }
    }
}

