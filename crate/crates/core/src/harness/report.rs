//! Markdown and CSV rendering of run scores and comparisons.

use std::fmt::Write as _;

use crate::metrics::MetricVector;

use super::{BandMovement, ComparisonReport, RunScore};

const ACCURACY_DECIMALS: usize = 3;
const CONCISENESS_DECIMALS: usize = 3;
const CLARITY_DECIMALS: usize = 2;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReportFormat {
    Markdown,
    Csv,
}

#[derive(Debug, Clone, Copy)]
pub enum ReportInput<'a> {
    Runs(&'a [RunScore]),
    Comparison(&'a ComparisonReport),
}

/// Rounds the shortest decimal representation of `value` to `decimals`
/// places, ties to even.
pub fn format_half_even(value: f64, decimals: usize) -> String {
    if !value.is_finite() {
        return value.to_string();
    }
    let repr = value.abs().to_string();
    let (int_part, frac_part) = repr.split_once('.').unwrap_or((&repr, ""));
    let mut digits: Vec<u8> = int_part.bytes().map(|b| b - b'0').collect();
    let frac: Vec<u8> = frac_part.bytes().map(|b| b - b'0').collect();
    digits.extend((0..decimals).map(|i| frac.get(i).copied().unwrap_or(0)));

    let round_up = match frac.get(decimals) {
        None => false,
        Some(&d) if d > 5 => true,
        Some(&d) if d < 5 => false,
        Some(_) => {
            let rest_nonzero = frac[decimals + 1..].iter().any(|&d| d != 0);
            rest_nonzero || digits.last().is_some_and(|d| d % 2 == 1)
        }
    };
    if round_up {
        let mut i = digits.len();
        loop {
            if i == 0 {
                digits.insert(0, 1);
                break;
            }
            i -= 1;
            if digits[i] == 9 {
                digits[i] = 0;
            } else {
                digits[i] += 1;
                break;
            }
        }
    }

    let split = digits.len() - decimals;
    let mut out = String::new();
    if value < 0.0 && digits.iter().any(|&d| d != 0) {
        out.push('-');
    }
    out.extend(digits[..split].iter().map(|d| char::from(b'0' + d)));
    if decimals > 0 {
        out.push('.');
        out.extend(digits[split..].iter().map(|d| char::from(b'0' + d)));
    }
    out
}

struct Cells {
    accuracy: String,
    conciseness: String,
    clarity: String,
}

fn cells(m: &MetricVector) -> Cells {
    Cells {
        accuracy: format_half_even(m.accuracy, ACCURACY_DECIMALS),
        conciseness: format_half_even(m.conciseness, CONCISENESS_DECIMALS),
        clarity: format_half_even(m.clarity, CLARITY_DECIMALS),
    }
}

/// Per row, which of the three columns hold the largest printed value.
/// Nothing is flagged for a single row.
fn best_flags(rows: &[Cells]) -> Vec<[bool; 3]> {
    if rows.len() < 2 {
        return vec![[false; 3]; rows.len()];
    }
    let printed = |c: &Cells, k: usize| -> f64 {
        let s = match k {
            0 => &c.accuracy,
            1 => &c.conciseness,
            _ => &c.clarity,
        };
        s.parse().unwrap_or(f64::NEG_INFINITY)
    };
    let max: Vec<f64> = (0..3)
        .map(|k| rows.iter().map(|c| printed(c, k)).fold(f64::NEG_INFINITY, f64::max))
        .collect();
    rows.iter()
        .map(|c| [0, 1, 2].map(|k| printed(c, k) == max[k]))
        .collect()
}

const COLUMN_NAMES: [&str; 3] = ["accuracy", "conciseness", "clarity"];

fn md_escape(s: &str) -> String {
    s.replace('|', "\\|").replace('\n', " ")
}

fn csv_text(rows: impl IntoIterator<Item = Vec<String>>) -> String {
    let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(Vec::new());
    for row in rows {
        w.write_record(&row).expect("writing to memory");
    }
    String::from_utf8(w.into_inner().expect("writing to memory")).expect("fields are UTF-8")
}

fn runs_markdown(runs: &[&RunScore], out: &mut String) {
    let rows: Vec<Cells> = runs.iter().map(|r| cells(&r.aggregate)).collect();
    let flags = best_flags(&rows);
    out.push_str("| Model | Accuracy | Conciseness | Clarity | Best |\n");
    out.push_str("|---|---:|---:|---:|---|\n");
    for ((run, c), f) in runs.iter().zip(&rows).zip(&flags) {
        let best: Vec<&str> = COLUMN_NAMES.iter().zip(f).filter(|(_, &b)| b).map(|(n, _)| *n).collect();
        let _ = writeln!(
            out,
            "| {} | {} | {} | {} | {} |",
            md_escape(&run.model_id),
            c.accuracy,
            c.conciseness,
            c.clarity,
            best.join(", ")
        );
    }
}

fn runs_csv(runs: &[&RunScore], out: &mut String) {
    let rows: Vec<Cells> = runs.iter().map(|r| cells(&r.aggregate)).collect();
    let flags = best_flags(&rows);
    let header = ["model", "accuracy", "conciseness", "clarity", "best_accuracy", "best_conciseness", "best_clarity"];
    let records = runs.iter().zip(rows).zip(&flags).map(|((run, c), f)| {
        vec![
            run.model_id.clone(),
            c.accuracy,
            c.conciseness,
            c.clarity,
            f[0].to_string(),
            f[1].to_string(),
            f[2].to_string(),
        ]
    });
    out.push_str(&csv_text(std::iter::once(header.map(String::from).to_vec()).chain(records)));
}

fn signed(s: String) -> String {
    if s.starts_with('-') || s.bytes().all(|b| b == b'0' || b == b'.') {
        s
    } else {
        format!("+{s}")
    }
}

fn movement<B: std::fmt::Display + PartialEq>(m: &BandMovement<B>) -> String {
    if m.moved() {
        format!("{} -> {}", m.from, m.to)
    } else {
        m.to.to_string()
    }
}

/// (metric, base, tuned, change, band) rows of a comparison.
fn comparison_rows(report: &ComparisonReport) -> [[String; 5]; 3] {
    let (b, t) = (cells(&report.base.aggregate), cells(&report.tuned.aggregate));
    let d = &report.deltas;
    [
        [
            "accuracy".into(),
            b.accuracy,
            t.accuracy,
            format!("{}%", signed(d.accuracy.to_string())),
            String::new(),
        ],
        [
            "conciseness".into(),
            b.conciseness,
            t.conciseness,
            format!("{}%", signed(d.conciseness.to_string())),
            movement(&d.conciseness_band),
        ],
        [
            "clarity".into(),
            b.clarity,
            t.clarity,
            signed(format_half_even(d.clarity_raw, CLARITY_DECIMALS)),
            movement(&d.clarity_band),
        ],
    ]
}

/// Renders a table with one row per run, or a comparison of two runs.
pub fn render_report(input: ReportInput<'_>, format: ReportFormat) -> String {
    let mut out = String::new();
    match (input, format) {
        (ReportInput::Runs(runs), ReportFormat::Markdown) => {
            runs_markdown(&runs.iter().collect::<Vec<_>>(), &mut out)
        }
        (ReportInput::Runs(runs), ReportFormat::Csv) => runs_csv(&runs.iter().collect::<Vec<_>>(), &mut out),
        (ReportInput::Comparison(report), ReportFormat::Markdown) => {
            runs_markdown(&[&report.base, &report.tuned], &mut out);
            out.push('\n');
            out.push_str("| Metric | Base | Tuned | Change | Band |\n");
            out.push_str("|---|---:|---:|---:|---|\n");
            for row in comparison_rows(report) {
                let _ = writeln!(out, "| {} |", row.join(" | "));
            }
        }
        (ReportInput::Comparison(report), ReportFormat::Csv) => {
            let header = ["metric", "base", "tuned", "change", "band"].map(String::from).to_vec();
            let rows = comparison_rows(report).map(|r| r.to_vec());
            out.push_str(&csv_text(std::iter::once(header).chain(rows)));
        }
    }
    out
}
