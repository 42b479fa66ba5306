use std::fmt::Write as _;
use std::str::FromStr;

use super::grid::{CellOutcome, EvalReport};
use crate::classifiers::ClassifierKind;
use crate::error::{Error, Result};
use crate::selection::SelectorKind;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReportFormat {
    Json,
    Csv,
    Markdown,
}

impl FromStr for ReportFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "json" => Ok(ReportFormat::Json),
            "csv" => Ok(ReportFormat::Csv),
            "markdown" | "md" => Ok(ReportFormat::Markdown),
            other => Err(Error::invalid(format!(
                "unknown report format {other:?} (expected json, csv or markdown)"
            ))),
        }
    }
}

/// Row label used in the accuracy tables.
pub fn category_label(name: &str) -> String {
    match name {
        "normal" => "Normal".into(),
        "dos" => "DoS".into(),
        "probe" => "Prob".into(),
        "r2l" => "R2L".into(),
        "u2r" => "U2R".into(),
        other => other.into(),
    }
}

fn classifier_title(kind: ClassifierKind) -> &'static str {
    match kind {
        ClassifierKind::Knn => "KNN",
        ClassifierKind::Bayes => "Bayes",
    }
}

fn pct(v: f64) -> String {
    format!("{:.2}", v * 100.0)
}

pub fn emit_report(report: &EvalReport, format: ReportFormat) -> Result<String> {
    match format {
        ReportFormat::Json => Ok(serde_json::to_string_pretty(report)? + "\n"),
        ReportFormat::Csv => Ok(emit_csv(report)),
        ReportFormat::Markdown => Ok(emit_markdown(report)),
    }
}

fn emit_csv(report: &EvalReport) -> String {
    let mut out = String::from("selector,feature_count,classifier");
    for c in &report.dataset.categories {
        out.push_str(&format!(",recall_{c}"));
    }
    out.push_str(",overall_accuracy,selection_seconds,error\n");
    for outcome in &report.cells {
        let (sel, count, clf) = outcome.key();
        out.push_str(&format!("{sel},{count},{clf}"));
        match outcome {
            CellOutcome::Done(cell) => {
                for r in &cell.per_category_recall {
                    out.push(',');
                    if let Some(r) = r {
                        out.push_str(&r.to_string());
                    }
                }
                out.push_str(&format!(",{},{},\n", cell.overall_accuracy, cell.selection_seconds));
            }
            CellOutcome::Failed { error, .. } => {
                for _ in &report.dataset.categories {
                    out.push(',');
                }
                out.push_str(&format!(",,\"{}\"\n", error.replace('"', "\"\"")));
            }
        }
    }
    out
}

/// Column order for one classifier: the baseline, then selectors in config
/// order, each at its counts.
fn columns(report: &EvalReport, clf: ClassifierKind) -> Vec<&CellOutcome> {
    let mut cols: Vec<&CellOutcome> = report.cells.iter().filter(|c| c.key().2 == clf).collect();
    let rank = |s: SelectorKind| {
        if s == SelectorKind::All {
            0
        } else {
            1 + report.config.selectors.iter().position(|&x| x == s).unwrap_or(usize::MAX - 1)
        }
    };
    cols.sort_by_key(|c| {
        let (s, n, _) = c.key();
        (rank(s), n)
    });
    cols
}

fn emit_markdown(report: &EvalReport) -> String {
    let mut out = String::new();
    let mut classifiers: Vec<ClassifierKind> = Vec::new();
    for c in &report.cells {
        if !classifiers.contains(&c.key().2) {
            classifiers.push(c.key().2);
        }
    }
    if classifiers.is_empty() {
        out.push_str("| Attack type |\n|---|\n");
        return out;
    }
    for clf in classifiers {
        let cols = columns(report, clf);
        let _ = writeln!(out, "### {} accuracy (%)\n", classifier_title(clf));
        out.push_str("| Attack type |");
        for c in &cols {
            let (s, n, _) = c.key();
            if s == SelectorKind::All {
                out.push_str(" All |");
            } else {
                let _ = write!(out, " {} {} |", s.as_str().to_uppercase(), n);
            }
        }
        out.push_str("\n|---|");
        out.push_str(&"---:|".repeat(cols.len()));
        out.push('\n');
        for (k, name) in report.dataset.categories.iter().enumerate() {
            let _ = write!(out, "| {} |", category_label(name));
            for c in &cols {
                let v = match c {
                    CellOutcome::Done(cell) => cell.per_category_recall[k].map_or("-".into(), pct),
                    CellOutcome::Failed { .. } => "NaN".into(),
                };
                let _ = write!(out, " {v} |");
            }
            out.push('\n');
        }
        out.push_str("| Over all |");
        for c in &cols {
            let v = match c {
                CellOutcome::Done(cell) => pct(cell.overall_accuracy),
                CellOutcome::Failed { .. } => "NaN".into(),
            };
            let _ = write!(out, " {v} |");
        }
        out.push_str("\n\n");
    }

    let first = report.cells.first().map(|c| c.key().2);
    let timed: Vec<&CellOutcome> = report
        .cells
        .iter()
        .filter(|c| Some(c.key().2) == first && c.key().0 != SelectorKind::All)
        .collect();
    if !timed.is_empty() {
        out.push_str("### Selection time (s)\n\n| Method | Features | Seconds |\n|---|---:|---:|\n");
        for c in timed {
            let (s, n, _) = c.key();
            let secs = c.cell().map_or("-".into(), |cell| format!("{:.6}", cell.selection_seconds));
            let _ = writeln!(out, "| {} | {} | {} |", s.as_str().to_uppercase(), n, secs);
        }
        out.push('\n');
    }

    let failures: Vec<String> = report
        .cells
        .iter()
        .filter_map(|c| match c {
            CellOutcome::Failed {
                selector,
                feature_count,
                classifier,
                error,
            } => Some(format!("- {selector}/{feature_count}/{classifier}: {error}")),
            _ => None,
        })
        .collect();
    if !failures.is_empty() {
        out.push_str("Failed cells:\n\n");
        out.push_str(&failures.join("\n"));
        out.push('\n');
    }
    out
}
