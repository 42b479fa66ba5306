//! Common interface over the feature selectors.

use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::clustering::{ClusterSelectionParams, ClusterSelector};
use crate::dataset::LabeledDataset;
use crate::error::{Error, Result};
use crate::ffr::FfrSelector;
use crate::similarity::{Measure, Symmetrize};

/// Output of one selection run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SelectionResult {
    pub method: String,
    /// Kept feature indices, most preferred first.
    pub kept: Vec<usize>,
    /// One score per input feature; meaning depends on the method.
    pub scores: Vec<f64>,
    pub elapsed_seconds: f64,
}

impl SelectionResult {
    pub fn sorted_kept(&self) -> Vec<usize> {
        let mut k = self.kept.clone();
        k.sort_unstable();
        k
    }
}

pub trait FeatureSelector: Send + Sync {
    fn name(&self) -> String;

    fn select(&self, data: &LabeledDataset) -> Result<SelectionResult>;
}

/// Keeps every feature; the "All" baseline.
#[derive(Debug, Clone, Copy, Default)]
pub struct KeepAll;

impl FeatureSelector for KeepAll {
    fn name(&self) -> String {
        "all".into()
    }

    fn select(&self, data: &LabeledDataset) -> Result<SelectionResult> {
        let d = data.n_features();
        Ok(SelectionResult {
            method: self.name(),
            kept: (0..d).collect(),
            scores: vec![0.0; d],
            elapsed_seconds: 0.0,
        })
    }
}

/// Minimum wall-clock seconds over `repeats` full selection runs.
pub fn time_selection(
    data: &LabeledDataset,
    selector: &dyn FeatureSelector,
    repeats: usize,
) -> Result<f64> {
    if repeats == 0 {
        return Err(Error::invalid("repeats must be at least 1"));
    }
    let mut best = f64::INFINITY;
    for _ in 0..repeats {
        let start = Instant::now();
        selector.select(data)?;
        best = best.min(start.elapsed().as_secs_f64());
    }
    Ok(best)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SelectorKind {
    Cc,
    Lsre,
    Mici,
    Ffr,
    All,
}

impl SelectorKind {
    pub fn as_str(self) -> &'static str {
        match self {
            SelectorKind::Cc => "cc",
            SelectorKind::Lsre => "lsre",
            SelectorKind::Mici => "mici",
            SelectorKind::Ffr => "ffr",
            SelectorKind::All => "all",
        }
    }

    pub fn measure(self) -> Option<Measure> {
        match self {
            SelectorKind::Cc => Some(Measure::Cc),
            SelectorKind::Lsre => Some(Measure::Lsre),
            SelectorKind::Mici => Some(Measure::Mici),
            _ => None,
        }
    }
}

impl fmt::Display for SelectorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for SelectorKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "cc" => Ok(SelectorKind::Cc),
            "lsre" => Ok(SelectorKind::Lsre),
            "mici" => Ok(SelectorKind::Mici),
            "ffr" => Ok(SelectorKind::Ffr),
            "all" => Ok(SelectorKind::All),
            other => Err(Error::invalid(format!(
                "unknown selector {other:?} (expected cc, lsre, mici, ffr or all)"
            ))),
        }
    }
}

/// Everything needed to build a selector for a given feature count.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SelectorConfig {
    pub kind: SelectorKind,
    pub count: usize,
    /// LSRE only: fold the asymmetric matrix before clustering.
    pub symmetrize: Option<Symmetrize>,
    /// FFR only: min-max normalize the given rows before scoring.
    pub normalize: bool,
}

impl SelectorConfig {
    pub fn new(kind: SelectorKind, count: usize) -> Self {
        SelectorConfig {
            kind,
            count,
            symmetrize: None,
            normalize: false,
        }
    }

    pub fn build(&self) -> Box<dyn FeatureSelector> {
        match self.kind {
            SelectorKind::All => Box::new(KeepAll),
            SelectorKind::Ffr => Box::new(FfrSelector {
                t: self.count,
                normalize: self.normalize,
            }),
            kind => Box::new(ClusterSelector {
                params: ClusterSelectionParams {
                    measure: kind.measure().expect("similarity selector"),
                    k: None,
                    target_count: self.count,
                    symmetrize: self.symmetrize,
                },
            }),
        }
    }
}
