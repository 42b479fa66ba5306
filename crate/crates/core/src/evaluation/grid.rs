use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::cv::{run_cv, CvOptions, EvalCell};
use crate::classifiers::{ClassifierConfig, ClassifierKind, DEFAULT_EPSILON, DEFAULT_K};
use crate::dataset::{shuffled_folds, stratified_folds, LabeledDataset};
use crate::error::Result;
use crate::selection::{SelectorConfig, SelectorKind};
use crate::similarity::Symmetrize;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GridConfig {
    pub selectors: Vec<SelectorKind>,
    pub counts: Vec<usize>,
    pub classifiers: Vec<ClassifierKind>,
    pub knn_k: usize,
    pub epsilon: f64,
    pub n_folds: usize,
    pub seed: u64,
    pub stratify: bool,
    pub normalize: bool,
    pub select_global: bool,
    pub symmetrize: Option<Symmetrize>,
}

impl Default for GridConfig {
    fn default() -> Self {
        GridConfig {
            selectors: vec![
                SelectorKind::Cc,
                SelectorKind::Lsre,
                SelectorKind::Mici,
                SelectorKind::Ffr,
            ],
            counts: vec![10, 20, 30],
            classifiers: vec![ClassifierKind::Knn, ClassifierKind::Bayes],
            knn_k: DEFAULT_K,
            epsilon: DEFAULT_EPSILON,
            n_folds: 10,
            seed: 42,
            stratify: true,
            normalize: true,
            select_global: false,
            symmetrize: None,
        }
    }
}

impl GridConfig {
    /// `(selector, count, classifier)` in report order: per classifier, the
    /// keep-all baseline first, then each selector at each count.
    pub fn cell_keys(&self, n_features: usize) -> Vec<(SelectorKind, usize, ClassifierKind)> {
        let mut keys = Vec::new();
        for &clf in &self.classifiers {
            keys.push((SelectorKind::All, n_features, clf));
            for &sel in self.selectors.iter().filter(|s| **s != SelectorKind::All) {
                for &count in &self.counts {
                    keys.push((sel, count, clf));
                }
            }
        }
        keys
    }

    fn classifier(&self, kind: ClassifierKind) -> ClassifierConfig {
        ClassifierConfig {
            kind,
            k: self.knn_k,
            epsilon: self.epsilon,
        }
    }
}

/// One grid cell: metrics, or the error that stopped it.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum CellOutcome {
    Done(EvalCell),
    Failed {
        selector: SelectorKind,
        feature_count: usize,
        classifier: ClassifierKind,
        error: String,
    },
}

impl CellOutcome {
    pub fn key(&self) -> (SelectorKind, usize, ClassifierKind) {
        match self {
            CellOutcome::Done(c) => (c.selector, c.feature_count, c.classifier),
            CellOutcome::Failed {
                selector,
                feature_count,
                classifier,
                ..
            } => (*selector, *feature_count, *classifier),
        }
    }

    pub fn cell(&self) -> Option<&EvalCell> {
        match self {
            CellOutcome::Done(c) => Some(c),
            CellOutcome::Failed { .. } => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DatasetFingerprint {
    pub source: Option<String>,
    pub subsample: Option<usize>,
    pub rows: usize,
    pub features: usize,
    pub categories: Vec<String>,
    pub category_counts: Vec<usize>,
    pub seed: u64,
}

impl DatasetFingerprint {
    pub fn of(dataset: &LabeledDataset, seed: u64) -> Self {
        DatasetFingerprint {
            source: None,
            subsample: None,
            rows: dataset.n_samples(),
            features: dataset.n_features(),
            categories: dataset.categories.clone(),
            category_counts: dataset.category_counts(),
            seed,
        }
    }
}

/// Machine-dependent facts about a run, excluded from reproducibility checks.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Runtime {
    pub threads: usize,
    pub total_seconds: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EvalReport {
    pub config: GridConfig,
    pub dataset: DatasetFingerprint,
    pub cells: Vec<CellOutcome>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub runtime: Option<Runtime>,
}

impl EvalReport {
    pub fn find(
        &self,
        selector: SelectorKind,
        count: usize,
        classifier: ClassifierKind,
    ) -> Option<&CellOutcome> {
        self.cells.iter().find(|c| c.key() == (selector, count, classifier))
    }

    /// Copy with every timing field zeroed or removed.
    pub fn without_timing(&self) -> EvalReport {
        let mut r = self.clone();
        r.runtime = None;
        for c in &mut r.cells {
            if let CellOutcome::Done(cell) = c {
                cell.selection_seconds = 0.0;
            }
        }
        r
    }
}

/// Cross-validates every (selector, count, classifier) combination plus the
/// keep-all baseline per classifier. Cells run in parallel; a failing cell
/// is recorded and does not stop the others.
pub fn run_grid(dataset: &LabeledDataset, config: &GridConfig) -> Result<EvalReport> {
    let start = Instant::now();
    let plan = if config.stratify {
        stratified_folds(&dataset.labels, config.n_folds, config.seed)?
    } else {
        shuffled_folds(dataset.n_samples(), config.n_folds, config.seed)?
    };
    let options = CvOptions {
        normalize: config.normalize,
        select_global: config.select_global,
    };
    let keys = config.cell_keys(dataset.n_features());
    let cells = keys
        .par_iter()
        .map(|&(sel, count, clf)| {
            let selector = SelectorConfig {
                kind: sel,
                count,
                symmetrize: config.symmetrize,
                normalize: false,
            };
            match run_cv(dataset, &selector, &config.classifier(clf), &plan, &options) {
                Ok(cell) => CellOutcome::Done(cell),
                Err(e) => CellOutcome::Failed {
                    selector: sel,
                    feature_count: count,
                    classifier: clf,
                    error: e.to_string(),
                },
            }
        })
        .collect();
    Ok(EvalReport {
        config: config.clone(),
        dataset: DatasetFingerprint::of(dataset, config.seed),
        cells,
        runtime: Some(Runtime {
            threads: rayon::current_num_threads(),
            total_seconds: start.elapsed().as_secs_f64(),
        }),
    })
}
