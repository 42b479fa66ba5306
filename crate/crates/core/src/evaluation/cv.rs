use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::classifiers::{ClassifierConfig, ClassifierKind};
use crate::dataset::{apply_minmax, fit_minmax, FoldPlan, LabeledDataset};
use crate::error::{Error, Result};
use crate::selection::{SelectorConfig, SelectorKind};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct CvOptions {
    /// Min-max scale each fold with parameters fitted on its training rows.
    pub normalize: bool,
    /// Select once on the whole dataset instead of per training split.
    pub select_global: bool,
}

impl Default for CvOptions {
    fn default() -> Self {
        CvOptions {
            normalize: true,
            select_global: false,
        }
    }
}

/// Pooled cross-validation result for one (selector, count, classifier).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EvalCell {
    pub selector: SelectorKind,
    pub feature_count: usize,
    pub classifier: ClassifierKind,
    /// Per category of the dataset; `None` for categories with no samples.
    pub per_category_recall: Vec<Option<f64>>,
    pub overall_accuracy: f64,
    pub correct: Vec<usize>,
    pub totals: Vec<usize>,
    /// Mean wall-clock seconds of one selection run.
    pub selection_seconds: f64,
}

impl EvalCell {
    pub fn from_predictions(
        selector: SelectorKind,
        feature_count: usize,
        classifier: ClassifierKind,
        truth: &[usize],
        predicted: &[usize],
        n_categories: usize,
        selection_seconds: f64,
    ) -> EvalCell {
        let mut correct = vec![0; n_categories];
        let mut totals = vec![0; n_categories];
        for (&t, &p) in truth.iter().zip(predicted) {
            totals[t] += 1;
            if t == p {
                correct[t] += 1;
            }
        }
        let per_category_recall = correct
            .iter()
            .zip(&totals)
            .map(|(&c, &n)| (n > 0).then(|| c as f64 / n as f64))
            .collect();
        let n: usize = totals.iter().sum();
        let overall_accuracy = if n == 0 {
            0.0
        } else {
            correct.iter().sum::<usize>() as f64 / n as f64
        };
        EvalCell {
            selector,
            feature_count,
            classifier,
            per_category_recall,
            overall_accuracy,
            correct,
            totals,
            selection_seconds,
        }
    }
}

/// Per-sample out-of-fold predictions.
#[derive(Debug, Clone, PartialEq)]
pub struct CvPredictions {
    /// Category id predicted for each sample while it sat in a test fold.
    pub predicted: Vec<usize>,
    /// Features used in each fold.
    pub kept_per_fold: Vec<Vec<usize>>,
    pub selection_seconds: Vec<f64>,
}

/// Drops categories without samples; returns the compacted dataset and,
/// per compact id, the original category id.
pub fn compact_categories(dataset: &LabeledDataset) -> Result<(LabeledDataset, Vec<usize>)> {
    let counts = dataset.category_counts();
    let present: Vec<usize> = (0..counts.len()).filter(|&c| counts[c] > 0).collect();
    let mut to_compact = vec![usize::MAX; counts.len()];
    for (new, &old) in present.iter().enumerate() {
        to_compact[old] = new;
    }
    let compact = LabeledDataset::new(
        dataset.matrix.clone(),
        dataset.labels.iter().map(|&l| to_compact[l]).collect(),
        present.iter().map(|&c| dataset.categories[c].clone()).collect(),
        dataset.subcategory.clone(),
    )?;
    Ok((compact, present))
}

/// Train/test split of one fold, with the test split scaled by parameters
/// fitted on the training split only.
pub fn prepare_fold(
    dataset: &LabeledDataset,
    plan: &FoldPlan,
    fold: usize,
    normalize: bool,
) -> Result<(LabeledDataset, LabeledDataset)> {
    if plan.n_samples() != dataset.n_samples() {
        return Err(Error::Dimension {
            expected: dataset.n_samples(),
            got: plan.n_samples(),
        });
    }
    let train = dataset.subset(&plan.train_indices(fold));
    let test = dataset.subset(&plan.test_indices(fold));
    let train_counts = train.category_counts();
    let all_counts = dataset.category_counts();
    if let Some(c) = (0..all_counts.len()).find(|&c| all_counts[c] > 0 && train_counts[c] == 0) {
        return Err(Error::DegenerateFold {
            fold,
            class: dataset.categories[c].clone(),
        });
    }
    if !normalize {
        return Ok((train, test));
    }
    let params = fit_minmax(&train.matrix)?;
    let train_m = apply_minmax(&train.matrix, &params)?;
    let test_m = apply_minmax(&test.matrix, &params)?;
    Ok((train.with_matrix(train_m)?, test.with_matrix(test_m)?))
}

fn normalized(dataset: &LabeledDataset) -> Result<LabeledDataset> {
    let params = fit_minmax(&dataset.matrix)?;
    dataset.with_matrix(apply_minmax(&dataset.matrix, &params)?)
}

/// Runs every fold and collects the out-of-fold predictions.
pub fn cross_validate(
    dataset: &LabeledDataset,
    selector: &SelectorConfig,
    classifier: &ClassifierConfig,
    folds: &FoldPlan,
    options: &CvOptions,
) -> Result<CvPredictions> {
    let (data, original) = compact_categories(dataset)?;
    let n_classes = data.n_categories();
    let builder = selector.build();

    let global = if options.select_global {
        let whole = if options.normalize { normalized(&data)? } else { data.clone() };
        let start = Instant::now();
        let kept = builder.select(&whole)?.kept;
        Some((kept, start.elapsed().as_secs_f64()))
    } else {
        None
    };

    let per_fold: Vec<(Vec<usize>, Vec<usize>, Vec<usize>, f64)> = (0..folds.n_folds)
        .into_par_iter()
        .map(|fold| {
            let (train, test) = prepare_fold(&data, folds, fold, options.normalize)?;
            let (kept, seconds) = match &global {
                Some((kept, secs)) => (kept.clone(), *secs),
                None => {
                    let start = Instant::now();
                    let kept = builder.select(&train)?.kept;
                    (kept, start.elapsed().as_secs_f64())
                }
            };
            let train_x = train.matrix.select_columns(&kept)?;
            let test_x = test.matrix.select_columns(&kept)?;
            let model = classifier.fit(&train_x, &train.labels, n_classes)?;
            let predicted = model.predict_batch(&test_x)?;
            Ok((folds.test_indices(fold), predicted, kept, seconds))
        })
        .collect::<Result<_>>()?;

    let mut predicted = vec![usize::MAX; dataset.n_samples()];
    let mut kept_per_fold = Vec::with_capacity(folds.n_folds);
    let mut selection_seconds = Vec::with_capacity(folds.n_folds);
    for (test_idx, preds, kept, secs) in per_fold {
        for (i, p) in test_idx.into_iter().zip(preds) {
            predicted[i] = original[p];
        }
        kept_per_fold.push(kept);
        selection_seconds.push(secs);
    }
    Ok(CvPredictions {
        predicted,
        kept_per_fold,
        selection_seconds,
    })
}

/// Cross-validates one configuration and pools the fold predictions into
/// per-category recall and overall accuracy.
pub fn run_cv(
    dataset: &LabeledDataset,
    selector: &SelectorConfig,
    classifier: &ClassifierConfig,
    folds: &FoldPlan,
    options: &CvOptions,
) -> Result<EvalCell> {
    let preds = cross_validate(dataset, selector, classifier, folds, options)?;
    let mean_secs = if options.select_global {
        preds.selection_seconds.first().copied().unwrap_or(0.0)
    } else {
        preds.selection_seconds.iter().sum::<f64>() / preds.selection_seconds.len().max(1) as f64
    };
    Ok(EvalCell::from_predictions(
        selector.kind,
        selector.count,
        classifier.kind,
        &dataset.labels,
        &preds.predicted,
        dataset.n_categories(),
        mean_secs,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dataset::{stratified_folds, FeatureMatrix};

    fn separable(n_per: usize) -> LabeledDataset {
        let mut rows = Vec::new();
        let mut labels = Vec::new();
        for c in 0..2 {
            for i in 0..n_per {
                let noise = ((i * 37 + c * 11) % 17) as f64 / 17.0;
                // feature 0 separates; feature 1 is shared noise
                rows.push(vec![c as f64 * 10.0 + noise, noise * 3.0]);
                labels.push(c);
            }
        }
        LabeledDataset::from_labels(FeatureMatrix::from_rows(&rows).unwrap(), labels, vec!["a".into(), "b".into()]).unwrap()
    }

    #[test]
    fn separable_data_perfect() {
        let ds = separable(30);
        let plan = stratified_folds(&ds.labels, 10, 1).unwrap();
        for sel in [SelectorKind::Ffr, SelectorKind::All] {
            for clf in [ClassifierConfig::knn(3), ClassifierConfig::bayes(1e-9)] {
                let cfg = SelectorConfig::new(sel, 1);
                let cell = run_cv(&ds, &cfg, &clf, &plan, &CvOptions::default()).unwrap();
                assert_eq!(cell.overall_accuracy, 1.0, "{sel} {:?}", clf.kind);
            }
        }
    }

    #[test]
    fn degenerate_fold_named() {
        // class b has a single sample, so the fold holding it trains without b
        let rows: Vec<Vec<f64>> = (0..6).map(|i| vec![i as f64]).collect();
        let ds = LabeledDataset::from_labels(
            FeatureMatrix::from_rows(&rows).unwrap(),
            vec![0, 0, 0, 0, 0, 1],
            vec!["a".into(), "b".into()],
        )
        .unwrap();
        let plan = stratified_folds(&ds.labels, 2, 0).unwrap();
        let err = run_cv(&ds, &SelectorConfig::new(SelectorKind::All, 1), &ClassifierConfig::knn(1), &plan, &CvOptions::default())
            .unwrap_err();
        assert!(matches!(err, Error::DegenerateFold { ref class, .. } if class == "b"));
    }

    #[test]
    fn absent_category_has_no_recall() {
        let ds = separable(10);
        let ds = LabeledDataset::from_labels(ds.matrix.clone(), ds.labels.clone(), vec!["a".into(), "b".into(), "c".into()]).unwrap();
        let plan = stratified_folds(&ds.labels, 5, 2).unwrap();
        let cell = run_cv(&ds, &SelectorConfig::new(SelectorKind::Ffr, 1), &ClassifierConfig::knn(1), &plan, &CvOptions::default()).unwrap();
        assert_eq!(cell.per_category_recall.len(), 3);
        assert_eq!(cell.per_category_recall[2], None);
    }
}
