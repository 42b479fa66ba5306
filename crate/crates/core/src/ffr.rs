//! Fast feature reduction: rank features by the variance of their
//! per-class means and keep the top `t`.
//!
//! A feature whose class means are spread apart separates the classes; one
//! whose class means coincide carries no class-dependent information. The
//! whole method is a single pass over the data plus a K×D reduction.

use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::dataset::{apply_minmax, fit_minmax, LabeledDataset};
use crate::error::{Error, Result};
use crate::selection::{FeatureSelector, SelectionResult};

const SHARD_ROWS: usize = 8192;

/// Per-class, per-feature means (K×D, row per class).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClassMeanTable {
    pub values: Vec<f64>,
    pub class_counts: Vec<usize>,
    pub n_features: usize,
}

impl ClassMeanTable {
    pub fn n_classes(&self) -> usize {
        self.class_counts.len()
    }

    pub fn get(&self, class: usize, feature: usize) -> f64 {
        self.values[class * self.n_features + feature]
    }

    /// The K class means of one feature.
    pub fn feature_means(&self, feature: usize) -> Vec<f64> {
        (0..self.n_classes()).map(|c| self.get(c, feature)).collect()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FfrScores {
    pub scores: Vec<f64>,
    pub mean_of_means: Vec<f64>,
}

/// Class means over every declared category of `dataset`.
///
/// Row shards are summed in parallel and merged in shard order, so the
/// result is the same for any thread count.
pub fn class_means(dataset: &LabeledDataset) -> Result<ClassMeanTable> {
    let k = dataset.n_categories();
    let d = dataset.n_features();
    let m = &dataset.matrix;
    let shards: Vec<(Vec<f64>, Vec<usize>)> = dataset
        .labels
        .par_chunks(SHARD_ROWS)
        .enumerate()
        .map(|(s, labels)| {
            let mut sums = vec![0.0; k * d];
            let mut counts = vec![0usize; k];
            let base = s * SHARD_ROWS;
            for (offset, &c) in labels.iter().enumerate() {
                counts[c] += 1;
                let acc = &mut sums[c * d..(c + 1) * d];
                for (a, &v) in acc.iter_mut().zip(m.row(base + offset)) {
                    *a += v;
                }
            }
            (sums, counts)
        })
        .collect();

    let mut sums = vec![0.0; k * d];
    let mut counts = vec![0usize; k];
    for (s, c) in shards {
        for (a, v) in sums.iter_mut().zip(s) {
            *a += v;
        }
        for (a, v) in counts.iter_mut().zip(c) {
            *a += v;
        }
    }
    if let Some(empty) = counts.iter().position(|&c| c == 0) {
        return Err(Error::DegenerateClass(dataset.categories[empty].clone()));
    }
    for (c, &n) in counts.iter().enumerate() {
        for v in &mut sums[c * d..(c + 1) * d] {
            *v /= n as f64;
        }
    }
    Ok(ClassMeanTable {
        values: sums,
        class_counts: counts,
        n_features: d,
    })
}

/// Population variance of each feature's K class means.
pub fn ffr_scores(table: &ClassMeanTable) -> Result<FfrScores> {
    let k = table.n_classes();
    if k < 2 {
        return Err(Error::invalid(format!(
            "class-mean variance needs at least 2 classes, got {k}"
        )));
    }
    let mut scores = Vec::with_capacity(table.n_features);
    let mut mean_of_means = Vec::with_capacity(table.n_features);
    for f in 0..table.n_features {
        let means = table.feature_means(f);
        let mu = means.iter().sum::<f64>() / k as f64;
        let v = if means.iter().all(|&s| s == means[0]) {
            0.0
        } else {
            means.iter().map(|&s| (s - mu) * (s - mu)).sum::<f64>() / k as f64
        };
        scores.push(v);
        mean_of_means.push(mu);
    }
    Ok(FfrScores {
        scores,
        mean_of_means,
    })
}

/// The `t` highest-scoring features, best first; ties go to the lower index.
pub fn select_top_t(scores: &FfrScores, t: usize) -> Result<SelectionResult> {
    let d = scores.scores.len();
    if t == 0 || t > d {
        return Err(Error::invalid(format!("cannot keep {t} of {d} features")));
    }
    let mut order: Vec<usize> = (0..d).collect();
    order.sort_by(|&a, &b| scores.scores[b].total_cmp(&scores.scores[a]).then(a.cmp(&b)));
    order.truncate(t);
    Ok(SelectionResult {
        method: "ffr".into(),
        kept: order,
        scores: scores.scores.clone(),
        elapsed_seconds: 0.0,
    })
}

/// Full pipeline. With `normalize`, the rows are min-max scaled first; that
/// step is excluded from `elapsed_seconds`.
pub fn ffr_select(dataset: &LabeledDataset, t: usize, normalize: bool) -> Result<SelectionResult> {
    let scaled;
    let data = if normalize {
        let params = fit_minmax(&dataset.matrix)?;
        scaled = dataset.with_matrix(apply_minmax(&dataset.matrix, &params)?)?;
        &scaled
    } else {
        dataset
    };
    let start = Instant::now();
    let table = class_means(data)?;
    let scores = ffr_scores(&table)?;
    let mut result = select_top_t(&scores, t)?;
    result.elapsed_seconds = start.elapsed().as_secs_f64();
    Ok(result)
}

/// CSV of `feature index, name, one mean per class, score`.
pub fn write_scores_csv<W: std::io::Write>(
    out: W,
    table: &ClassMeanTable,
    scores: &FfrScores,
    feature_names: &[String],
    categories: &[String],
) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    let mut header = vec!["feature_index".to_string(), "name".to_string()];
    header.extend(categories.iter().map(|c| format!("mean_{c}")));
    header.push("score".into());
    w.write_record(&header)?;
    for f in 0..table.n_features {
        let mut rec = vec![f.to_string(), feature_names[f].clone()];
        rec.extend(table.feature_means(f).iter().map(|v| v.to_string()));
        rec.push(scores.scores[f].to_string());
        w.write_record(&rec)?;
    }
    w.flush().map_err(|e| Error::io("<csv>", e))?;
    Ok(())
}

#[derive(Debug, Clone, Copy)]
pub struct FfrSelector {
    pub t: usize,
    pub normalize: bool,
}

impl FeatureSelector for FfrSelector {
    fn name(&self) -> String {
        "ffr".into()
    }

    fn select(&self, data: &LabeledDataset) -> Result<SelectionResult> {
        ffr_select(data, self.t, self.normalize)
    }
}
