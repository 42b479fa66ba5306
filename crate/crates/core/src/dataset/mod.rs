//! Connection-record datasets: dense feature tables, labels, and the
//! preprocessing steps applied before selection and classification.

mod encode;
mod folds;
pub mod kdd;
mod normalize;
mod subsample;
pub mod synth;

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use encode::{encode_symbolic, CategoricalEncoder};
pub use folds::{shuffled_folds, stratified_folds, FoldPlan};
pub use kdd::{
    load_kdd, load_kdd_lines, map_category, parse_kdd_record, CategoryMap, RawField, RawRecord,
    CATEGORY_NAMES, FEATURE_NAMES, SYMBOLIC_COLUMNS,
};
pub use normalize::{apply_minmax, fit_minmax, NormalizerParams};
pub use subsample::stratified_subsample;

/// Dense N×D table of real values, stored row-major.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FeatureMatrix {
    values: Vec<f64>,
    n_samples: usize,
    n_features: usize,
    feature_names: Vec<String>,
}

impl FeatureMatrix {
    pub fn new(values: Vec<f64>, n_features: usize, feature_names: Vec<String>) -> Result<Self> {
        if feature_names.len() != n_features {
            return Err(Error::Dimension {
                expected: n_features,
                got: feature_names.len(),
            });
        }
        if n_features == 0 {
            if !values.is_empty() {
                return Err(Error::invalid("values given for a zero-width matrix"));
            }
            return Ok(FeatureMatrix {
                values,
                n_samples: 0,
                n_features,
                feature_names,
            });
        }
        if !values.len().is_multiple_of(n_features) {
            return Err(Error::Dimension {
                expected: n_features,
                got: values.len() % n_features,
            });
        }
        if let Some(pos) = values.iter().position(|v| !v.is_finite()) {
            return Err(Error::invalid(format!(
                "non-finite value at row {}, column {}",
                pos / n_features,
                pos % n_features
            )));
        }
        Ok(FeatureMatrix {
            n_samples: values.len() / n_features,
            values,
            n_features,
            feature_names,
        })
    }

    /// Builds a matrix from rows, naming features `f0, f1, ...`.
    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self> {
        let n_features = rows.first().map_or(0, Vec::len);
        let mut values = Vec::with_capacity(rows.len() * n_features);
        for row in rows {
            if row.len() != n_features {
                return Err(Error::Dimension {
                    expected: n_features,
                    got: row.len(),
                });
            }
            values.extend_from_slice(row);
        }
        let names = (0..n_features).map(|j| format!("f{j}")).collect();
        FeatureMatrix::new(values, n_features, names)
    }

    pub fn n_samples(&self) -> usize {
        self.n_samples
    }

    pub fn n_features(&self) -> usize {
        self.n_features
    }

    pub fn feature_names(&self) -> &[String] {
        &self.feature_names
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.values[i * self.n_features..(i + 1) * self.n_features]
    }

    pub fn rows(&self) -> impl ExactSizeIterator<Item = &[f64]> + '_ {
        // chunks_exact panics on zero width
        let width = self.n_features.max(1);
        self.values.chunks_exact(width).take(self.n_samples)
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.values[i * self.n_features + j]
    }

    pub fn column(&self, j: usize) -> Vec<f64> {
        self.rows().map(|r| r[j]).collect()
    }

    /// All columns, transposed into contiguous vectors.
    pub fn columns(&self) -> Vec<Vec<f64>> {
        let mut cols = vec![Vec::with_capacity(self.n_samples); self.n_features];
        for row in self.rows() {
            for (col, &v) in cols.iter_mut().zip(row) {
                col.push(v);
            }
        }
        cols
    }

    pub fn select_rows(&self, indices: &[usize]) -> FeatureMatrix {
        let mut values = Vec::with_capacity(indices.len() * self.n_features);
        for &i in indices {
            values.extend_from_slice(self.row(i));
        }
        FeatureMatrix {
            values,
            n_samples: indices.len(),
            n_features: self.n_features,
            feature_names: self.feature_names.clone(),
        }
    }

    pub fn select_columns(&self, indices: &[usize]) -> Result<FeatureMatrix> {
        if let Some(&bad) = indices.iter().find(|&&j| j >= self.n_features) {
            return Err(Error::invalid(format!(
                "feature index {bad} out of range for {} features",
                self.n_features
            )));
        }
        let mut values = Vec::with_capacity(self.n_samples * indices.len());
        for row in self.rows() {
            values.extend(indices.iter().map(|&j| row[j]));
        }
        Ok(FeatureMatrix {
            values,
            n_samples: self.n_samples,
            n_features: indices.len(),
            feature_names: indices
                .iter()
                .map(|&j| self.feature_names[j].clone())
                .collect(),
        })
    }

    pub(crate) fn map_values(&self, mut f: impl FnMut(usize, f64) -> f64) -> FeatureMatrix {
        let d = self.n_features.max(1);
        let values = self
            .values
            .iter()
            .enumerate()
            .map(|(k, &v)| f(k % d, v))
            .collect();
        FeatureMatrix {
            values,
            n_samples: self.n_samples,
            n_features: self.n_features,
            feature_names: self.feature_names.clone(),
        }
    }
}

/// A feature matrix with one category label per row.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LabeledDataset {
    pub matrix: FeatureMatrix,
    pub labels: Vec<usize>,
    pub categories: Vec<String>,
    /// Original attack name per row (`"smurf"`, `"normal"`, ...).
    pub subcategory: Vec<String>,
}

impl LabeledDataset {
    pub fn new(
        matrix: FeatureMatrix,
        labels: Vec<usize>,
        categories: Vec<String>,
        subcategory: Vec<String>,
    ) -> Result<Self> {
        let n = matrix.n_samples();
        for len in [labels.len(), subcategory.len()] {
            if len != n {
                return Err(Error::Dimension {
                    expected: n,
                    got: len,
                });
            }
        }
        if let Some(&bad) = labels.iter().find(|&&l| l >= categories.len()) {
            return Err(Error::invalid(format!(
                "label {bad} out of range for {} categories",
                categories.len()
            )));
        }
        Ok(LabeledDataset {
            matrix,
            labels,
            categories,
            subcategory,
        })
    }

    /// Labels only; subcategories are the category names.
    pub fn from_labels(
        matrix: FeatureMatrix,
        labels: Vec<usize>,
        categories: Vec<String>,
    ) -> Result<Self> {
        let sub = labels
            .iter()
            .map(|&l| categories.get(l).cloned().unwrap_or_default())
            .collect();
        LabeledDataset::new(matrix, labels, categories, sub)
    }

    pub fn n_samples(&self) -> usize {
        self.matrix.n_samples()
    }

    pub fn n_features(&self) -> usize {
        self.matrix.n_features()
    }

    pub fn n_categories(&self) -> usize {
        self.categories.len()
    }

    pub fn category_counts(&self) -> Vec<usize> {
        let mut counts = vec![0; self.categories.len()];
        for &l in &self.labels {
            counts[l] += 1;
        }
        counts
    }

    pub fn subcategory_counts(&self) -> BTreeMap<String, usize> {
        let mut counts = BTreeMap::new();
        for s in &self.subcategory {
            *counts.entry(s.clone()).or_insert(0) += 1;
        }
        counts
    }

    pub fn subset(&self, indices: &[usize]) -> LabeledDataset {
        LabeledDataset {
            matrix: self.matrix.select_rows(indices),
            labels: indices.iter().map(|&i| self.labels[i]).collect(),
            categories: self.categories.clone(),
            subcategory: indices.iter().map(|&i| self.subcategory[i].clone()).collect(),
        }
    }

    pub fn with_matrix(&self, matrix: FeatureMatrix) -> Result<LabeledDataset> {
        LabeledDataset::new(
            matrix,
            self.labels.clone(),
            self.categories.clone(),
            self.subcategory.clone(),
        )
    }

    pub fn select_features(&self, indices: &[usize]) -> Result<LabeledDataset> {
        self.with_matrix(self.matrix.select_columns(indices)?)
    }
}
