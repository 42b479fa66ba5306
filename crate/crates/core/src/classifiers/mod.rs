//! Downstream classifiers used to judge a feature subset.

mod bayes;
mod knn;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::dataset::FeatureMatrix;
use crate::error::{Error, Result};

pub use bayes::{nb_fit, nb_predict, NaiveBayesModel, DEFAULT_EPSILON};
pub use knn::{knn_fit, knn_predict, KnnModel};

pub const DEFAULT_K: usize = 5;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ClassifierKind {
    Knn,
    Bayes,
}

impl ClassifierKind {
    pub fn as_str(self) -> &'static str {
        match self {
            ClassifierKind::Knn => "knn",
            ClassifierKind::Bayes => "bayes",
        }
    }
}

impl fmt::Display for ClassifierKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for ClassifierKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "knn" => Ok(ClassifierKind::Knn),
            "bayes" | "nb" => Ok(ClassifierKind::Bayes),
            other => Err(Error::invalid(format!(
                "unknown classifier {other:?} (expected knn or bayes)"
            ))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ClassifierConfig {
    pub kind: ClassifierKind,
    /// Neighbour count for KNN.
    pub k: usize,
    /// Variance floor for naive Bayes.
    pub epsilon: f64,
}

impl ClassifierConfig {
    pub fn knn(k: usize) -> Self {
        ClassifierConfig {
            kind: ClassifierKind::Knn,
            k,
            epsilon: DEFAULT_EPSILON,
        }
    }

    pub fn bayes(epsilon: f64) -> Self {
        ClassifierConfig {
            kind: ClassifierKind::Bayes,
            k: DEFAULT_K,
            epsilon,
        }
    }

    pub fn fit(&self, matrix: &FeatureMatrix, labels: &[usize], n_classes: usize) -> Result<Model> {
        Ok(match self.kind {
            ClassifierKind::Knn => Model::Knn(knn_fit(matrix, labels, self.k)?),
            ClassifierKind::Bayes => Model::Bayes(nb_fit(matrix, labels, n_classes, self.epsilon)?),
        })
    }
}

#[derive(Debug, Clone)]
pub enum Model {
    Knn(KnnModel),
    Bayes(NaiveBayesModel),
}

impl Model {
    pub fn predict(&self, query: &[f64]) -> Result<usize> {
        match self {
            Model::Knn(m) => m.predict(query),
            Model::Bayes(m) => m.predict(query),
        }
    }

    pub fn predict_batch(&self, queries: &FeatureMatrix) -> Result<Vec<usize>> {
        match self {
            Model::Knn(m) => m.predict_batch(queries),
            Model::Bayes(m) => m.predict_batch(queries),
        }
    }
}
