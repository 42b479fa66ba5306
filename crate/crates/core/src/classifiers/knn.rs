use rayon::prelude::*;

use crate::dataset::FeatureMatrix;
use crate::error::{Error, Result};

/// Brute-force k-nearest-neighbour classifier over Euclidean distance.
#[derive(Debug, Clone)]
pub struct KnnModel {
    train: FeatureMatrix,
    labels: Vec<usize>,
    k: usize,
}

pub fn knn_fit(matrix: &FeatureMatrix, labels: &[usize], k: usize) -> Result<KnnModel> {
    let n = matrix.n_samples();
    if n == 0 {
        return Err(Error::invalid("empty training set"));
    }
    if labels.len() != n {
        return Err(Error::Dimension {
            expected: n,
            got: labels.len(),
        });
    }
    if k == 0 || k > n {
        return Err(Error::invalid(format!(
            "k = {k} must be between 1 and the training size {n}"
        )));
    }
    Ok(KnnModel {
        train: matrix.clone(),
        labels: labels.to_vec(),
        k,
    })
}

fn squared_distance(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum()
}

/// Majority vote among the k nearest rows. Distance ties go to the lower
/// training index; vote ties go to the tied class whose member is nearest.
pub fn knn_predict(model: &KnnModel, query: &[f64]) -> Result<usize> {
    let d = model.train.n_features();
    if query.len() != d {
        return Err(Error::Dimension {
            expected: d,
            got: query.len(),
        });
    }
    let mut dist: Vec<(f64, usize)> = model
        .train
        .rows()
        .enumerate()
        .map(|(i, r)| (squared_distance(r, query), i))
        .collect();
    let by_distance = |a: &(f64, usize), b: &(f64, usize)| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1));
    let k = model.k;
    if k < dist.len() {
        dist.select_nth_unstable_by(k - 1, by_distance);
        dist.truncate(k);
    }
    dist.sort_by(by_distance);

    let n_classes = model.labels.iter().max().map_or(0, |&m| m + 1);
    let mut votes = vec![0usize; n_classes];
    for &(_, i) in &dist {
        votes[model.labels[i]] += 1;
    }
    let top = *votes.iter().max().expect("k >= 1");
    let winner = dist
        .iter()
        .map(|&(_, i)| model.labels[i])
        .find(|&c| votes[c] == top)
        .expect("some neighbour holds the top vote");
    Ok(winner)
}

impl KnnModel {
    pub fn k(&self) -> usize {
        self.k
    }

    pub fn predict(&self, query: &[f64]) -> Result<usize> {
        knn_predict(self, query)
    }

    /// Predictions for every row of `queries`, in row order.
    pub fn predict_batch(&self, queries: &FeatureMatrix) -> Result<Vec<usize>> {
        (0..queries.n_samples())
            .into_par_iter()
            .map(|i| knn_predict(self, queries.row(i)))
            .collect()
    }
}
