use std::f64::consts::PI;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::dataset::FeatureMatrix;
use crate::error::{Error, Result};

/// Default variance floor, suited to min-max normalized features.
pub const DEFAULT_EPSILON: f64 = 1e-9;

/// Gaussian naive Bayes: per-class priors and per-class, per-feature
/// normal densities, evaluated in log space.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NaiveBayesModel {
    pub priors: Vec<f64>,
    /// K×D, row per class.
    pub means: Vec<f64>,
    /// K×D, every entry at least the floor.
    pub variances: Vec<f64>,
    pub epsilon: f64,
    n_features: usize,
}

/// Fits a model over classes `0..n_classes`. `epsilon = 0` disables the
/// variance floor, which makes any zero within-class variance produce
/// non-finite posteriors.
pub fn nb_fit(
    matrix: &FeatureMatrix,
    labels: &[usize],
    n_classes: usize,
    epsilon: f64,
) -> Result<NaiveBayesModel> {
    let n = matrix.n_samples();
    let d = matrix.n_features();
    if labels.len() != n {
        return Err(Error::Dimension {
            expected: n,
            got: labels.len(),
        });
    }
    if epsilon.is_nan() || epsilon < 0.0 {
        return Err(Error::invalid(format!("variance floor must be >= 0, got {epsilon}")));
    }
    let mut counts = vec![0usize; n_classes];
    let mut sums = vec![0.0; n_classes * d];
    for (row, &c) in matrix.rows().zip(labels) {
        if c >= n_classes {
            return Err(Error::invalid(format!("label {c} out of range")));
        }
        counts[c] += 1;
        for (a, &v) in sums[c * d..(c + 1) * d].iter_mut().zip(row) {
            *a += v;
        }
    }
    if let Some(empty) = counts.iter().position(|&c| c == 0) {
        return Err(Error::DegenerateClass(format!("class {empty}")));
    }
    let means: Vec<f64> = sums
        .iter()
        .enumerate()
        .map(|(p, s)| s / counts[p / d.max(1)] as f64)
        .collect();
    let mut sq = vec![0.0; n_classes * d];
    for (row, &c) in matrix.rows().zip(labels) {
        for j in 0..d {
            let dev = row[j] - means[c * d + j];
            sq[c * d + j] += dev * dev;
        }
    }
    let variances = sq
        .iter()
        .enumerate()
        .map(|(p, s)| (s / counts[p / d.max(1)] as f64).max(epsilon))
        .collect();
    let priors = counts.iter().map(|&c| c as f64 / n as f64).collect();
    Ok(NaiveBayesModel {
        priors,
        means,
        variances,
        epsilon,
        n_features: d,
    })
}

impl NaiveBayesModel {
    pub fn n_classes(&self) -> usize {
        self.priors.len()
    }

    /// `log prior + Σ log N(x_d; mean, var)` per class.
    pub fn log_posteriors(&self, query: &[f64]) -> Result<Vec<f64>> {
        let d = self.n_features;
        if query.len() != d {
            return Err(Error::Dimension {
                expected: d,
                got: query.len(),
            });
        }
        Ok((0..self.n_classes())
            .map(|c| {
                let mut s = self.priors[c].ln();
                for j in 0..d {
                    let var = self.variances[c * d + j];
                    let dev = query[j] - self.means[c * d + j];
                    s -= 0.5 * (2.0 * PI * var).ln() + dev * dev / (2.0 * var);
                }
                s
            })
            .collect())
    }

    pub fn predict(&self, query: &[f64]) -> Result<usize> {
        nb_predict(self, query)
    }

    pub fn predict_batch(&self, queries: &FeatureMatrix) -> Result<Vec<usize>> {
        (0..queries.n_samples())
            .into_par_iter()
            .map(|i| nb_predict(self, queries.row(i)))
            .collect()
    }
}

/// Arg-max of the log posteriors; ties go to the lower class id. A NaN
/// posterior (zero variance without a floor) is reported as an error.
pub fn nb_predict(model: &NaiveBayesModel, query: &[f64]) -> Result<usize> {
    let post = model.log_posteriors(query)?;
    if let Some(class) = post.iter().position(|p| p.is_nan()) {
        return Err(Error::NonFinitePosterior { class });
    }
    let mut best = 0;
    for (c, &p) in post.iter().enumerate() {
        if p > post[best] {
            best = c;
        }
    }
    Ok(best)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[Vec<f64>]) -> FeatureMatrix {
        FeatureMatrix::from_rows(rows).unwrap()
    }

    #[test]
    fn symmetric_boundary_at_midpoint() {
        // class means 0 and 10, unit variances, equal priors
        let train = m(&[vec![-1.0], vec![1.0], vec![9.0], vec![11.0]]);
        let model = nb_fit(&train, &[0, 0, 1, 1], 2, DEFAULT_EPSILON).unwrap();
        assert_eq!(model.variances, vec![1.0, 1.0]);
        assert_eq!(model.predict(&[4.99]).unwrap(), 0);
        assert_eq!(model.predict(&[5.01]).unwrap(), 1);
        // exactly on the boundary: tie goes to the lower id
        assert_eq!(model.predict(&[5.0]).unwrap(), 0);
    }

    #[test]
    fn constant_feature_gets_floor() {
        let train = m(&[vec![2.0, 1.0], vec![2.0, 3.0], vec![5.0, 0.0], vec![6.0, 1.0]]);
        let model = nb_fit(&train, &[0, 0, 1, 1], 2, 1e-9).unwrap();
        assert_eq!(model.variances[0], 1e-9);
        assert!(model.predict(&[2.5, 2.0]).is_ok());
        let unfloored = nb_fit(&train, &[0, 0, 1, 1], 2, 0.0).unwrap();
        assert!(matches!(
            unfloored.predict(&[2.5, 2.0]),
            Err(Error::NonFinitePosterior { class: 0 })
        ));
    }

    #[test]
    fn priors_follow_counts() {
        // dos vs normal totals of the 10% file
        let labels: Vec<usize> = std::iter::repeat_n(0, 391_458).chain(std::iter::repeat_n(1, 97_277)).collect();
        let rows: Vec<Vec<f64>> = labels.iter().map(|&l| vec![l as f64]).collect();
        let model = nb_fit(&m(&rows), &labels, 2, DEFAULT_EPSILON).unwrap();
        assert!((model.priors[0] - 0.800962).abs() < 1e-6);
        assert!((model.priors[1] - 0.199038).abs() < 1e-6);
        assert!((model.priors.iter().sum::<f64>() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn at_class_mean() {
        let train = m(&[vec![0.0, 0.0], vec![2.0, 2.0], vec![10.0, 10.0], vec![12.0, 12.0]]);
        let model = nb_fit(&train, &[0, 0, 1, 1], 2, DEFAULT_EPSILON).unwrap();
        assert_eq!(model.predict(&[1.0, 1.0]).unwrap(), 0);
        assert_eq!(model.predict(&[11.0, 11.0]).unwrap(), 1);
    }

    #[test]
    fn far_query_still_classified() {
        let train = m(&[vec![0.0], vec![1.0], vec![10.0], vec![12.0]]);
        let model = nb_fit(&train, &[0, 0, 1, 1], 2, DEFAULT_EPSILON).unwrap();
        // 1e6 standard deviations out
        let post = model.log_posteriors(&[1e6]).unwrap();
        assert!(post.iter().all(|p| p.is_finite()));
        assert_eq!(model.predict(&[1e6]).unwrap(), 1);
        // the wider class dominates both tails
        assert_eq!(model.predict(&[-1e6]).unwrap(), 1);
    }

    #[test]
    fn errors() {
        let train = m(&[vec![0.0], vec![1.0]]);
        assert!(matches!(nb_fit(&train, &[0, 0], 2, 1e-9), Err(Error::DegenerateClass(_))));
        let model = nb_fit(&train, &[0, 1], 2, 1e-9).unwrap();
        assert!(matches!(model.predict(&[1.0, 1.0]), Err(Error::Dimension { .. })));
        assert!(nb_fit(&train, &[0, 1], 2, -1.0).is_err());
    }
}
