use serde::{Deserialize, Serialize};

use super::FeatureMatrix;
use crate::error::{Error, Result};

/// Per-feature min/max observed on a fit set.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NormalizerParams {
    pub min: Vec<f64>,
    pub max: Vec<f64>,
}

impl NormalizerParams {
    pub fn n_features(&self) -> usize {
        self.min.len()
    }
}

pub fn fit_minmax(matrix: &FeatureMatrix) -> Result<NormalizerParams> {
    if matrix.n_samples() == 0 {
        return Err(Error::invalid("cannot fit min-max on an empty matrix"));
    }
    let d = matrix.n_features();
    let mut min = vec![f64::INFINITY; d];
    let mut max = vec![f64::NEG_INFINITY; d];
    for row in matrix.rows() {
        for j in 0..d {
            min[j] = min[j].min(row[j]);
            max[j] = max[j].max(row[j]);
        }
    }
    Ok(NormalizerParams { min, max })
}

/// Maps each value to `(v - min) / (max - min)`. Constant features map to 0.
/// Values outside the fitted range are left unclamped.
pub fn apply_minmax(matrix: &FeatureMatrix, params: &NormalizerParams) -> Result<FeatureMatrix> {
    if params.n_features() != matrix.n_features() || params.max.len() != params.min.len() {
        return Err(Error::Dimension {
            expected: params.n_features(),
            got: matrix.n_features(),
        });
    }
    let span: Vec<f64> = params
        .min
        .iter()
        .zip(&params.max)
        .map(|(lo, hi)| hi - lo)
        .collect();
    Ok(matrix.map_values(|j, v| {
        if span[j] > 0.0 {
            (v - params.min[j]) / span[j]
        } else {
            0.0
        }
    }))
}
