//! Pairwise feature dissimilarities: correlation coefficient, least-square
//! regression error and the maximal information compression index.
//!
//! All moments are population moments (divide by `n`). Every measure is 0
//! for a pair of linearly related features.

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::dataset::FeatureMatrix;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Measure {
    /// `1 - |corr(x, y)|`
    Cc,
    /// Residual variance of the best linear prediction of `y` from `x`.
    Lsre,
    /// Smallest eigenvalue of the 2×2 covariance matrix of `(x, y)`.
    Mici,
}

impl Measure {
    pub const ALL: [Measure; 3] = [Measure::Cc, Measure::Lsre, Measure::Mici];

    pub fn is_symmetric(self) -> bool {
        !matches!(self, Measure::Lsre)
    }

    pub fn from_moments(self, m: &PairMoments) -> f64 {
        match self {
            Measure::Cc => m.correlation_dissimilarity(),
            Measure::Lsre => m.lsre(),
            Measure::Mici => m.mici(),
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Measure::Cc => "cc",
            Measure::Lsre => "lsre",
            Measure::Mici => "mici",
        }
    }
}

impl fmt::Display for Measure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Measure {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "cc" => Ok(Measure::Cc),
            "lsre" => Ok(Measure::Lsre),
            "mici" => Ok(Measure::Mici),
            other => Err(Error::invalid(format!(
                "unknown measure {other:?} (expected cc, lsre or mici)"
            ))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ColumnStats {
    pub mean: f64,
    pub variance: f64,
}

impl ColumnStats {
    pub fn of(x: &[f64]) -> ColumnStats {
        let n = x.len() as f64;
        let mean = x.iter().sum::<f64>() / n;
        // exactly zero for constant columns, whatever the rounding of `mean`
        let constant = x.iter().all(|&v| v == x[0]);
        let variance = if constant {
            0.0
        } else {
            x.iter().map(|&v| (v - mean) * (v - mean)).sum::<f64>() / n
        };
        ColumnStats { mean, variance }
    }
}

fn covariance(x: &[f64], y: &[f64], sx: &ColumnStats, sy: &ColumnStats) -> f64 {
    if sx.variance == 0.0 || sy.variance == 0.0 {
        return 0.0;
    }
    let n = x.len() as f64;
    x.iter()
        .zip(y)
        .map(|(&a, &b)| (a - sx.mean) * (b - sy.mean))
        .sum::<f64>()
        / n
}

/// Second moments of a column pair.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PairMoments {
    pub var_x: f64,
    pub var_y: f64,
    pub cov: f64,
}

impl PairMoments {
    fn from_stats(x: &[f64], y: &[f64], sx: &ColumnStats, sy: &ColumnStats) -> PairMoments {
        PairMoments {
            var_x: sx.variance,
            var_y: sy.variance,
            cov: covariance(x, y, sx, sy),
        }
    }

    pub fn swapped(&self) -> PairMoments {
        PairMoments {
            var_x: self.var_y,
            var_y: self.var_x,
            cov: self.cov,
        }
    }

    /// Squared correlation, or `None` when either variance is zero.
    fn r_squared(&self) -> Option<f64> {
        if self.var_x == 0.0 || self.var_y == 0.0 {
            return None;
        }
        Some((self.cov * self.cov / (self.var_x * self.var_y)).min(1.0))
    }

    pub fn correlation_dissimilarity(&self) -> f64 {
        match self.r_squared() {
            Some(r2) => 1.0 - r2.sqrt(),
            None => 1.0,
        }
    }

    pub fn lsre(&self) -> f64 {
        if self.var_x == 0.0 {
            return self.var_y;
        }
        let r2 = self.r_squared().unwrap_or(0.0);
        (self.var_y * (1.0 - r2)).clamp(0.0, self.var_y)
    }

    /// `(tr - sqrt(tr² - 4 det)) / 2`, evaluated as `det / λ_max` to avoid
    /// cancellation when the pair is nearly collinear.
    pub fn mici(&self) -> f64 {
        let trace = self.var_x + self.var_y;
        let diff = self.var_x - self.var_y;
        let disc = (diff * diff + 4.0 * self.cov * self.cov).sqrt();
        let largest = 0.5 * (trace + disc);
        if largest <= 0.0 {
            return 0.0;
        }
        let det = self.var_x * self.var_y - self.cov * self.cov;
        (det / largest).clamp(0.0, 0.5 * trace)
    }
}

pub fn pair_moments(x: &[f64], y: &[f64]) -> Result<PairMoments> {
    if x.len() != y.len() {
        return Err(Error::Dimension {
            expected: x.len(),
            got: y.len(),
        });
    }
    if x.len() < 2 {
        return Err(Error::invalid("need at least two samples per column"));
    }
    let sx = ColumnStats::of(x);
    let sy = ColumnStats::of(y);
    Ok(PairMoments::from_stats(x, y, &sx, &sy))
}

/// `1 - |corr(x, y)|`, in `[0, 1]`; 1 when either column is constant.
pub fn correlation_dissimilarity(x: &[f64], y: &[f64]) -> Result<f64> {
    Ok(pair_moments(x, y)?.correlation_dissimilarity())
}

/// Mean squared error of predicting `y` from `x` by least squares,
/// `var(y)·(1 - corr²)`. Not symmetric.
pub fn lsre(x: &[f64], y: &[f64]) -> Result<f64> {
    Ok(pair_moments(x, y)?.lsre())
}

/// Smaller eigenvalue of the covariance matrix of `(x, y)`.
pub fn mici(x: &[f64], y: &[f64]) -> Result<f64> {
    Ok(pair_moments(x, y)?.mici())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Symmetrize {
    Min,
    Max,
}

impl FromStr for Symmetrize {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "min" => Ok(Symmetrize::Min),
            "max" => Ok(Symmetrize::Max),
            other => Err(Error::invalid(format!(
                "unknown symmetrization {other:?} (expected min or max)"
            ))),
        }
    }
}

/// D×D table of dissimilarities. Entry `(i, j)` is the measure of feature
/// `i` against feature `j`; for LSRE that is the error of predicting `j`
/// from `i`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SimilarityMatrix {
    pub measure: Measure,
    pub names: Vec<String>,
    values: Vec<f64>,
}

impl SimilarityMatrix {
    pub fn from_values(measure: Measure, names: Vec<String>, values: Vec<f64>) -> Result<Self> {
        let d = names.len();
        if values.len() != d * d {
            return Err(Error::Dimension {
                expected: d * d,
                got: values.len(),
            });
        }
        Ok(SimilarityMatrix {
            measure,
            names,
            values,
        })
    }

    pub fn dim(&self) -> usize {
        self.names.len()
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.values[i * self.dim() + j]
    }

    pub fn row(&self, i: usize) -> &[f64] {
        let d = self.dim();
        &self.values[i * d..(i + 1) * d]
    }

    pub fn is_symmetric(&self) -> bool {
        let d = self.dim();
        (0..d).all(|i| (0..i).all(|j| self.get(i, j) == self.get(j, i)))
    }

    pub fn symmetrized(&self, mode: Symmetrize) -> SimilarityMatrix {
        let d = self.dim();
        let mut values = self.values.clone();
        for i in 0..d {
            for j in 0..d {
                let (a, b) = (self.get(i, j), self.get(j, i));
                values[i * d + j] = match mode {
                    Symmetrize::Min => a.min(b),
                    Symmetrize::Max => a.max(b),
                };
            }
        }
        SimilarityMatrix {
            measure: self.measure,
            names: self.names.clone(),
            values,
        }
    }

    /// CSV with a header row of feature names and one row per feature.
    pub fn write_csv<W: std::io::Write>(&self, out: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        let mut header = vec!["feature".to_string()];
        header.extend(self.names.iter().cloned());
        w.write_record(&header)?;
        for (i, name) in self.names.iter().enumerate() {
            let mut rec = vec![name.clone()];
            rec.extend(self.row(i).iter().map(|v| v.to_string()));
            w.write_record(&rec)?;
        }
        w.flush().map_err(|e| Error::io("<csv>", e))?;
        Ok(())
    }
}

/// Fills the full D×D table under `measure`. Column statistics are computed
/// once; each unordered pair costs one covariance pass and yields both
/// ordered entries. Rows are evaluated in parallel; cells are independent,
/// so the result does not depend on the thread count.
pub fn build_similarity_matrix(matrix: &FeatureMatrix, measure: Measure) -> Result<SimilarityMatrix> {
    let d = matrix.n_features();
    if d < 2 {
        return Err(Error::invalid(format!("need at least 2 features, got {d}")));
    }
    if matrix.n_samples() < 2 {
        return Err(Error::invalid("need at least two samples per column"));
    }
    let columns = matrix.columns();
    let stats: Vec<ColumnStats> = columns.iter().map(|c| ColumnStats::of(c)).collect();
    let upper: Vec<Vec<PairMoments>> = (0..d)
        .into_par_iter()
        .map(|i| {
            (i + 1..d)
                .map(|j| PairMoments::from_stats(&columns[i], &columns[j], &stats[i], &stats[j]))
                .collect()
        })
        .collect();
    let mut values = vec![0.0; d * d];
    for (i, row) in upper.iter().enumerate() {
        for (offset, m) in row.iter().enumerate() {
            let j = i + 1 + offset;
            values[i * d + j] = measure.from_moments(m);
            values[j * d + i] = measure.from_moments(&m.swapped());
        }
    }
    SimilarityMatrix::from_values(measure, matrix.feature_names().to_vec(), values)
}
