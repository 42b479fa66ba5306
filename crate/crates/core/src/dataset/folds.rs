use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Assignment of every sample to one of `n_folds` folds.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FoldPlan {
    pub n_folds: usize,
    pub assignments: Vec<usize>,
}

impl FoldPlan {
    pub fn n_samples(&self) -> usize {
        self.assignments.len()
    }

    pub fn test_indices(&self, fold: usize) -> Vec<usize> {
        (0..self.assignments.len())
            .filter(|&i| self.assignments[i] == fold)
            .collect()
    }

    pub fn train_indices(&self, fold: usize) -> Vec<usize> {
        (0..self.assignments.len())
            .filter(|&i| self.assignments[i] != fold)
            .collect()
    }

    pub fn fold_sizes(&self) -> Vec<usize> {
        let mut sizes = vec![0; self.n_folds];
        for &f in &self.assignments {
            sizes[f] += 1;
        }
        sizes
    }
}

fn check(n: usize, n_folds: usize) -> Result<()> {
    if n_folds < 2 {
        return Err(Error::invalid(format!("need at least 2 folds, got {n_folds}")));
    }
    if n < n_folds {
        return Err(Error::invalid(format!(
            "{n} samples cannot fill {n_folds} folds"
        )));
    }
    Ok(())
}

/// Shuffles each category with `seed` and deals its members round-robin
/// over the folds. The dealing position carries over from one category to
/// the next, so small categories do not all pile into fold 0.
pub fn stratified_folds(labels: &[usize], n_folds: usize, seed: u64) -> Result<FoldPlan> {
    check(labels.len(), n_folds)?;
    let n_categories = labels.iter().max().map_or(0, |&m| m + 1);
    let mut members = vec![Vec::new(); n_categories];
    for (i, &l) in labels.iter().enumerate() {
        members[l].push(i);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut assignments = vec![0; labels.len()];
    let mut next = 0;
    for group in &mut members {
        group.shuffle(&mut rng);
        for &i in group.iter() {
            assignments[i] = next;
            next = (next + 1) % n_folds;
        }
    }
    Ok(FoldPlan {
        n_folds,
        assignments,
    })
}

/// Plain shuffled k-fold, ignoring labels.
pub fn shuffled_folds(n: usize, n_folds: usize, seed: u64) -> Result<FoldPlan> {
    check(n, n_folds)?;
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
    let mut assignments = vec![0; n];
    for (pos, &i) in order.iter().enumerate() {
        assignments[i] = pos % n_folds;
    }
    Ok(FoldPlan {
        n_folds,
        assignments,
    })
}
