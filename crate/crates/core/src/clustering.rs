//! Similarity-based feature clustering with one representative per cluster.
//!
//! Repeatedly take the remaining feature whose k-th nearest remaining
//! neighbour is closest (the centre of the densest group), keep it, and
//! discard its k nearest neighbours. Larger k discards more per step, so the
//! number of kept features falls as k grows; k is searched by bisection to
//! hit the requested count.

use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::dataset::{FeatureMatrix, LabeledDataset};
use crate::error::{Error, Result};
use crate::selection::{FeatureSelector, SelectionResult};
use crate::similarity::{build_similarity_matrix, Measure, SimilarityMatrix, Symmetrize};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ClusterSelectionParams {
    pub measure: Measure,
    /// Upper bound on the neighbour count tried; `None` means D - 1.
    pub k: Option<usize>,
    pub target_count: usize,
    pub symmetrize: Option<Symmetrize>,
}

/// Result of one greedy pass at a fixed k.
#[derive(Debug, Clone, PartialEq)]
pub struct ClusterOutcome {
    /// Representatives in the order they were chosen.
    pub kept: Vec<usize>,
    /// Per kept feature: distance to its k-th nearest neighbour when chosen.
    pub radius: Vec<f64>,
    /// For each feature, the representative that absorbed it (itself if kept).
    pub representative: Vec<usize>,
}

fn sorted_neighbours(sim: &SimilarityMatrix, f: usize, remaining: &[usize]) -> Vec<(f64, usize)> {
    let mut n: Vec<(f64, usize)> = remaining
        .iter()
        .filter(|&&g| g != f)
        .map(|&g| (sim.get(f, g), g))
        .collect();
    n.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)));
    n
}

/// Greedy pass at neighbour count `k`. With `discard_budget`, at most that
/// many features are discarded in total and everything left afterwards is
/// kept.
pub fn cluster_with_k(sim: &SimilarityMatrix, k: usize, discard_budget: Option<usize>) -> ClusterOutcome {
    let d = sim.dim();
    let mut remaining: Vec<usize> = (0..d).collect();
    let mut kept = Vec::new();
    let mut radius = Vec::new();
    let mut representative: Vec<usize> = (0..d).collect();
    let mut budget = discard_budget.unwrap_or(usize::MAX);
    let mut k = k.max(1);

    while !remaining.is_empty() {
        if remaining.len() == 1 {
            kept.push(remaining[0]);
            radius.push(0.0);
            break;
        }
        k = k.min(remaining.len() - 1);
        let mut best: Option<(f64, usize, Vec<(f64, usize)>)> = None;
        for &f in &remaining {
            let nn = sorted_neighbours(sim, f, &remaining);
            let r = nn[k - 1].0;
            // remaining is ascending, so strict < keeps the lower index on ties
            if best.as_ref().is_none_or(|(br, _, _)| r < *br) {
                best = Some((r, f, nn));
            }
        }
        let (r, f, nn) = best.expect("remaining is nonempty");
        kept.push(f);
        radius.push(r);
        let take = k.min(budget);
        budget -= take;
        let absorbed: Vec<usize> = nn[..take].iter().map(|&(_, g)| g).collect();
        for &g in &absorbed {
            representative[g] = f;
        }
        remaining.retain(|g| *g != f && !absorbed.contains(g));
        if budget == 0 {
            for &g in &remaining {
                let nn = sorted_neighbours(sim, g, &remaining);
                kept.push(g);
                radius.push(nn.get(k.min(nn.len()).saturating_sub(1)).map_or(0.0, |p| p.0));
            }
            break;
        }
    }
    ClusterOutcome {
        kept,
        radius,
        representative,
    }
}

/// Chooses k and returns `(kept, per-feature scores)` with exactly
/// `target` kept features. Scores are the cluster radius for kept features
/// and the dissimilarity to their representative for discarded ones.
pub fn select_from_similarity(
    sim: &SimilarityMatrix,
    target: usize,
    k_cap: Option<usize>,
) -> Result<(Vec<usize>, Vec<f64>)> {
    let d = sim.dim();
    if target == 0 || target > d {
        return Err(Error::invalid(format!(
            "cannot keep {target} of {d} features"
        )));
    }
    let k_max = k_cap.unwrap_or(d - 1).clamp(1, d.saturating_sub(1).max(1));
    let run = |k: usize| cluster_with_k(sim, k, None);

    let mut outcome = run(1);
    if outcome.kept.len() < target {
        // even k = 1 keeps too few: stop discarding once the count is reached
        outcome = cluster_with_k(sim, 1, Some(d - target));
    } else if outcome.kept.len() > target {
        let top = run(k_max);
        if top.kept.len() >= target {
            outcome = top;
        } else {
            // count(lo) > target >= count(hi)
            let (mut lo, mut hi) = (1, k_max);
            let mut lo_out = outcome;
            let mut hi_out = top;
            while hi - lo > 1 {
                let mid = lo + (hi - lo) / 2;
                let m = run(mid);
                if m.kept.len() > target {
                    lo = mid;
                    lo_out = m;
                } else {
                    hi = mid;
                    hi_out = m;
                }
            }
            outcome = if hi_out.kept.len() == target { hi_out } else { lo_out };
        }
    }

    let mut order: Vec<(usize, f64)> = outcome.kept.iter().copied().zip(outcome.radius.iter().copied()).collect();
    if order.len() > target {
        // drop the least representative (largest radius, then highest index)
        let mut by_radius = order.clone();
        by_radius.sort_by(|a, b| b.1.total_cmp(&a.1).then(b.0.cmp(&a.0)));
        let dropped: Vec<usize> = by_radius[..order.len() - target].iter().map(|p| p.0).collect();
        order.retain(|(f, _)| !dropped.contains(f));
    }

    let mut scores = vec![0.0; d];
    for g in 0..d {
        let rep = outcome.representative[g];
        scores[g] = if rep == g { 0.0 } else { sim.get(rep, g) };
    }
    for &(f, r) in &order {
        scores[f] = r;
    }
    Ok((order.into_iter().map(|(f, _)| f).collect(), scores))
}

/// Builds the dissimilarity matrix under `params.measure` and clusters it.
pub fn select_by_clustering(matrix: &FeatureMatrix, params: &ClusterSelectionParams) -> Result<SelectionResult> {
    let d = matrix.n_features();
    if d < 2 {
        return Err(Error::invalid(format!("need at least 2 features, got {d}")));
    }
    if params.target_count == 0 || params.target_count > d {
        return Err(Error::invalid(format!(
            "cannot keep {} of {d} features",
            params.target_count
        )));
    }
    let start = Instant::now();
    let mut sim = build_similarity_matrix(matrix, params.measure)?;
    if let Some(mode) = params.symmetrize {
        sim = sim.symmetrized(mode);
    }
    let (kept, scores) = select_from_similarity(&sim, params.target_count, params.k)?;
    Ok(SelectionResult {
        method: params.measure.to_string(),
        kept,
        scores,
        elapsed_seconds: start.elapsed().as_secs_f64(),
    })
}

#[derive(Debug, Clone, Copy)]
pub struct ClusterSelector {
    pub params: ClusterSelectionParams,
}

impl FeatureSelector for ClusterSelector {
    fn name(&self) -> String {
        self.params.measure.to_string()
    }

    fn select(&self, data: &LabeledDataset) -> Result<SelectionResult> {
        select_by_clustering(&data.matrix, &self.params)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sim_from(d: usize, f: impl Fn(usize, usize) -> f64) -> SimilarityMatrix {
        let values = (0..d * d).map(|p| if p / d == p % d { 0.0 } else { f(p / d, p % d) }).collect();
        let names = (0..d).map(|i| format!("f{i}")).collect();
        SimilarityMatrix::from_values(Measure::Cc, names, values).unwrap()
    }

    #[test]
    fn identical_features_keep_lowest_index() {
        let sim = sim_from(5, |_, _| 0.0);
        let (kept, _) = select_from_similarity(&sim, 1, None).unwrap();
        assert_eq!(kept, vec![0]);
    }

    #[test]
    fn two_blocks_fixed_k() {
        let sim = sim_from(6, |i, j| if i / 3 == j / 3 { 0.0 } else { 0.8 });
        let out = cluster_with_k(&sim, 2, None);
        assert_eq!(out.kept, vec![0, 3]);
        assert_eq!(out.representative, vec![0, 0, 0, 3, 3, 3]);
    }

    #[test]
    fn budget_caps_discards() {
        let sim = sim_from(6, |i, j| (i as f64 - j as f64).abs());
        let out = cluster_with_k(&sim, 1, Some(1));
        assert_eq!(out.kept.len(), 5);
    }

    #[test]
    fn exact_counts_for_every_target() {
        let sim = sim_from(9, |i, j| ((i * 7 + j * 7) % 11) as f64 / 10.0 + 0.05);
        for t in 1..=9 {
            let (kept, scores) = select_from_similarity(&sim, t, None).unwrap();
            assert_eq!(kept.len(), t, "target {t}");
            let mut u = kept.clone();
            u.sort_unstable();
            u.dedup();
            assert_eq!(u.len(), t);
            assert_eq!(scores.len(), 9);
        }
        assert!(select_from_similarity(&sim, 0, None).is_err());
        assert!(select_from_similarity(&sim, 10, None).is_err());
    }

    #[test]
    fn radius_bounds_absorbed_members() {
        let sim = sim_from(8, |i, j| ((i as f64 - j as f64).powi(2) * 0.37).sin().abs() + 0.01);
        for k in 1..8 {
            let out = cluster_with_k(&sim, k, None);
            for g in 0..8 {
                let rep = out.representative[g];
                if rep != g {
                    let pos = out.kept.iter().position(|&f| f == rep).unwrap();
                    assert!(sim.get(rep, g) <= out.radius[pos]);
                }
            }
        }
    }
}
