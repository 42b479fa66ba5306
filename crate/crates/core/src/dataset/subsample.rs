use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::LabeledDataset;
use crate::error::{Error, Result};

/// Splits `target` over groups proportionally to `counts` (largest
/// remainder), giving every nonempty group at least `floor` items and never
/// more than it holds.
pub(crate) fn proportional_allocation(counts: &[usize], target: usize, floor: usize) -> Result<Vec<usize>> {
    let total: usize = counts.iter().sum();
    let nonempty = counts.iter().filter(|&&c| c > 0).count();
    let minimum: usize = counts.iter().map(|&c| c.min(floor)).sum();
    if target > total {
        return Err(Error::invalid(format!(
            "target {target} exceeds the {total} available samples"
        )));
    }
    if target < minimum {
        return Err(Error::invalid(format!(
            "target {target} cannot keep {floor} sample(s) in each of {nonempty} nonempty categories"
        )));
    }
    let quota: Vec<f64> = counts
        .iter()
        .map(|&c| target as f64 * c as f64 / total as f64)
        .collect();
    let mut alloc: Vec<usize> = counts
        .iter()
        .zip(&quota)
        .map(|(&c, &q)| (q.floor() as usize).max(floor).min(c))
        .collect();
    let remainder = |alloc: &[usize], g: usize| quota[g] - alloc[g] as f64;
    loop {
        let sum: usize = alloc.iter().sum();
        if sum == target {
            break;
        }
        if sum < target {
            // grow the group furthest below its quota; ties to the lower index
            let g = (0..counts.len())
                .filter(|&g| alloc[g] < counts[g])
                .max_by(|&a, &b| {
                    remainder(&alloc, a)
                        .total_cmp(&remainder(&alloc, b))
                        .then(b.cmp(&a))
                })
                .expect("target <= total guarantees room");
            alloc[g] += 1;
        } else {
            let g = (0..counts.len())
                .filter(|&g| alloc[g] > floor.min(counts[g]))
                .min_by(|&a, &b| {
                    remainder(&alloc, a)
                        .total_cmp(&remainder(&alloc, b))
                        .then(a.cmp(&b))
                })
                .expect("target >= minimum guarantees slack");
            alloc[g] -= 1;
        }
    }
    Ok(alloc)
}

/// Proportional per-category sample of `target_n` rows. Every nonempty
/// category keeps at least one row and original row order is preserved.
pub fn stratified_subsample(
    dataset: &LabeledDataset,
    target_n: usize,
    seed: u64,
) -> Result<LabeledDataset> {
    let n = dataset.n_samples();
    if target_n == n {
        return Ok(dataset.clone());
    }
    let counts = dataset.category_counts();
    let alloc = proportional_allocation(&counts, target_n, 1)?;
    let mut members = vec![Vec::new(); counts.len()];
    for (i, &l) in dataset.labels.iter().enumerate() {
        members[l].push(i);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut keep = Vec::with_capacity(target_n);
    for (group, &take) in members.iter_mut().zip(&alloc) {
        group.shuffle(&mut rng);
        keep.extend_from_slice(&group[..take]);
    }
    keep.sort_unstable();
    Ok(dataset.subset(&keep))
}
