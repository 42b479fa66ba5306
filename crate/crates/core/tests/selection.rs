mod common;

use std::time::Instant;

use kdd_ffr::clustering::{cluster_with_k, select_by_clustering, select_from_similarity, ClusterSelectionParams};
use kdd_ffr::dataset::{apply_minmax, fit_minmax, load_kdd, CategoryMap, FeatureMatrix, LabeledDataset};
use kdd_ffr::ffr::{class_means, ffr_scores, ffr_select};
use kdd_ffr::similarity::{Measure, SimilarityMatrix};
use proptest::prelude::*;

use common::{close, fixture_path};

fn labeled() -> impl Strategy<Value = LabeledDataset> {
    (2usize..5, 1usize..8, 8usize..120).prop_flat_map(|(k, d, n)| {
        (prop::collection::vec(-10.0..10.0f64, n * d), prop::collection::vec(0..k, n)).prop_map(move |(v, mut labels)| {
            for c in 0..k {
                labels[c] = c;
            }
            let m = FeatureMatrix::new(v, d, (0..d).map(|j| format!("f{j}")).collect()).unwrap();
            LabeledDataset::from_labels(m, labels, (0..k).map(|c| format!("c{c}")).collect()).unwrap()
        })
    })
}

fn dissimilarity(d: usize) -> impl Strategy<Value = SimilarityMatrix> {
    prop::collection::vec(0.0..1.0f64, d * d).prop_map(move |mut v| {
        for i in 0..d {
            v[i * d + i] = 0.0;
        }
        SimilarityMatrix::from_values(Measure::Lsre, (0..d).map(|i| format!("f{i}")).collect(), v).unwrap()
    })
}

fn brute_scores(ds: &LabeledDataset) -> Vec<f64> {
    let k = ds.n_categories();
    (0..ds.n_features())
        .map(|f| {
            let means: Vec<f64> = (0..k)
                .map(|c| {
                    let members: Vec<f64> = (0..ds.n_samples()).filter(|&i| ds.labels[i] == c).map(|i| ds.matrix.get(i, f)).collect();
                    members.iter().sum::<f64>() / members.len() as f64
                })
                .collect();
            let mu = means.iter().sum::<f64>() / k as f64;
            means.iter().map(|m| (m - mu).powi(2)).sum::<f64>() / k as f64
        })
        .collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn ffr_scores_match_brute_force(ds in labeled()) {
        let got = ffr_scores(&class_means(&ds).unwrap()).unwrap().scores;
        for (g, w) in got.iter().zip(brute_scores(&ds)) {
            prop_assert!(close(*g, w, 1e-9, w));
        }
    }

    #[test]
    fn ffr_ignores_row_order_and_duplication(ds in labeled(), t_frac in 0.0..1.0f64, rot in 0usize..100) {
        let t = 1 + (t_frac * (ds.n_features() - 1) as f64) as usize;
        let base = ffr_select(&ds, t, false).unwrap().sorted_kept();
        let n = ds.n_samples();
        let rotated: Vec<usize> = (0..n).map(|i| (i + rot) % n).collect();
        prop_assert_eq!(ffr_select(&ds.subset(&rotated), t, false).unwrap().sorted_kept(), base.clone());
        let doubled: Vec<usize> = (0..n).chain(0..n).collect();
        prop_assert_eq!(ffr_select(&ds.subset(&doubled), t, false).unwrap().sorted_kept(), base);
    }

    #[test]
    fn normalized_ffr_absorbs_feature_scale(ds in labeled(), feature in 0usize..8, c in 0.01..100.0f64) {
        let d = ds.n_features();
        let feature = feature % d;
        let t = (d / 2).max(1);
        let mut values = ds.matrix.values().to_vec();
        for i in 0..ds.n_samples() {
            values[i * d + feature] *= c;
        }
        let rescaled = ds.with_matrix(FeatureMatrix::new(values, d, ds.matrix.feature_names().to_vec()).unwrap()).unwrap();
        let a = ffr_scores(&class_means(&normalize(&ds)).unwrap()).unwrap().scores;
        let b = ffr_scores(&class_means(&normalize(&rescaled)).unwrap()).unwrap().scores;
        for (x, y) in a.iter().zip(&b) {
            prop_assert!(close(*x, *y, 1e-9, 1.0));
        }
        // near-ties may legitimately swap under rounding; only compare when separated
        let mut sorted = a.clone();
        sorted.sort_by(|p, q| q.total_cmp(p));
        if t == d || sorted[t - 1] - sorted[t] > 1e-9 {
            prop_assert_eq!(ffr_select(&ds, t, true).unwrap().sorted_kept(), ffr_select(&rescaled, t, true).unwrap().sorted_kept());
        }
    }

    #[test]
    fn clustering_is_deterministic_and_exact(sim in dissimilarity(8), target in 1usize..=8) {
        let first = select_from_similarity(&sim, target, None).unwrap();
        prop_assert_eq!(first.0.len(), target);
        prop_assert_eq!(first.clone(), select_from_similarity(&sim, target, None).unwrap());
    }

    #[test]
    fn discarded_features_lie_within_their_representative_radius(sim in dissimilarity(8), k in 1usize..8) {
        let out = cluster_with_k(&sim, k, None);
        for g in 0..8 {
            let rep = out.representative[g];
            if rep == g {
                prop_assert!(out.kept.contains(&g));
                continue;
            }
            let pos = out.kept.iter().position(|&f| f == rep).unwrap();
            prop_assert!(sim.get(rep, g) <= out.radius[pos]);
        }
        let mut all: Vec<usize> = out.kept.clone();
        all.extend((0..8).filter(|&g| out.representative[g] != g));
        all.sort_unstable();
        prop_assert_eq!(all, (0..8).collect::<Vec<_>>());
    }
}

fn normalize(ds: &LabeledDataset) -> LabeledDataset {
    let p = fit_minmax(&ds.matrix).unwrap();
    ds.with_matrix(apply_minmax(&ds.matrix, &p).unwrap()).unwrap()
}

#[test]
fn exact_counts_on_kdd_features() {
    let ds = normalize(&load_kdd(&fixture_path(), &CategoryMap::default()).unwrap());
    for measure in Measure::ALL {
        for t in [10, 20, 30] {
            let params = ClusterSelectionParams {
                measure,
                k: None,
                target_count: t,
                symmetrize: None,
            };
            let a = select_by_clustering(&ds.matrix, &params).unwrap();
            assert_eq!(a.kept.len(), t, "{measure} t={t}");
            assert_eq!(a.kept, select_by_clustering(&ds.matrix, &params).unwrap().kept);
        }
    }
}

#[test]
fn ffr_runtime_scales_linearly() {
    let base = kdd_ffr::dataset::synth::generate(20_000, 3).unwrap();
    let half = base.subset(&(0..10_000).collect::<Vec<_>>());
    let median = |ds: &LabeledDataset| {
        let mut t: Vec<f64> = (0..5)
            .map(|_| {
                let s = Instant::now();
                ffr_select(ds, 10, false).unwrap();
                s.elapsed().as_secs_f64()
            })
            .collect();
        t.sort_by(f64::total_cmp);
        t[2]
    };
    median(&base);
    let (small, large) = (median(&half), median(&base));
    assert!(large <= 2.5 * small, "{small} -> {large}");
}
