mod common;

use kdd_ffr::dataset::{
    apply_minmax, encode_symbolic, fit_minmax, load_kdd, parse_kdd_record, stratified_folds,
    stratified_subsample, synth, CategoryMap, FeatureMatrix, LabeledDataset,
};
use proptest::prelude::*;

use common::fixture_path;

fn matrix() -> impl Strategy<Value = FeatureMatrix> {
    (1usize..6, 1usize..40).prop_flat_map(|(d, n)| {
        prop::collection::vec(prop_oneof![-1e6..1e6f64, Just(0.0), Just(3.0)], n * d)
            .prop_map(move |v| FeatureMatrix::new(v, d, (0..d).map(|j| format!("f{j}")).collect()).unwrap())
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn minmax_maps_own_data_into_unit_interval(m in matrix()) {
        let p = fit_minmax(&m).unwrap();
        let scaled = apply_minmax(&m, &p).unwrap();
        for j in 0..m.n_features() {
            let col = scaled.column(j);
            if p.max[j] == p.min[j] {
                prop_assert!(col.iter().all(|&v| v == 0.0));
            } else {
                prop_assert!(col.iter().all(|&v| (0.0..=1.0).contains(&v)));
            }
        }
    }

    #[test]
    fn folds_partition_and_balance(labels in prop::collection::vec(0usize..5, 2..300), folds in 2usize..12, seed in any::<u64>()) {
        prop_assume!(labels.len() >= folds);
        let plan = stratified_folds(&labels, folds, seed).unwrap();
        let mut seen = vec![0; labels.len()];
        for f in 0..folds {
            for i in plan.test_indices(f) {
                seen[i] += 1;
            }
            let mut both = plan.test_indices(f);
            both.extend(plan.train_indices(f));
            both.sort_unstable();
            prop_assert_eq!(both, (0..labels.len()).collect::<Vec<_>>());
        }
        prop_assert!(seen.iter().all(|&s| s == 1));
        for c in 0..5 {
            let per: Vec<usize> = (0..folds)
                .map(|f| plan.test_indices(f).iter().filter(|&&i| labels[i] == c).count())
                .collect();
            prop_assert!(per.iter().max().unwrap() - per.iter().min().unwrap() <= 1);
        }
        prop_assert_eq!(plan, stratified_folds(&labels, folds, seed).unwrap());
    }

    #[test]
    fn encoding_is_stable_under_reencoding(picks in prop::collection::vec((0usize..3, 0usize..4), 1..40)) {
        let protocols = ["udp", "icmp", "tcp"];
        let flags = ["SF", "S0", "REJ", "RSTO"];
        let lines: Vec<String> = picks
            .iter()
            .map(|&(p, f)| {
                let mut fields = vec!["0".to_string(), protocols[p].into(), "http".into(), flags[f].into()];
                fields.extend((0..37).map(|i| i.to_string()));
                fields.push("normal.".into());
                fields.join(",")
            })
            .collect();
        let records: Vec<_> = lines.iter().enumerate().map(|(i, l)| parse_kdd_record(l, i + 1).unwrap()).collect();
        let names = kdd_ffr::dataset::kdd::feature_names();
        let (m1, enc) = encode_symbolic(&records, names.clone()).unwrap();
        let (m2, _) = encode_symbolic(&records, names.clone()).unwrap();
        prop_assert_eq!(&m1, &m2);
        prop_assert_eq!(enc.transform(&records, names).unwrap(), m1.clone());
        let vocab = enc.vocabulary(1).unwrap();
        prop_assert!(vocab.windows(2).all(|w| w[0] < w[1]));
        for (i, &(p, _)) in picks.iter().enumerate() {
            prop_assert_eq!(vocab[m1.get(i, 1) as usize].as_str(), protocols[p]);
        }
    }
}

#[test]
fn fixture_loads_with_every_category() {
    let ds = load_kdd(&fixture_path(), &CategoryMap::default()).unwrap();
    assert_eq!(ds.n_samples(), 1000);
    assert_eq!(ds.n_features(), 41);
    assert_eq!(ds.category_counts(), vec![196, 792, 8, 2, 2]);
    assert_eq!(ds.subcategory_counts()["smurf"], 568);
}

#[test]
fn fixture_matches_generator() {
    let on_disk = std::fs::read_to_string(fixture_path()).unwrap();
    assert_eq!(synth::generate_lines(1000, 1).unwrap().join("\n") + "\n", on_disk);
}

#[test]
fn gzip_input_is_detected() {
    use std::io::Write;
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("fixture.gz");
    let mut gz = flate2::write::GzEncoder::new(std::fs::File::create(&path).unwrap(), flate2::Compression::fast());
    gz.write_all(&std::fs::read(fixture_path()).unwrap()).unwrap();
    gz.finish().unwrap();
    let plain = load_kdd(&fixture_path(), &CategoryMap::default()).unwrap();
    assert_eq!(load_kdd(&path, &CategoryMap::default()).unwrap(), plain);
}

#[test]
fn subsample_keeps_proportions_and_rare_classes() {
    let ds = synth::generate(5000, 9).unwrap();
    let sub = stratified_subsample(&ds, 500, 42).unwrap();
    assert_eq!(sub.n_samples(), 500);
    let (full, part) = (ds.category_counts(), sub.category_counts());
    for c in 0..5 {
        assert!(part[c] >= 1);
        let want = 500.0 * full[c] as f64 / 5000.0;
        assert!((part[c] as f64 - want).abs() <= 1.0, "{c}: {} vs {want}", part[c]);
    }
    assert_eq!(sub, stratified_subsample(&ds, 500, 42).unwrap());
    let same: LabeledDataset = stratified_subsample(&ds, 5000, 1).unwrap();
    assert_eq!(same, ds);
}
