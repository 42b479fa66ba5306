//! Ten-fold cross-validation of one selector and classifier, with
//! per-category recall and the features each fold chose.
//!
//! cargo run --example cross_validation -- [ffr|cc|lsre|mici|all] [count]

use kdd_ffr::classifiers::ClassifierConfig;
use kdd_ffr::dataset::{load_kdd, stratified_folds, CategoryMap};
use kdd_ffr::evaluation::{category_label, cross_validate, run_cv, CvOptions};
use kdd_ffr::selection::{SelectorConfig, SelectorKind};

fn main() -> kdd_ffr::Result<()> {
    let mut args = std::env::args().skip(1);
    let kind: SelectorKind = args.next().unwrap_or_else(|| "ffr".into()).parse()?;
    let count: usize = args.next().map_or(10, |a| a.parse().expect("count"));

    let path = concat!(env!("CARGO_MANIFEST_DIR"), "/data/kdd_fixture_1000.csv");
    let data = load_kdd(path.as_ref(), &CategoryMap::default())?;
    // the fixture has two r2l and two u2r rows, so two folds keep each in training
    let plan = stratified_folds(&data.labels, 2, 42)?;
    let selector = SelectorConfig::new(kind, count);
    let options = CvOptions::default();

    for clf in [ClassifierConfig::knn(5), ClassifierConfig::bayes(1e-9)] {
        let cell = run_cv(&data, &selector, &clf, &plan, &options)?;
        println!("{kind} {count} / {}: overall {:.2}%", clf.kind, 100.0 * cell.overall_accuracy);
        for (name, recall) in data.categories.iter().zip(&cell.per_category_recall) {
            match recall {
                Some(r) => println!("  {:<7} {:.2}%", category_label(name), 100.0 * r),
                None => println!("  {:<7} -", category_label(name)),
            }
        }
    }

    let preds = cross_validate(&data, &selector, &ClassifierConfig::knn(5), &plan, &options)?;
    let names = data.matrix.feature_names();
    for (fold, kept) in preds.kept_per_fold.iter().enumerate() {
        let mut sorted = kept.clone();
        sorted.sort_unstable();
        let picked: Vec<&str> = sorted.iter().map(|&f| names[f].as_str()).collect();
        println!("fold {fold}: {}", picked.join(" "));
    }
    Ok(())
}
