//! Load a KDD-99 file, summarize its labels, and min-max scale it.
//!
//! cargo run --example ingest -- [kdd file]
//!
//! Defaults to the bundled 1000-row fixture.

use kdd_ffr::dataset::{apply_minmax, fit_minmax, load_kdd, CategoryMap};

fn main() -> kdd_ffr::Result<()> {
    let path = std::env::args()
        .nth(1)
        .unwrap_or_else(|| concat!(env!("CARGO_MANIFEST_DIR"), "/data/kdd_fixture_1000.csv").into());
    let data = load_kdd(path.as_ref(), &CategoryMap::default())?;
    println!("{} records, {} features", data.n_samples(), data.n_features());
    for (name, n) in data.categories.iter().zip(data.category_counts()) {
        println!("  {name:<7} {n}");
    }
    println!("subcategories:");
    for (sub, n) in data.subcategory_counts() {
        println!("  {sub:<16} {n}");
    }

    let params = fit_minmax(&data.matrix)?;
    let scaled = apply_minmax(&data.matrix, &params)?;
    let names = data.matrix.feature_names();
    println!("\nfeature ranges before scaling (first 8):");
    for j in 0..8 {
        println!("  {:<20} [{}, {}] -> first row {:.4}", names[j], params.min[j], params.max[j], scaled.get(0, j));
    }
    let constant: Vec<&str> = (0..names.len())
        .filter(|&j| params.min[j] == params.max[j])
        .map(|j| names[j].as_str())
        .collect();
    println!("constant features (scaled to 0): {constant:?}");
    Ok(())
}
