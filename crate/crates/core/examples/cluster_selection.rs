//! Similarity-clustering feature selection at 10, 20 and 30 features for
//! each measure, showing which features stand in for which.
//!
//! cargo run --example cluster_selection

use kdd_ffr::clustering::{cluster_with_k, select_by_clustering, ClusterSelectionParams};
use kdd_ffr::dataset::{apply_minmax, fit_minmax, load_kdd, CategoryMap};
use kdd_ffr::similarity::{build_similarity_matrix, Measure};

fn main() -> kdd_ffr::Result<()> {
    let path = concat!(env!("CARGO_MANIFEST_DIR"), "/data/kdd_fixture_1000.csv");
    let data = load_kdd(path.as_ref(), &CategoryMap::default())?;
    let scaled = apply_minmax(&data.matrix, &fit_minmax(&data.matrix)?)?;
    let names = scaled.feature_names();

    for measure in Measure::ALL {
        for t in [10, 20, 30] {
            let params = ClusterSelectionParams {
                measure,
                k: None,
                target_count: t,
                symmetrize: None,
            };
            let r = select_by_clustering(&scaled, &params)?;
            let kept: Vec<&str> = r.sorted_kept().iter().map(|&f| names[f].as_str()).collect();
            println!("{measure} t={t} ({:.4}s): {}", r.elapsed_seconds, kept.join(" "));
        }
    }

    // one fixed-k pass, printed as clusters
    let sim = build_similarity_matrix(&scaled, Measure::Mici)?;
    let out = cluster_with_k(&sim, 4, None);
    println!("\nmici, k = 4: {} clusters", out.kept.len());
    for (&rep, r) in out.kept.iter().zip(&out.radius) {
        let members: Vec<&str> = (0..names.len())
            .filter(|&g| g != rep && out.representative[g] == rep)
            .map(|g| names[g].as_str())
            .collect();
        println!("  {:<28} radius {r:.2e}  absorbs {members:?}", names[rep]);
    }
    Ok(())
}
