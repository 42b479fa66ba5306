//! FFR scores and timing against MICI clustering on the same rows.
//!
//! cargo run --release --example ffr_selection -- [kdd file] [rows]
//!
//! Without a file, a synthetic KDD-format sample is generated.

use kdd_ffr::clustering::{select_by_clustering, ClusterSelectionParams};
use kdd_ffr::dataset::{apply_minmax, fit_minmax, load_kdd, stratified_subsample, synth, CategoryMap};
use kdd_ffr::ffr::{class_means, ffr_scores, ffr_select};
use kdd_ffr::similarity::Measure;

fn main() -> kdd_ffr::Result<()> {
    let mut args = std::env::args().skip(1);
    let path = args.next();
    let rows: usize = args.next().map_or(10_000, |a| a.parse().expect("rows"));
    let data = match path {
        Some(p) => stratified_subsample(&load_kdd(p.as_ref(), &CategoryMap::default())?, rows, 42)?,
        None => synth::generate(rows, 42)?,
    };
    let scaled = data.with_matrix(apply_minmax(&data.matrix, &fit_minmax(&data.matrix)?)?)?;

    let scores = ffr_scores(&class_means(&scaled)?)?;
    let names = data.matrix.feature_names();
    let mut order: Vec<usize> = (0..names.len()).collect();
    order.sort_by(|&a, &b| scores.scores[b].total_cmp(&scores.scores[a]));
    println!("top features by class-mean variance:");
    for &f in order.iter().take(10) {
        println!("  {:<28} {:.5}", names[f], scores.scores[f]);
    }

    println!("\n  t   ffr (s)     mici (s)    ratio");
    for t in [10, 20, 30] {
        let ffr = ffr_select(&scaled, t, false)?;
        let mici = select_by_clustering(
            &scaled.matrix,
            &ClusterSelectionParams {
                measure: Measure::Mici,
                k: None,
                target_count: t,
                symmetrize: None,
            },
        )?;
        println!(
            "  {t:<3} {:<11.6} {:<11.6} {:.0}x",
            ffr.elapsed_seconds,
            mici.elapsed_seconds,
            mici.elapsed_seconds / ffr.elapsed_seconds
        );
    }
    Ok(())
}
