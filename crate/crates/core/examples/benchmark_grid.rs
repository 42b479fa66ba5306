//! Full selector × count × classifier grid with 10-fold cross-validation,
//! printed as Markdown tables.
//!
//! cargo run --release --example benchmark_grid -- [kdd file] [rows]

use kdd_ffr::dataset::{load_kdd, stratified_subsample, synth, CategoryMap};
use kdd_ffr::evaluation::{emit_report, run_grid, GridConfig, ReportFormat};

fn main() -> kdd_ffr::Result<()> {
    let mut args = std::env::args().skip(1);
    let path = args.next().filter(|p| p != "-");
    let rows: usize = args.next().map_or(10_000, |a| a.parse().expect("rows"));
    let data = match &path {
        Some(p) => stratified_subsample(&load_kdd(p.as_ref(), &CategoryMap::default())?, rows, 42)?,
        None => synth::generate(rows, 42)?,
    };
    let report = run_grid(&data, &GridConfig::default())?;
    print!("{}", emit_report(&report, ReportFormat::Markdown)?);
    if let Some(rt) = &report.runtime {
        println!("{} threads, {:.1}s total", rt.threads, rt.total_seconds);
    }
    Ok(())
}
