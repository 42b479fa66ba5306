//! The three pairwise dissimilarities on small hand-made columns, then the
//! full matrix over a KDD sample.
//!
//! cargo run --example similarity_measures

use kdd_ffr::dataset::{apply_minmax, fit_minmax, load_kdd, CategoryMap};
use kdd_ffr::similarity::{build_similarity_matrix, correlation_dissimilarity, lsre, mici, Measure};

fn main() -> kdd_ffr::Result<()> {
    let x = [1.0, 2.0, 3.0, 4.0, 5.0];
    let pairs: [(&str, [f64; 5]); 4] = [
        ("linear", [3.0, 5.0, 7.0, 9.0, 11.0]),
        ("noisy", [1.2, 1.9, 3.4, 3.8, 5.1]),
        ("unrelated", [2.0, 5.0, 1.0, 4.0, 3.0]),
        ("constant", [4.0; 5]),
    ];
    println!("{:<10} {:>8} {:>8} {:>8} {:>8}", "y", "cc", "e(x,y)", "e(y,x)", "mici");
    for (name, y) in &pairs {
        println!(
            "{name:<10} {:>8.4} {:>8.4} {:>8.4} {:>8.4}",
            correlation_dissimilarity(&x, y)?,
            lsre(&x, y)?,
            lsre(y, &x)?,
            mici(&x, y)?
        );
    }

    let path = concat!(env!("CARGO_MANIFEST_DIR"), "/data/kdd_fixture_1000.csv");
    let data = load_kdd(path.as_ref(), &CategoryMap::default())?;
    let params = fit_minmax(&data.matrix)?;
    let scaled = apply_minmax(&data.matrix, &params)?;
    // constant columns sit at distance 0 or 1 from everything; leave them out
    let varying: Vec<usize> = (0..scaled.n_features()).filter(|&j| params.min[j] < params.max[j]).collect();
    for measure in Measure::ALL {
        let sim = build_similarity_matrix(&scaled, measure)?;
        let names = &sim.names;
        let mut closest = (f64::INFINITY, 0, 0);
        for &i in &varying {
            for &j in &varying {
                if i != j && sim.get(i, j) < closest.0 {
                    closest = (sim.get(i, j), i, j);
                }
            }
        }
        println!(
            "\n{measure}: symmetric={} closest pair {} -> {} ({:.3e})",
            sim.is_symmetric(),
            names[closest.1],
            names[closest.2],
            closest.0
        );
    }
    Ok(())
}
