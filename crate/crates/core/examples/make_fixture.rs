//! Regenerates the bundled 1000-row fixture.
//!
//! cargo run --example make_fixture -- [rows] [seed] > data/kdd_fixture_1000.csv

use kdd_ffr::dataset::synth::generate_lines;

fn main() -> kdd_ffr::Result<()> {
    let mut args = std::env::args().skip(1);
    let rows = args.next().map_or(1000, |a| a.parse().expect("rows"));
    let seed = args.next().map_or(1, |a| a.parse().expect("seed"));
    for line in generate_lines(rows, seed)? {
        println!("{line}");
    }
    Ok(())
}
