// Uncovered-set sizes over random profiles with seven agents.
//
// `cargo run --release --example sample_n7 -- [count]`

use std::time::Instant;

use majoritarian::experiments::{census_indexed, impartial_profile, Curve, DEFAULT_SEED};
use majoritarian::Result;

pub fn run_example() -> Result<()> {
    let count: u64 = std::env::args().skip(1).find_map(|a| a.parse().ok()).unwrap_or(3);
    let t = Instant::now();
    let census = census_indexed(7, count, |i| Ok(impartial_profile(7, DEFAULT_SEED, i)))?;
    println!("{} profiles in {:.2?}", census.profiles(), t.elapsed());
    for curve in Curve::ALL {
        let rows = census.histogram(curve);
        let modal = rows.iter().max_by_key(|r| r.count).unwrap();
        println!("{:>9}: mode {} ({}%)", curve.name(), modal.cardinality, modal.percentage);
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<()> {
    run_example()
}
