// Uncovered-set statistics over a slice of the canonical `n = 5` profiles.
//
// `cargo run --release --example census -- [start] [count] [csv-dir]`
// With no arguments a small slice is processed; `0 9078630 out/` covers
// every canonical profile and writes one CSV per curve.

use std::fs::File;
use std::path::PathBuf;
use std::time::Instant;

use majoritarian::experiments::{canonical_count, census_canonical, write_cdf_csv, write_histogram_csv, Curve};
use majoritarian::{CoveringVariant, Result};

pub fn run_example() -> Result<()> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let start: u128 = args.first().and_then(|a| a.parse().ok()).unwrap_or(0);
    let count: u128 = args.get(1).and_then(|a| a.parse().ok()).unwrap_or(2_000);
    let total = canonical_count(5)?;
    let t = Instant::now();
    let census = census_canonical(5, start..(start + count).min(total))?;
    println!("{} of {} profiles in {:.2?}", census.profiles(), total, t.elapsed());

    for curve in Curve::ALL {
        let rows = census.histogram(curve);
        let pick = |k: usize| rows[k - 1].percentage;
        println!(
            "{:>9}: |1| {}  |2| {}  |3| {}  |4| {}  |10| {}  |120| {}",
            curve.name(),
            pick(1),
            pick(2),
            pick(3),
            pick(4),
            pick(10),
            pick(120)
        );
    }
    for v in CoveringVariant::ALL {
        let cdf = census.ratio_cdf(v);
        println!("{:>9}: cdf(50) {}  cdf(100) {}", v.name(), cdf[50].cumulative_percentage, cdf[100].cumulative_percentage);
    }
    println!("top-cycle sizes: {:?}", census.tc_sizes());
    println!("fact violations: {:?}", census.fact_report().violations);
    println!("rank-maximal outside uc: {}", census.rank_maximal_outside_uc());

    if let Some(dir) = args.get(2).map(PathBuf::from) {
        std::fs::create_dir_all(&dir)?;
        for curve in Curve::ALL {
            write_histogram_csv(File::create(dir.join(format!("sizes_{}.csv", curve.name())))?, &census.histogram(curve))?;
        }
        for v in CoveringVariant::ALL {
            write_cdf_csv(File::create(dir.join(format!("ratio_{}.csv", v.name())))?, &census.ratio_cdf(v))?;
        }
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<()> {
    run_example()
}
