// Recovering a profile from majority verdicts alone.

use majoritarian::experiments::impartial_profile;
use majoritarian::reconstruct::{infer_margins, query_bound, reconstruct, MajorityOracle, ProfileOracle};
use majoritarian::{Profile, Result, Universe};

pub fn run_example() -> Result<()> {
    let hidden = Profile::from_rows(&["a b c d e", "a c b d e", "b a c e d", "a b c d e", "a b c e d"])?;
    let mut oracle = ProfileOracle::new(hidden.clone());
    let class = reconstruct(&mut oracle)?;
    println!("decomposition {}", class.decomposition().display(hidden.labels()));
    println!("{} profiles share the graph, {} queries (bound {})", class.len(), oracle.queries(), query_bound(5));
    assert!(class.contains(&hidden));

    let margins = infer_margins(&class);
    let u = Universe::get(5)?;
    let (mu, lambda) = (u.assignment(0), u.assignment(77));
    println!(
        "margin of {} over {}: {:+}",
        hidden.format_assignment(&mu),
        hidden.format_assignment(&lambda),
        margins.margin(&mu, &lambda)?
    );

    // random profiles with many agents usually have a unique preimage
    let big = impartial_profile(12, 3, 0);
    let mut oracle = ProfileOracle::new(big.clone());
    let class = reconstruct(&mut oracle)?;
    println!("n = 12: class of {}, {} queries", class.len(), oracle.queries());
    assert!(class.contains(&big));
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<()> {
    run_example()
}
