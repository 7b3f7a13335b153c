// Picking sequences: serial dictatorships reach every Pareto-optimal
// assignment and serial antidictatorships every Pareto-pessimal one.

use std::collections::BTreeSet;

use majoritarian::pareto::{pareto_optimal_set, serial_antidictatorship, serial_dictatorship};
use majoritarian::{PriorityOrder, Profile, Result, Universe};

pub fn run_example() -> Result<()> {
    let profile = Profile::from_rows(&["a b c d", "a c b d", "b a d c", "d c b a"])?;
    let u = Universe::get(4)?;
    let mut picked = BTreeSet::new();
    for sigma in PriorityOrder::all(4) {
        picked.insert(u.index_of(&serial_dictatorship(&profile, &sigma)?));
    }
    let po: BTreeSet<usize> = pareto_optimal_set(&profile)?.iter().collect();
    println!("serial dictatorship outcomes: {}", picked.len());
    println!("Pareto-optimal assignments: {}", po.len());
    assert_eq!(picked, po);

    let order = PriorityOrder::from_one_based(&[2, 3, 1, 4])?;
    println!("SD (2,3,1,4): {}", profile.format_assignment(&serial_dictatorship(&profile, &order)?));
    println!("SAD (2,3,1,4): {}", profile.format_assignment(&serial_antidictatorship(&profile, &order)?));
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<()> {
    run_example()
}
