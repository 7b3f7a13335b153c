// The three uncovered sets, and a Pareto-optimal assignment that is
// covered anyway.

use majoritarian::covering::{covers, uncovered_two_step};
use majoritarian::pareto::is_pareto_optimal;
use majoritarian::{CoveringVariant, MajorityMatrix, Profile, Result, Universe};

pub fn run_example() -> Result<()> {
    let profile = Profile::from_rows(&["a c b", "a b c", "b a c"])?;
    let m = MajorityMatrix::build(&profile)?;
    let u = Universe::get(3)?;
    let mu = profile.parse_assignment("c,a,b")?;
    let lambda = profile.parse_assignment("a,b,c")?;
    println!("(a,b,c) Pareto-optimal: {}", is_pareto_optimal(&profile, &lambda)?);
    for v in CoveringVariant::ALL {
        let uc = uncovered_two_step(&m, v);
        let names: Vec<String> = uc.iter().map(|i| profile.format_assignment(&u.assignment(i))).collect();
        println!(
            "{v}: (c,a,b) covers (a,b,c): {}; uncovered {}",
            covers(&m, v, u.index_of(&mu), u.index_of(&lambda)),
            names.join(" ")
        );
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<()> {
    run_example()
}
