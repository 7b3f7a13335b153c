// Majority comparisons among the six assignments of three agents who all
// rank `a > b > c`: every assignment beats one other by one vote, so there
// is no popular assignment.

use majoritarian::majority::compare;
use majoritarian::{MajorityMatrix, Profile, Result, Universe};

pub fn run_example() -> Result<()> {
    let profile = Profile::from_rows(&["a b c", "a b c", "a b c"])?;
    let u = Universe::get(3)?;
    let m = MajorityMatrix::build(&profile)?;
    for i in 0..u.size() {
        for j in 0..u.size() {
            if m.strict(i, j) {
                let (mu, lambda) = (u.assignment(i), u.assignment(j));
                let out = compare(&profile, &mu, &lambda)?;
                println!(
                    "{} beats {} by {:+}",
                    profile.format_assignment(&mu),
                    profile.format_assignment(&lambda),
                    out.margin
                );
            }
        }
    }
    println!("popular: {}", m.popular().len());
    println!("semi-popular: {}", m.semi_popular().len());
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<()> {
    run_example()
}
