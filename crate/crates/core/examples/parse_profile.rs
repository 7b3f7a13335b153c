// Reading the profile text format and normalizing it.

use majoritarian::Result;
use majoritarian::Profile;

pub fn run_example() -> Result<()> {
    let text = "# agents rank houses, best first\n4\nd b a c\nb d c a\na b c d\nd a b c\n";
    let profile = Profile::parse(text)?;
    println!("{profile:?}");
    let canon = profile.canonical_form();
    println!("canonical:\n{}", canon.to_text());
    let mu = profile.parse_assignment("(b,d,a,c)")?;
    println!("agent 1 ranks its house {}", profile.rank(majoritarian::AgentId(0), mu.house(majoritarian::AgentId(0))));
    match Profile::parse("2\na b\na a\n") {
        Err(e) => println!("rejected: {e}"),
        Ok(_) => unreachable!(),
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<()> {
    run_example()
}
