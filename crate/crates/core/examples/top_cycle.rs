// The top cycle by graph search and by the closed-form case analysis.

use majoritarian::topcycle::{tc_brute, tc_characterize};
use majoritarian::{MajorityMatrix, Profile, Result};

pub fn run_example() -> Result<()> {
    let profiles = [
        ("distinct tops", vec!["a b c d e", "b c d e a", "c d e a b", "d e a b c", "e a b c d"]),
        ("shared top and second", vec!["a b c d e", "a b e d c", "c a b d e", "d e a b c", "e d c b a"]),
        ("unanimous", vec!["a b c d e"; 5]),
    ];
    for (name, rows) in profiles {
        let profile = Profile::from_rows(&rows)?;
        let closed = tc_characterize(&profile)?;
        let brute = tc_brute(&MajorityMatrix::build(&profile)?);
        println!("{name}: case {}, size {}", closed.case().unwrap_or("-"), closed.size());
        assert_eq!(closed.members()?, brute);
    }

    // beyond brute force the description still answers membership
    let rows: Vec<String> = (0..30)
        .map(|x| (0..30).map(|r| majoritarian::profile::default_label((x + r) % 30)).collect::<Vec<_>>().join(" "))
        .collect();
    let big = Profile::from_rows(&rows)?;
    let d = tc_characterize(&big)?;
    println!("n = 30: case {}, size {}", d.case().unwrap_or("-"), d.size());
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<()> {
    run_example()
}
