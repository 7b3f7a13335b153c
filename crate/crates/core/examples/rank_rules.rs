// Rank-maximal assignments change between two profiles with the same
// majority graph, so rank-maximality is not majoritarian; generous and
// least-unpopular assignments on the same data.

use majoritarian::reconstruct::rotation_equivalent;
use majoritarian::rules::{generous_set, least_unpopular_set, rank_maximal_set};
use majoritarian::{Profile, Result, Universe};

pub fn run_example() -> Result<()> {
    let p = Profile::from_rows(&[
        "a b c d e f",
        "a c b d f e",
        "b a c e d f",
        "a b c d e f",
        "a b c d e f",
        "a b c d e f",
    ])?;
    let q = Profile::from_rows(&[
        "d e f a b c",
        "d f e a c b",
        "e d f b a c",
        "d e f a b c",
        "d e f a b c",
        "d e f a b c",
    ])?;
    let u = Universe::get(6)?;
    let mu = u.index_of(&p.parse_assignment("a,c,b,d,e,f")?);
    println!("same majority graph: {}", rotation_equivalent(&p, &q));
    println!("(a,c,b,d,e,f) rank-maximal in P: {}", rank_maximal_set(&p)?.contains(mu));
    println!("(a,c,b,d,e,f) rank-maximal in P': {}", rank_maximal_set(&q)?.contains(mu));
    println!("generous in P: {}", generous_set(&p)?.len());
    let (margin, set) = least_unpopular_set(&p)?;
    println!("least unpopular in P: {} assignments, worst defeat {margin}", set.len());
    let (margin2, set2) = least_unpopular_set(&q)?;
    assert_eq!((margin, set), (margin2, set2));
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<()> {
    run_example()
}
