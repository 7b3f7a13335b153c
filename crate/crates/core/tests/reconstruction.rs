use majoritarian::reconstruct::{reconstruct, rotation_equivalent, MajorityOracle, ProfileOracle};
use majoritarian::{MajorityMatrix, Profile, PriorityOrder};

fn all_profiles(n: usize) -> Vec<Profile> {
    let rankings: Vec<Vec<usize>> = PriorityOrder::all(n).map(|o| o.agents().iter().map(|a| a.0).collect()).collect();
    let mut out = Vec::new();
    let mut digits = vec![0; n];
    loop {
        let rows: Vec<Vec<usize>> = digits.iter().map(|&d| rankings[d].clone()).collect();
        out.push(Profile::from_indices(&rows).unwrap());
        let mut i = 0;
        while i < n && digits[i] + 1 == rankings.len() {
            digits[i] = 0;
            i += 1;
        }
        if i == n {
            return out;
        }
        digits[i] += 1;
    }
}

#[test]
fn equivalence_is_equality_of_majority_graphs_for_three_agents() {
    let profiles = all_profiles(3);
    assert_eq!(profiles.len(), 216);
    let graphs: Vec<_> = profiles.iter().map(|p| MajorityMatrix::build(p).unwrap()).collect();
    for (a, ga) in profiles.iter().zip(&graphs) {
        for (b, gb) in profiles.iter().zip(&graphs) {
            assert_eq!(rotation_equivalent(a, b), ga.weak_relation() == gb.weak_relation(), "\n{}\n{}", a.to_text(), b.to_text());
        }
    }
}

#[test]
fn every_three_agent_class_is_recovered_exactly() {
    let profiles = all_profiles(3);
    for p in &profiles {
        let mut oracle = ProfileOracle::new(p.clone());
        let class = reconstruct(&mut oracle).unwrap();
        let expected = profiles.iter().filter(|q| rotation_equivalent(p, q)).count();
        assert_eq!(class.len(), expected, "\n{}", p.to_text());
        assert!(class.members().iter().all(|q| rotation_equivalent(p, q)));
        assert!(oracle.queries() <= 81);
    }
}

#[test]
fn two_agents_solved_by_search() {
    for p in all_profiles(2) {
        let class = reconstruct(&mut ProfileOracle::new(p.clone())).unwrap();
        assert!(class.contains(&p));
    }
}
