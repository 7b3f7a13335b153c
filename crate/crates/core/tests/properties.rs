use proptest::prelude::*;

use majoritarian::covering::uncovered_all;
use majoritarian::experiments::{canonical_count, canonical_index, canonical_profile};
use majoritarian::majority::compare;
use majoritarian::pareto::{
    is_pareto_optimal, is_pareto_optimal_brute, pareto_optimal_set, pareto_pessimal_set, serial_dictatorship,
};
use majoritarian::reconstruct::{fill, finest_decomposition, rotate};
use majoritarian::rules::{generous_set, least_unpopular_set, popular_set, rank_maximal_set};
use majoritarian::topcycle::{tc_brute, tc_characterize};
use majoritarian::{AgentId, Assignment, AssignmentIndexer, BitSet, HouseId, MajorityMatrix, PriorityOrder, Profile, Universe};

fn permutation(n: usize) -> impl Strategy<Value = Vec<usize>> {
    Just((0..n).collect::<Vec<_>>()).prop_shuffle()
}

fn profile_of(n: usize) -> impl Strategy<Value = Profile> {
    prop::collection::vec(permutation(n), n).prop_map(|rows| Profile::from_indices(&rows).unwrap())
}

fn profile(lo: usize, hi: usize) -> impl Strategy<Value = Profile> {
    (lo..=hi).prop_flat_map(profile_of)
}

fn with_assignments(lo: usize, hi: usize) -> impl Strategy<Value = (Profile, Assignment, Assignment)> {
    (lo..=hi).prop_flat_map(|n| {
        (profile_of(n), permutation(n), permutation(n))
            .prop_map(|(p, a, b)| (p, Assignment::from_indices(&a).unwrap(), Assignment::from_indices(&b).unwrap()))
    })
}

fn sd_outcomes(p: &Profile) -> BitSet {
    let u = Universe::get(p.n()).unwrap();
    BitSet::from_indices(u.size(), PriorityOrder::all(p.n()).map(|s| u.index_of(&serial_dictatorship(p, &s).unwrap())))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn index_round_trip(houses in (1usize..=12).prop_flat_map(permutation)) {
        let mu = Assignment::from_indices(&houses).unwrap();
        let ix = AssignmentIndexer::new(houses.len()).unwrap();
        prop_assert_eq!(ix.unindex(ix.index(&mu)), mu);
    }

    #[test]
    fn canonical_form_ignores_other_agents_order_and_house_labels(
        (p, rest, houses) in (2usize..=6).prop_flat_map(|n| (profile_of(n), permutation(n - 1), permutation(n)))
    ) {
        let agents: Vec<usize> = std::iter::once(0).chain(rest.iter().map(|i| i + 1)).collect();
        let q = p.permute_agents(&agents).unwrap().relabel_houses(&houses).unwrap();
        prop_assert_eq!(p.canonical_form().to_text(), q.canonical_form().to_text());
        prop_assert!(p.canonical_form().is_canonical());
    }

    #[test]
    fn canonical_index_round_trip(n in 2usize..=5, seed in any::<u64>()) {
        let i = (seed as u128) % canonical_count(n).unwrap();
        prop_assert_eq!(canonical_index(&canonical_profile(n, i).unwrap()).unwrap(), i);
    }

    #[test]
    fn margin_antisymmetric((p, a, b) in with_assignments(2, 8)) {
        let ab = compare(&p, &a, &b).unwrap();
        let ba = compare(&p, &b, &a).unwrap();
        prop_assert_eq!(ab.margin, -ba.margin);
        prop_assert_eq!(ab.verdict, ba.verdict.flip());
    }

    #[test]
    fn margin_neutral_under_house_relabeling(((p, a, b), perm) in with_assignments(2, 8).prop_flat_map(|t| {
        let n = t.0.n();
        (Just(t), permutation(n))
    })) {
        let q = p.relabel_houses(&perm).unwrap();
        let map = |mu: &Assignment| {
            Assignment::new(mu.houses().iter().map(|h| HouseId(perm[h.0])).collect()).unwrap()
        };
        prop_assert_eq!(compare(&p, &a, &b).unwrap().margin, compare(&q, &map(&a), &map(&b)).unwrap().margin);
    }

    #[test]
    fn pessimal_is_optimal_of_reversed(p in profile(2, 5)) {
        let reversed = Profile::new(p.orders().iter().map(|o| o.reversed()).collect()).unwrap();
        prop_assert_eq!(pareto_pessimal_set(&p).unwrap(), pareto_optimal_set(&reversed).unwrap());
    }

    #[test]
    fn serial_dictatorships_are_the_pareto_optimal_set(p in profile(2, 4)) {
        prop_assert_eq!(sd_outcomes(&p), pareto_optimal_set(&p).unwrap());
    }

    #[test]
    fn pareto_check_matches_brute_force((p, a, _) in with_assignments(2, 6)) {
        prop_assert_eq!(is_pareto_optimal(&p, &a).unwrap(), is_pareto_optimal_brute(&p, &a).unwrap());
    }

    #[test]
    fn closed_form_top_cycle_matches_brute_force(p in profile_of(5)) {
        let d = tc_characterize(&p).unwrap();
        prop_assert_eq!(d.members().unwrap(), tc_brute(&MajorityMatrix::build(&p).unwrap()));
    }

    #[test]
    fn rank_based_rules_are_pareto_optimal(p in profile(2, 6)) {
        let po = pareto_optimal_set(&p).unwrap();
        prop_assert!(rank_maximal_set(&p).unwrap().is_subset(&po));
        prop_assert!(generous_set(&p).unwrap().is_subset(&po));
    }

    #[test]
    fn popular_within_least_unpopular(p in profile(2, 5)) {
        let (u, lu) = least_unpopular_set(&p).unwrap();
        let popular = popular_set(&p).unwrap();
        prop_assert!(popular.is_subset(&lu));
        prop_assert_eq!(popular.is_empty(), u > 0);
    }

    #[test]
    fn swap_query_filler_is_irrelevant(
        (p, x, y, h1, h2) in (3usize..=7).prop_flat_map(|n| (profile_of(n), 0..n, 0..n, 0..n, 0..n))
            .prop_filter("distinct", |(_, x, y, h1, h2)| x != y && h1 != h2)
    ) {
        let n = p.n();
        let (x, y, h1, h2) = (AgentId(x), AgentId(y), HouseId(h1), HouseId(h2));
        let base = fill(n, &[(x, h1), (y, h2)]);
        let swapped = fill(n, &[(x, h2), (y, h1)]);
        let margin = compare(&p, &base, &swapped).unwrap().margin;
        // any other filler for the remaining agents gives the same margin
        let mut other = base.clone();
        let mut rest: Vec<AgentId> = (0..n).map(AgentId).filter(|&z| z != x && z != y).collect();
        rest.reverse();
        if rest.len() >= 2 {
            other.swap(rest[0], rest[1]);
        }
        let mut other_swapped = other.clone();
        other_swapped.swap(x, y);
        prop_assert_eq!(compare(&p, &other, &other_swapped).unwrap().margin, margin);
    }

    #[test]
    fn rules_invariant_under_rotation((p, shift) in (2usize..=5).prop_flat_map(|n| (profile_of(n), 0usize..8))) {
        let d = finest_decomposition(&p);
        let q = rotate(&p, &d, shift % d.k());
        let (mp, mq) = (MajorityMatrix::build(&p).unwrap(), MajorityMatrix::build(&q).unwrap());
        prop_assert_eq!(mp.weak_relation(), mq.weak_relation());
        prop_assert_eq!(tc_brute(&mp), tc_brute(&mq));
        prop_assert_eq!(uncovered_all(&mp), uncovered_all(&mq));
        prop_assert_eq!(pareto_optimal_set(&p).unwrap(), pareto_optimal_set(&q).unwrap());
        prop_assert_eq!(least_unpopular_set(&p).unwrap(), least_unpopular_set(&q).unwrap());
    }
}
