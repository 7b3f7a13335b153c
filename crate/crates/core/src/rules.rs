//! Rank-based rules and the popularity family, evaluated by scanning the
//! assignment universe.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use crate::assignment::Universe;
use crate::bits::BitSet;
use crate::covering::{uncovered_two_step, CoveringVariant};
use crate::error::Result;
use crate::majority::{signature_margin, MajorityMatrix};
use crate::pareto::{pareto_optimal_set, pareto_pessimal_set};
use crate::profile::Profile;
use crate::topcycle::{bc_brute, tc_brute};

fn histogram(sig: u64, n: usize) -> [u8; 8] {
    let mut h = [0u8; 8];
    for x in 0..n {
        h[((sig >> (8 * x)) & 0xff) as usize - 1] += 1;
    }
    h
}

fn argbest<K: Ord>(size: usize, key: impl Fn(usize) -> K) -> BitSet {
    let mut best: Option<K> = None;
    let mut members = Vec::new();
    for i in 0..size {
        let k = key(i);
        match best.as_ref().map(|b| k.cmp(b)) {
            Some(Ordering::Less) => continue,
            Some(Ordering::Equal) => members.push(i),
            _ => {
                best = Some(k);
                members.clear();
                members.push(i);
            }
        }
    }
    BitSet::from_indices(size, members)
}

/// Assignments maximizing the number of agents with their first choice,
/// then second choice, and so on.
pub fn rank_maximal_set(profile: &Profile) -> Result<BitSet> {
    let n = profile.n();
    Ok(rank_maximal_in(&Universe::get(n)?.signatures(profile), n))
}

pub(crate) fn rank_maximal_in(sigs: &[u64], n: usize) -> BitSet {
    argbest(sigs.len(), |i| histogram(sigs[i], n))
}

/// Assignments minimizing the number of agents with their last choice,
/// then second-to-last, and so on.
pub fn generous_set(profile: &Profile) -> Result<BitSet> {
    let n = profile.n();
    let sigs = Universe::get(n)?.signatures(profile);
    Ok(argbest(sigs.len(), |i| {
        let h = histogram(sigs[i], n);
        let mut key = [0i16; 8];
        for r in 0..n {
            key[r] = -(h[n - 1 - r] as i16);
        }
        key
    }))
}

/// Worst majority defeat of each assignment, `max over lambda of
/// margin(lambda, mu)` (so never below zero), and its minimizers.
pub fn least_unpopular_set(profile: &Profile) -> Result<(i32, BitSet)> {
    let sigs = Universe::get(profile.n())?.signatures(profile);
    let worst: Vec<i32> =
        sigs.iter().map(|&mu| sigs.iter().map(|&l| signature_margin(l, mu)).max().unwrap()).collect();
    let best = *worst.iter().min().unwrap();
    Ok((best, BitSet::from_indices(sigs.len(), (0..sigs.len()).filter(|&i| worst[i] == best))))
}

/// Assignments never strictly beaten. May be empty.
pub fn popular_set(profile: &Profile) -> Result<BitSet> {
    let sigs = Universe::get(profile.n())?.signatures(profile);
    Ok(BitSet::from_indices(
        sigs.len(),
        (0..sigs.len()).filter(|&i| sigs.iter().all(|&l| signature_margin(sigs[i], l) >= 0)),
    ))
}

/// Rank-maximal set via sorted rank vectors; kept to cross-check the
/// histogram comparison.
pub fn rank_maximal_by_rank_vector(profile: &Profile) -> Result<BitSet> {
    let u = Universe::get(profile.n())?;
    let vectors: Vec<_> = (0..u.size()).map(|i| crate::pareto::RankVector::of(profile, &u.assignment(i))).collect();
    Ok(argbest(u.size(), |i| std::cmp::Reverse(vectors[i].clone())))
}

/// Set-valued rules exposed by name.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Rule {
    Popular,
    StronglyPopular,
    SemiPopular,
    ParetoOptimal,
    ParetoPessimal,
    TopCycle,
    BottomCycle,
    Uncovered(CoveringVariant),
    RankMaximal,
    Generous,
    LeastUnpopular,
}

impl Rule {
    pub const ALL: [Rule; 13] = [
        Rule::Popular,
        Rule::StronglyPopular,
        Rule::SemiPopular,
        Rule::ParetoOptimal,
        Rule::ParetoPessimal,
        Rule::TopCycle,
        Rule::BottomCycle,
        Rule::Uncovered(CoveringVariant::McKelvey),
        Rule::Uncovered(CoveringVariant::Bordes),
        Rule::Uncovered(CoveringVariant::Gillies),
        Rule::RankMaximal,
        Rule::Generous,
        Rule::LeastUnpopular,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Rule::Popular => "popular",
            Rule::StronglyPopular => "strongly-popular",
            Rule::SemiPopular => "semi-popular",
            Rule::ParetoOptimal => "po",
            Rule::ParetoPessimal => "pp",
            Rule::TopCycle => "tc",
            Rule::BottomCycle => "bc",
            Rule::Uncovered(CoveringVariant::McKelvey) => "uc-mckelvey",
            Rule::Uncovered(CoveringVariant::Bordes) => "uc-bordes",
            Rule::Uncovered(CoveringVariant::Gillies) => "uc-gillies",
            Rule::RankMaximal => "rank-maximal",
            Rule::Generous => "generous",
            Rule::LeastUnpopular => "least-unpopular",
        }
    }

    /// Whether evaluation needs the full majority matrix.
    pub fn needs_matrix(self) -> bool {
        matches!(self, Rule::TopCycle | Rule::BottomCycle | Rule::Uncovered(_) | Rule::SemiPopular | Rule::StronglyPopular)
    }

    /// Evaluates the rule. `matrix` must be built from `profile` when
    /// [`Rule::needs_matrix`] holds.
    pub fn evaluate(self, profile: &Profile, matrix: Option<&MajorityMatrix>) -> Result<BitSet> {
        let mat = || matrix.expect("rule needs the majority matrix");
        Ok(match self {
            Rule::Popular => popular_set(profile)?,
            Rule::StronglyPopular => mat().strongly_popular(),
            Rule::SemiPopular => mat().semi_popular(),
            Rule::ParetoOptimal => pareto_optimal_set(profile)?,
            Rule::ParetoPessimal => pareto_pessimal_set(profile)?,
            Rule::TopCycle => tc_brute(mat()),
            Rule::BottomCycle => bc_brute(mat()),
            Rule::Uncovered(v) => uncovered_two_step(mat(), v),
            Rule::RankMaximal => rank_maximal_set(profile)?,
            Rule::Generous => generous_set(profile)?,
            Rule::LeastUnpopular => least_unpopular_set(profile)?.1,
        })
    }
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Rule {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim().to_ascii_lowercase();
        let alias = match s.as_str() {
            "uc" => "uc-mckelvey",
            "pareto" => "po",
            other => other,
        };
        Rule::ALL.into_iter().find(|r| r.name() == alias).ok_or_else(|| format!("unknown rule `{s}`"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::majority::MajorityMatrix;

    fn rank_example() -> (Profile, Profile) {
        let p = Profile::from_rows(&[
            "a b c d e f",
            "a c b d f e",
            "b a c e d f",
            "a b c d e f",
            "a b c d e f",
            "a b c d e f",
        ])
        .unwrap();
        let q = Profile::from_rows(&[
            "d e f a b c",
            "d f e a c b",
            "e d f b a c",
            "d e f a b c",
            "d e f a b c",
            "d e f a b c",
        ])
        .unwrap();
        (p, q)
    }

    fn distinct_tops() -> Profile {
        Profile::from_rows(&["a b c d e", "b c d e a", "c d e a b", "d e a b c", "e a b c d"]).unwrap()
    }

    #[test]
    fn rank_maximality_is_not_majoritarian() {
        let (p, q) = rank_example();
        let u = Universe::get(6).unwrap();
        let mu = u.index_of(&p.parse_assignment("a,c,b,d,e,f").unwrap());
        let lambda = u.index_of(&q.parse_assignment("d,f,e,a,b,c").unwrap());
        assert!(rank_maximal_set(&p).unwrap().contains(mu));
        let rm = rank_maximal_set(&q).unwrap();
        assert!(!rm.contains(mu));
        assert!(rm.contains(lambda));
    }

    #[test]
    fn unanimous_everything_ties() {
        let p = Profile::from_rows(&["a b c"; 3]).unwrap();
        assert_eq!(rank_maximal_set(&p).unwrap().len(), 6);
        assert_eq!(generous_set(&p).unwrap().len(), 6);
        assert!(popular_set(&p).unwrap().is_empty());
        let (u, set) = least_unpopular_set(&p).unwrap();
        assert_eq!(u, 1);
        assert_eq!(set.len(), 6);
    }

    #[test]
    fn distinct_tops_single_winner() {
        let p = distinct_tops();
        let tops = Universe::get(5).unwrap().index_of(&crate::pareto::top_choice_assignment(&p).unwrap());
        let only = BitSet::from_indices(120, [tops]);
        assert_eq!(generous_set(&p).unwrap(), only);
        assert_eq!(popular_set(&p).unwrap(), only);
        assert_eq!(least_unpopular_set(&p).unwrap(), (0, only.clone()));
        assert_eq!(rank_maximal_set(&p).unwrap(), only);
    }

    #[test]
    fn histogram_order_equals_rank_vector_order_n3() {
        // every profile over three houses
        let orders: Vec<Vec<usize>> = {
            let mut v = vec![0, 1, 2];
            let mut all = vec![v.clone()];
            while crate::assignment::next_permutation(&mut v) {
                all.push(v.clone());
            }
            all
        };
        for a in &orders {
            for b in &orders {
                for c in &orders {
                    let p = Profile::from_indices(&[a.clone(), b.clone(), c.clone()]).unwrap();
                    assert_eq!(rank_maximal_set(&p).unwrap(), rank_maximal_by_rank_vector(&p).unwrap());
                }
            }
        }
    }

    #[test]
    fn generous_never_uncovered_profile() {
        let p = Profile::from_rows(&[
            "c f a e b g d",
            "b c g e a d f",
            "g f a d e c b",
            "g b e c a f d",
            "e d a b c f g",
            "a b d g f e c",
            "f b d e c a g",
        ])
        .unwrap();
        let u = Universe::get(7).unwrap();
        let modified = p.parse_assignment("c,b,a,g,e,d,f").unwrap();
        let rv = crate::pareto::RankVector::of(&p, &modified);
        assert!(rv.ranks().iter().all(|&r| r <= 3));
        let generous = generous_set(&p).unwrap();
        let m = MajorityMatrix::build(&p).unwrap();
        let uc = uncovered_two_step(&m, CoveringVariant::McKelvey);
        let mut both = generous.clone();
        both.intersect_with(&uc);
        assert!(both.is_empty());
        assert!(generous.iter().all(|i| crate::pareto::RankVector::of(&p, &u.assignment(i)).ranks().iter().all(|&r| r <= 3)));
    }

    #[test]
    fn rule_names_round_trip() {
        for r in Rule::ALL {
            assert_eq!(r.name().parse::<Rule>().unwrap(), r);
        }
        assert_eq!("uc".parse::<Rule>().unwrap(), Rule::Uncovered(CoveringVariant::McKelvey));
        assert!("copeland".parse::<Rule>().is_err());
    }
}
