//! Assignments (bijections agents -> houses) and dense indexing of the
//! assignment universe by Lehmer codes.

use std::sync::OnceLock;

use num_bigint::BigUint;

use crate::error::{Error, Result};
use crate::profile::{AgentId, HouseId, Profile};

/// Largest `n` whose universe may be materialized.
pub const MAX_BRUTE: usize = 8;
/// Default brute-force limit.
pub const DEFAULT_BRUTE_LIMIT: usize = 7;

/// Agent `i` receives `to_house[i]`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Assignment {
    to_house: Vec<HouseId>,
}

impl Assignment {
    pub fn new(to_house: Vec<HouseId>) -> Result<Self> {
        let n = to_house.len();
        let mut seen = vec![false; n];
        for h in &to_house {
            if h.0 >= n || seen[h.0] {
                return Err(Error::NotAPermutation(format!("{:?}", to_house)));
            }
            seen[h.0] = true;
        }
        Ok(Assignment { to_house })
    }

    pub fn from_indices(houses: &[usize]) -> Result<Self> {
        Self::new(houses.iter().map(|&h| HouseId(h)).collect())
    }

    pub fn identity(n: usize) -> Self {
        Assignment { to_house: (0..n).map(HouseId).collect() }
    }

    pub fn n(&self) -> usize {
        self.to_house.len()
    }

    #[inline]
    pub fn house(&self, x: AgentId) -> HouseId {
        self.to_house[x.0]
    }

    pub fn houses(&self) -> &[HouseId] {
        &self.to_house
    }

    /// Agent holding `h`.
    pub fn holder(&self, h: HouseId) -> AgentId {
        AgentId(self.to_house.iter().position(|&g| g == h).expect("bijection"))
    }

    pub fn swap(&mut self, x: AgentId, y: AgentId) {
        self.to_house.swap(x.0, y.0);
    }

    pub fn display(&self, labels: &[String]) -> String {
        let parts: Vec<&str> = self.to_house.iter().map(|h| labels[h.0].as_str()).collect();
        format!("({})", parts.join(","))
    }

    pub(crate) fn check_for(&self, profile: &Profile) -> Result<()> {
        if self.n() != profile.n() {
            return Err(Error::DimensionMismatch { expected: profile.n(), found: self.n() });
        }
        Ok(())
    }
}

/// An order over agents used by picking sequences.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PriorityOrder(Vec<AgentId>);

impl PriorityOrder {
    pub fn new(agents: Vec<AgentId>) -> Result<Self> {
        let n = agents.len();
        let mut seen = vec![false; n];
        for a in &agents {
            if a.0 >= n || seen[a.0] {
                return Err(Error::NotAPermutation(format!("{:?}", agents)));
            }
            seen[a.0] = true;
        }
        Ok(PriorityOrder(agents))
    }

    /// From 1-based agent numbers, e.g. `[3, 4, 6, 7, 1, 5, 2]`.
    pub fn from_one_based(agents: &[usize]) -> Result<Self> {
        if agents.contains(&0) {
            return Err(Error::UnknownAgent(0));
        }
        Self::new(agents.iter().map(|&a| AgentId(a - 1)).collect())
    }

    pub fn identity(n: usize) -> Self {
        PriorityOrder((0..n).map(AgentId).collect())
    }

    /// Every order over `n` agents, lexicographically.
    pub fn all(n: usize) -> impl Iterator<Item = PriorityOrder> {
        let mut cur: Option<Vec<usize>> = Some((0..n).collect());
        std::iter::from_fn(move || {
            let c = cur.take()?;
            let mut next = c.clone();
            if next_permutation(&mut next) {
                cur = Some(next);
            }
            Some(PriorityOrder(c.into_iter().map(AgentId).collect()))
        })
    }

    pub fn agents(&self) -> &[AgentId] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

pub fn factorial(n: usize) -> BigUint {
    (1..=n).fold(BigUint::from(1u32), |acc, k| acc * BigUint::from(k))
}

/// `n!` for `n <= 20`.
pub fn factorial_u64(n: usize) -> Option<u64> {
    (1..=n as u64).try_fold(1u64, |acc, k| acc.checked_mul(k))
}

/// Bijection between assignments and `0..n!`, monotone in the
/// lexicographic order of `to_house`.
#[derive(Clone, Debug)]
pub struct AssignmentIndexer {
    n: usize,
    fact: Vec<u64>,
}

impl AssignmentIndexer {
    pub fn new(n: usize) -> Result<Self> {
        if n > 20 {
            return Err(Error::UniverseTooLarge { n, limit: 20 });
        }
        let fact = (0..=n).map(|k| factorial_u64(k).unwrap()).collect();
        Ok(AssignmentIndexer { n, fact })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn universe_size(&self) -> u64 {
        self.fact[self.n]
    }

    pub fn index(&self, mu: &Assignment) -> u64 {
        debug_assert_eq!(mu.n(), self.n);
        lehmer_rank(mu.to_house.iter().map(|h| h.0), self.n, &self.fact)
    }

    pub fn unindex(&self, idx: u64) -> Assignment {
        Assignment { to_house: lehmer_unrank(idx, self.n, &self.fact).into_iter().map(HouseId).collect() }
    }
}

/// Lexicographic rank of a permutation of `0..n`.
pub(crate) fn lehmer_rank(perm: impl Iterator<Item = usize>, n: usize, fact: &[u64]) -> u64 {
    let mut used: u64 = 0;
    let mut used_wide = vec![false; if n > 64 { n } else { 0 }];
    let mut idx = 0;
    for (i, v) in perm.enumerate() {
        let smaller_unused = if n <= 64 {
            let below = used & ((1u64 << v) - 1);
            used |= 1 << v;
            v - below.count_ones() as usize
        } else {
            let c = (0..v).filter(|&u| !used_wide[u]).count();
            used_wide[v] = true;
            c
        };
        idx += smaller_unused as u64 * fact[n - 1 - i];
    }
    idx
}

pub(crate) fn lehmer_unrank(mut idx: u64, n: usize, fact: &[u64]) -> Vec<usize> {
    let mut pool: Vec<usize> = (0..n).collect();
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        let f = fact[n - 1 - i];
        let d = (idx / f) as usize;
        idx %= f;
        out.push(pool.remove(d));
    }
    out
}

/// All `n!` assignments for `n <= MAX_BRUTE`, in index order, shared
/// process-wide.
pub struct Universe {
    n: usize,
    perms: Vec<u8>,
}

impl Universe {
    pub fn get(n: usize) -> Result<&'static Universe> {
        static CACHE: [OnceLock<Universe>; MAX_BRUTE + 1] = [const { OnceLock::new() }; MAX_BRUTE + 1];
        if n > MAX_BRUTE {
            return Err(Error::UniverseTooLarge { n, limit: MAX_BRUTE });
        }
        Ok(CACHE[n].get_or_init(|| Universe::build(n)))
    }

    fn build(n: usize) -> Universe {
        let size = factorial_u64(n).unwrap() as usize;
        let mut perms = Vec::with_capacity(size * n);
        let mut cur: Vec<u8> = (0..n as u8).collect();
        loop {
            perms.extend_from_slice(&cur);
            if !next_permutation(&mut cur) {
                break;
            }
        }
        debug_assert_eq!(perms.len(), size * n);
        Universe { n, perms }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn size(&self) -> usize {
        if self.n == 0 {
            1
        } else {
            self.perms.len() / self.n
        }
    }

    /// Houses of assignment `idx`, indexed by agent.
    #[inline]
    pub fn houses(&self, idx: usize) -> &[u8] {
        &self.perms[idx * self.n..(idx + 1) * self.n]
    }

    pub fn assignment(&self, idx: usize) -> Assignment {
        Assignment { to_house: self.houses(idx).iter().map(|&h| HouseId(h as usize)).collect() }
    }

    pub fn index_of(&self, mu: &Assignment) -> usize {
        let fact: Vec<u64> = (0..=self.n).map(|k| factorial_u64(k).unwrap()).collect();
        lehmer_rank(mu.to_house.iter().map(|h| h.0), self.n, &fact) as usize
    }

    /// Rank signature of every assignment under `profile`: byte `x` of
    /// entry `idx` is agent `x`'s rank of the house it receives.
    pub fn signatures(&self, profile: &Profile) -> Vec<u64> {
        debug_assert_eq!(profile.n(), self.n);
        let tables: Vec<&[usize]> = profile.orders().iter().map(|o| o.rank_table()).collect();
        (0..self.size())
            .map(|idx| {
                self.houses(idx)
                    .iter()
                    .enumerate()
                    .fold(0u64, |acc, (x, &h)| acc | (tables[x][h as usize] as u64) << (8 * x))
            })
            .collect()
    }
}

/// Lexicographic successor; false after the last permutation.
pub(crate) fn next_permutation<T: Ord>(v: &mut [T]) -> bool {
    if v.len() < 2 {
        return false;
    }
    let mut i = v.len() - 1;
    while i > 0 && v[i - 1] >= v[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = v.len() - 1;
    while v[j] <= v[i - 1] {
        j -= 1;
    }
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip_full_universe() {
        for n in 0..=7 {
            let ix = AssignmentIndexer::new(n).unwrap();
            let u = Universe::get(n).unwrap();
            assert_eq!(ix.universe_size() as usize, u.size());
            for i in 0..u.size() {
                let mu = ix.unindex(i as u64);
                assert_eq!(ix.index(&mu), i as u64);
                assert_eq!(u.assignment(i), mu);
            }
        }
    }

    #[test]
    fn index_is_lexicographic() {
        let ix = AssignmentIndexer::new(5).unwrap();
        let all: Vec<Assignment> = (0..120).map(|i| ix.unindex(i)).collect();
        assert!(all.windows(2).all(|w| w[0] < w[1]));
        assert_eq!(all[0], Assignment::identity(5));
    }

    #[test]
    fn large_indexer() {
        let ix = AssignmentIndexer::new(20).unwrap();
        let mu = Assignment::from_indices(&(0..20).rev().collect::<Vec<_>>()).unwrap();
        assert_eq!(ix.index(&mu), ix.universe_size() - 1);
        assert!(AssignmentIndexer::new(21).is_err());
        assert_eq!(factorial(25).to_string(), "15511210043330985984000000");
    }

    #[test]
    fn rejects_non_bijections() {
        assert!(Assignment::from_indices(&[0, 0, 1]).is_err());
        assert!(Assignment::from_indices(&[0, 3, 1]).is_err());
        assert!(PriorityOrder::from_one_based(&[1, 1]).is_err());
        assert!(PriorityOrder::from_one_based(&[0, 1]).is_err());
    }
}
