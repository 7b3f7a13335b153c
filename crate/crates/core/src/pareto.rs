//! Serial (anti)dictatorships, Pareto dominance, and Pareto-optimal /
//! Pareto-pessimal assignments.

use crate::assignment::{Assignment, PriorityOrder, Universe};
use crate::bits::BitSet;
use crate::error::{Error, Result};
use crate::profile::{HouseId, Profile};

/// Ranks received by the agents, sorted increasingly.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct RankVector(Vec<usize>);

impl RankVector {
    pub fn of(profile: &Profile, mu: &Assignment) -> Self {
        let mut v: Vec<usize> = profile.agents().map(|x| profile.rank(x, mu.house(x))).collect();
        v.sort_unstable();
        RankVector(v)
    }

    pub fn ranks(&self) -> &[usize] {
        &self.0
    }

    /// `counts[r - 1]` agents receive their rank-`r` house.
    pub fn histogram(&self) -> Vec<usize> {
        let mut h = vec![0; self.0.len()];
        for &r in &self.0 {
            h[r - 1] += 1;
        }
        h
    }
}

fn pick(profile: &Profile, sigma: &PriorityOrder, worst: bool) -> Result<Assignment> {
    let n = profile.n();
    if sigma.len() != n {
        return Err(Error::DimensionMismatch { expected: n, found: sigma.len() });
    }
    let mut taken = vec![false; n];
    let mut to_house = vec![HouseId(0); n];
    for &x in sigma.agents() {
        let ranking = profile.order(x).ranking();
        let choice = if worst {
            ranking.iter().rev().find(|h| !taken[h.0])
        } else {
            ranking.iter().find(|h| !taken[h.0])
        };
        let h = *choice.expect("one house per agent");
        taken[h.0] = true;
        to_house[x.0] = h;
    }
    Assignment::new(to_house)
}

/// Agents pick their favourite remaining house in priority order.
pub fn serial_dictatorship(profile: &Profile, sigma: &PriorityOrder) -> Result<Assignment> {
    pick(profile, sigma, false)
}

/// Agents pick their least preferred remaining house in priority order.
pub fn serial_antidictatorship(profile: &Profile, sigma: &PriorityOrder) -> Result<Assignment> {
    pick(profile, sigma, true)
}

pub fn pareto_dominates(profile: &Profile, mu: &Assignment, lambda: &Assignment) -> Result<bool> {
    mu.check_for(profile)?;
    lambda.check_for(profile)?;
    let mut strict = false;
    for x in profile.agents() {
        let (p, q) = (mu.house(x), lambda.house(x));
        if p != q {
            if profile.prefers(x, q, p) {
                return Ok(false);
            }
            strict = true;
        }
    }
    Ok(strict)
}

/// Kahn-style peeling of sinks; `adj[x]` is the out-neighbourhood of `x` as
/// a bitmask over `words` words.
fn has_cycle(n: usize, words: usize, adj: &mut [u64]) -> bool {
    let mut alive = BitSet::full(n);
    loop {
        let mut removed = false;
        for x in 0..n {
            if alive.contains(x) && adj[x * words..(x + 1) * words].iter().all(|&w| w == 0) {
                alive.remove(x);
                removed = true;
                for y in 0..n {
                    adj[y * words + x / 64] &= !(1u64 << (x % 64));
                }
            }
        }
        if alive.is_empty() {
            return false;
        }
        if !removed {
            return true;
        }
    }
}

/// Directed graph on agents with an edge `x -> y` whenever `x` strictly
/// prefers the house of `y` (`envy`) or its own house over that of `y`.
fn trade_graph_has_cycle(profile: &Profile, mu: &Assignment, envy: bool) -> bool {
    let n = profile.n();
    if n <= 64 {
        let mut masks = [0u64; 64];
        for x in profile.agents() {
            let own = mu.house(x);
            for y in profile.agents() {
                let other = mu.house(y);
                if x != y && profile.prefers(x, other, own) == envy {
                    masks[x.0] |= 1 << y.0;
                }
            }
        }
        return masks_have_cycle(&mut masks[..n]);
    }
    let words = n.div_ceil(64);
    let mut adj = vec![0u64; n * words];
    for x in profile.agents() {
        let own = mu.house(x);
        for y in profile.agents() {
            if x != y && profile.prefers(x, mu.house(y), own) == envy {
                adj[x.0 * words + y.0 / 64] |= 1 << (y.0 % 64);
            }
        }
    }
    has_cycle(n, words, &mut adj)
}

pub(crate) fn masks_have_cycle(masks: &mut [u64]) -> bool {
    let n = masks.len();
    let mut alive: u64 = if n == 64 { !0 } else { (1u64 << n) - 1 };
    loop {
        let mut sinks = 0u64;
        let mut rest = alive;
        while rest != 0 {
            let x = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            if masks[x] & alive == 0 {
                sinks |= 1 << x;
            }
        }
        if sinks == 0 {
            return alive != 0;
        }
        alive &= !sinks;
    }
}

/// No assignment Pareto-dominates `mu`; equivalently the envy graph is
/// acyclic (no improving trading cycle).
pub fn is_pareto_optimal(profile: &Profile, mu: &Assignment) -> Result<bool> {
    mu.check_for(profile)?;
    Ok(!trade_graph_has_cycle(profile, mu, true))
}

/// `mu` Pareto-dominates no assignment; equivalently no worsening trading
/// cycle exists.
pub fn is_pareto_pessimal(profile: &Profile, mu: &Assignment) -> Result<bool> {
    mu.check_for(profile)?;
    Ok(!trade_graph_has_cycle(profile, mu, false))
}

/// Membership of every assignment of the universe in PO and PP, computed
/// from house indices directly.
pub(crate) fn pareto_sets_in(profile: &Profile, universe: &Universe) -> (BitSet, BitSet) {
    let n = profile.n();
    let size = universe.size();
    let tables: Vec<&[usize]> = profile.orders().iter().map(|o| o.rank_table()).collect();
    let mut po = BitSet::new(size);
    let mut pp = BitSet::new(size);
    let mut envy = [0u64; 64];
    let mut spite = [0u64; 64];
    for idx in 0..size {
        let houses = universe.houses(idx);
        for x in 0..n {
            let own = tables[x][houses[x] as usize];
            let (mut e, mut s) = (0u64, 0u64);
            for y in 0..n {
                if y != x {
                    let r = tables[x][houses[y] as usize];
                    e |= ((r < own) as u64) << y;
                    s |= ((r > own) as u64) << y;
                }
            }
            envy[x] = e;
            spite[x] = s;
        }
        if !masks_have_cycle(&mut envy[..n]) {
            po.insert(idx);
        }
        if !masks_have_cycle(&mut spite[..n]) {
            pp.insert(idx);
        }
    }
    (po, pp)
}

pub fn pareto_optimal_set(profile: &Profile) -> Result<BitSet> {
    Ok(pareto_sets_in(profile, Universe::get(profile.n())?).0)
}

pub fn pareto_pessimal_set(profile: &Profile) -> Result<BitSet> {
    Ok(pareto_sets_in(profile, Universe::get(profile.n())?).1)
}

/// Assignment giving every agent its top choice, if tops are distinct.
pub fn top_choice_assignment(profile: &Profile) -> Option<Assignment> {
    Assignment::new(profile.agents().map(|x| profile.order(x).top()).collect()).ok()
}

/// Every agent strictly better off or unchanged; used by tests and
/// examples as the literal quantified check.
pub fn is_pareto_optimal_brute(profile: &Profile, mu: &Assignment) -> Result<bool> {
    let u = Universe::get(profile.n())?;
    for idx in 0..u.size() {
        if pareto_dominates(profile, &u.assignment(idx), mu)? {
            return Ok(false);
        }
    }
    Ok(true)
}
