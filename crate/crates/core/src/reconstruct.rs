//! Recovering the profiles behind a majority graph.
//!
//! Only majority verdicts are observed, through a [`MajorityOracle`]. Pair
//! swaps reveal where agents disagree on two houses, three-way rotations
//! fill in the rest of each component, and cycle-type queries fix the
//! cyclic order of the components. The answer is a [`RotationClass`]: one
//! base profile, its finest decomposition and the block shifts that keep
//! the majority graph unchanged.

use std::sync::Arc;

use crate::assignment::{Assignment, Universe};
use crate::error::{Error, Result};
use crate::majority::{compare, Verdict};
use crate::profile::{default_label, AgentId, HouseId, PreferenceOrder, Profile};

/// Fixed constant in the query bound `c * n^4` (for `n >= 2`).
pub const QUERY_BOUND_C: u64 = 1;

/// Upper bound on oracle calls made by [`reconstruct`] for `n` agents.
pub fn query_bound(n: usize) -> u64 {
    QUERY_BOUND_C * (n.max(2) as u64).pow(4)
}

/// Answers majority comparisons without revealing margins.
pub trait MajorityOracle {
    fn n(&self) -> usize;

    fn query(&mut self, mu: &Assignment, lambda: &Assignment) -> Verdict;

    /// Number of queries answered so far.
    fn queries(&self) -> u64;

    fn labels(&self) -> Arc<[String]> {
        (0..self.n()).map(default_label).collect()
    }
}

/// Oracle backed by a known profile, counting its queries.
#[derive(Clone, Debug)]
pub struct ProfileOracle {
    profile: Profile,
    count: u64,
}

impl ProfileOracle {
    pub fn new(profile: Profile) -> Self {
        ProfileOracle { profile, count: 0 }
    }

    pub fn profile(&self) -> &Profile {
        &self.profile
    }
}

impl MajorityOracle for ProfileOracle {
    fn n(&self) -> usize {
        self.profile.n()
    }

    fn query(&mut self, mu: &Assignment, lambda: &Assignment) -> Verdict {
        self.count += 1;
        compare(&self.profile, mu, lambda).expect("assignment size matches oracle").verdict
    }

    fn queries(&self) -> u64 {
        self.count
    }

    fn labels(&self) -> Arc<[String]> {
        self.profile.labels().clone()
    }
}

/// Moves each listed house to its agent by swapping with the current
/// holder.
fn place(filler: &Assignment, fixed: &[(AgentId, HouseId)]) -> Assignment {
    let mut mu = filler.clone();
    for &(x, h) in fixed {
        let holder = mu.holder(h);
        mu.swap(x, holder);
    }
    mu
}

/// Listed agents get their houses; everyone else gets the remaining houses
/// in index order.
pub fn fill(n: usize, fixed: &[(AgentId, HouseId)]) -> Assignment {
    let mut to_house = vec![None; n];
    let mut used = vec![false; n];
    for &(x, h) in fixed {
        to_house[x.0] = Some(h);
        used[h.0] = true;
    }
    let mut free = (0..n).filter(|&h| !used[h]).map(HouseId);
    let houses = to_house.into_iter().map(|h| h.unwrap_or_else(|| free.next().unwrap())).collect();
    Assignment::new(houses).expect("distinct houses")
}

/// Swap query: `mu` gives `p` to `x` and `q` to `y`, `lambda` swaps the two.
/// `FirstWins` means `x` prefers `p` and `y` prefers `q`; `Tie` means the
/// two agents agree on `{p, q}`.
pub fn pair_query(
    oracle: &mut impl MajorityOracle,
    x: AgentId,
    y: AgentId,
    p: HouseId,
    q: HouseId,
    filler: &Assignment,
) -> Verdict {
    let mu = place(filler, &[(x, p), (y, q)]);
    let mut lambda = mu.clone();
    lambda.swap(x, y);
    oracle.query(&mu, &lambda)
}

/// What the swap queries reveal about one pair of houses.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PairColumn {
    /// Every agent ranks the pair the same way; which way is unknown.
    AllAgree,
    /// Entry `x` is true iff agent `x` prefers `p` to `q`.
    Split(Vec<bool>),
}

fn unresolvable(what: impl Into<String>) -> Error {
    Error::Unresolvable(what.into())
}

/// Scans agent pairs `(1,2), (2,3), ...` until one disagrees on `{p, q}`,
/// then settles every other agent against that anchor.
pub fn infer_pair_column(oracle: &mut impl MajorityOracle, p: HouseId, q: HouseId) -> Result<PairColumn> {
    let n = oracle.n();
    let ask = |o: &mut _, x: usize, y: usize| {
        pair_query(o, AgentId(x), AgentId(y), p, q, &fill(n, &[(AgentId(x), p), (AgentId(y), q)]))
    };
    let mut anchor = None;
    for x in 0..n.saturating_sub(1) {
        match ask(oracle, x, x + 1) {
            Verdict::Tie => continue,
            Verdict::FirstWins => anchor = Some((x, true)),
            Verdict::SecondWins => anchor = Some((x, false)),
        }
        break;
    }
    let Some((x, x_prefers_p)) = anchor else {
        return Ok(PairColumn::AllAgree);
    };
    let mut col = vec![x_prefers_p; n];
    col[x + 1] = !x_prefers_p;
    for w in x + 2..n {
        col[w] = match (ask(oracle, x, w), x_prefers_p) {
            (Verdict::Tie, d) => d,
            (Verdict::FirstWins, true) => false,
            (Verdict::SecondWins, false) => true,
            _ => return Err(unresolvable(format!("swap answers for houses {} and {} contradict", p.0, q.0))),
        };
    }
    Ok(PairColumn::Split(col))
}

/// Per-agent directions learned so far for every ordered pair of houses.
#[derive(Clone, Debug)]
pub struct PairKnowledge {
    n: usize,
    known: Vec<Option<Vec<bool>>>,
    unanimous: Vec<bool>,
}

impl PairKnowledge {
    pub fn new(n: usize) -> Self {
        PairKnowledge { n, known: vec![None; n * n], unanimous: vec![false; n * n] }
    }

    /// Entry `x` is true iff agent `x` prefers `p` to `q`.
    pub fn get(&self, p: HouseId, q: HouseId) -> Option<&[bool]> {
        self.known[p.0 * self.n + q.0].as_deref()
    }

    pub fn set(&mut self, p: HouseId, q: HouseId, column: Vec<bool>) {
        let flipped = column.iter().map(|&b| !b).collect();
        self.known[p.0 * self.n + q.0] = Some(column);
        self.known[q.0 * self.n + p.0] = Some(flipped);
    }

    /// Records that all agents agree on `{p, q}`.
    pub fn mark_unanimous(&mut self, p: HouseId, q: HouseId) {
        self.unanimous[p.0 * self.n + q.0] = true;
        self.unanimous[q.0 * self.n + p.0] = true;
    }

    pub fn is_unanimous(&self, p: HouseId, q: HouseId) -> bool {
        self.unanimous[p.0 * self.n + q.0]
    }
}

/// Fills in `{p, r}` from known `{p, q}` and `{q, r}` columns, by
/// transitivity when some agent ranks `q` between them and by a three-agent
/// rotation query otherwise.
pub fn resolve_within_component(
    oracle: &mut impl MajorityOracle,
    knowledge: &mut PairKnowledge,
    p: HouseId,
    q: HouseId,
    r: HouseId,
) -> Result<()> {
    if knowledge.get(p, r).is_some() {
        return Ok(());
    }
    let n = knowledge.n;
    let (pq, qr) = match (knowledge.get(p, q), knowledge.get(q, r)) {
        (Some(a), Some(b)) => (a.to_vec(), b.to_vec()),
        _ => return Err(unresolvable("resolution needs both adjacent pairs")),
    };
    let p_over_r = if let Some(x) = (0..n).find(|&x| pq[x] == qr[x]) {
        pq[x]
    } else {
        if n < 3 {
            return Err(unresolvable("rotation query needs three agents"));
        }
        // x and y must vote opposite ways, leaving z to decide
        let (x, y) = (0..n)
            .flat_map(|x| (0..n).map(move |y| (x, y)))
            .find(|&(x, y)| x != y && qr[x] != pq[y])
            .ok_or_else(|| unresolvable("no agent pair for the rotation query"))?;
        let z = (0..n).find(|&z| z != x && z != y).unwrap();
        let (ax, ay, az) = (AgentId(x), AgentId(y), AgentId(z));
        let mu = fill(n, &[(ax, q), (ay, p), (az, r)]);
        let lambda = place(&mu, &[(ax, r), (ay, q), (az, p)]);
        match oracle.query(&mu, &lambda) {
            Verdict::FirstWins => false,
            Verdict::SecondWins => true,
            Verdict::Tie => return Err(unresolvable("rotation query tied")),
        }
    };
    if !knowledge.is_unanimous(p, r) {
        return Err(unresolvable(format!("houses {} and {} should be split", p.0, r.0)));
    }
    knowledge.set(p, r, vec![p_over_r; n]);
    Ok(())
}

/// Cyclic orientation of three houses on which some agents agree.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Orientation {
    /// The shared order is one of `p>q>r`, `q>r>p`, `r>p>q`.
    Forward,
    /// The shared order is one of `p>r>q`, `r>q>p`, `q>p>r`.
    Backward,
}

/// Rotation query: `mu` gives `p, q, r` to `x, y, z` and `lambda` gives
/// them `q, r, p`. Requires the three agents to order `{p, q, r}` alike.
pub fn cycle_type(
    oracle: &mut impl MajorityOracle,
    [p, q, r]: [HouseId; 3],
    [x, y, z]: [AgentId; 3],
) -> Result<Orientation> {
    let mu = fill(oracle.n(), &[(x, p), (y, q), (z, r)]);
    let lambda = place(&mu, &[(x, q), (y, r), (z, p)]);
    match oracle.query(&mu, &lambda) {
        Verdict::FirstWins => Ok(Orientation::Forward),
        Verdict::SecondWins => Ok(Orientation::Backward),
        Verdict::Tie => Err(unresolvable("cycle-type query tied")),
    }
}

/// Ordered partition of the houses; every agent ranks each block above the
/// next.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Decomposition {
    blocks: Vec<Vec<HouseId>>,
}

impl Decomposition {
    pub fn new(blocks: Vec<Vec<HouseId>>) -> Self {
        Decomposition { blocks }
    }

    pub fn blocks(&self) -> &[Vec<HouseId>] {
        &self.blocks
    }

    pub fn k(&self) -> usize {
        self.blocks.len()
    }

    fn block_of(&self, n: usize) -> Vec<usize> {
        let mut of = vec![0; n];
        for (j, b) in self.blocks.iter().enumerate() {
            for h in b {
                of[h.0] = j;
            }
        }
        of
    }

    pub fn display(&self, labels: &[String]) -> String {
        let parts: Vec<String> = self
            .blocks
            .iter()
            .map(|b| format!("{{{}}}", b.iter().map(|h| labels[h.0].as_str()).collect::<Vec<_>>().join(",")))
            .collect();
        format!("({})", parts.join(","))
    }
}

/// Finest decomposition: blocks end wherever all agents share the same
/// set of top `i` houses.
pub fn finest_decomposition(profile: &Profile) -> Decomposition {
    let n = profile.n();
    let first = profile.order(AgentId(0)).ranking();
    let mut blocks = Vec::new();
    let mut start = 0;
    let mut max_rank = vec![0usize; n];
    for i in 0..n {
        for (x, o) in profile.orders().iter().enumerate() {
            max_rank[x] = max_rank[x].max(o.rank(first[i]));
        }
        // agent x's top i+1 equals agent 1's iff none of them sits lower
        if max_rank.iter().all(|&m| m == i + 1) {
            blocks.push(first[start..=i].to_vec());
            start = i + 1;
        }
    }
    Decomposition { blocks }
}

/// Moves the first `shift` blocks of every agent's ranking to the bottom.
pub fn rotate(profile: &Profile, decomposition: &Decomposition, shift: usize) -> Profile {
    let n = profile.n();
    let k = decomposition.k();
    let of = &decomposition.block_of(n);
    let orders = profile
        .orders()
        .iter()
        .map(|o| {
            let ranking: Vec<HouseId> = (0..k)
                .flat_map(|j| {
                    let b = (j + shift) % k;
                    o.ranking().iter().copied().filter(move |h| of[h.0] == b)
                })
                .collect();
            PreferenceOrder::new(ranking).expect("rotation permutes houses")
        })
        .collect();
    Profile::with_labels(orders, profile.labels().clone()).expect("same shape")
}

/// All profiles inducing one majority graph.
#[derive(Clone, Debug)]
pub struct RotationClass {
    base: Profile,
    decomposition: Decomposition,
    shifts: Vec<usize>,
}

impl RotationClass {
    pub fn base(&self) -> &Profile {
        &self.base
    }

    pub fn decomposition(&self) -> &Decomposition {
        &self.decomposition
    }

    pub fn shifts(&self) -> &[usize] {
        &self.shifts
    }

    pub fn len(&self) -> usize {
        self.shifts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.shifts.is_empty()
    }

    pub fn members(&self) -> Vec<Profile> {
        self.shifts.iter().map(|&r| rotate(&self.base, &self.decomposition, r)).collect()
    }

    pub fn contains(&self, profile: &Profile) -> bool {
        profile.n() == self.base.n() && self.members().iter().any(|m| m.orders() == profile.orders())
    }
}

/// Queries issued so far, kept to recheck the final answer.
struct Logged<'a, O> {
    inner: &'a mut O,
    log: Vec<(Assignment, Assignment, Verdict)>,
}

impl<O: MajorityOracle> MajorityOracle for Logged<'_, O> {
    fn n(&self) -> usize {
        self.inner.n()
    }

    fn query(&mut self, mu: &Assignment, lambda: &Assignment) -> Verdict {
        let v = self.inner.query(mu, lambda);
        self.log.push((mu.clone(), lambda.clone(), v));
        v
    }

    fn queries(&self) -> u64 {
        self.inner.queries()
    }
}

fn recheck(profile: &Profile, log: &[(Assignment, Assignment, Verdict)]) -> Result<()> {
    for (mu, lambda, v) in log {
        if compare(profile, mu, lambda)?.verdict != *v {
            return Err(unresolvable("oracle answers fit no profile"));
        }
    }
    Ok(())
}

/// Recovers the rotation class of profiles consistent with the oracle.
pub fn reconstruct(oracle: &mut impl MajorityOracle) -> Result<RotationClass> {
    let n = oracle.n();
    if n == 0 {
        return Err(Error::Empty);
    }
    let labels = oracle.labels();
    let mut logged = Logged { inner: oracle, log: Vec::new() };
    if n <= 2 {
        return reconstruct_exhaustive(&mut logged, labels);
    }
    let oracle = &mut logged;

    let mut knowledge = PairKnowledge::new(n);
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut [usize], a: usize) -> usize {
        let mut a = a;
        while parent[a] != a {
            parent[a] = parent[parent[a]];
            a = parent[a];
        }
        a
    }
    for p in 0..n {
        for q in p + 1..n {
            match infer_pair_column(oracle, HouseId(p), HouseId(q))? {
                PairColumn::AllAgree => knowledge.mark_unanimous(HouseId(p), HouseId(q)),
                PairColumn::Split(col) => {
                    knowledge.set(HouseId(p), HouseId(q), col);
                    let (a, b) = (find(&mut parent, p), find(&mut parent, q));
                    parent[a] = b;
                }
            }
        }
    }
    let mut comp_of = vec![usize::MAX; n];
    let mut components: Vec<Vec<HouseId>> = Vec::new();
    for h in 0..n {
        let root = find(&mut parent, h);
        if comp_of[root] == usize::MAX {
            comp_of[root] = components.len();
            components.push(Vec::new());
        }
        components[comp_of[root]].push(HouseId(h));
    }

    for comp in &components {
        loop {
            let mut progress = false;
            let mut missing = false;
            for &p in comp {
                for &r in comp {
                    if p == r || knowledge.get(p, r).is_some() {
                        continue;
                    }
                    match comp.iter().find(|&&q| knowledge.get(p, q).is_some() && knowledge.get(q, r).is_some()) {
                        Some(&q) => {
                            resolve_within_component(oracle, &mut knowledge, p, q, r)?;
                            progress = true;
                        }
                        None => missing = true,
                    }
                }
            }
            if !missing {
                break;
            }
            if !progress {
                return Err(unresolvable("component not connected"));
            }
        }
    }

    // per agent, per component: ranking inside the component
    let inner: Vec<Vec<Vec<HouseId>>> = (0..n)
        .map(|x| {
            components
                .iter()
                .map(|comp| {
                    let mut slots = vec![None; comp.len()];
                    for &p in comp {
                        let beaten = comp.iter().filter(|&&q| q != p && knowledge.get(p, q).unwrap()[x]).count();
                        let slot = &mut slots[comp.len() - 1 - beaten];
                        if slot.is_some() {
                            return Err(unresolvable("component preferences are cyclic"));
                        }
                        *slot = Some(p);
                    }
                    Ok(slots.into_iter().map(Option::unwrap).collect())
                })
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<_>>()?;

    let k = components.len();
    let agents = [AgentId(0), AgentId(1), AgentId(2)];
    let rep = |c: usize| components[c][0];
    let mut cycle: Vec<usize> = (0..k.min(2)).collect();
    for c in 2..k {
        let mut at = None;
        for i in 0..cycle.len() {
            let (a, b) = (cycle[i], cycle[(i + 1) % cycle.len()]);
            if cycle_type(oracle, [rep(a), rep(c), rep(b)], agents)? == Orientation::Forward {
                at = Some(i + 1);
                break;
            }
        }
        let at = at.ok_or_else(|| unresolvable("components admit no cyclic order"))?;
        cycle.insert(at, c);
    }

    let orders = (0..n)
        .map(|x| PreferenceOrder::new(cycle.iter().flat_map(|&c| inner[x][c].iter().copied()).collect()))
        .collect::<Result<Vec<_>>>()?;
    let base = Profile::with_labels(orders, labels)?;
    let decomposition = Decomposition::new(cycle.iter().map(|&c| inner[0][c].clone()).collect());

    let mut shifts = Vec::new();
    for r in 0..k {
        let ok = if k >= 3 {
            let rotated = rotate(&base, &decomposition, r);
            let first = |j: usize| decomposition.blocks()[(r + j) % k][0];
            let triple = [first(0), first(1), first(2)];
            let expect = match compare_cycle(&rotated, triple, agents)? {
                Verdict::FirstWins => Orientation::Forward,
                _ => Orientation::Backward,
            };
            cycle_type(oracle, triple, agents)? == expect
        } else {
            true
        };
        if ok {
            shifts.push(r);
        }
    }
    if shifts.first() != Some(&0) {
        return Err(unresolvable("base profile contradicts a cycle-type query"));
    }
    recheck(&base, &oracle.log)?;
    Ok(RotationClass { base, decomposition, shifts })
}

fn compare_cycle(profile: &Profile, [p, q, r]: [HouseId; 3], [x, y, z]: [AgentId; 3]) -> Result<Verdict> {
    let mu = fill(profile.n(), &[(x, p), (y, q), (z, r)]);
    let lambda = place(&mu, &[(x, q), (y, r), (z, p)]);
    Ok(compare(profile, &mu, &lambda)?.verdict)
}

fn reconstruct_exhaustive<O: MajorityOracle>(oracle: &mut Logged<'_, O>, labels: Arc<[String]>) -> Result<RotationClass> {
    let n = oracle.n();
    let u = Universe::get(n)?;
    for i in 0..u.size() {
        for j in i + 1..u.size() {
            oracle.query(&u.assignment(i), &u.assignment(j));
        }
    }
    let orders: Vec<PreferenceOrder> =
        (0..u.size()).map(|i| PreferenceOrder::new(u.assignment(i).houses().to_vec()).unwrap()).collect();
    let mut consistent = Vec::new();
    for code in 0..orders.len().pow(n as u32) {
        let rows = (0..n).map(|x| orders[(code / orders.len().pow(x as u32)) % orders.len()].clone()).collect();
        let candidate = Profile::with_labels(rows, labels.clone())?;
        if recheck(&candidate, &oracle.log).is_ok() {
            consistent.push(candidate);
        }
    }
    let base = consistent.first().cloned().ok_or_else(|| unresolvable("oracle answers fit no profile"))?;
    let decomposition = finest_decomposition(&base);
    let class = RotationClass { shifts: (0..decomposition.k()).collect(), base, decomposition };
    if class.len() != consistent.len() || !consistent.iter().all(|p| class.contains(p)) {
        return Err(unresolvable("consistent profiles do not form one rotation class"));
    }
    Ok(class)
}

/// True iff the two profiles share a decomposition whose block order in
/// one is a cyclic shift of the other, with equal orders inside blocks.
pub fn rotation_equivalent(a: &Profile, b: &Profile) -> bool {
    if a.n() != b.n() {
        return false;
    }
    let d = finest_decomposition(a);
    (0..d.k()).any(|r| rotate(a, &d, r).orders() == b.orders())
}

/// Margins implied by a majority graph, read off the class's base profile.
#[derive(Clone, Debug)]
pub struct InferredMargins {
    base: Profile,
}

impl InferredMargins {
    pub fn margin(&self, mu: &Assignment, lambda: &Assignment) -> Result<i32> {
        Ok(compare(&self.base, mu, lambda)?.margin)
    }
}

pub fn infer_margins(class: &RotationClass) -> InferredMargins {
    InferredMargins { base: class.base.clone() }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::majority::MajorityMatrix;

    fn p(rows: &[&str]) -> Profile {
        Profile::from_rows(rows).unwrap()
    }

    #[test]
    fn swap_query_reads_disagreement() {
        let prof = p(&["a c b", "a b c", "c b a"]);
        let mut o = ProfileOracle::new(prof);
        let f = Assignment::identity(3);
        let v = pair_query(&mut o, AgentId(0), AgentId(1), HouseId(2), HouseId(1), &f);
        assert_eq!(v, Verdict::FirstWins);
        let mut u = ProfileOracle::new(p(&["a b c"; 3]));
        assert_eq!(pair_query(&mut u, AgentId(0), AgentId(2), HouseId(0), HouseId(1), &f), Verdict::Tie);
    }

    #[test]
    fn unanimous_pairs_agree() {
        let mut o = ProfileOracle::new(p(&["a b c"; 3]));
        assert_eq!(infer_pair_column(&mut o, HouseId(0), HouseId(2)).unwrap(), PairColumn::AllAgree);
        let mut two = ProfileOracle::new(p(&["a b", "b a"]));
        assert_eq!(infer_pair_column(&mut two, HouseId(0), HouseId(1)).unwrap(), PairColumn::Split(vec![true, false]));
        assert_eq!(two.queries(), 1);
    }

    #[test]
    fn rotation_query_when_q_is_extreme() {
        // everyone ranks b first among {a,b,c}; agent 3 has c over a
        let (a, b, c) = (HouseId(0), HouseId(1), HouseId(2));
        let prof = p(&["b a c", "b a c", "b a c"]);
        let mut o = ProfileOracle::new(prof.clone());
        let mut k = PairKnowledge::new(3);
        k.set(a, b, vec![false; 3]);
        k.set(b, c, vec![true; 3]);
        k.mark_unanimous(a, c);
        resolve_within_component(&mut o, &mut k, a, b, c).unwrap();
        assert_eq!(k.get(a, c).unwrap(), &[true, true, true]);
        assert_eq!(o.queries(), 1);
    }

    #[test]
    fn cycle_type_orientation() {
        let idx = [HouseId(0), HouseId(1), HouseId(2)];
        let ag = [AgentId(0), AgentId(1), AgentId(2)];
        let mut o = ProfileOracle::new(p(&["a b c"; 3]));
        assert_eq!(cycle_type(&mut o, idx, ag).unwrap(), Orientation::Forward);
        let mut r = ProfileOracle::new(p(&["c b a"; 3]));
        assert_eq!(cycle_type(&mut r, idx, ag).unwrap(), Orientation::Backward);
        let mut s = ProfileOracle::new(p(&["b c a"; 3]));
        assert_eq!(cycle_type(&mut s, idx, ag).unwrap(), Orientation::Forward);
    }

    #[test]
    fn unanimous_class_has_three_rotations() {
        let prof = p(&["a b c"; 3]);
        let class = reconstruct(&mut ProfileOracle::new(prof.clone())).unwrap();
        assert_eq!(class.decomposition().k(), 3);
        assert_eq!(class.len(), 3);
        assert!(class.contains(&prof));
        assert!(class.contains(&p(&["b c a"; 3])));
        assert!(class.contains(&p(&["c a b"; 3])));
        assert!(!class.contains(&p(&["a c b"; 3])));
    }

    #[test]
    fn rotation_examples() {
        let hat = p(&["a b c d", "a b c d", "a b d c", "a b d c"]);
        let bar = p(&["a b c d", "a b d c", "a b d c", "a b d c"]);
        let d = finest_decomposition(&hat);
        assert_eq!(d.display(hat.labels()), "({a},{b},{c,d})");
        assert!(!rotation_equivalent(&hat, &bar));
        assert!(rotation_equivalent(&hat, &hat));

        let rm = p(&["a b c d e f", "a c b d f e", "b a c e d f", "a b c d e f", "a b c d e f", "a b c d e f"]);
        let rm2 = p(&["d e f a b c", "d f e a c b", "e d f b a c", "d e f a b c", "d e f a b c", "d e f a b c"]);
        assert!(rotation_equivalent(&rm, &rm2));
        let class = reconstruct(&mut ProfileOracle::new(rm2.clone())).unwrap();
        assert!(class.contains(&rm) && class.contains(&rm2));
        assert_eq!(class.len(), 2);
    }

    #[test]
    fn small_n_exhaustive() {
        for rows in [vec!["a b", "b a"], vec!["a b", "a b"], vec!["b a", "a b"]] {
            let prof = p(&rows);
            let class = reconstruct(&mut ProfileOracle::new(prof.clone())).unwrap();
            assert!(class.contains(&prof));
            assert_eq!(class.len(), if rows[0] == rows[1] { 2 } else { 1 });
        }
        let one = Profile::from_indices(&[vec![0]]).unwrap();
        assert_eq!(reconstruct(&mut ProfileOracle::new(one)).unwrap().len(), 1);
    }

    #[test]
    fn no_dominated_house_means_unique() {
        let prof = p(&["a b c d", "b c d a", "c d a b", "d a b c"]);
        let class = reconstruct(&mut ProfileOracle::new(prof.clone())).unwrap();
        assert_eq!(class.decomposition().k(), 1);
        assert_eq!(class.members(), vec![prof]);
    }

    #[test]
    fn members_share_the_graph() {
        let prof = p(&["a b c d e", "a c b d e", "b a c e d", "a b c d e", "a b c e d"]);
        let mut o = ProfileOracle::new(prof.clone());
        let class = reconstruct(&mut o).unwrap();
        assert!(o.queries() <= query_bound(5));
        let m = MajorityMatrix::build(&prof).unwrap();
        for member in class.members() {
            let mm = MajorityMatrix::build(&member).unwrap();
            assert!(mm.weak_relation() == m.weak_relation());
        }
        let margins = infer_margins(&class);
        let u = Universe::get(5).unwrap();
        for (i, j) in [(0, 5), (17, 99), (42, 42)] {
            assert_eq!(margins.margin(&u.assignment(i), &u.assignment(j)).unwrap(), m.margin(i, j));
        }
    }

    struct Coin(u64, u64);

    impl MajorityOracle for Coin {
        fn n(&self) -> usize {
            4
        }
        fn query(&mut self, _: &Assignment, _: &Assignment) -> Verdict {
            self.1 += 1;
            self.0 = self.0.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            [Verdict::FirstWins, Verdict::SecondWins, Verdict::Tie][(self.0 >> 33) as usize % 3]
        }
        fn queries(&self) -> u64 {
            self.1
        }
    }

    #[test]
    fn random_answers_are_unresolvable() {
        for seed in 0..20 {
            assert!(matches!(reconstruct(&mut Coin(seed, 0)), Err(Error::Unresolvable(_))));
        }
    }
}
