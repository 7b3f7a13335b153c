//! Top and bottom cycle: brute force over the majority graph, and the
//! closed-form case analysis for `n >= 5`.

use num_bigint::BigUint;

use crate::assignment::{factorial, Assignment, PriorityOrder, Universe};
use crate::bits::{iter_ones, BitMatrix, BitSet};
use crate::error::Result;
use crate::majority::MajorityMatrix;
use crate::pareto::{serial_antidictatorship, top_choice_assignment};
use crate::profile::{AgentId, HouseId, Profile};

/// Strongly connected components of a relation, numbered in the order
/// Tarjan's algorithm completes them: every edge `u -> v` between distinct
/// components satisfies `comp[u] > comp[v]`.
pub fn strongly_connected_components(rel: &BitMatrix) -> (Vec<usize>, usize) {
    const UNSEEN: usize = usize::MAX;
    let size = rel.size();
    let mut index = vec![UNSEEN; size];
    let mut low = vec![0; size];
    let mut on_stack = vec![false; size];
    let mut comp = vec![UNSEEN; size];
    let mut stack = Vec::new();
    let mut next_index = 0;
    let mut comps = 0;
    // (vertex, next column to scan)
    let mut call: Vec<(usize, usize)> = Vec::new();

    for root in 0..size {
        if index[root] != UNSEEN {
            continue;
        }
        call.push((root, 0));
        index[root] = next_index;
        low[root] = next_index;
        next_index += 1;
        stack.push(root);
        on_stack[root] = true;

        while let Some(&mut (v, ref mut col)) = call.last_mut() {
            let row = rel.row(v);
            let mut descended = false;
            while *col < size {
                let w = {
                    // next set bit at or after *col
                    let mut wi = *col / 64;
                    let mut word = row[wi] & (!0u64 << (*col % 64));
                    loop {
                        if word != 0 {
                            break Some(wi * 64 + word.trailing_zeros() as usize);
                        }
                        wi += 1;
                        if wi == row.len() {
                            break None;
                        }
                        word = row[wi];
                    }
                };
                let Some(w) = w.filter(|&w| w < size) else {
                    *col = size;
                    break;
                };
                *col = w + 1;
                if index[w] == UNSEEN {
                    index[w] = next_index;
                    low[w] = next_index;
                    next_index += 1;
                    stack.push(w);
                    on_stack[w] = true;
                    call.push((w, 0));
                    descended = true;
                    break;
                } else if on_stack[w] {
                    low[v] = low[v].min(index[w]);
                }
            }
            if descended {
                continue;
            }
            call.pop();
            if let Some(&(parent, _)) = call.last() {
                low[parent] = low[parent].min(low[v]);
            }
            if low[v] == index[v] {
                loop {
                    let w = stack.pop().unwrap();
                    on_stack[w] = false;
                    comp[w] = comps;
                    if w == v {
                        break;
                    }
                }
                comps += 1;
            }
        }
    }
    (comp, comps)
}

fn members_of(comp: &[usize], c: usize) -> BitSet {
    BitSet::from_indices(comp.len(), comp.iter().enumerate().filter(|(_, &k)| k == c).map(|(i, _)| i))
}

/// Vertices reachable from `start` (inclusive).
pub fn forward_reach(rel: &BitMatrix, start: &BitSet) -> BitSet {
    let mut reach = start.clone();
    let mut frontier: Vec<usize> = start.iter().collect();
    let mut words = reach.words().to_vec();
    while let Some(v) = frontier.pop() {
        for (wi, &w) in rel.row(v).iter().enumerate() {
            let fresh = w & !words[wi];
            if fresh != 0 {
                words[wi] |= fresh;
                frontier.extend(iter_ones(&[fresh]).map(|b| wi * 64 + b));
            }
        }
    }
    reach = BitSet::from_words(rel.size(), words);
    reach
}

/// Vertices from which `target` is reachable (inclusive).
pub fn backward_reach(rel: &BitMatrix, target: &BitSet) -> BitSet {
    let mut reach = target.clone();
    loop {
        let mut grew = false;
        for u in 0..rel.size() {
            if !reach.contains(u) && rel.row(u).iter().zip(reach.words()).any(|(a, b)| a & b != 0) {
                reach.insert(u);
                grew = true;
            }
        }
        if !grew {
            return reach;
        }
    }
}

/// Top and bottom cycle of the weak majority relation: the unique source
/// and sink components of its condensation.
pub fn cycles(mat: &MajorityMatrix) -> (BitSet, BitSet) {
    let rel = mat.weak_relation();
    let size = rel.size();
    let (comp, count) = strongly_connected_components(rel);
    let source = members_of(&comp, count - 1);
    let sink = members_of(&comp, 0);
    let tc = if forward_reach(rel, &source).is_full() { source } else { BitSet::new(size) };
    let bc = if backward_reach(rel, &sink).is_full() { sink } else { BitSet::new(size) };
    (tc, bc)
}

/// Assignments reaching every assignment along weak majority edges.
pub fn tc_brute(mat: &MajorityMatrix) -> BitSet {
    cycles(mat).0
}

/// Assignments reached from every assignment along weak majority edges.
pub fn bc_brute(mat: &MajorityMatrix) -> BitSet {
    cycles(mat).1
}

/// Concise description of a top (or bottom) cycle.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TcDescription {
    /// Case (i): distinct top choices, the all-tops assignment alone.
    Winner { winner: Assignment },
    /// Case (ii): exactly two agents share top and second choice.
    Pair { pair: [Assignment; 2] },
    /// Case (iii): everything except the two Pareto-pessimal assignments.
    AllButTwo { excluded: [Assignment; 2] },
    /// Case (iv): everything except the all-bottoms assignment.
    AllButOne { excluded: Assignment },
    /// Case (v): every assignment.
    All { n: usize },
    /// `n <= 4`, where the case analysis does not apply.
    Explicit { n: usize, members: BitSet },
}

impl TcDescription {
    pub fn n(&self) -> usize {
        match self {
            TcDescription::Winner { winner } => winner.n(),
            TcDescription::Pair { pair } => pair[0].n(),
            TcDescription::AllButTwo { excluded } => excluded[0].n(),
            TcDescription::AllButOne { excluded } => excluded.n(),
            TcDescription::All { n } | TcDescription::Explicit { n, .. } => *n,
        }
    }

    /// Roman numeral of the case, `None` for the explicit fallback.
    pub fn case(&self) -> Option<&'static str> {
        Some(match self {
            TcDescription::Winner { .. } => "I",
            TcDescription::Pair { .. } => "II",
            TcDescription::AllButTwo { .. } => "III",
            TcDescription::AllButOne { .. } => "IV",
            TcDescription::All { .. } => "V",
            TcDescription::Explicit { .. } => return None,
        })
    }

    pub fn size(&self) -> BigUint {
        let total = factorial(self.n());
        match self {
            TcDescription::Winner { .. } => BigUint::from(1u32),
            TcDescription::Pair { .. } => BigUint::from(2u32),
            TcDescription::AllButTwo { .. } => total - 2u32,
            TcDescription::AllButOne { .. } => total - 1u32,
            TcDescription::All { .. } => total,
            TcDescription::Explicit { members, .. } => BigUint::from(members.len()),
        }
    }

    pub fn contains(&self, mu: &Assignment) -> bool {
        match self {
            TcDescription::Winner { winner } => mu == winner,
            TcDescription::Pair { pair } => pair.contains(mu),
            TcDescription::AllButTwo { excluded } => !excluded.contains(mu),
            TcDescription::AllButOne { excluded } => mu != excluded,
            TcDescription::All { .. } => true,
            TcDescription::Explicit { members, .. } => {
                Universe::get(mu.n()).map(|u| members.contains(u.index_of(mu))).unwrap_or(false)
            }
        }
    }

    /// Materialized member set over the universe (`n <= MAX_BRUTE`).
    pub fn members(&self) -> Result<BitSet> {
        let u = Universe::get(self.n())?;
        let idx = |a: &Assignment| u.index_of(a);
        Ok(match self {
            TcDescription::Winner { winner } => BitSet::from_indices(u.size(), [idx(winner)]),
            TcDescription::Pair { pair } => BitSet::from_indices(u.size(), pair.iter().map(idx)),
            TcDescription::AllButTwo { excluded } => {
                let mut s = BitSet::full(u.size());
                excluded.iter().for_each(|a| s.remove(idx(a)));
                s
            }
            TcDescription::AllButOne { excluded } => {
                let mut s = BitSet::full(u.size());
                s.remove(idx(excluded));
                s
            }
            TcDescription::All { .. } => BitSet::full(u.size()),
            TcDescription::Explicit { members, .. } => members.clone(),
        })
    }
}

/// If exactly two agents share a first choice `p` (all other first choices
/// distinct), both rank the same house `q` second, and nobody else ranks
/// `q` first: returns `(x, y, q)`. "First" is read through `pos`, which maps
/// a preference order to its `k`-th most (or least) preferred house.
fn shared_pair(profile: &Profile, pos: impl Fn(AgentId, usize) -> HouseId) -> Option<(AgentId, AgentId, HouseId)> {
    let n = profile.n();
    let mut holders: Vec<Vec<AgentId>> = vec![Vec::new(); n];
    for x in profile.agents() {
        holders[pos(x, 0).0].push(x);
    }
    let shared: Vec<&Vec<AgentId>> = holders.iter().filter(|h| h.len() > 1).collect();
    if shared.len() != 1 || shared[0].len() != 2 {
        return None;
    }
    let (x, y) = (shared[0][0], shared[0][1]);
    let q = pos(x, 1);
    (q == pos(y, 1) && holders[q.0].is_empty()).then_some((x, y, q))
}

fn all_distinct(profile: &Profile, pos: impl Fn(AgentId) -> HouseId) -> bool {
    let mut seen = vec![false; profile.n()];
    profile.agents().all(|x| !std::mem::replace(&mut seen[pos(x).0], true))
}

/// Closed-form top cycle. Conditions are tested in order (i), (ii), then the
/// bottom-side (iii), (iv), else (v). For `n <= 4` the top cycle is
/// computed by brute force and returned explicitly.
pub fn tc_characterize(profile: &Profile) -> Result<TcDescription> {
    let n = profile.n();
    if n <= 4 {
        let mat = MajorityMatrix::build(profile)?;
        return Ok(TcDescription::Explicit { n, members: tc_brute(&mat) });
    }
    let top = |x: AgentId, k: usize| profile.order(x).at_rank(1 + k);
    let bottom = |x: AgentId, k: usize| profile.order(x).at_rank(n - k);

    if let Some(winner) = top_choice_assignment(profile) {
        return Ok(TcDescription::Winner { winner });
    }
    if let Some((x, y, q)) = shared_pair(profile, top) {
        let witness = |loser: AgentId| {
            let houses = profile.agents().map(|z| if z == loser { q } else { top(z, 0) }).collect();
            Assignment::new(houses).expect("tops of the others are distinct")
        };
        return Ok(TcDescription::Pair { pair: [witness(x), witness(y)] });
    }
    if let Some((x, y, _)) = shared_pair(profile, bottom) {
        let rest: Vec<AgentId> = profile.agents().filter(|&z| z != x && z != y).collect();
        let order = |first: AgentId, last: AgentId| {
            let mut v = rest.clone();
            v.extend([first, last]);
            PriorityOrder::new(v).expect("permutation")
        };
        let excluded = [
            serial_antidictatorship(profile, &order(y, x))?,
            serial_antidictatorship(profile, &order(x, y))?,
        ];
        return Ok(TcDescription::AllButTwo { excluded });
    }
    if all_distinct(profile, |x| bottom(x, 0)) {
        let excluded = serial_antidictatorship(profile, &PriorityOrder::identity(n))?;
        return Ok(TcDescription::AllButOne { excluded });
    }
    Ok(TcDescription::All { n })
}

/// Closed-form bottom cycle: the top cycle of the inverted profile.
pub fn bc_characterize(profile: &Profile) -> Result<TcDescription> {
    tc_characterize(&profile.invert())
}

pub fn tc_contains(desc: &TcDescription, mu: &Assignment) -> bool {
    desc.contains(mu)
}
