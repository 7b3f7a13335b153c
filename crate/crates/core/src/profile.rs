//! Agents, houses, strict preference orders and profiles.
//!
//! A profile holds one linear order over the houses per agent. Houses are
//! dense indices `0..n` backed by a shared label table; agents are dense
//! indices as well and are shown 1-based.

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use crate::assignment::Assignment;
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct HouseId(pub usize);

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct AgentId(pub usize);

impl fmt::Display for AgentId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0 + 1)
    }
}

/// Default label of house `i`: `a..z`, then `aa, ab, ..`.
pub fn default_label(i: usize) -> String {
    let mut i = i;
    let mut out = Vec::new();
    loop {
        out.push(b'a' + (i % 26) as u8);
        if i < 26 {
            break;
        }
        i = i / 26 - 1;
    }
    out.reverse();
    String::from_utf8(out).unwrap()
}

fn valid_label(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_lowercase())
        && chars.all(|c| c.is_ascii_lowercase() || c.is_ascii_digit() || c == '_')
}

/// A strict ranking of all houses, most preferred first.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PreferenceOrder {
    ranking: Vec<HouseId>,
    rank_of: Vec<usize>,
}

impl PreferenceOrder {
    pub fn new(ranking: Vec<HouseId>) -> Result<Self> {
        let n = ranking.len();
        let mut rank_of = vec![0; n];
        for (i, h) in ranking.iter().enumerate() {
            if h.0 >= n || rank_of[h.0] != 0 {
                return Err(Error::NotAPermutation(format!("{:?}", ranking)));
            }
            rank_of[h.0] = i + 1;
        }
        Ok(PreferenceOrder { ranking, rank_of })
    }

    pub fn from_indices(ranking: &[usize]) -> Result<Self> {
        Self::new(ranking.iter().map(|&h| HouseId(h)).collect())
    }

    pub fn identity(n: usize) -> Self {
        PreferenceOrder { ranking: (0..n).map(HouseId).collect(), rank_of: (1..=n).collect() }
    }

    pub fn len(&self) -> usize {
        self.ranking.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ranking.is_empty()
    }

    pub fn ranking(&self) -> &[HouseId] {
        &self.ranking
    }

    /// `1` for the top choice, `n` for the bottom one.
    #[inline]
    pub fn rank(&self, h: HouseId) -> usize {
        self.rank_of[h.0]
    }

    pub(crate) fn rank_table(&self) -> &[usize] {
        &self.rank_of
    }

    #[inline]
    pub fn prefers(&self, p: HouseId, q: HouseId) -> bool {
        self.rank_of[p.0] < self.rank_of[q.0]
    }

    pub fn top(&self) -> HouseId {
        self.ranking[0]
    }

    pub fn bottom(&self) -> HouseId {
        self.ranking[self.ranking.len() - 1]
    }

    /// House at 1-based rank `r`.
    pub fn at_rank(&self, r: usize) -> HouseId {
        self.ranking[r - 1]
    }

    pub fn reversed(&self) -> Self {
        let mut ranking = self.ranking.clone();
        ranking.reverse();
        let n = ranking.len();
        let rank_of = self.rank_of.iter().map(|r| n + 1 - r).collect();
        PreferenceOrder { ranking, rank_of }
    }
}

impl fmt::Debug for PreferenceOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.ranking.iter().map(|h| h.0)).finish()
    }
}

/// `n` agents' strict preferences over `n` houses.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Profile {
    orders: Vec<PreferenceOrder>,
    labels: Arc<[String]>,
}

impl Profile {
    /// Builds a profile over houses `0..n` with default labels.
    pub fn new(orders: Vec<PreferenceOrder>) -> Result<Self> {
        let n = orders.len();
        let labels: Arc<[String]> = (0..n).map(default_label).collect();
        Self::with_labels(orders, labels)
    }

    pub fn with_labels(orders: Vec<PreferenceOrder>, labels: Arc<[String]>) -> Result<Self> {
        let n = orders.len();
        if n == 0 {
            return Err(Error::Empty);
        }
        if labels.len() != n {
            return Err(Error::DimensionMismatch { expected: n, found: labels.len() });
        }
        for o in &orders {
            if o.len() != n {
                return Err(Error::DimensionMismatch { expected: n, found: o.len() });
            }
        }
        Ok(Profile { orders, labels })
    }

    /// Profile from rankings given as house indices.
    pub fn from_indices(rows: &[Vec<usize>]) -> Result<Self> {
        let orders = rows.iter().map(|r| PreferenceOrder::from_indices(r)).collect::<Result<_>>()?;
        Self::new(orders)
    }

    /// Profile from rows of labels separated by whitespace and/or commas,
    /// e.g. `["a,b,c", "b a c", ..]`.
    pub fn from_rows<S: AsRef<str>>(rows: &[S]) -> Result<Self> {
        let mut text = format!("{}\n", rows.len());
        for r in rows {
            text.push_str(&r.as_ref().replace(',', " "));
            text.push('\n');
        }
        Self::parse(&text)
    }

    /// Parses the profile text format: a header line with `n`, then `n`
    /// lines of space-separated house labels, most preferred first. Lines
    /// starting with `#` and blank lines are skipped.
    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
        let (_, header) = lines.next().ok_or(Error::Empty)?;
        let n: usize = header.parse().map_err(|_| Error::BadHeader(header.to_string()))?;
        if n == 0 {
            return Err(Error::Empty);
        }
        let rows: Vec<(usize, Vec<&str>)> =
            lines.map(|(no, l)| (no, l.split_whitespace().collect())).collect();
        if rows.len() != n {
            return Err(Error::WrongAgentCount { expected: n, found: rows.len() });
        }

        let (first_line, first) = &rows[0];
        let mut labels: Vec<String> = Vec::with_capacity(n);
        for (line, row) in &rows {
            if row.len() != n {
                return Err(Error::WrongLength { line: *line, expected: n, found: row.len() });
            }
            let mut seen = std::collections::HashSet::new();
            for l in row {
                if !valid_label(l) {
                    return Err(Error::BadLabel(l.to_string()));
                }
                if !seen.insert(*l) {
                    return Err(Error::DuplicateHouse { line: *line, label: l.to_string() });
                }
            }
            if line == first_line {
                labels = row.iter().map(|s| s.to_string()).collect();
            }
        }
        debug_assert_eq!(first.len(), labels.len());
        labels.sort_by(|a, b| (a.len(), a).cmp(&(b.len(), b)));
        let index: HashMap<&str, usize> =
            labels.iter().enumerate().map(|(i, l)| (l.as_str(), i)).collect();

        let mut orders = Vec::with_capacity(n);
        for (line, row) in &rows {
            let ranking = row
                .iter()
                .map(|l| {
                    index.get(l).map(|&i| HouseId(i)).ok_or_else(|| Error::InconsistentHouses {
                        line: *line,
                        label: l.to_string(),
                    })
                })
                .collect::<Result<Vec<_>>>()?;
            orders.push(PreferenceOrder::new(ranking)?);
        }
        Self::with_labels(orders, labels.into())
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("{}\n", self.n());
        for o in &self.orders {
            let row: Vec<&str> = o.ranking.iter().map(|&h| self.label(h)).collect();
            out.push_str(&row.join(" "));
            out.push('\n');
        }
        out
    }

    pub fn n(&self) -> usize {
        self.orders.len()
    }

    pub fn orders(&self) -> &[PreferenceOrder] {
        &self.orders
    }

    pub fn order(&self, x: AgentId) -> &PreferenceOrder {
        &self.orders[x.0]
    }

    pub fn labels(&self) -> &Arc<[String]> {
        &self.labels
    }

    pub fn label(&self, h: HouseId) -> &str {
        &self.labels[h.0]
    }

    pub fn house(&self, label: &str) -> Result<HouseId> {
        self.labels
            .iter()
            .position(|l| l == label)
            .map(HouseId)
            .ok_or_else(|| Error::UnknownHouse(label.to_string()))
    }

    pub fn agents(&self) -> impl Iterator<Item = AgentId> {
        (0..self.n()).map(AgentId)
    }

    pub fn houses(&self) -> impl Iterator<Item = HouseId> {
        (0..self.n()).map(HouseId)
    }

    #[inline]
    pub fn rank(&self, x: AgentId, h: HouseId) -> usize {
        self.orders[x.0].rank(h)
    }

    #[inline]
    pub fn prefers(&self, x: AgentId, p: HouseId, q: HouseId) -> bool {
        self.orders[x.0].prefers(p, q)
    }

    /// Every agent's ranking reversed.
    pub fn invert(&self) -> Profile {
        Profile {
            orders: self.orders.iter().map(PreferenceOrder::reversed).collect(),
            labels: self.labels.clone(),
        }
    }

    /// Restriction to the given agents and houses. Kept houses are
    /// re-indexed in their original index order and keep their labels;
    /// kept agents keep their relative order.
    pub fn restrict(&self, agents: &[AgentId], houses: &[HouseId]) -> Result<Profile> {
        if agents.len() != houses.len() || agents.is_empty() {
            return Err(Error::SizeMismatch { agents: agents.len(), houses: houses.len() });
        }
        let n = self.n();
        let mut agent_mask = vec![false; n];
        for a in agents {
            if a.0 >= n || agent_mask[a.0] {
                return Err(Error::UnknownAgent(a.0 + 1));
            }
            agent_mask[a.0] = true;
        }
        let mut new_index = vec![usize::MAX; n];
        for h in houses {
            if h.0 >= n || new_index[h.0] != usize::MAX {
                return Err(Error::UnknownHouse(format!("#{}", h.0)));
            }
            new_index[h.0] = 0;
        }
        let mut kept = Vec::with_capacity(houses.len());
        for (h, slot) in new_index.iter_mut().enumerate() {
            if *slot == 0 {
                *slot = kept.len();
                kept.push(h);
            }
        }
        let labels: Arc<[String]> = kept.iter().map(|&h| self.labels[h].clone()).collect();
        let orders = (0..n)
            .filter(|&x| agent_mask[x])
            .map(|x| {
                let ranking = self.orders[x]
                    .ranking
                    .iter()
                    .filter(|h| new_index[h.0] != usize::MAX)
                    .map(|h| HouseId(new_index[h.0]))
                    .collect();
                PreferenceOrder::new(ranking)
            })
            .collect::<Result<_>>()?;
        Profile::with_labels(orders, labels)
    }

    /// Applies a house relabeling `h -> perm[h]` to every ranking. Labels
    /// travel with the houses.
    pub fn relabel_houses(&self, perm: &[usize]) -> Result<Profile> {
        let n = self.n();
        if perm.len() != n {
            return Err(Error::DimensionMismatch { expected: n, found: perm.len() });
        }
        PreferenceOrder::from_indices(perm)?;
        let mut labels = vec![String::new(); n];
        for (h, &p) in perm.iter().enumerate() {
            labels[p] = self.labels[h].clone();
        }
        let orders = self
            .orders
            .iter()
            .map(|o| PreferenceOrder::new(o.ranking.iter().map(|h| HouseId(perm[h.0])).collect()))
            .collect::<Result<_>>()?;
        Profile::with_labels(orders, labels.into())
    }

    /// Reorders agents: agent `i` of the result is agent `perm[i]` here.
    pub fn permute_agents(&self, perm: &[usize]) -> Result<Profile> {
        if perm.len() != self.n() {
            return Err(Error::DimensionMismatch { expected: self.n(), found: perm.len() });
        }
        PreferenceOrder::from_indices(perm)?;
        let orders = perm.iter().map(|&i| self.orders[i].clone()).collect();
        Profile::with_labels(orders, self.labels.clone())
    }

    /// Symmetry-reduced representative: houses are renamed so that agent 1
    /// ranks them in index order, then agents `2..n` are sorted by their
    /// ranking sequences. The result carries default labels.
    pub fn canonical_form(&self) -> Profile {
        let n = self.n();
        let mut rename = vec![0; n];
        for (i, h) in self.orders[0].ranking.iter().enumerate() {
            rename[h.0] = i;
        }
        let mut rows: Vec<Vec<usize>> =
            self.orders.iter().map(|o| o.ranking.iter().map(|h| rename[h.0]).collect()).collect();
        rows[1..].sort();
        Profile::from_indices(&rows).expect("renaming preserves permutations")
    }

    pub fn is_canonical(&self) -> bool {
        self.orders[0].ranking.iter().enumerate().all(|(i, h)| h.0 == i)
            && self.orders[1..].windows(2).all(|w| w[0].ranking <= w[1].ranking)
    }

    /// Parses an assignment literal such as `c,a,b` or `(c,a,b)`.
    pub fn parse_assignment(&self, text: &str) -> Result<Assignment> {
        let inner = text.trim().trim_start_matches('(').trim_end_matches(')');
        let houses = inner
            .split(',')
            .map(|s| self.house(s.trim()))
            .collect::<Result<Vec<_>>>()?;
        if houses.len() != self.n() {
            return Err(Error::DimensionMismatch { expected: self.n(), found: houses.len() });
        }
        Assignment::new(houses)
    }

    /// Tuple notation, e.g. `(c,a,b)`.
    pub fn format_assignment(&self, mu: &Assignment) -> String {
        mu.display(&self.labels)
    }
}

impl fmt::Debug for Profile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, o) in self.orders.iter().enumerate() {
            let row: Vec<&str> = o.ranking.iter().map(|&h| self.label(h)).collect();
            writeln!(f, "{}: {}", i + 1, row.join(","))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn unanimous(n: usize, row: &str) -> Profile {
        Profile::from_rows(&vec![row; n]).unwrap()
    }

    #[test]
    fn labels_follow_spreadsheet_order() {
        assert_eq!(default_label(0), "a");
        assert_eq!(default_label(25), "z");
        assert_eq!(default_label(26), "aa");
        assert_eq!(default_label(27), "ab");
        assert_eq!(default_label(26 + 26 * 26), "aaa");
    }

    #[test]
    fn parse_unanimous() {
        let p = Profile::parse("3\na b c\na b c\na b c").unwrap();
        assert_eq!(p.n(), 3);
        assert_eq!(p, unanimous(3, "a b c"));
        assert!(p.prefers(AgentId(2), HouseId(0), HouseId(2)));
    }

    #[test]
    fn parse_single_agent() {
        let p = Profile::parse("1\na").unwrap();
        assert_eq!(p.n(), 1);
        assert_eq!(p.rank(AgentId(0), HouseId(0)), 1);
    }

    #[test]
    fn parse_skips_comments() {
        let p = Profile::parse("# header\n2\n# first agent\nb a\n\na b\n").unwrap();
        assert_eq!(p.order(AgentId(0)).top(), p.house("b").unwrap());
    }

    #[test]
    fn parse_errors() {
        assert!(matches!(Profile::parse("2\na b\nb b"), Err(Error::DuplicateHouse { line: 3, .. })));
        assert!(matches!(Profile::parse("2\na b\nb"), Err(Error::WrongLength { .. })));
        assert!(matches!(Profile::parse("2\na b\na c"), Err(Error::InconsistentHouses { .. })));
        assert!(matches!(Profile::parse("0\n"), Err(Error::Empty)));
        assert!(matches!(Profile::parse(""), Err(Error::Empty)));
        assert!(matches!(Profile::parse("3\na b c\na b c"), Err(Error::WrongAgentCount { .. })));
        assert!(matches!(Profile::parse("x\n"), Err(Error::BadHeader(_))));
        assert!(matches!(Profile::parse("1\nA"), Err(Error::BadLabel(_))));
    }

    #[test]
    fn text_round_trip() {
        let p = Profile::from_rows(&["c a b", "a b c", "b c a"]).unwrap();
        assert_eq!(Profile::parse(&p.to_text()).unwrap(), p);
    }

    #[test]
    fn rank_examples() {
        let p = unanimous(3, "a b c");
        let o = p.order(AgentId(0));
        assert_eq!(o.rank(p.house("a").unwrap()), 1);
        assert_eq!(o.rank(p.house("c").unwrap()), 3);
        // second agent of the rank-maximality example
        let q = Profile::from_rows(&["a b c d e f", "a c b d f e", "b a c e d f", "a b c d e f", "a b c d e f", "a b c d e f"])
            .unwrap();
        assert_eq!(q.rank(AgentId(1), q.house("c").unwrap()), 2);
    }

    #[test]
    fn invert_examples() {
        let p = unanimous(3, "a b c");
        assert_eq!(p.invert(), unanimous(3, "c b a"));
        assert_eq!(p.invert().invert(), p);
        let one = Profile::parse("1\na").unwrap();
        assert_eq!(one.invert(), one);
    }

    #[test]
    fn restrict_examples() {
        let p = Profile::from_rows(&["a c b", "b a c", "c b a"]).unwrap();
        let all: Vec<AgentId> = p.agents().collect();
        let houses: Vec<HouseId> = p.houses().collect();
        assert_eq!(p.restrict(&all, &houses).unwrap(), p);
        assert!(matches!(p.restrict(&all[..2], &houses), Err(Error::SizeMismatch { .. })));

        let bad = Profile::from_rows(&[
            "f b d e c a g",
            "d f g a b e c",
            "d a c g e b f",
            "a d b f g e c",
            "c g e b f d a",
            "f a e d g c b",
            "c d e b g f a",
        ])
        .unwrap();
        let agents: Vec<AgentId> = (0..5).map(AgentId).collect();
        let houses: Vec<HouseId> =
            ["f", "d", "a", "e", "c"].iter().map(|l| bad.house(l).unwrap()).collect();
        let r = bad.restrict(&agents, &houses).unwrap();
        let first: Vec<&str> = r.order(AgentId(0)).ranking().iter().map(|&h| r.label(h)).collect();
        assert_eq!(first, ["f", "d", "e", "c", "a"]);
    }

    #[test]
    fn canonical_relabels_first_agent() {
        let p = unanimous(3, "c a b");
        assert_eq!(p.canonical_form(), unanimous(3, "a b c"));
        assert!(p.canonical_form().is_canonical());
    }

    #[test]
    fn assignment_literals() {
        let p = unanimous(3, "a b c");
        let mu = p.parse_assignment("c,a,b").unwrap();
        assert_eq!(p.format_assignment(&mu), "(c,a,b)");
        assert_eq!(p.parse_assignment("(c, a, b)").unwrap(), mu);
        assert!(p.parse_assignment("a,a,b").is_err());
        assert!(p.parse_assignment("a,b").is_err());
        assert!(p.parse_assignment("a,b,z").is_err());
    }
}
