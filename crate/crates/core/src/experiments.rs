//! Enumeration and sampling of profiles, and the statistics gathered over
//! them: uncovered-set and Pareto-set sizes, the UC/PO ratio distribution,
//! top-cycle sizes and the four structural facts checked for `n = 5`.
//!
//! Canonical profiles fix agent 1's ranking to `a > b > c > ...` and list
//! agents `2..n` in nondecreasing lexicographic order, so they correspond to
//! multisets of `n - 1` rankings and are ranked and unranked as such.
//! Random streams use ChaCha8 seeded with the run seed, one stream per
//! profile index, so results do not depend on how work is split.

use std::collections::BTreeMap;
use std::fmt;
use std::io::Write;
use std::ops::Range;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::assignment::{factorial_u64, Universe};
use crate::bits::BitSet;
use crate::covering::{uncovered_all, CoveringVariant};
use crate::error::{Error, Result};
use crate::majority::MajorityMatrix;
use crate::pareto::pareto_sets_in;
use crate::profile::{PreferenceOrder, Profile};
use crate::rules::rank_maximal_in;
use crate::topcycle::{cycles, strongly_connected_components};

/// Default seed of the sampling runs.
pub const DEFAULT_SEED: u64 = 20_240_601;

/// Largest `n` with canonical profiles indexable here.
pub const MAX_CANONICAL: usize = 8;

/// Multisets of size `k` drawn from `n` kinds.
fn multichoose(n: u128, k: u128) -> u128 {
    if k == 0 {
        return 1;
    }
    if n == 0 {
        return 0;
    }
    // C(n + k - 1, k) with exact intermediate divisions
    let mut acc: u128 = 1;
    for i in 1..=k {
        acc = acc * (n + k - i) / i;
    }
    acc
}

fn check_n(n: usize) -> Result<&'static Universe> {
    if n == 0 {
        return Err(Error::Empty);
    }
    if n > MAX_CANONICAL {
        return Err(Error::UniverseTooLarge { n, limit: MAX_CANONICAL });
    }
    Universe::get(n)
}

/// Number of canonical profiles with `n` agents.
pub fn canonical_count(n: usize) -> Result<u128> {
    check_n(n)?;
    Ok(multichoose(factorial_u64(n).unwrap() as u128, n as u128 - 1))
}

fn unrank_multiset(mut rank: u128, kinds: usize, len: usize) -> Vec<usize> {
    let mut out = Vec::with_capacity(len);
    let mut v = 0;
    for i in 0..len {
        loop {
            let rest = multichoose((kinds - v) as u128, (len - i - 1) as u128);
            if rank < rest {
                break;
            }
            rank -= rest;
            v += 1;
        }
        out.push(v);
    }
    out
}

fn rank_multiset(combo: &[usize], kinds: usize) -> u128 {
    let len = combo.len();
    let mut rank = 0;
    let mut v = 0;
    for (i, &c) in combo.iter().enumerate() {
        while v < c {
            rank += multichoose((kinds - v) as u128, (len - i - 1) as u128);
            v += 1;
        }
    }
    rank
}

fn profile_from_combo(u: &Universe, combo: &[usize]) -> Profile {
    let n = u.n();
    let mut orders = Vec::with_capacity(n);
    orders.push(PreferenceOrder::identity(n));
    for &c in combo {
        orders.push(PreferenceOrder::new(u.assignment(c).houses().to_vec()).expect("permutation"));
    }
    Profile::new(orders).expect("square profile")
}

/// Canonical profile at position `index` of the enumeration order.
pub fn canonical_profile(n: usize, index: u128) -> Result<Profile> {
    let u = check_n(n)?;
    let total = canonical_count(n)?;
    if index >= total {
        return Err(Error::IndexOutOfRange { index, total });
    }
    Ok(profile_from_combo(u, &unrank_multiset(index, u.size(), n - 1)))
}

/// Position of a canonical profile in the enumeration order.
pub fn canonical_index(profile: &Profile) -> Result<u128> {
    let n = profile.n();
    let u = check_n(n)?;
    if !profile.is_canonical() {
        return Err(Error::NotCanonical);
    }
    let combo: Vec<usize> = profile.orders()[1..]
        .iter()
        .map(|o| u.index_of(&crate::assignment::Assignment::new(o.ranking().to_vec()).unwrap()))
        .collect();
    Ok(rank_multiset(&combo, u.size()))
}

/// Resumable walk over canonical profiles in enumeration order.
#[derive(Clone, Debug)]
pub struct CanonicalCursor {
    n: usize,
    kinds: usize,
    combo: Vec<usize>,
    position: u128,
    end: u128,
}

impl CanonicalCursor {
    pub fn new(n: usize) -> Result<Self> {
        Self::range(n, 0..canonical_count(n)?)
    }

    pub fn range(n: usize, range: Range<u128>) -> Result<Self> {
        let u = check_n(n)?;
        let end = range.end.min(canonical_count(n)?);
        let start = range.start.min(end);
        Ok(CanonicalCursor { n, kinds: u.size(), combo: unrank_multiset(start, u.size(), n - 1), position: start, end })
    }

    /// Index of the next profile to be produced.
    pub fn position(&self) -> u128 {
        self.position
    }

    pub fn end(&self) -> u128 {
        self.end
    }

    fn advance(&mut self) {
        if let Some(i) = self.combo.iter().rposition(|&c| c + 1 < self.kinds) {
            let v = self.combo[i] + 1;
            self.combo[i..].iter_mut().for_each(|c| *c = v);
        }
    }
}

impl Iterator for CanonicalCursor {
    type Item = Profile;

    fn next(&mut self) -> Option<Profile> {
        if self.position >= self.end {
            return None;
        }
        let p = profile_from_combo(Universe::get(self.n).unwrap(), &self.combo);
        self.position += 1;
        self.advance();
        Some(p)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let left = usize::try_from(self.end - self.position).unwrap_or(usize::MAX);
        (left, Some(left))
    }
}

/// Canonical profiles with indices in `range`.
pub fn enumerate_canonical(n: usize, range: Range<u128>) -> Result<CanonicalCursor> {
    CanonicalCursor::range(n, range)
}

fn stream(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

/// Profile number `index` of the impartial-culture stream for `seed`.
pub fn impartial_profile(n: usize, seed: u64, index: u64) -> Profile {
    let mut rng = stream(seed, index);
    let orders = (0..n)
        .map(|_| {
            let mut r: Vec<usize> = (0..n).collect();
            r.shuffle(&mut rng);
            PreferenceOrder::from_indices(&r).unwrap()
        })
        .collect();
    Profile::new(orders).expect("square profile")
}

/// `count` profiles whose rankings are independent and uniform.
pub fn sample_impartial(n: usize, seed: u64, count: u64) -> impl Iterator<Item = Profile> {
    (0..count).map(move |i| impartial_profile(n, seed, i))
}

/// Profile number `index` of the uniform canonical-profile stream.
pub fn sampled_canonical_profile(n: usize, seed: u64, index: u64) -> Result<Profile> {
    let total = canonical_count(n)?;
    let pick = stream(seed, index).gen_range(0..total);
    canonical_profile(n, pick)
}

/// `count` canonical profiles drawn uniformly with replacement.
pub fn sample_canonical(n: usize, seed: u64, count: u64) -> Result<impl Iterator<Item = Profile>> {
    canonical_count(n)?;
    Ok((0..count).map(move |i| sampled_canonical_profile(n, seed, i).unwrap()))
}

/// Everything recorded about one profile.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProfileStats {
    /// Uncovered-set sizes ordered as [`CoveringVariant::ALL`].
    pub uc: [usize; 3],
    pub po: usize,
    pub pp: usize,
    pub tc: usize,
    pub bc: usize,
    /// Which of the four facts fail.
    pub fact_violations: [bool; 4],
    pub rank_maximal_in_uc: bool,
}

/// Computes [`ProfileStats`] by building the full majority graph.
pub fn profile_stats(profile: &Profile) -> Result<ProfileStats> {
    let n = profile.n();
    let u = Universe::get(n)?;
    let mat = MajorityMatrix::build_with_limit(profile, crate::assignment::MAX_BRUTE)?;
    let uc = uncovered_all(&mat);
    let (po, pp) = pareto_sets_in(profile, u);
    let (tc, bc) = cycles(&mat);
    let rm = rank_maximal_in(mat.signatures(), n);
    Ok(ProfileStats {
        uc: [uc[0].len(), uc[1].len(), uc[2].len()],
        po: po.len(),
        pp: pp.len(),
        tc: tc.len(),
        bc: bc.len(),
        fact_violations: fact_violations(&mat, &tc, &bc, &po, &pp),
        rank_maximal_in_uc: rm.is_subset(&uc[0]),
    })
}

fn fact_violations(mat: &MajorityMatrix, tc: &BitSet, bc: &BitSet, po: &BitSet, pp: &BitSet) -> [bool; 4] {
    let (big_tc, big_bc) = (tc.len() > 2, bc.len() > 2);
    let first = big_tc != pp.complement().is_subset(tc);
    let second = big_bc != po.complement().is_subset(bc);
    let third = (big_tc && big_bc) != tc.is_full();
    let fourth = if !big_tc && !big_bc {
        let mut outside = tc.clone();
        outside.union_with(bc);
        let outside = outside.complement();
        let (comp, _) = strongly_connected_components(mat.weak_relation());
        let mut it = outside.iter();
        match it.next() {
            Some(first) => it.any(|i| comp[i] != comp[first]),
            None => false,
        }
    } else {
        false
    };
    [first, second, third, fourth]
}

/// Tallies over a stream of profiles; merged by summation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Census {
    n: usize,
    profiles: u64,
    uc: [Vec<u64>; 3],
    po: Vec<u64>,
    /// Per variant, profiles by `ceil(100 * |UC| / |PO|)`.
    ratio: [Vec<u64>; 3],
    tc: BTreeMap<usize, u64>,
    fact_violations: [u64; 4],
    first_violation: Option<Profile>,
    rank_maximal_outside_uc: u64,
}

impl Census {
    pub fn new(n: usize) -> Self {
        let size = factorial_u64(n).expect("n fits") as usize;
        Census {
            n,
            profiles: 0,
            uc: [vec![0; size + 1], vec![0; size + 1], vec![0; size + 1]],
            po: vec![0; size + 1],
            ratio: [vec![0; 101], vec![0; 101], vec![0; 101]],
            tc: BTreeMap::new(),
            fact_violations: [0; 4],
            first_violation: None,
            rank_maximal_outside_uc: 0,
        }
    }

    pub fn add(&mut self, profile: &Profile) -> Result<()> {
        if profile.n() != self.n {
            return Err(Error::DimensionMismatch { expected: self.n, found: profile.n() });
        }
        let s = profile_stats(profile)?;
        self.record(&s, profile);
        Ok(())
    }

    fn record(&mut self, s: &ProfileStats, profile: &Profile) {
        self.profiles += 1;
        for v in 0..3 {
            self.uc[v][s.uc[v]] += 1;
            self.ratio[v][(100 * s.uc[v]).div_ceil(s.po)] += 1;
        }
        self.po[s.po] += 1;
        *self.tc.entry(s.tc).or_default() += 1;
        for (k, &bad) in s.fact_violations.iter().enumerate() {
            self.fact_violations[k] += bad as u64;
        }
        if s.fact_violations.iter().any(|&b| b) && self.first_violation.is_none() {
            self.first_violation = Some(profile.clone());
        }
        self.rank_maximal_outside_uc += !s.rank_maximal_in_uc as u64;
    }

    pub fn merge(mut self, other: Census) -> Census {
        self.profiles += other.profiles;
        for v in 0..3 {
            self.uc[v].iter_mut().zip(&other.uc[v]).for_each(|(a, b)| *a += b);
            self.ratio[v].iter_mut().zip(&other.ratio[v]).for_each(|(a, b)| *a += b);
        }
        self.po.iter_mut().zip(&other.po).for_each(|(a, b)| *a += b);
        for (k, c) in other.tc {
            *self.tc.entry(k).or_default() += c;
        }
        for k in 0..4 {
            self.fact_violations[k] += other.fact_violations[k];
        }
        if self.first_violation.is_none() {
            self.first_violation = other.first_violation;
        }
        self.rank_maximal_outside_uc += other.rank_maximal_outside_uc;
        self
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn profiles(&self) -> u64 {
        self.profiles
    }

    /// Size distribution of one curve, cardinalities `1..=n!`.
    pub fn histogram(&self, curve: Curve) -> Vec<HistogramRow> {
        let counts = match curve {
            Curve::Uncovered(v) => &self.uc[slot(v)],
            Curve::Pareto => &self.po,
        };
        counts
            .iter()
            .enumerate()
            .skip(1)
            .map(|(cardinality, &count)| HistogramRow {
                cardinality,
                count,
                percentage: Percentage::of(count, self.profiles),
            })
            .collect()
    }

    /// Share of profiles with `|UC| / |PO| <= x / 100`, for `x = 0..=100`.
    pub fn ratio_cdf(&self, variant: CoveringVariant) -> Vec<CdfRow> {
        let mut acc = 0;
        self.ratio[slot(variant)]
            .iter()
            .enumerate()
            .map(|(x, &c)| {
                acc += c;
                CdfRow { ratio_percent: x as u32, count: acc, cumulative_percentage: Percentage::of(acc, self.profiles) }
            })
            .collect()
    }

    /// Observed top-cycle sizes with their frequencies.
    pub fn tc_sizes(&self) -> &BTreeMap<usize, u64> {
        &self.tc
    }

    pub fn fact_report(&self) -> FactReport {
        FactReport {
            profiles: self.profiles,
            violations: self.fact_violations,
            example: self.first_violation.clone(),
        }
    }

    /// Profiles with a rank-maximal assignment outside the McKelvey
    /// uncovered set.
    pub fn rank_maximal_outside_uc(&self) -> u64 {
        self.rank_maximal_outside_uc
    }
}

fn slot(v: CoveringVariant) -> usize {
    CoveringVariant::ALL.iter().position(|&w| w == v).unwrap()
}

/// One plotted series.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Curve {
    Uncovered(CoveringVariant),
    Pareto,
}

impl Curve {
    pub const ALL: [Curve; 4] = [
        Curve::Uncovered(CoveringVariant::McKelvey),
        Curve::Uncovered(CoveringVariant::Bordes),
        Curve::Uncovered(CoveringVariant::Gillies),
        Curve::Pareto,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Curve::Uncovered(v) => v.name(),
            Curve::Pareto => "pareto",
        }
    }
}

/// A percentage held exactly in units of `1e-7` percent, rounded half up.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Percentage(pub u64);

impl Percentage {
    pub fn of(count: u64, total: u64) -> Self {
        if total == 0 {
            return Percentage(0);
        }
        let (c, t) = (count as u128, total as u128);
        Percentage(((2 * c * 1_000_000_000 + t) / (2 * t)) as u64)
    }

    /// Parses a decimal such as `39.8530175`.
    pub fn parse(text: &str) -> Option<Self> {
        let (int, frac) = text.trim().split_once('.').unwrap_or((text.trim(), ""));
        if frac.len() > 7 {
            return None;
        }
        let int: u64 = int.parse().ok()?;
        let frac: u64 = if frac.is_empty() { 0 } else { format!("{frac:0<7}").parse().ok()? };
        Some(Percentage(int * 10_000_000 + frac))
    }

    pub fn as_f64(self) -> f64 {
        self.0 as f64 / 1e7
    }
}

impl fmt::Display for Percentage {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}.{:07}", self.0 / 10_000_000, self.0 % 10_000_000)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HistogramRow {
    pub cardinality: usize,
    pub count: u64,
    pub percentage: Percentage,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CdfRow {
    pub ratio_percent: u32,
    pub count: u64,
    pub cumulative_percentage: Percentage,
}

/// Outcome of checking the four facts on every profile of a census.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FactReport {
    pub profiles: u64,
    /// Violations of items (1) to (4).
    pub violations: [u64; 4],
    pub example: Option<Profile>,
}

impl FactReport {
    pub fn holds(&self) -> bool {
        self.violations.iter().all(|&v| v == 0)
    }
}

pub fn write_histogram_csv<W: Write>(out: W, rows: &[HistogramRow]) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["cardinality", "count", "percentage"])?;
    for r in rows {
        w.write_record([r.cardinality.to_string(), r.count.to_string(), r.percentage.to_string()])?;
    }
    w.flush()?;
    Ok(())
}

pub fn write_cdf_csv<W: Write>(out: W, rows: &[CdfRow]) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["ratio_percent", "cumulative_percentage"])?;
    for r in rows {
        w.write_record([r.ratio_percent.to_string(), r.cumulative_percentage.to_string()])?;
    }
    w.flush()?;
    Ok(())
}

const CHUNK: u64 = 4096;

/// Census over profiles `make(0), ..., make(count - 1)`, computed in
/// parallel chunks.
pub fn census_indexed<F>(n: usize, count: u64, make: F) -> Result<Census>
where
    F: Fn(u64) -> Result<Profile> + Sync,
{
    let chunks = count.div_ceil(CHUNK);
    (0..chunks)
        .into_par_iter()
        .map(|c| {
            let mut census = Census::new(n);
            for i in c * CHUNK..((c + 1) * CHUNK).min(count) {
                census.add(&make(i)?)?;
            }
            Ok(census)
        })
        .try_reduce(|| Census::new(n), |a, b| Ok(a.merge(b)))
}

/// Census over the canonical profiles with indices in `range`, in parallel.
pub fn census_canonical(n: usize, range: Range<u128>) -> Result<Census> {
    let cursor = CanonicalCursor::range(n, range)?;
    let (start, end) = (cursor.position(), cursor.end());
    let chunk = CHUNK as u128;
    let chunks = (end - start).div_ceil(chunk);
    (0..chunks as u64)
        .into_par_iter()
        .map(|c| {
            let lo = start + c as u128 * chunk;
            let mut census = Census::new(n);
            for p in CanonicalCursor::range(n, lo..(lo + chunk).min(end))? {
                census.add(&p)?;
            }
            Ok(census)
        })
        .try_reduce(|| Census::new(n), |a, b| Ok(a.merge(b)))
}

/// Census over a plain stream, sequentially.
pub fn census_of(n: usize, profiles: impl IntoIterator<Item = Profile>) -> Result<Census> {
    let mut census = Census::new(n);
    for p in profiles {
        census.add(&p)?;
    }
    Ok(census)
}

/// Uncovered-set and Pareto-set size distributions of a stream.
pub fn uc_size_census(n: usize, profiles: impl IntoIterator<Item = Profile>) -> Result<Vec<(Curve, Vec<HistogramRow>)>> {
    let census = census_of(n, profiles)?;
    Ok(Curve::ALL.iter().map(|&c| (c, census.histogram(c))).collect())
}

/// Ratio CDF of every uncovered set against PO over a stream.
pub fn uc_po_ratio_cdf(
    n: usize,
    profiles: impl IntoIterator<Item = Profile>,
) -> Result<Vec<(CoveringVariant, Vec<CdfRow>)>> {
    let census = census_of(n, profiles)?;
    Ok(CoveringVariant::ALL.iter().map(|&v| (v, census.ratio_cdf(v))).collect())
}

/// Checks the four facts on every profile of the stream; `n` must be 5.
pub fn verify_fact_n5(profiles: impl IntoIterator<Item = Profile>) -> Result<FactReport> {
    let mut census = Census::new(5);
    for p in profiles {
        if p.n() != 5 {
            return Err(Error::DimensionMismatch { expected: 5, found: p.n() });
        }
        census.add(&p)?;
    }
    Ok(census.fact_report())
}

/// Top-cycle sizes over all canonical profiles for `n`, with the profiles
/// attaining each size (at most `witnesses` of them).
pub fn tc_size_census(n: usize, witnesses: usize) -> Result<BTreeMap<usize, (u64, Vec<Profile>)>> {
    let mut out: BTreeMap<usize, (u64, Vec<Profile>)> = BTreeMap::new();
    for p in CanonicalCursor::new(n)? {
        let mat = MajorityMatrix::build_with_limit(&p, crate::assignment::MAX_BRUTE)?;
        let size = cycles(&mat).0.len();
        let e = out.entry(size).or_default();
        e.0 += 1;
        if e.1.len() < witnesses {
            e.1.push(p);
        }
    }
    Ok(out)
}
