//! Pairwise majority comparison of assignments and the dense majority
//! matrix over the whole assignment universe.

use rayon::prelude::*;

use crate::assignment::{Assignment, Universe, DEFAULT_BRUTE_LIMIT, MAX_BRUTE};
use crate::bits::{BitMatrix, BitSet};
use crate::error::{Error, Result};
use crate::profile::Profile;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Verdict {
    FirstWins,
    SecondWins,
    Tie,
}

impl Verdict {
    pub fn from_margin(margin: i32) -> Self {
        match margin.signum() {
            1 => Verdict::FirstWins,
            -1 => Verdict::SecondWins,
            _ => Verdict::Tie,
        }
    }

    pub fn flip(self) -> Self {
        match self {
            Verdict::FirstWins => Verdict::SecondWins,
            Verdict::SecondWins => Verdict::FirstWins,
            Verdict::Tie => Verdict::Tie,
        }
    }
}

/// Result of comparing `mu` against `lambda`: the margin is the number of
/// agents strictly preferring `mu` minus the number strictly preferring
/// `lambda`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct MajorityOutcome {
    pub margin: i32,
    pub verdict: Verdict,
}

impl MajorityOutcome {
    pub fn from_margin(margin: i32) -> Self {
        MajorityOutcome { margin, verdict: Verdict::from_margin(margin) }
    }
}

pub fn compare(profile: &Profile, mu: &Assignment, lambda: &Assignment) -> Result<MajorityOutcome> {
    mu.check_for(profile)?;
    lambda.check_for(profile)?;
    let margin = profile
        .agents()
        .map(|x| {
            let (p, q) = (mu.house(x), lambda.house(x));
            if p == q {
                0
            } else if profile.prefers(x, p, q) {
                1
            } else {
                -1
            }
        })
        .sum();
    Ok(MajorityOutcome::from_margin(margin))
}

const HIGH: u64 = 0x8080_8080_8080_8080;

/// Number of byte lanes with `a >= b`; lanes must hold values below 128.
#[inline(always)]
fn lanes_ge(a: u64, b: u64) -> u32 {
    (((a | HIGH) - b) & HIGH).count_ones()
}

/// Margin of the assignment with rank signature `a` over the one with
/// signature `b` (lower rank is better).
#[inline(always)]
pub fn signature_margin(a: u64, b: u64) -> i32 {
    lanes_ge(b, a) as i32 - lanes_ge(a, b) as i32
}

/// Strict and weak majority relations over `0..n!`, with the rank
/// signatures they were computed from. `tie = weak ∩ weakᵀ` and
/// `strict = weak \ weakᵀ`.
#[derive(Clone)]
pub struct MajorityMatrix {
    n: usize,
    strict: BitMatrix,
    weak: BitMatrix,
    signatures: Vec<u64>,
}

impl MajorityMatrix {
    pub fn build(profile: &Profile) -> Result<Self> {
        Self::build_with_limit(profile, DEFAULT_BRUTE_LIMIT)
    }

    pub fn build_with_limit(profile: &Profile, limit: usize) -> Result<Self> {
        let n = profile.n();
        let limit = limit.min(MAX_BRUTE);
        if n > limit {
            return Err(Error::UniverseTooLarge { n, limit });
        }
        let signatures = Universe::get(n)?.signatures(profile);
        Ok(Self::from_signatures(n, signatures))
    }

    pub(crate) fn from_signatures(n: usize, signatures: Vec<u64>) -> Self {
        let size = signatures.len();
        let mut strict = BitMatrix::new(size);
        let mut weak = BitMatrix::new(size);
        let stride = strict.stride();
        let fill = |(i, (srow, wrow)): (usize, (&mut [u64], &mut [u64]))| {
            let si = signatures[i];
            for (w, chunk) in signatures.chunks(64).enumerate() {
                let (mut s, mut k) = (0u64, 0u64);
                for (b, &sj) in chunk.iter().enumerate() {
                    let m = signature_margin(si, sj);
                    s |= ((m > 0) as u64) << b;
                    k |= ((m >= 0) as u64) << b;
                }
                srow[w] = s;
                wrow[w] = k;
            }
        };
        let rows = strict.data_mut().chunks_mut(stride).zip(weak.data_mut().chunks_mut(stride));
        if size >= 2048 {
            rows.collect::<Vec<_>>().into_par_iter().enumerate().for_each(fill);
        } else {
            rows.enumerate().for_each(fill);
        }
        MajorityMatrix { n, strict, weak, signatures }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of assignments, `n!`.
    pub fn size(&self) -> usize {
        self.signatures.len()
    }

    #[inline]
    pub fn strict(&self, i: usize, j: usize) -> bool {
        self.strict.get(i, j)
    }

    #[inline]
    pub fn weak(&self, i: usize, j: usize) -> bool {
        self.weak.get(i, j)
    }

    #[inline]
    pub fn tie(&self, i: usize, j: usize) -> bool {
        self.weak.get(i, j) && !self.strict.get(i, j)
    }

    #[inline]
    pub fn margin(&self, i: usize, j: usize) -> i32 {
        signature_margin(self.signatures[i], self.signatures[j])
    }

    pub fn outcome(&self, i: usize, j: usize) -> MajorityOutcome {
        MajorityOutcome::from_margin(self.margin(i, j))
    }

    pub fn strict_relation(&self) -> &BitMatrix {
        &self.strict
    }

    pub fn weak_relation(&self) -> &BitMatrix {
        &self.weak
    }

    pub fn signatures(&self) -> &[u64] {
        &self.signatures
    }

    /// Assignments that no other assignment strictly beats.
    pub fn popular(&self) -> BitSet {
        BitSet::from_indices(self.size(), (0..self.size()).filter(|&i| self.weak.row_count(i) == self.size()))
    }

    /// Assignments strictly beating every other assignment.
    pub fn strongly_popular(&self) -> BitSet {
        BitSet::from_indices(
            self.size(),
            (0..self.size()).filter(|&i| self.strict.row_count(i) + 1 == self.size()),
        )
    }

    /// Assignments weakly beating at least half of the universe, counting
    /// themselves.
    pub fn semi_popular(&self) -> BitSet {
        BitSet::from_indices(
            self.size(),
            (0..self.size()).filter(|&i| 2 * self.weak.row_count(i) >= self.size()),
        )
    }
}

/// `(signature of mu, all signatures)` for universe scans.
fn scan(profile: &Profile, mu: &Assignment) -> Result<(u64, Vec<u64>)> {
    mu.check_for(profile)?;
    let u = Universe::get(profile.n())?;
    let sigs = u.signatures(profile);
    Ok((sigs[u.index_of(mu)], sigs))
}

/// `mu` weakly majority-dominates every assignment.
pub fn is_popular(profile: &Profile, mu: &Assignment) -> Result<bool> {
    let (s, sigs) = scan(profile, mu)?;
    Ok(sigs.iter().all(|&t| signature_margin(s, t) >= 0))
}

/// `mu` strictly majority-dominates every other assignment.
pub fn is_strongly_popular(profile: &Profile, mu: &Assignment) -> Result<bool> {
    let (s, sigs) = scan(profile, mu)?;
    Ok(sigs.iter().filter(|&&t| t != s).all(|&t| signature_margin(s, t) > 0))
}

/// `mu` weakly dominates at least `n!/2` assignments (itself included).
pub fn is_semi_popular(profile: &Profile, mu: &Assignment) -> Result<bool> {
    let (s, sigs) = scan(profile, mu)?;
    let wins = sigs.iter().filter(|&&t| signature_margin(s, t) >= 0).count();
    Ok(2 * wins >= sigs.len())
}
