//! McKelvey, Bordes and Gillies covering and the uncovered sets.
//!
//! Two computations are provided: the quantified definition
//! ([`uncovered_set`]) and the characterization by majority paths of length
//! at most two ([`uncovered_two_step`]), which works on whole bit rows and
//! is the one used by the experiment pipelines.

use std::fmt;
use std::str::FromStr;

use crate::bits::BitSet;
use crate::majority::MajorityMatrix;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CoveringVariant {
    McKelvey,
    Bordes,
    Gillies,
}

impl CoveringVariant {
    pub const ALL: [CoveringVariant; 3] = [CoveringVariant::McKelvey, CoveringVariant::Bordes, CoveringVariant::Gillies];

    pub fn name(self) -> &'static str {
        match self {
            CoveringVariant::McKelvey => "mckelvey",
            CoveringVariant::Bordes => "bordes",
            CoveringVariant::Gillies => "gillies",
        }
    }
}

impl fmt::Display for CoveringVariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for CoveringVariant {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "mckelvey" => Ok(CoveringVariant::McKelvey),
            "bordes" => Ok(CoveringVariant::Bordes),
            "gillies" => Ok(CoveringVariant::Gillies),
            other => Err(format!("unknown covering variant `{other}`")),
        }
    }
}

/// Whether `mu` covers `lambda` (indices into the matrix universe).
///
/// Bordes: `mu ≻ lambda` and every `eta` with `lambda ≻ eta` has `mu ≻ eta`.
/// Gillies: `mu ≻ lambda` and every `eta` with `eta ≻ mu` has `eta ≻ lambda`.
/// McKelvey: both.
pub fn covers(mat: &MajorityMatrix, variant: CoveringVariant, mu: usize, lambda: usize) -> bool {
    if !mat.strict(mu, lambda) {
        return false;
    }
    let bordes = || (0..mat.size()).all(|eta| !mat.strict(lambda, eta) || mat.strict(mu, eta));
    let gillies = || (0..mat.size()).all(|eta| !mat.strict(eta, mu) || mat.strict(eta, lambda));
    match variant {
        CoveringVariant::Bordes => bordes(),
        CoveringVariant::Gillies => gillies(),
        CoveringVariant::McKelvey => bordes() && gillies(),
    }
}

/// Assignments not covered by any assignment, by the definition.
pub fn uncovered_set(mat: &MajorityMatrix, variant: CoveringVariant) -> BitSet {
    let size = mat.size();
    BitSet::from_indices(
        size,
        (0..size).filter(|&mu| (0..size).all(|lambda| !covers(mat, variant, lambda, mu))),
    )
}

#[inline]
fn meets_without(a: &[u64], b: &[u64]) -> bool {
    a.iter().zip(b).any(|(x, y)| x & !y != 0)
}

/// For `mu` and each `lambda ≻ mu`: does a Bordes path (`mu ≻ eta ≽ lambda`)
/// and/or a Gillies path (`mu ≽ eta ≻ lambda`) exist? Returns which variants
/// leave `mu` uncovered, as `[mckelvey, bordes, gillies]`.
fn two_step_row(mat: &MajorityMatrix, mu: usize, want: [bool; 3]) -> [bool; 3] {
    let strict = mat.strict_relation();
    let weak = mat.weak_relation();
    let (s_mu, w_mu) = (strict.row(mu), weak.row(mu));
    let [mut mck, mut bor, mut gil] = want;
    let tail = weak.tail_mask();
    let last = w_mu.len() - 1;
    for (wi, &w) in w_mu.iter().enumerate() {
        // lambda with lambda ≻ mu: outside the weak row of mu
        let mut beaten_by = !w & if wi == last { tail } else { !0 };
        while beaten_by != 0 {
            let lambda = wi * 64 + beaten_by.trailing_zeros() as usize;
            beaten_by &= beaten_by - 1;
            // weak is complete: eta ≽ lambda iff not lambda ≻ eta
            let b = (bor || mck) && meets_without(s_mu, strict.row(lambda));
            let g = (gil || mck) && meets_without(w_mu, weak.row(lambda));
            bor &= b;
            gil &= g;
            mck &= b || g;
            if !(mck || bor || gil) {
                return [false; 3];
            }
        }
    }
    [mck, bor, gil]
}

/// Assignments reaching every other assignment by a majority path of
/// length at most two whose strict segments follow the variant: first
/// (Bordes), second (Gillies), either (McKelvey).
pub fn uncovered_two_step(mat: &MajorityMatrix, variant: CoveringVariant) -> BitSet {
    let want = [
        variant == CoveringVariant::McKelvey,
        variant == CoveringVariant::Bordes,
        variant == CoveringVariant::Gillies,
    ];
    let slot = CoveringVariant::ALL.iter().position(|&v| v == variant).unwrap();
    let size = mat.size();
    BitSet::from_indices(size, (0..size).filter(|&mu| two_step_row(mat, mu, want)[slot]))
}

/// All three uncovered sets in one sweep, ordered as [`CoveringVariant::ALL`].
pub fn uncovered_all(mat: &MajorityMatrix) -> [BitSet; 3] {
    let size = mat.size();
    let mut out = [BitSet::new(size), BitSet::new(size), BitSet::new(size)];
    for mu in 0..size {
        let r = two_step_row(mat, mu, [true; 3]);
        for k in 0..3 {
            if r[k] {
                out[k].insert(mu);
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::assignment::Universe;
    use crate::profile::Profile;

    #[test]
    fn covering_example() {
        let p = Profile::from_rows(&["a c b", "a b c", "b a c"]).unwrap();
        let m = MajorityMatrix::build(&p).unwrap();
        let u = Universe::get(3).unwrap();
        let cab = u.index_of(&p.parse_assignment("c,a,b").unwrap());
        let abc = u.index_of(&p.parse_assignment("a,b,c").unwrap());
        for v in CoveringVariant::ALL {
            assert!(covers(&m, v, cab, abc), "{v}");
            assert!(!uncovered_set(&m, v).contains(abc));
            assert_eq!(uncovered_set(&m, v), uncovered_two_step(&m, v));
        }
    }

    #[test]
    fn unanimous_three_everything_uncovered() {
        let p = Profile::from_rows(&["a b c"; 3]).unwrap();
        let m = MajorityMatrix::build(&p).unwrap();
        for v in CoveringVariant::ALL {
            assert_eq!(uncovered_set(&m, v).len(), 6);
            assert_eq!(uncovered_two_step(&m, v).len(), 6);
        }
    }

    #[test]
    fn strongly_popular_is_the_uncovered_set() {
        let p = Profile::from_rows(&["a b c d", "b c d a", "c d a b", "d a b c"]).unwrap();
        let m = MajorityMatrix::build(&p).unwrap();
        let winner = m.strongly_popular();
        assert_eq!(winner.len(), 1);
        let w = winner.iter().next().unwrap();
        for v in CoveringVariant::ALL {
            assert_eq!(uncovered_set(&m, v), winner);
            assert_eq!(uncovered_two_step(&m, v), winner);
            assert!((0..m.size()).all(|other| !covers(&m, v, other, w)));
        }
        assert_eq!(uncovered_all(&m), [winner.clone(), winner.clone(), winner]);
    }

    #[test]
    fn variant_names_parse() {
        for v in CoveringVariant::ALL {
            assert_eq!(v.name().parse::<CoveringVariant>().unwrap(), v);
        }
        assert!("copeland".parse::<CoveringVariant>().is_err());
    }
}
