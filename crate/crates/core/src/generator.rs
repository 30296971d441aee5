//! Atomic generators of the extended algebra and PBW words.

use std::cmp::Ordering;
use std::fmt;

/// A single generator: either `e_{ij}[r]` or the translation element `tau`.
///
/// The central element `K` never appears inside a word; its degree is
/// tracked separately on each term (see [`Term`]).
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum Gen {
    /// Basis element `e_{ij} t^r` of the loop algebra, `1 <= i,j <= n`.
    E { i: u8, j: u8, r: i32 },
    /// The element `tau` with `[tau, e_{ij}[r]] = -r e_{ij}[r-1]`.
    Tau,
}

impl Gen {
    pub fn e(i: u8, j: u8, r: i32) -> Gen {
        Gen::E { i, j, r }
    }

    /// True for `e_{ij}[r]` with `r >= 0` (annihilates the vacuum when
    /// it ends up rightmost).
    pub fn is_nonneg_mode(&self) -> bool {
        matches!(self, Gen::E { r, .. } if *r >= 0)
    }
}

/// Canonical generator order: E-generators sorted by mode ascending
/// (most negative first), then row, then column; `tau` strictly rightmost.
impl Ord for Gen {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Gen::Tau, Gen::Tau) => Ordering::Equal,
            (Gen::Tau, Gen::E { .. }) => Ordering::Greater,
            (Gen::E { .. }, Gen::Tau) => Ordering::Less,
            (Gen::E { i, j, r }, Gen::E { i: i2, j: j2, r: r2 }) => {
                (r, i, j).cmp(&(r2, i2, j2))
            }
        }
    }
}

impl PartialOrd for Gen {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Gen {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Gen::E { i, j, r } => write!(f, "e_{{{}{}}}[{}]", i, j, r),
            Gen::Tau => write!(f, "tau"),
        }
    }
}

/// A PBW term: an ordered word of generators together with the power of
/// the central element `K` it carries.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Term {
    pub kdeg: u32,
    pub word: Vec<Gen>,
}

impl Term {
    pub fn unit() -> Term {
        Term { kdeg: 0, word: Vec::new() }
    }

    pub fn single(g: Gen) -> Term {
        Term { kdeg: 0, word: vec![g] }
    }

    /// A word is in normal form when it is sorted in the canonical
    /// generator order (so all `tau` factors are rightmost).
    pub fn is_normal(&self) -> bool {
        self.word.windows(2).all(|w| w[0] <= w[1])
    }

    pub fn tau_degree(&self) -> usize {
        self.word.iter().filter(|g| **g == Gen::Tau).count()
    }
}

/// Term order used for maps and for deterministic serialization:
/// K-degree, then word length, then lexicographic generator order.
impl Ord for Term {
    fn cmp(&self, other: &Self) -> Ordering {
        self.kdeg
            .cmp(&other.kdeg)
            .then_with(|| self.word.len().cmp(&other.word.len()))
            .then_with(|| self.word.cmp(&other.word))
    }
}

impl PartialOrd for Term {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn order_puts_tau_last_and_sorts_by_mode() {
        let a = Gen::e(2, 1, -2);
        let b = Gen::e(1, 2, -1);
        let c = Gen::e(2, 1, -1);
        assert!(a < b);
        assert!(b < c);
        assert!(c < Gen::Tau);
    }

    #[test]
    fn term_order_is_graded() {
        let short = Term { kdeg: 0, word: vec![Gen::e(3, 3, -1)] };
        let long = Term { kdeg: 0, word: vec![Gen::e(1, 1, -1), Gen::e(1, 1, -1)] };
        assert!(short < long);
        let k = Term { kdeg: 1, word: vec![] };
        assert!(long < k);
    }
}
