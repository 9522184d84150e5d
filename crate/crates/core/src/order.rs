//! Alphabet-size bookkeeping and small index helpers shared by the parity
//! modules.
//!
//! Almost every parity law depends on the alphabet size `n` only through
//! `n mod 4`. Values derived from an actual array know `n` exactly; values
//! produced by enumerating abstract parity vectors only know the residue.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A single parity bit, always 0 or 1.
pub type Bit = u8;

/// The residue of the alphabet size modulo 4.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct OrderClass(u8);

impl OrderClass {
    pub fn of(n: usize) -> Self {
        OrderClass((n % 4) as u8)
    }

    pub fn from_residue(r: usize) -> Result<Self> {
        if r > 3 {
            return Err(Error::Precondition(format!("n mod 4 must be in 0..=3, got {r}")));
        }
        Ok(OrderClass(r as u8))
    }

    pub fn residue(self) -> u8 {
        self.0
    }

    /// `C(n,2) mod 2`: 0 for n = 0,1 and 1 for n = 2,3 (mod 4).
    pub fn binom2_parity(self) -> Bit {
        (self.0 >> 1) & 1
    }

    pub fn is_odd(self) -> bool {
        self.0 & 1 == 1
    }
}

/// What is known about the alphabet size of a parity vector.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Order {
    Exact(usize),
    Class(OrderClass),
}

impl Order {
    pub fn class(self) -> OrderClass {
        match self {
            Order::Exact(n) => OrderClass::of(n),
            Order::Class(c) => c,
        }
    }

    pub fn exact(self) -> Option<usize> {
        match self {
            Order::Exact(n) => Some(n),
            Order::Class(_) => None,
        }
    }

    pub fn binom2_parity(self) -> Bit {
        self.class().binom2_parity()
    }

    pub fn is_odd(self) -> bool {
        self.class().is_odd()
    }

    /// True when `k = n + 1` with `n` known, i.e. the projective-plane case.
    pub fn is_complete(self, k: usize) -> bool {
        self.exact() == Some(k.wrapping_sub(1))
    }
}

pub fn binomial(n: usize, r: usize) -> usize {
    if r > n {
        return 0;
    }
    let r = r.min(n - r);
    (0..r).fold(1usize, |acc, i| acc * (n - i) / (i + 1))
}

/// Number of unordered pairs on `k` points.
pub fn pair_count(k: usize) -> usize {
    k * k.saturating_sub(1) / 2
}

/// Rank of the pair `(i, j)`, `i < j < k`, in lexicographic order.
#[inline]
pub fn pair_rank(k: usize, i: usize, j: usize) -> usize {
    debug_assert!(i < j && j < k);
    i * (2 * k - i - 1) / 2 + (j - i - 1)
}

/// All pairs `(i, j)` with `i < j < k` in lexicographic order.
pub fn pairs(k: usize) -> impl Iterator<Item = (usize, usize)> {
    (0..k).flat_map(move |i| ((i + 1)..k).map(move |j| (i, j)))
}

/// All triples `i < j < l < k` in lexicographic order.
pub fn triples(k: usize) -> impl Iterator<Item = (usize, usize, usize)> {
    (0..k).flat_map(move |i| ((i + 1)..k).flat_map(move |j| ((j + 1)..k).map(move |l| (i, j, l))))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pair_rank_is_lexicographic() {
        for k in 2..12 {
            for (r, (i, j)) in pairs(k).enumerate() {
                assert_eq!(pair_rank(k, i, j), r);
            }
        }
    }

    #[test]
    fn binom2_parity_matches_direct() {
        for n in 0..40 {
            assert_eq!(OrderClass::of(n).binom2_parity() as usize, binomial(n, 2) % 2);
        }
    }

    #[test]
    fn binomial_small_values() {
        assert_eq!(binomial(7, 3), 35);
        assert_eq!(binomial(8, 3), 56);
        assert_eq!(binomial(3, 5), 0);
    }
}
