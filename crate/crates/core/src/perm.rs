//! Permutations of `0..n` and their parity.

use std::fmt;

use rand::seq::SliceRandom;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::order::Bit;

/// A bijection on `0..n`, stored as its image list.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    pub fn new(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &x in &images {
            if x >= n || seen[x] {
                return Err(Error::NotAPermutation(format!("{images:?}")));
            }
            seen[x] = true;
        }
        Ok(Permutation { images })
    }

    pub fn identity(n: usize) -> Self {
        Permutation { images: (0..n).collect() }
    }

    /// The transposition exchanging `a` and `b` on `0..n`.
    pub fn transposition(n: usize, a: usize, b: usize) -> Self {
        let mut images: Vec<usize> = (0..n).collect();
        images.swap(a, b);
        Permutation { images }
    }

    /// Builds a permutation from disjoint cycles.
    pub fn from_cycles(n: usize, cycles: &[&[usize]]) -> Result<Self> {
        let mut images: Vec<usize> = (0..n).collect();
        for cycle in cycles {
            for (idx, &x) in cycle.iter().enumerate() {
                if x >= n {
                    return Err(Error::NotAPermutation(format!("cycle element {x} >= {n}")));
                }
                images[x] = cycle[(idx + 1) % cycle.len()];
            }
        }
        Permutation::new(images)
    }

    pub fn random<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Self {
        let mut images: Vec<usize> = (0..n).collect();
        images.shuffle(rng);
        Permutation { images }
    }

    pub fn len(&self) -> usize {
        self.images.len()
    }

    pub fn is_empty(&self) -> bool {
        self.images.is_empty()
    }

    #[inline]
    pub fn apply(&self, x: usize) -> usize {
        self.images[x]
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        assert_eq!(self.len(), other.len(), "composing permutations of different degree");
        Permutation { images: other.images.iter().map(|&x| self.images[x]).collect() }
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.len()];
        for (x, &y) in self.images.iter().enumerate() {
            inv[y] = x;
        }
        Permutation { images: inv }
    }

    pub fn cycle_count(&self) -> usize {
        let mut seen = vec![false; self.len()];
        count_cycles(self.len(), |x| self.images[x], &mut seen)
    }

    /// 0 for even, 1 for odd: `(n - #cycles) mod 2`.
    pub fn parity(&self) -> Bit {
        ((self.len() - self.cycle_count()) & 1) as Bit
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Permutation{:?}", self.images)
    }
}

impl TryFrom<Vec<usize>> for Permutation {
    type Error = Error;

    fn try_from(images: Vec<usize>) -> Result<Self> {
        Permutation::new(images)
    }
}

impl From<Permutation> for Vec<usize> {
    fn from(p: Permutation) -> Self {
        p.images
    }
}

pub fn permutation_parity(p: &Permutation) -> Bit {
    p.parity()
}

/// Counts the cycles of the map `f` on `0..n`. `seen` must hold at least `n`
/// entries; it is cleared before use.
#[inline]
pub(crate) fn count_cycles(n: usize, f: impl Fn(usize) -> usize, seen: &mut [bool]) -> usize {
    let seen = &mut seen[..n];
    seen.fill(false);
    let mut cycles = 0;
    for start in 0..n {
        if seen[start] {
            continue;
        }
        cycles += 1;
        let mut x = start;
        while !seen[x] {
            seen[x] = true;
            x = f(x);
        }
    }
    cycles
}

/// Parity of the map `f`, assumed to be a bijection on `0..n`.
#[inline]
pub(crate) fn parity_of(n: usize, f: impl Fn(usize) -> usize, seen: &mut [bool]) -> Bit {
    ((n - count_cycles(n, f, seen)) & 1) as Bit
}
