//! Switching classes: the action of column permutations and (for odd `n`)
//! swaps on standardised σ-parities, orbit computation, and exhaustive
//! enumeration of all classes for small `k`.
//!
//! Each generator acts on the packed state as an affine map over GF(2), so
//! it is applied with one table lookup per byte of the state. The tables are
//! derived from the straightforward matrix implementation of the action.

use std::collections::HashSet;
use std::fmt;
use std::hash::{BuildHasherDefault, Hasher};

use crate::error::{Error, Result};
use crate::oa::OrthogonalArray;
use crate::order::{pair_count, pair_rank, pairs, Bit, Order, OrderClass};
use crate::parity::{sigma_from_tau, tau_from_standard, tau_parity, StandardSigma, TauVector};
use crate::perm::Permutation;

/// Largest `k` whose packed state fits in 64 bits.
pub const MAX_STATE_K: usize = 11;
/// Largest `k` accepted by [`enumerate_classes`].
pub const MAX_ENUMERATION_K: usize = 8;
/// Default memory budget for [`orbit`].
pub const DEFAULT_ORBIT_BUDGET: usize = 2 << 30;

/// A standardised σ-parity with the fixed `(0,1)` entry dropped: bit `r - 1`
/// holds the entry of the pair with lexicographic rank `r >= 1`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ParityState {
    k: usize,
    class: OrderClass,
    bits: u64,
}

impl ParityState {
    pub fn new(k: usize, class: OrderClass, bits: u64) -> Result<Self> {
        check_k(k)?;
        let width = state_width(k);
        if width < 64 && bits >> width != 0 {
            return Err(Error::Dimension(format!("state bits exceed the {width} bits available for k={k}")));
        }
        Ok(ParityState { k, class, bits })
    }

    pub fn zero(k: usize, class: OrderClass) -> Result<Self> {
        ParityState::new(k, class, 0)
    }

    pub fn from_standard(s: &StandardSigma) -> Result<Self> {
        check_k(s.k())?;
        let bits = s.bits()[1..].iter().enumerate().fold(0u64, |acc, (idx, &b)| acc | ((b as u64) << idx));
        Ok(ParityState { k: s.k(), class: s.order().class(), bits })
    }

    pub fn from_tau(t: &TauVector) -> Result<Self> {
        ParityState::from_standard(&sigma_from_tau(t)?)
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn class(&self) -> OrderClass {
        self.class
    }

    pub fn bits(&self) -> u64 {
        self.bits
    }

    /// Number of meaningful bits, `C(k,2) - 1`.
    pub fn width(&self) -> usize {
        state_width(self.k)
    }

    /// Entry `(i, j)`, `i < j`, of the standardised upper triangle.
    pub fn get(&self, i: usize, j: usize) -> Bit {
        match pair_rank(self.k, i, j) {
            0 => 0,
            r => ((self.bits >> (r - 1)) & 1) as Bit,
        }
    }

    pub fn to_standard(&self) -> StandardSigma {
        self.to_standard_with(Order::Class(self.class))
    }

    /// As [`to_standard`](Self::to_standard) but tagged with a more precise
    /// order, which must agree with the state's residue class.
    pub fn to_standard_with(&self, order: Order) -> StandardSigma {
        debug_assert_eq!(order.class(), self.class);
        let upper = pairs(self.k).map(|(i, j)| self.get(i, j)).collect();
        StandardSigma::new(self.k, order, upper).expect("packed state is standard")
    }

    pub fn tau(&self) -> TauVector {
        tau_from_standard(&self.to_standard())
    }
}

impl fmt::Debug for ParityState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ParityState(k={}, n={} mod 4, {:#x})", self.k, self.class.residue(), self.bits)
    }
}

fn check_k(k: usize) -> Result<()> {
    if k < 3 {
        return Err(Error::Precondition(format!("k must be at least 3, got {k}")));
    }
    if k > MAX_STATE_K {
        return Err(Error::StateTooWide { k });
    }
    Ok(())
}

fn state_width(k: usize) -> usize {
    pair_count(k) - 1
}

/// Relabels column `i` as `g(i)` and re-standardises.
pub fn act_permute(s: &ParityState, g: &Permutation) -> Result<ParityState> {
    if g.len() != s.k {
        return Err(Error::Dimension(format!("permutation acts on {} points, expected {}", g.len(), s.k)));
    }
    let full = s.to_standard().to_matrix().relabel(g.images());
    ParityState::from_standard(&full.standardise())
}

/// Flips every entry with exactly one endpoint in `subset` and
/// re-standardises. Only defined for odd `n`.
pub fn act_swap(s: &ParityState, subset: &[usize]) -> Result<ParityState> {
    if !s.class.is_odd() {
        return Err(Error::SwapUndefined);
    }
    let mut inside = vec![false; s.k];
    for &v in subset {
        if v >= s.k {
            return Err(Error::Dimension(format!("vertex {} out of range 1..={}", v + 1, s.k)));
        }
        inside[v] = true;
    }
    let mut full = s.to_standard().to_matrix();
    for i in 0..s.k {
        for j in 0..s.k {
            if inside[i] != inside[j] {
                full.set(i, j, full.get(i, j) ^ 1);
            }
        }
    }
    ParityState::from_standard(&full.standardise())
}

/// `x -> L x + c` over GF(2), evaluated a byte at a time.
#[derive(Clone)]
struct AffineMap {
    tables: Vec<[u64; 256]>,
    constant: u64,
}

impl AffineMap {
    fn from_action(width: usize, f: impl Fn(u64) -> u64) -> Self {
        let constant = f(0);
        let images: Vec<u64> = (0..width).map(|b| f(1 << b) ^ constant).collect();
        let tables = images
            .chunks(8)
            .map(|chunk| {
                let mut table = [0u64; 256];
                for (byte, slot) in table.iter_mut().enumerate() {
                    *slot = chunk
                        .iter()
                        .enumerate()
                        .filter(|(bit, _)| byte >> bit & 1 == 1)
                        .fold(0, |acc, (_, &img)| acc ^ img);
                }
                table
            })
            .collect();
        AffineMap { tables, constant }
    }

    #[inline]
    fn apply(&self, x: u64) -> u64 {
        let mut y = self.constant;
        for (idx, table) in self.tables.iter().enumerate() {
            y ^= table[((x >> (8 * idx)) & 0xff) as usize];
        }
        y
    }
}

/// The generators of the switching group for fixed `k` and `n mod 4`:
/// adjacent transpositions, plus singleton swaps when `n` is odd.
#[derive(Clone)]
pub struct Generators {
    k: usize,
    class: OrderClass,
    maps: Vec<AffineMap>,
}

impl Generators {
    pub fn new(k: usize, class: OrderClass) -> Result<Self> {
        check_k(k)?;
        let width = state_width(k);
        let state = |bits| ParityState { k, class, bits };
        let mut maps = Vec::new();
        for t in 0..k - 1 {
            let g = Permutation::transposition(k, t, t + 1);
            maps.push(AffineMap::from_action(width, |x| act_permute(&state(x), &g).expect("degree matches").bits));
        }
        if class.is_odd() {
            for t in 0..k {
                maps.push(AffineMap::from_action(width, |x| act_swap(&state(x), &[t]).expect("odd n").bits));
            }
        }
        Ok(Generators { k, class, maps })
    }

    pub fn len(&self) -> usize {
        self.maps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.maps.is_empty()
    }

    /// Image of `s` under generator `idx`.
    pub fn apply(&self, idx: usize, s: &ParityState) -> ParityState {
        debug_assert_eq!((s.k, s.class), (self.k, self.class));
        ParityState { bits: self.maps[idx].apply(s.bits), ..*s }
    }
}

/// Size of an orbit and its least member.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OrbitSummary {
    pub size: u64,
    pub canonical: ParityState,
}

/// `k!` for even `n`, `k! * 2^(k-1)` for odd `n`.
pub fn group_order_bound(k: usize, class: OrderClass) -> u64 {
    let fact: u64 = (1..=k as u64).product();
    if class.is_odd() {
        fact << (k - 1)
    } else {
        fact
    }
}

fn assert_divides(size: u64, k: usize, class: OrderClass) {
    let bound = group_order_bound(k, class);
    assert!(
        bound.is_multiple_of(size),
        "orbit of size {size} does not divide the group order {bound} (k={k}, n={} mod 4)",
        class.residue()
    );
}

/// Multiplicative hashing; states are already well mixed in their low bits.
#[derive(Default)]
struct StateHasher(u64);

impl Hasher for StateHasher {
    fn finish(&self) -> u64 {
        self.0
    }

    fn write(&mut self, bytes: &[u8]) {
        for &b in bytes {
            self.0 = (self.0.rotate_left(8) ^ b as u64).wrapping_mul(0x9e37_79b9_7f4a_7c15);
        }
    }

    fn write_u64(&mut self, x: u64) {
        self.0 = (x ^ (x >> 29)).wrapping_mul(0x9e37_79b9_7f4a_7c15);
    }
}

type StateSet = HashSet<u64, BuildHasherDefault<StateHasher>>;

/// Bytes charged per visited state against the memory budget.
const BYTES_PER_STATE: usize = 24;

pub fn orbit(s: &ParityState) -> Result<OrbitSummary> {
    orbit_with_budget(s, DEFAULT_ORBIT_BUDGET)
}

pub fn orbit_with_budget(s: &ParityState, budget_bytes: usize) -> Result<OrbitSummary> {
    let gens = Generators::new(s.k, s.class)?;
    let mut seen = StateSet::default();
    let mut stack = vec![s.bits];
    seen.insert(s.bits);
    let mut least = s.bits;
    while let Some(x) = stack.pop() {
        for map in &gens.maps {
            let y = map.apply(x);
            if seen.insert(y) {
                if seen.len().saturating_mul(BYTES_PER_STATE) > budget_bytes {
                    return Err(Error::ResourceExhausted { budget_bytes, visited: seen.len() });
                }
                least = least.min(y);
                stack.push(y);
            }
        }
    }
    let size = seen.len() as u64;
    assert_divides(size, s.k, s.class);
    Ok(OrbitSummary { size, canonical: ParityState { bits: least, ..*s } })
}

/// Orbit sizes of one `(k, n mod 4)` pair.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassTable {
    pub k: usize,
    pub class: OrderClass,
    /// Every orbit, ordered by canonical representative.
    pub orbits: Vec<OrbitSummary>,
    /// `(orbit size, number of orbits of that size)`, ascending by size.
    pub entries: Vec<(u64, usize)>,
}

impl ClassTable {
    pub fn class_count(&self) -> usize {
        self.orbits.len()
    }

    pub fn distinct_sizes(&self) -> Vec<u64> {
        self.entries.iter().map(|&(size, _)| size).collect()
    }

    pub fn total_states(&self) -> u64 {
        self.entries.iter().map(|&(size, count)| size * count as u64).sum()
    }
}

/// Partitions all `2^(C(k,2)-1)` states into orbits.
pub fn enumerate_classes(k: usize, class: OrderClass) -> Result<ClassTable> {
    if k > MAX_ENUMERATION_K {
        return Err(Error::EnumerationTooLarge { k });
    }
    let gens = Generators::new(k, class)?;
    let total: u64 = 1 << state_width(k);
    let mut visited = vec![0u64; (total as usize).div_ceil(64)];
    let mut stack: Vec<u64> = Vec::new();
    let mut orbits = Vec::new();

    let mut word = 0usize;
    loop {
        while word < visited.len() && visited[word] == u64::MAX {
            word += 1;
        }
        if word == visited.len() {
            break;
        }
        let seed = (word as u64) * 64 + (!visited[word]).trailing_zeros() as u64;
        if seed >= total {
            break;
        }
        // Every smaller state is already visited, so the seed is the least
        // member of its orbit.
        visited[(seed >> 6) as usize] |= 1 << (seed & 63);
        stack.push(seed);
        let mut size = 1u64;
        while let Some(x) = stack.pop() {
            for map in &gens.maps {
                let y = map.apply(x);
                let (w, bit) = ((y >> 6) as usize, 1u64 << (y & 63));
                if visited[w] & bit == 0 {
                    visited[w] |= bit;
                    size += 1;
                    stack.push(y);
                }
            }
        }
        assert_divides(size, k, class);
        orbits.push(OrbitSummary { size, canonical: ParityState { k, class, bits: seed } });
    }

    let mut sizes: Vec<u64> = orbits.iter().map(|o| o.size).collect();
    sizes.sort_unstable();
    let mut entries: Vec<(u64, usize)> = Vec::new();
    for size in sizes {
        match entries.last_mut() {
            Some((s, count)) if *s == size => *count += 1,
            _ => entries.push((size, 1)),
        }
    }
    let table = ClassTable { k, class, orbits, entries };
    assert_eq!(table.total_states(), total, "orbits must partition the state space");
    Ok(table)
}

/// The switching class of an array's τ-parity.
pub fn class_of_oa(a: &OrthogonalArray) -> Result<OrbitSummary> {
    class_of_oa_with_budget(a, DEFAULT_ORBIT_BUDGET)
}

pub fn class_of_oa_with_budget(a: &OrthogonalArray, budget_bytes: usize) -> Result<OrbitSummary> {
    let state = ParityState::from_tau(&tau_parity(a))?;
    orbit_with_budget(&state, budget_bytes)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random_state(rng: &mut ChaCha8Rng, k: usize, class: OrderClass) -> ParityState {
        let width = state_width(k);
        ParityState::new(k, class, rng.random::<u64>() & ((1u64 << width) - 1)).unwrap()
    }

    #[test]
    fn identity_fixes_states() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for k in 3..9 {
            let s = random_state(&mut rng, k, OrderClass::of(3));
            assert_eq!(act_permute(&s, &Permutation::identity(k)).unwrap(), s);
        }
    }

    #[test]
    fn permutation_action_is_a_group_action() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for r in 0..4 {
            let class = OrderClass::from_residue(r).unwrap();
            for _ in 0..50 {
                let s = random_state(&mut rng, 6, class);
                let g = Permutation::random(6, &mut rng);
                let h = Permutation::random(6, &mut rng);
                let lhs = act_permute(&act_permute(&s, &g).unwrap(), &h).unwrap();
                assert_eq!(lhs, act_permute(&s, &h.compose(&g)).unwrap());
            }
        }
    }

    #[test]
    fn zero_state_fixed_by_permutations() {
        // Only when C(n,2) is even is the full zero matrix a σ-parity.
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for r in 0..2 {
            let z = ParityState::zero(5, OrderClass::from_residue(r).unwrap()).unwrap();
            let g = Permutation::random(5, &mut rng);
            assert_eq!(act_permute(&z, &g).unwrap(), z);
        }
    }

    #[test]
    fn swap_rules() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let class = OrderClass::of(1);
        let s = random_state(&mut rng, 6, class);
        assert_eq!(act_swap(&s, &[]).unwrap(), s);
        assert_eq!(act_swap(&s, &[0, 1, 2, 3, 4, 5]).unwrap(), s);
        assert_eq!(act_swap(&s, &[1, 4]).unwrap(), act_swap(&s, &[0, 2, 3, 5]).unwrap());
        let even = ParityState::zero(6, OrderClass::of(2)).unwrap();
        assert_eq!(act_swap(&even, &[0]), Err(Error::SwapUndefined));
    }

    #[test]
    fn tables_match_reference_action() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for k in [3, 5, 8, 11] {
            for r in 0..4 {
                let class = OrderClass::from_residue(r).unwrap();
                let gens = Generators::new(k, class).unwrap();
                for _ in 0..20 {
                    let s = random_state(&mut rng, k, class);
                    for t in 0..k - 1 {
                        let g = Permutation::transposition(k, t, t + 1);
                        assert_eq!(gens.apply(t, &s), act_permute(&s, &g).unwrap());
                    }
                    if class.is_odd() {
                        for t in 0..k {
                            assert_eq!(gens.apply(k - 1 + t, &s), act_swap(&s, &[t]).unwrap());
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn k3_tables() {
        let sizes = |r| enumerate_classes(3, OrderClass::from_residue(r).unwrap()).unwrap().entries;
        assert_eq!(sizes(0), vec![(1, 1), (3, 1)]);
        assert_eq!(sizes(1), vec![(4, 1)]);
    }

    #[test]
    fn orbit_agrees_with_enumeration() {
        let mut rng = ChaCha8Rng::seed_from_u64(6);
        let class = OrderClass::of(3);
        let table = enumerate_classes(5, class).unwrap();
        for _ in 0..10 {
            let s = random_state(&mut rng, 5, class);
            let o = orbit(&s).unwrap();
            assert!(table.orbits.contains(&o));
        }
    }

    #[test]
    fn budget_is_enforced() {
        let s = ParityState::new(8, OrderClass::of(1), 0x5a5a5a).unwrap();
        assert!(matches!(orbit_with_budget(&s, 1000), Err(Error::ResourceExhausted { .. })));
    }

    #[test]
    fn enumeration_rejects_large_k() {
        assert_eq!(enumerate_classes(9, OrderClass::of(0)), Err(Error::EnumerationTooLarge { k: 9 }));
        assert_eq!(ParityState::zero(12, OrderClass::of(0)), Err(Error::StateTooWide { k: 12 }));
    }
}
