//! τ-parity and σ-parity of orthogonal arrays, conversion between them, and
//! plausibility checks.
//!
//! Columns are 0-based here. `τ^c_{ij}` is the parity sum, over the symbols
//! `s`, of the permutation `a_ri -> a_rj` restricted to the rows with
//! `a_rc = s`. `σ(i,j)` is the parity of the permutation of `Λ²` sending the
//! storage index of row `r` to `(a_ri, a_rj)`.

use std::fmt;

use crate::error::{Error, Result};
use crate::latin::LatinSquare;
use crate::oa::{OrthogonalArray, Transform};
use crate::order::{pair_count, pair_rank, pairs, triples, Bit, Order, OrderClass};
use crate::perm::parity_of;

/// Row, column and symbol parity of one Latin square.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ParityTriple {
    pub pr: Bit,
    pub pc: Bit,
    pub ps: Bit,
}

impl ParityTriple {
    /// The type as a three-character string such as `"011"`.
    pub fn label(&self) -> String {
        format!("{}{}{}", self.pr, self.pc, self.ps)
    }

    /// Index 0..8 reading `pr pc ps` as a binary number.
    pub fn index(&self) -> usize {
        ((self.pr as usize) << 2) | ((self.pc as usize) << 1) | self.ps as usize
    }

    pub fn from_index(idx: usize) -> Self {
        ParityTriple { pr: ((idx >> 2) & 1) as Bit, pc: ((idx >> 1) & 1) as Bit, ps: (idx & 1) as Bit }
    }

    /// Parses a label such as `"011"`.
    pub fn parse(label: &str) -> Option<Self> {
        let bits: Vec<Bit> = label
            .chars()
            .map(|ch| match ch {
                '0' => Some(0),
                '1' => Some(1),
                _ => None,
            })
            .collect::<Option<_>>()?;
        match bits[..] {
            [pr, pc, ps] => Some(ParityTriple { pr, pc, ps }),
            _ => None,
        }
    }

    /// The four types with `pr + pc + ps ≡ C(n,2) (mod 2)`, by index.
    pub fn plausible(class: OrderClass) -> [ParityTriple; 4] {
        let b = class.binom2_parity() as usize;
        let mut out = [ParityTriple { pr: 0, pc: 0, ps: 0 }; 4];
        let mut slot = 0;
        for idx in 0usize..8 {
            if idx.count_ones() as usize % 2 == b {
                out[slot] = ParityTriple::from_index(idx);
                slot += 1;
            }
        }
        out
    }
}

pub fn latin_square_parities(l: &LatinSquare) -> ParityTriple {
    let n = l.order();
    let mut seen = vec![false; n];
    let mut pr = 0;
    let mut pc = 0;
    for x in 0..n {
        pr ^= parity_of(n, |c| l.get(x, c), &mut seen);
        pc ^= parity_of(n, |r| l.get(r, x), &mut seen);
    }
    // For each symbol, the map from row to the column holding it.
    let mut where_col = vec![0usize; n * n];
    for r in 0..n {
        for c in 0..n {
            where_col[l.get(r, c) * n + r] = c;
        }
    }
    let mut ps = 0;
    for s in 0..n {
        ps ^= parity_of(n, |r| where_col[s * n + r], &mut seen);
    }
    ParityTriple { pr, pc, ps }
}

/// All `τ^c_{ij}` of a k-column array. Only `i < j` is stored; reads with
/// `i > j` use the symmetry `τ^c_{ij} = τ^c_{ji}`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct TauVector {
    k: usize,
    order: Order,
    bits: Vec<u8>,
}

impl TauVector {
    pub fn zero(k: usize, order: Order) -> Self {
        TauVector { k, order, bits: vec![0; k * pair_count(k)] }
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn order(&self) -> Order {
        self.order
    }

    #[inline]
    fn index(&self, c: usize, i: usize, j: usize) -> usize {
        debug_assert!(c != i && c != j && i != j);
        let (i, j) = if i < j { (i, j) } else { (j, i) };
        c * pair_count(self.k) + pair_rank(self.k, i, j)
    }

    #[inline]
    pub fn get(&self, c: usize, i: usize, j: usize) -> Bit {
        self.bits[self.index(c, i, j)]
    }

    pub fn set(&mut self, c: usize, i: usize, j: usize, bit: Bit) {
        let idx = self.index(c, i, j);
        self.bits[idx] = bit & 1;
    }

    /// Every stored component as `(c, i, j, bit)` with `i < j`, ordered by
    /// `c` then `(i, j)`.
    pub fn components(&self) -> impl Iterator<Item = (usize, usize, usize, Bit)> + '_ {
        (0..self.k).flat_map(move |c| {
            pairs(self.k).filter(move |&(i, j)| i != c && j != c).map(move |(i, j)| (c, i, j, self.get(c, i, j)))
        })
    }

    pub fn is_zero(&self) -> bool {
        self.bits.iter().all(|&b| b == 0)
    }

    /// Relabels column `c` as `gamma[c]`.
    pub fn relabel(&self, gamma: &[usize]) -> TauVector {
        let mut out = TauVector::zero(self.k, self.order);
        for (c, i, j, bit) in self.components() {
            out.set(gamma[c], gamma[i], gamma[j], bit);
        }
        out
    }
}

impl fmt::Debug for TauVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "TauVector(k={}, {:?}) [", self.k, self.order)?;
        for (c, i, j, bit) in self.components().filter(|t| t.3 == 1) {
            write!(f, " {}:{}{}", c + 1, i + 1, j + 1)?;
            debug_assert_eq!(bit, 1);
        }
        write!(f, " ]")
    }
}

/// Groups row indices by the symbol in each column: `by_symbol[c][s]` lists
/// the `n` rows with `a_rc = s`, in storage order.
fn rows_by_symbol(a: &OrthogonalArray) -> Vec<Vec<Vec<usize>>> {
    let (k, n) = (a.k(), a.n());
    let mut out = vec![vec![Vec::with_capacity(n); n]; k];
    for r in 0..a.row_count() {
        for (c, groups) in out.iter_mut().enumerate() {
            groups[a.get(r, c)].push(r);
        }
    }
    out
}

fn tau_from_groups(
    a: &OrthogonalArray,
    groups: &[Vec<usize>],
    i: usize,
    j: usize,
    map: &mut [usize],
    seen: &mut [bool],
) -> Bit {
    let n = a.n();
    let mut acc = 0;
    for rows in groups {
        for &r in rows {
            map[a.get(r, i)] = a.get(r, j);
        }
        acc ^= parity_of(n, |x| map[x], seen);
    }
    acc
}

/// A single component `τ^c_{ij}` for distinct columns, in either order of
/// `i` and `j`, computed from the definition.
pub fn tau_component(a: &OrthogonalArray, c: usize, i: usize, j: usize) -> Result<Bit> {
    let k = a.k();
    if c >= k || i >= k || j >= k || c == i || c == j || i == j {
        return Err(Error::Dimension(format!(
            "columns ({}, {}, {}) must be distinct and in 1..={k}",
            c + 1,
            i + 1,
            j + 1
        )));
    }
    let n = a.n();
    let mut groups = vec![Vec::with_capacity(n); n];
    for r in 0..a.row_count() {
        groups[a.get(r, c)].push(r);
    }
    let mut map = vec![0; n];
    let mut seen = vec![false; n];
    Ok(tau_from_groups(a, &groups, i, j, &mut map, &mut seen))
}

pub fn tau_parity(a: &OrthogonalArray) -> TauVector {
    let (k, n) = (a.k(), a.n());
    let by_symbol = rows_by_symbol(a);
    let mut out = TauVector::zero(k, Order::Exact(n));
    let mut map = vec![0; n];
    let mut seen = vec![false; n];
    for (c, groups) in by_symbol.iter().enumerate() {
        for (i, j) in pairs(k) {
            if i == c || j == c {
                continue;
            }
            let bit = tau_from_groups(a, groups, i, j, &mut map, &mut seen);
            out.set(c, i, j, bit);
        }
    }
    out
}

/// The full k×k matrix of `π(σ_ij)`, zero on the diagonal.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SigmaMatrix {
    k: usize,
    order: Order,
    bits: Vec<u8>,
}

impl SigmaMatrix {
    pub fn zero(k: usize, order: Order) -> Self {
        SigmaMatrix { k, order, bits: vec![0; k * k] }
    }

    /// Builds a matrix from rows of bits; the diagonal must be zero.
    pub fn from_rows(order: Order, rows: &[Vec<Bit>]) -> Result<Self> {
        let k = rows.len();
        let mut out = SigmaMatrix::zero(k, order);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != k {
                return Err(Error::Dimension(format!("sigma row {} has length {}, expected {k}", i + 1, row.len())));
            }
            for (j, &bit) in row.iter().enumerate() {
                if bit > 1 {
                    return Err(Error::Dimension(format!("sigma entry ({}, {}) is not a bit", i + 1, j + 1)));
                }
                if i == j && bit != 0 {
                    return Err(Error::Dimension(format!("sigma diagonal entry {} is nonzero", i + 1)));
                }
                out.bits[i * k + j] = bit;
            }
        }
        Ok(out)
    }

    /// Fills the lower triangle from the upper one via
    /// `σ(j,i) = σ(i,j) + C(n,2)`.
    pub fn from_upper(k: usize, order: Order, upper: impl Fn(usize, usize) -> Bit) -> Self {
        let b = order.binom2_parity();
        let mut out = SigmaMatrix::zero(k, order);
        for (i, j) in pairs(k) {
            let bit = upper(i, j) & 1;
            out.bits[i * k + j] = bit;
            out.bits[j * k + i] = bit ^ b;
        }
        out
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn order(&self) -> Order {
        self.order
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> Bit {
        self.bits[i * self.k + j]
    }

    pub fn set(&mut self, i: usize, j: usize, bit: Bit) {
        self.bits[i * self.k + j] = bit & 1;
    }

    pub fn rows(&self) -> Vec<Vec<Bit>> {
        self.bits.chunks(self.k).map(|r| r.to_vec()).collect()
    }

    /// Flips every off-diagonal entry.
    pub fn complement(&self) -> SigmaMatrix {
        let mut out = self.clone();
        for i in 0..self.k {
            for j in 0..self.k {
                if i != j {
                    out.bits[i * self.k + j] ^= 1;
                }
            }
        }
        out
    }

    /// Whether `σ(j,i) = σ(i,j) + C(n,2)` holds for every pair.
    pub fn is_consistent(&self) -> bool {
        let b = self.order.binom2_parity();
        pairs(self.k).all(|(i, j)| self.get(j, i) == self.get(i, j) ^ b) && (0..self.k).all(|i| self.get(i, i) == 0)
    }

    /// Row sums `μ_c`.
    pub fn out_degrees(&self) -> Vec<usize> {
        self.bits.chunks(self.k).map(|r| r.iter().map(|&b| b as usize).sum()).collect()
    }

    /// Column sums.
    pub fn in_degrees(&self) -> Vec<usize> {
        (0..self.k).map(|j| (0..self.k).map(|i| self.get(i, j) as usize).sum()).collect()
    }

    /// Relabels index `i` as `gamma[i]`.
    pub fn relabel(&self, gamma: &[usize]) -> SigmaMatrix {
        let mut out = SigmaMatrix::zero(self.k, self.order);
        for i in 0..self.k {
            for j in 0..self.k {
                out.bits[gamma[i] * self.k + gamma[j]] = self.get(i, j);
            }
        }
        out
    }

    /// Chooses between this matrix and its complement so that `σ(0,1) = 0`.
    pub fn standardise(&self) -> StandardSigma {
        let flip = if self.k >= 2 { self.get(0, 1) } else { 0 };
        StandardSigma {
            k: self.k,
            order: self.order,
            upper: pairs(self.k).map(|(i, j)| self.get(i, j) ^ flip).collect(),
        }
    }

    /// Chooses between this matrix and its complement so that every row sum
    /// has the requested parity. Only defined when `n ≡ 3 (mod 4)`, `k` is
    /// even and the row sums already share one parity; complementation then
    /// flips that common parity.
    pub fn standardise_out_degree(&self, parity: Bit) -> Result<SigmaMatrix> {
        if self.order.class().residue() != 3 || !self.k.is_multiple_of(2) {
            return Err(Error::Precondition("out-degree standardisation needs n = 3 (mod 4) and even k".into()));
        }
        let degrees = self.out_degrees();
        let first = degrees[0] % 2;
        if degrees.iter().any(|d| d % 2 != first) {
            return Err(Error::Precondition("out-degrees do not share a parity".into()));
        }
        Ok(if first as Bit == parity & 1 { self.clone() } else { self.complement() })
    }
}

impl fmt::Debug for SigmaMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "SigmaMatrix(k={}, {:?})", self.k, self.order)?;
        for row in self.bits.chunks(self.k) {
            let line: String = row.iter().map(|b| if *b == 1 { '1' } else { '0' }).collect();
            writeln!(f, "  {line}")?;
        }
        Ok(())
    }
}

pub fn sigma_parity(a: &OrthogonalArray) -> SigmaMatrix {
    let (k, n) = (a.k(), a.n());
    let mut out = SigmaMatrix::zero(k, Order::Exact(n));
    let mut seen = vec![false; n * n];
    for i in 0..k {
        for j in 0..k {
            if i != j {
                let bit = parity_of(n * n, |r| a.get(r, i) * n + a.get(r, j), &mut seen);
                out.bits[i * k + j] = bit;
            }
        }
    }
    out
}

/// The upper triangle of a σ-parity matrix with `σ(0,1) = 0`, stored in
/// lexicographic pair order.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct StandardSigma {
    k: usize,
    order: Order,
    upper: Vec<u8>,
}

impl StandardSigma {
    /// Builds from upper-triangle bits in lexicographic pair order. The first
    /// bit must be 0.
    pub fn new(k: usize, order: Order, upper: Vec<Bit>) -> Result<Self> {
        if upper.len() != pair_count(k) {
            return Err(Error::Dimension(format!(
                "standard sigma for k={k} needs {} bits, got {}",
                pair_count(k),
                upper.len()
            )));
        }
        if upper.iter().any(|&b| b > 1) {
            return Err(Error::Dimension("standard sigma entries must be bits".into()));
        }
        if upper.first() == Some(&1) {
            return Err(Error::Precondition("standard sigma must have entry (1,2) = 0".into()));
        }
        Ok(StandardSigma { k, order, upper })
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn order(&self) -> Order {
        self.order
    }

    /// Entry `(i, j)` for `i < j`.
    pub fn get(&self, i: usize, j: usize) -> Bit {
        self.upper[pair_rank(self.k, i, j)]
    }

    pub fn bits(&self) -> &[u8] {
        &self.upper
    }

    pub fn to_matrix(&self) -> SigmaMatrix {
        SigmaMatrix::from_upper(self.k, self.order, |i, j| self.get(i, j))
    }

    /// Every entry as `(i, j, bit)` with `i < j`.
    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, Bit)> + '_ {
        pairs(self.k).map(move |(i, j)| (i, j, self.get(i, j)))
    }
}

impl fmt::Debug for StandardSigma {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let bits: String = self.upper.iter().map(|b| if *b == 1 { '1' } else { '0' }).collect();
        write!(f, "StandardSigma(k={}, {:?}, {bits})", self.k, self.order)
    }
}

/// `τ^c_{ij} = σ(c,i) + σ(c,j)`.
pub fn tau_from_sigma(s: &SigmaMatrix) -> TauVector {
    let k = s.k();
    let mut out = TauVector::zero(k, s.order());
    for c in 0..k {
        for (i, j) in pairs(k) {
            if i != c && j != c {
                out.set(c, i, j, s.get(c, i) ^ s.get(c, j));
            }
        }
    }
    out
}

pub fn tau_from_standard(s: &StandardSigma) -> TauVector {
    tau_from_sigma(&s.to_matrix())
}

/// Recovers the standardised σ-parity from a plausible τ-parity.
pub fn sigma_from_tau(t: &TauVector) -> Result<StandardSigma> {
    let report = check_plausible(t);
    if let Some(v) = report.violations.iter().find(|v| v.constraint != Constraint::ProjectivePlane) {
        return Err(Error::NotPlausible(v.to_string()));
    }
    Ok(sigma_from_tau_unchecked(t))
}

/// As [`sigma_from_tau`] without the plausibility check. For implausible
/// input the result is some σ-parity whose τ-parity differs from `t`.
pub fn sigma_from_tau_unchecked(t: &TauVector) -> StandardSigma {
    let k = t.k();
    let b = t.order().binom2_parity();
    let upper = pairs(k)
        .map(|(i, j)| match (i, j) {
            (0, 1) => 0,
            (0, j) => t.get(0, 1, j),
            (1, j) => t.get(1, 0, j) ^ b,
            (i, j) => t.get(0, 1, i) ^ t.get(i, 0, j) ^ b,
        })
        .collect();
    StandardSigma { k, order: t.order(), upper }
}

/// The laws a τ-parity must satisfy.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Constraint {
    /// `τ^c_{ij} + τ^c_{il} + τ^c_{jl} = 0` for distinct `c, i, j, l`.
    Additivity,
    /// `τ^c_{ij} + τ^i_{cj} + τ^j_{ci} = C(n,2)` for distinct `c, i, j`.
    TripleLaw,
    /// `Σ_{c ≠ i,j} τ^c_{ij} = C(n,2)` for every pair, when `k = n + 1`.
    ProjectivePlane,
}

impl Constraint {
    pub fn name(self) -> &'static str {
        match self {
            Constraint::Additivity => "additivity",
            Constraint::TripleLaw => "triple-law",
            Constraint::ProjectivePlane => "projective-plane",
        }
    }
}

/// One violated constraint: its first witness (0-based columns) and how
/// many instances fail.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub constraint: Constraint,
    pub witness: Vec<usize>,
    pub count: usize,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cols: Vec<String> = self.witness.iter().map(|c| (c + 1).to_string()).collect();
        write!(f, "{} fails at columns ({}), {} instance(s)", self.constraint.name(), cols.join(", "), self.count)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PpStatus {
    Yes,
    No,
    NotApplicable,
}

impl PpStatus {
    pub fn as_str(self) -> &'static str {
        match self {
            PpStatus::Yes => "yes",
            PpStatus::No => "no",
            PpStatus::NotApplicable => "na",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PlausibilityReport {
    pub plausible: bool,
    pub pp_plausible: PpStatus,
    pub violations: Vec<Violation>,
}

pub fn check_plausible(t: &TauVector) -> PlausibilityReport {
    let k = t.k();
    let b = t.order().binom2_parity();
    let mut violations = Vec::new();
    let record = |constraint, witness: Vec<usize>, violations: &mut Vec<Violation>| match violations
        .iter_mut()
        .find(|v: &&mut Violation| v.constraint == constraint)
    {
        Some(v) => v.count += 1,
        None => violations.push(Violation { constraint, witness, count: 1 }),
    };

    for c in 0..k {
        for (i, j, l) in triples(k) {
            if c == i || c == j || c == l {
                continue;
            }
            if t.get(c, i, j) ^ t.get(c, i, l) ^ t.get(c, j, l) != 0 {
                record(Constraint::Additivity, vec![c, i, j, l], &mut violations);
            }
        }
    }
    for (c, i, j) in triples(k) {
        if t.get(c, i, j) ^ t.get(i, c, j) ^ t.get(j, c, i) != b {
            record(Constraint::TripleLaw, vec![c, i, j], &mut violations);
        }
    }
    let plausible = violations.is_empty();

    let pp_plausible = if t.order().is_complete(k) {
        for (i, j) in pairs(k) {
            let sum = (0..k).filter(|&c| c != i && c != j).fold(0, |acc, c| acc ^ t.get(c, i, j));
            if sum != b {
                record(Constraint::ProjectivePlane, vec![i, j], &mut violations);
            }
        }
        if plausible && violations.is_empty() {
            PpStatus::Yes
        } else {
            PpStatus::No
        }
    } else {
        PpStatus::NotApplicable
    };

    PlausibilityReport { plausible, pp_plausible, violations }
}

/// `Σ_i τ^{c_i}_{c_{i-1} c_{i+1}}` around the cycle `c_1, ..., c_l` of
/// distinct columns (indices taken cyclically).
pub fn cycle_sum(t: &TauVector, cycle: &[usize]) -> Bit {
    let l = cycle.len();
    (0..l).fold(0, |acc, idx| acc ^ t.get(cycle[idx], cycle[(idx + l - 1) % l], cycle[(idx + 1) % l]))
}

/// Parities predicted for the result of a transform, before the rows are
/// restored to storage order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PredictedParities {
    pub tau: TauVector,
    /// σ-parity with rows in the order the transform leaves them.
    pub sigma: SigmaMatrix,
}

impl PredictedParities {
    /// The σ-parity after the rows are re-sorted by a permutation of the
    /// given parity.
    pub fn stored_sigma(&self, storage_parity: Bit) -> SigmaMatrix {
        if storage_parity & 1 == 1 {
            self.sigma.complement()
        } else {
            self.sigma.clone()
        }
    }
}

/// Applies the transformation laws to known parities:
///
/// - a row permutation `γ` adds `π(γ)` to every σ entry and fixes τ;
/// - a column permutation relabels indices;
/// - a symbol permutation `γ` in column `c` adds `n·π(γ)` to `σ(c,j)`,
///   `σ(j,c)` and every `τ^d_{ij}` with `c ∈ {i, j}`.
pub fn predict_parities(tau: &TauVector, sigma: &SigmaMatrix, t: &Transform) -> Result<PredictedParities> {
    let k = tau.k();
    if sigma.k() != k {
        return Err(Error::Dimension("tau and sigma have different k".into()));
    }
    match t {
        Transform::RowPermutation(gamma) => {
            if let Some(n) = sigma.order().exact() {
                if gamma.len() != n * n {
                    return Err(Error::Dimension(format!("row permutation must act on {} rows", n * n)));
                }
            }
            let sigma = if gamma.parity() == 1 { sigma.complement() } else { sigma.clone() };
            Ok(PredictedParities { tau: tau.clone(), sigma })
        }
        Transform::ColumnPermutation(gamma) => {
            if gamma.len() != k {
                return Err(Error::Dimension(format!("column permutation must act on {k} columns")));
            }
            Ok(PredictedParities { tau: tau.relabel(gamma.images()), sigma: sigma.relabel(gamma.images()) })
        }
        Transform::SymbolPermutation { column, gamma } => {
            let c = *column;
            if c >= k {
                return Err(Error::Dimension(format!("column {} out of range 1..={k}", c + 1)));
            }
            let delta = if sigma.order().is_odd() { gamma.parity() } else { 0 };
            let mut tau = tau.clone();
            let mut sigma = sigma.clone();
            if delta == 1 {
                for j in (0..k).filter(|&j| j != c) {
                    sigma.set(c, j, sigma.get(c, j) ^ 1);
                    sigma.set(j, c, sigma.get(j, c) ^ 1);
                    for d in (0..k).filter(|&d| d != c && d != j) {
                        tau.set(d, c, j, tau.get(d, c, j) ^ 1);
                    }
                }
            }
            Ok(PredictedParities { tau, sigma })
        }
    }
}

/// Predicted parities of `apply_transform(a, t)` before re-sorting.
pub fn transform_parity_laws(a: &OrthogonalArray, t: &Transform) -> Result<PredictedParities> {
    predict_parities(&tau_parity(a), &sigma_parity(a), t)
}
