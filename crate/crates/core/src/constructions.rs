//! Explicit constructions: linear MOLS over GF(q), OA(5, n) families from
//! quadratic-residue patterns, and σ-matrices with prescribed properties.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::field::{is_prime, FieldTable};
use crate::latin::LatinSquare;
use crate::oa::{mols_to_oa, OrthogonalArray};
use crate::order::{pair_count, pairs, Bit, Order, OrderClass};
use crate::parity::{SigmaMatrix, StandardSigma, TauVector};

/// The `q - 1` squares `L_λ[r][c] = λr + c` over GF(q), `λ ≠ 0`, in order of
/// the element labels.
pub fn linear_squares(q: usize) -> Result<Vec<LatinSquare>> {
    let f = FieldTable::new(q)?;
    Ok((1..q)
        .map(|lambda| {
            let cells = (0..q)
                .flat_map(|r| (0..q).map(move |c| (r, c)))
                .map(|(r, c)| f.add(f.mul(lambda, r), c) as u8)
                .collect();
            LatinSquare::from_cells_unchecked(q, cells)
        })
        .collect())
}

/// The Desarguesian OA(q+1, q) built from [`linear_squares`].
pub fn linear_mols(q: usize) -> Result<OrthogonalArray> {
    mols_to_oa(&linear_squares(q)?)
}

/// `L_λ[r][c] = λr + c (mod n)` for prime `n`.
fn modular_square(n: usize, lambda: usize) -> LatinSquare {
    let cells = (0..n).flat_map(|r| (0..n).map(move |c| ((lambda * r + c) % n) as u8)).collect();
    LatinSquare::from_cells_unchecked(n, cells)
}

/// Quadratic character of `a` modulo the odd prime `p` by Euler's
/// criterion: `Some(true)` for a nonzero residue, `Some(false)` for a
/// non-residue, `None` for zero.
pub fn quadratic_character(a: usize, p: usize) -> Option<bool> {
    let a = a % p;
    if a == 0 {
        return None;
    }
    let mut acc = 1u64;
    let mut base = a as u64;
    let mut exp = (p - 1) / 2;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % p as u64;
        }
        base = base * base % p as u64;
        exp >>= 1;
    }
    Some(acc == 1)
}

/// Quadratic characters of `a - 1`, `a`, `a + 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ResiduePattern {
    /// Non-residue, non-residue, non-residue.
    Nnn,
    /// Residue, non-residue, residue.
    Rnr,
}

impl ResiduePattern {
    fn characters(self) -> [bool; 3] {
        match self {
            ResiduePattern::Nnn => [false, false, false],
            ResiduePattern::Rnr => [true, false, true],
        }
    }

    /// The nine determining τ-components expected for this pattern.
    pub fn expected_components(self) -> [Bit; 9] {
        match self {
            ResiduePattern::Nnn => [0, 0, 0, 0, 1, 1, 0, 0, 0],
            ResiduePattern::Rnr => [0, 0, 0, 0, 1, 0, 0, 0, 1],
        }
    }

    pub fn matches(self, n: usize, a: usize) -> bool {
        let chars = [a + n - 1, a, a + 1].map(|x| quadratic_character(x, n));
        chars.iter().zip(self.characters()).all(|(c, want)| *c == Some(want))
    }
}

fn check_residue_order(n: usize) -> Result<()> {
    if !is_prime(n) || n % 4 != 3 || n < 11 {
        return Err(Error::Precondition(format!("need a prime n = 3 (mod 4) with n >= 11, got {n}")));
    }
    Ok(())
}

/// Every `a` in `1..n` whose neighbours match the pattern, ascending.
pub fn qualifying_elements(n: usize, pattern: ResiduePattern) -> Result<Vec<usize>> {
    check_residue_order(n)?;
    Ok((1..n).filter(|&a| pattern.matches(n, a)).collect())
}

/// `𝒜(L_a, L_{a²}, L_{a³})` over `Z_n` for the least `a` matching the pattern.
pub fn residue_pattern_oa(n: usize, pattern: ResiduePattern) -> Result<(usize, OrthogonalArray)> {
    let a = qualifying_elements(n, pattern)?
        .first()
        .copied()
        .ok_or_else(|| Error::Precondition(format!("no element of Z_{n} matches {pattern:?}")))?;
    Ok((a, residue_pattern_oa_with(n, pattern, a)?))
}

/// As [`residue_pattern_oa`] for a given qualifying `a`.
pub fn residue_pattern_oa_with(n: usize, pattern: ResiduePattern, a: usize) -> Result<OrthogonalArray> {
    check_residue_order(n)?;
    if !pattern.matches(n, a) {
        return Err(Error::Precondition(format!("{a} does not match {pattern:?} modulo {n}")));
    }
    let a2 = a * a % n;
    let a3 = a2 * a % n;
    mols_to_oa(&[modular_square(n, a), modular_square(n, a2), modular_square(n, a3)])
}

/// `τ¹₂₃, τ¹₂₄, τ¹₂₅, τ³₁₂, τ⁴₁₂, τ⁴₁₃, τ⁵₁₂, τ⁵₁₃, τ⁵₁₄` (1-based) of a
/// five-column τ-parity; they determine all the others.
pub fn determining_components(t: &TauVector) -> Result<[Bit; 9]> {
    if t.k() != 5 {
        return Err(Error::Dimension(format!("expected k = 5, got {}", t.k())));
    }
    const IDX: [(usize, usize, usize); 9] =
        [(0, 1, 2), (0, 1, 3), (0, 1, 4), (2, 0, 1), (3, 0, 1), (3, 0, 2), (4, 0, 1), (4, 0, 2), (4, 0, 3)];
    Ok(IDX.map(|(c, i, j)| t.get(c, i, j)))
}

/// Number of free bits taken by [`pp_plausible_sigma`].
pub fn pp_free_bit_count(n: usize) -> usize {
    if n % 2 == 1 {
        pair_count(n)
    } else {
        pair_count(n) - 1
    }
}

/// Sets `σ(i, n)` for the rows of the last column not already fixed so that
/// every column of the full matrix has in-degree parity `p`.
fn complete_last_column(m: &mut SigmaMatrix, fixed_rows: usize, p: Bit) {
    let n = m.k() - 1;
    let b = m.order().binom2_parity();
    for i in fixed_rows..n {
        let partial = (0..n).filter(|&c| c != i).fold(0, |acc, c| acc ^ m.get(c, i));
        let x = partial ^ b ^ p;
        m.set(i, n, x);
        m.set(n, i, x ^ b);
    }
}

/// A standardised σ-parity on `k = n + 1` columns whose τ-parity satisfies
/// the projective-plane law.
///
/// The free bits fill the upper triangle over the first `n` columns in
/// lexicographic order, skipping the fixed `(0,1)` entry; for odd `n` one
/// more bit gives `σ(0, n)`. The rest of the last column is chosen so that
/// every vertex of the σ-graph has the same in-degree parity.
pub fn pp_plausible_sigma(n: usize, free_bits: &[Bit]) -> Result<StandardSigma> {
    if n < 2 {
        return Err(Error::Precondition(format!("n must be at least 2, got {n}")));
    }
    let need = pp_free_bit_count(n);
    if free_bits.len() != need {
        return Err(Error::Dimension(format!("n = {n} needs {need} free bits, got {}", free_bits.len())));
    }
    let order = Order::Exact(n);
    let b = order.binom2_parity();
    let k = n + 1;
    let mut bits = free_bits.iter().map(|&x| x & 1);
    let mut m = SigmaMatrix::zero(k, order);
    for (i, j) in pairs(n).skip(1) {
        let x = bits.next().expect("length checked");
        m.set(i, j, x);
        m.set(j, i, x ^ b);
    }
    m.set(1, 0, b);
    let in_degree = |m: &SigmaMatrix, v: usize| (0..n).filter(|&c| c != v).fold(0, |acc, c| acc ^ m.get(c, v));
    let (fixed_rows, p) = if n % 2 == 1 {
        let x0 = bits.next().expect("length checked");
        m.set(0, n, x0);
        m.set(n, 0, x0 ^ b);
        (1, in_degree(&m, 0) ^ m.get(n, 0))
    } else {
        let p = (0..n).fold(0, |acc, v| acc ^ in_degree(&m, v));
        (0, p)
    };
    complete_last_column(&mut m, fixed_rows, p);
    Ok(m.standardise())
}

/// [`pp_plausible_sigma`] with free bits drawn from ChaCha8 seeded by `seed`.
pub fn random_pp_plausible_sigma(n: usize, seed: u64) -> Result<StandardSigma> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let bits: Vec<Bit> = (0..pp_free_bit_count(n)).map(|_| rng.random_range(0..2)).collect();
    pp_plausible_sigma(n, &bits)
}

const B4: [[Bit; 4]; 4] = [[0, 0, 1, 1], [1, 0, 0, 1], [0, 1, 0, 1], [0, 0, 0, 0]];
const B3: [[Bit; 3]; 3] = [[0, 0, 1], [1, 0, 0], [0, 1, 0]];

fn check_residue_2_3(n: usize) -> Result<()> {
    if !matches!(n % 4, 2 | 3) {
        return Err(Error::Precondition(format!("need n = 2 or 3 (mod 4), got {n}")));
    }
    Ok(())
}

/// The σ-matrix on `n + 1` columns with copies of `B4` (and one `B3` when
/// `n ≡ 2 (mod 4)`) down the diagonal, ones above the blocks and zeros
/// below.
pub fn block_sigma(n: usize) -> Result<SigmaMatrix> {
    check_residue_2_3(n)?;
    let k = n + 1;
    let mut starts: Vec<(usize, usize)> = (0..k / 4).map(|b| (4 * b, 4)).collect();
    if k % 4 == 3 {
        starts.push((k - 3, 3));
    }
    let block_of = |v: usize| starts.iter().position(|&(s, len)| v >= s && v < s + len).expect("covered");
    let mut m = SigmaMatrix::zero(k, Order::Exact(n));
    for i in 0..k {
        for j in (0..k).filter(|&j| j != i) {
            let (bi, bj) = (block_of(i), block_of(j));
            let bit = if bi == bj {
                let (s, len) = starts[bi];
                if len == 4 {
                    B4[i - s][j - s]
                } else {
                    B3[i - s][j - s]
                }
            } else {
                (bi < bj) as Bit
            };
            m.set(i, j, bit);
        }
    }
    Ok(m)
}

/// `σ(i,j) = 0` iff `(j - i) mod n ∈ [1, ⌊n/2⌋]`, for `i < j` on `n + 1`
/// columns; the lower triangle follows from `σ(j,i) = σ(i,j) + C(n,2)`.
pub fn circulant_sigma(n: usize) -> Result<StandardSigma> {
    check_residue_2_3(n)?;
    let m = SigmaMatrix::from_upper(n + 1, Order::Exact(n), |i, j| {
        let d = (j - i) % n;
        !(1..=n / 2).contains(&d) as Bit
    });
    Ok(m.standardise())
}

/// Ones strictly below the diagonal. Needs `C(n,2)` odd.
pub fn lower_triangular_sigma(k: usize, order: Order) -> Result<SigmaMatrix> {
    if order.binom2_parity() != 1 {
        return Err(Error::Precondition("lower-triangular sigma needs n = 2 or 3 (mod 4)".into()));
    }
    if k < 3 {
        return Err(Error::Precondition(format!("k must be at least 3, got {k}")));
    }
    Ok(SigmaMatrix::from_upper(k, order, |_, _| 0))
}

/// Outcome of [`feasible_type_counts`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TypeFeasibility {
    pub feasible: bool,
    /// A σ-matrix realising the counts among the squares on columns
    /// `{0, 1, c}`, present when feasible.
    pub witness: Option<StandardSigma>,
}

/// Whether a complete set of `n - 1` MOLS can have `z, y1, y2, y3` squares of
/// the four plausible parity types (`000, 011, 101, 110` for `n ≡ 0,1`, or
/// `111, 100, 010, 001` for `n ≡ 2,3 (mod 4)`).
pub fn feasible_type_counts(n: usize, z: usize, y1: usize, y2: usize, y3: usize) -> TypeFeasibility {
    let infeasible = TypeFeasibility { feasible: false, witness: None };
    if n < 2 || [z, y1, y2, y3].iter().any(|&c| c > n - 1) || z + y1 + y2 + y3 != n - 1 {
        return infeasible;
    }
    let par = |x: usize| x % 2;
    let ok = match n % 4 {
        0 | 2 => par(y1) == par(y2) && par(y2) == par(y3) && par(y3) != par(z),
        1 => par(y1) == par(y2) && par(y3) == par(z),
        _ => par(y1) != par(y2) && par(y3) != par(z),
    };
    if !ok {
        return infeasible;
    }

    let order = Order::Exact(n);
    let b = order.binom2_parity();
    // First-two-row patterns (σ(0,c), σ(1,c)) for each type, in z, y1, y2, y3 order.
    let patterns: [(Bit, Bit); 4] =
        if b == 1 { [(1, 0), (1, 1), (0, 0), (0, 1)] } else { [(0, 0), (0, 1), (1, 0), (1, 1)] };
    let k = n + 1;
    let mut m = SigmaMatrix::zero(k, order);
    m.set(1, 0, b);
    let counts = [z, y1, y2, y3];
    let columns = counts.iter().zip(patterns).flat_map(|(&count, pat)| std::iter::repeat_n(pat, count));
    for (c, (w0, w1)) in (2..k).zip(columns) {
        m.set(0, c, w0);
        m.set(c, 0, w0 ^ b);
        m.set(1, c, w1);
        m.set(c, 1, w1 ^ b);
    }
    for (i, j) in pairs(n).filter(|&(i, _)| i >= 2) {
        m.set(j, i, b);
        debug_assert_eq!(m.get(i, j), 0);
    }
    let p = (1..k).fold(0, |acc, c| acc ^ m.get(c, 0));
    complete_last_column(&mut m, 2, p);
    TypeFeasibility { feasible: true, witness: Some(m.standardise()) }
}

/// All packed states for `(k, n mod 4)` as standardised σ-parities, in
/// increasing order of their packed bits. Intended for small `k`.
pub fn all_standard_sigmas(k: usize, class: OrderClass) -> impl Iterator<Item = StandardSigma> {
    let width = pair_count(k) - 1;
    (0u64..1 << width).map(move |bits| {
        let upper = std::iter::once(0).chain((0..width).map(|b| ((bits >> b) & 1) as Bit)).collect();
        StandardSigma::new(k, Order::Class(class), upper).expect("well formed")
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parity::{check_plausible, tau_from_standard, PpStatus};

    #[test]
    fn linear_mols_q2_is_oa32() {
        let a = linear_mols(2).unwrap();
        assert_eq!(a.rows(), vec![vec![0, 0, 0], vec![0, 1, 1], vec![1, 0, 1], vec![1, 1, 0]]);
    }

    #[test]
    fn euler_criterion_mod_11() {
        let residues: Vec<usize> = (1..11).filter(|&a| quadratic_character(a, 11) == Some(true)).collect();
        assert_eq!(residues, vec![1, 3, 4, 5, 9]);
    }

    #[test]
    fn least_qualifying_elements_mod_11() {
        assert_eq!(residue_pattern_oa(11, ResiduePattern::Nnn).unwrap().0, 7);
        assert_eq!(residue_pattern_oa(11, ResiduePattern::Rnr).unwrap().0, 2);
        assert!(residue_pattern_oa(7, ResiduePattern::Nnn).is_err());
        assert!(residue_pattern_oa(13, ResiduePattern::Nnn).is_err());
    }

    #[test]
    fn block_sigma_row_sums() {
        assert_eq!(block_sigma(6).unwrap().out_degrees(), vec![5, 5, 5, 3, 1, 1, 1]);
        assert_eq!(block_sigma(7).unwrap().out_degrees(), vec![6, 6, 6, 4, 2, 2, 2, 0]);
        assert!(block_sigma(8).is_err());
    }

    #[test]
    fn block_sigma_is_consistent() {
        for n in (6..52).filter(|n| n % 4 >= 2) {
            assert!(block_sigma(n).unwrap().is_consistent(), "n={n}");
        }
    }

    #[test]
    fn zero_free_bits_even_n() {
        let s = pp_plausible_sigma(4, &[0; 5]).unwrap();
        assert!(s.bits().iter().all(|&b| b == 0));
    }

    #[test]
    fn pp_sigma_is_pp_plausible() {
        for n in 2..9 {
            let m = pp_free_bit_count(n);
            for seed in 0..20u64 {
                let bits: Vec<Bit> = (0..m).map(|i| (((seed * 2654435761) >> (i % 31)) & 1) as Bit).collect();
                let t = tau_from_standard(&pp_plausible_sigma(n, &bits).unwrap());
                assert_eq!(check_plausible(&t).pp_plausible, PpStatus::Yes, "n={n}");
            }
        }
        assert!(pp_plausible_sigma(4, &[0; 4]).is_err());
    }

    #[test]
    fn type_feasibility_examples() {
        assert!(!feasible_type_counts(7, 6, 0, 0, 0).feasible);
        assert!(feasible_type_counts(6, 5, 0, 0, 0).feasible);
        assert!(feasible_type_counts(5, 4, 0, 0, 0).feasible);
        assert!(!feasible_type_counts(5, 3, 0, 0, 0).feasible);
    }

    #[test]
    fn lower_triangular_needs_odd_binomial() {
        assert!(lower_triangular_sigma(4, Order::Class(OrderClass::of(0))).is_err());
        assert!(lower_triangular_sigma(4, Order::Class(OrderClass::of(3))).is_ok());
    }
}
