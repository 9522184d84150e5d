//! Independent oracles shared by the integration tests. Parities here are
//! computed by counting inversions, not cycles, and share no code with the
//! library beyond the array accessors.
#![allow(dead_code, clippy::needless_range_loop)]

use oaparity::{Bit, Order, OrthogonalArray, Permutation, TauVector, Transform};
use rand::Rng;

pub fn binom2_parity(n: usize) -> Bit {
    ((n * (n - 1) / 2) % 2) as Bit
}

pub fn inversion_parity(seq: &[usize]) -> Bit {
    let mut inv = 0usize;
    for a in 0..seq.len() {
        for b in a + 1..seq.len() {
            if seq[a] > seq[b] {
                inv += 1;
            }
        }
    }
    (inv % 2) as Bit
}

/// `τ^c_{ij}`: for each symbol `x` of column `c`, the parity of
/// `a_ri ↦ a_rj` over the rows with `a_rc = x`, summed.
pub fn tau_entry(a: &OrthogonalArray, c: usize, i: usize, j: usize) -> Bit {
    let n = a.n();
    let mut total = 0;
    for x in 0..n {
        let mut image = vec![0usize; n];
        for r in 0..a.row_count() {
            if a.get(r, c) == x {
                image[a.get(r, i)] = a.get(r, j);
            }
        }
        total ^= inversion_parity(&image);
    }
    total
}

pub fn tau_oracle(a: &OrthogonalArray) -> TauVector {
    let k = a.k();
    let mut t = TauVector::zero(k, Order::Exact(a.n()));
    for c in 0..k {
        for i in 0..k {
            for j in i + 1..k {
                if c != i && c != j {
                    t.set(c, i, j, tau_entry(a, c, i, j));
                }
            }
        }
    }
    t
}

/// `σ(i,j)`: parity of the map from stored row index `r` to
/// `a_ri * n + a_rj`.
pub fn sigma_oracle(a: &OrthogonalArray) -> Vec<Vec<Bit>> {
    let (k, n) = (a.k(), a.n());
    let mut out = vec![vec![0; k]; k];
    for i in 0..k {
        for j in 0..k {
            if i != j {
                let seq: Vec<usize> = (0..a.row_count()).map(|r| a.get(r, i) * n + a.get(r, j)).collect();
                out[i][j] = inversion_parity(&seq);
            }
        }
    }
    out
}

/// Violations of additivity and the triple law, found by direct loops.
pub fn plausible_oracle(t: &TauVector, b: Bit) -> bool {
    let k = t.k();
    for c in 0..k {
        for i in 0..k {
            for j in 0..k {
                for l in 0..k {
                    let distinct = c != i && c != j && c != l && i != j && i != l && j != l;
                    if distinct && t.get(c, i, j) ^ t.get(c, i, l) ^ t.get(c, j, l) != 0 {
                        return false;
                    }
                }
                if c != i && c != j && i != j && t.get(c, i, j) ^ t.get(i, c, j) ^ t.get(j, c, i) != b {
                    return false;
                }
            }
        }
    }
    true
}

/// `Σ_{c ≠ i,j} τ^c_{ij} = b` for every pair.
pub fn projective_oracle(t: &TauVector, b: Bit) -> bool {
    let k = t.k();
    (0..k).all(|i| (i + 1..k).all(|j| (0..k).filter(|&c| c != i && c != j).fold(0, |acc, c| acc ^ t.get(c, i, j)) == b))
}

pub fn random_transform<R: Rng>(k: usize, n: usize, rng: &mut R) -> Transform {
    match rng.random_range(0..3) {
        0 => Transform::RowPermutation(Permutation::random(n * n, rng)),
        1 => Transform::ColumnPermutation(Permutation::random(k, rng)),
        _ => Transform::SymbolPermutation { column: rng.random_range(0..k), gamma: Permutation::random(n, rng) },
    }
}

/// Desarguesian orders with fields available in the library.
pub const DESARGUESIAN: [usize; 10] = [2, 3, 4, 5, 7, 8, 9, 11, 13, 16];

/// Checks every structural law on one array; returns a description of the
/// first failure.
pub fn oa_laws(a: &OrthogonalArray) -> Result<(), String> {
    use oaparity::graphs::{decompose_tau_graph, stack, StackShape};
    use oaparity::{check_plausible, latin_square_parities, oa_to_mols, sigma_parity, tau_from_sigma, tau_parity};
    let (k, n) = (a.k(), a.n());
    let b = binom2_parity(n);
    let t = tau_parity(a);
    if t != tau_oracle(a) {
        return Err("tau_parity differs from inversion oracle".into());
    }
    let s = sigma_parity(a);
    let so = sigma_oracle(a);
    if s.rows() != so {
        return Err("sigma_parity differs from inversion oracle".into());
    }
    // σ(j,i) = σ(i,j) + b.
    for i in 0..k {
        for j in 0..k {
            if i != j && so[i][j] ^ so[j][i] != b {
                return Err(format!("sigma symmetry fails at ({}, {})", i + 1, j + 1));
            }
        }
    }
    // τ^c_{ij} = σ(c,i) + σ(c,j).
    if tau_from_sigma(&s) != t {
        return Err("tau is not recovered from sigma".into());
    }
    // Each three-column Latin square has pr + pc + ps = b.
    for c1 in 0..k {
        for c2 in c1 + 1..k {
            for c3 in c2 + 1..k {
                let sub = a.select_columns(&[c1, c2, c3]).map_err(|e| e.to_string())?;
                let p = latin_square_parities(&oa_to_mols(&sub)[0]);
                if p.pr ^ p.pc ^ p.ps != b {
                    return Err(format!("square on columns {} {} {} breaks pr+pc+ps = b", c1 + 1, c2 + 1, c3 + 1));
                }
            }
        }
    }
    if !plausible_oracle(&t, b) || !check_plausible(&t).plausible {
        return Err("tau is not plausible".into());
    }
    // Cycle law for every cycle length 3..=k on the columns in order, and
    // their reverses.
    for l in 3..=k {
        for start in 0..=(k - l) {
            let cyc: Vec<usize> = (start..start + l).collect();
            for order in [cyc.clone(), cyc.iter().rev().copied().collect()] {
                let sum = (0..l).fold(0, |acc, p| acc ^ t.get(order[p], order[(p + l - 1) % l], order[(p + 1) % l]));
                if sum != ((l as Bit) & b) {
                    return Err(format!("cycle law fails for length {l}"));
                }
            }
        }
    }
    // τ-graphs are an isolated vertex plus a complete bipartite graph.
    for c in 0..k {
        let d = decompose_tau_graph(&t, c).map_err(|e| e.to_string())?;
        let others: Vec<usize> = (0..k).filter(|&v| v != c).collect();
        let side = |v: usize| d.v1.contains(&v);
        for (x, &u) in others.iter().enumerate() {
            for &w in &others[x + 1..] {
                if t.get(c, u, w) != (side(u) != side(w)) as Bit {
                    return Err(format!("tau-graph {} is not complete bipartite", c + 1));
                }
            }
        }
        if k == n + 1 && n % 2 == 0 {
            let (n1, n2) = (d.v1.len(), d.v2.len());
            if n1 % 2 != (n / 2) % 2 || n2 % 2 != (n / 2) % 2 {
                return Err(format!("partite sizes {n1}, {n2} of tau-graph {} have wrong parity", c + 1));
            }
        }
    }
    let st = stack(&t).map_err(|e| e.to_string())?;
    let shape_ok = matches!(
        (n % 4, &st.shape),
        (0 | 1, StackShape::CompleteBipartite { .. } | StackShape::Empty)
            | (2 | 3, StackShape::Cliques { .. } | StackShape::Complete)
    );
    if !shape_ok {
        return Err(format!("stack shape {:?} wrong for n = {n}", st.shape));
    }
    if k == n + 1 {
        let want_shape = if n % 4 < 2 { StackShape::Empty } else { StackShape::Complete };
        if st.shape != want_shape {
            return Err(format!("stack of a complete set is {:?}", st.shape));
        }
        if !projective_oracle(&t, b) || check_plausible(&t).pp_plausible != oaparity::PpStatus::Yes {
            return Err("complete set breaks the projective-plane condition".into());
        }
        // Degree parities of the σ-graph.
        let out: Vec<usize> = (0..k).map(|i| (0..k).filter(|&j| so[i][j] == 1).count() % 2).collect();
        let inn: Vec<usize> = (0..k).map(|j| (0..k).filter(|&i| so[i][j] == 1).count() % 2).collect();
        let uniform = |v: &[usize]| v.iter().all(|&d| d == v[0]);
        let ok = match n % 4 {
            0 => out.iter().all(|&d| d == 0),
            1 => uniform(&out),
            2 => out.iter().chain(&inn).all(|&d| d == 1),
            _ => uniform(&out) && uniform(&inn) && out[0] != inn[0],
        };
        if !ok {
            return Err(format!("sigma-graph degree parities wrong for n = {n}: out {out:?}, in {inn:?}"));
        }
    }
    Ok(())
}
