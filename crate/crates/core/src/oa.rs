//! Orthogonal arrays, conversion to and from MOLS, and the three families of
//! isotopy/conjugacy transforms.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::latin::LatinSquare;
use crate::order::Bit;
use crate::perm::{parity_of, Permutation};

/// An OA(k, n): `n^2` rows of `k` symbols from `0..n` in which every pair of
/// columns contains every ordered pair of symbols exactly once.
///
/// Rows are kept sorted lexicographically. Because columns 0 and 1 are
/// orthogonal, the row holding `(x, y)` in those columns sits at index
/// `x * n + y`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct OrthogonalArray {
    k: usize,
    n: usize,
    cells: Vec<u8>,
}

impl OrthogonalArray {
    /// Validates and sorts the given rows.
    pub fn new(k: usize, n: usize, rows: &[Vec<usize>]) -> Result<Self> {
        check_shape(k, n)?;
        if rows.len() != n * n {
            return Err(Error::Dimension(format!("OA({k},{n}) needs {} rows, got {}", n * n, rows.len())));
        }
        let mut cells = Vec::with_capacity(k * n * n);
        for (idx, row) in rows.iter().enumerate() {
            if row.len() != k {
                return Err(Error::Dimension(format!("row {} has {} entries, expected {k}", idx + 1, row.len())));
            }
            for &v in row {
                if v >= n {
                    return Err(Error::SymbolOutOfRange { symbol: v, n });
                }
                cells.push(v as u8);
            }
        }
        Self::from_cells(k, n, cells)
    }

    /// Validates and sorts a flat row-major cell buffer.
    pub fn from_cells(k: usize, n: usize, cells: Vec<u8>) -> Result<Self> {
        check_shape(k, n)?;
        if cells.len() != k * n * n {
            return Err(Error::Dimension(format!("OA({k},{n}) needs {} cells, got {}", k * n * n, cells.len())));
        }
        if let Some(&bad) = cells.iter().find(|&&v| v as usize >= n) {
            return Err(Error::SymbolOutOfRange { symbol: bad as usize, n });
        }
        let mut seen = vec![false; n * n];
        for i in 0..k {
            for j in (i + 1)..k {
                seen.fill(false);
                for row in cells.chunks_exact(k) {
                    let key = row[i] as usize * n + row[j] as usize;
                    if seen[key] {
                        return Err(Error::ColumnsNotOrthogonal {
                            first: i + 1,
                            second: j + 1,
                            pair: (row[i] as usize, row[j] as usize),
                        });
                    }
                    seen[key] = true;
                }
            }
        }
        let (cells, _) = sort_cells(k, n, &cells);
        Ok(OrthogonalArray { k, n, cells })
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn row_count(&self) -> usize {
        self.n * self.n
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> usize {
        self.cells[r * self.k + c] as usize
    }

    #[inline]
    pub fn row(&self, r: usize) -> &[u8] {
        &self.cells[r * self.k..(r + 1) * self.k]
    }

    pub fn cells(&self) -> &[u8] {
        &self.cells
    }

    pub fn rows(&self) -> Vec<Vec<usize>> {
        self.cells.chunks_exact(self.k).map(|row| row.iter().map(|&v| v as usize).collect()).collect()
    }

    pub fn column(&self, c: usize) -> Vec<u8> {
        self.cells.chunks_exact(self.k).map(|row| row[c]).collect()
    }

    /// The sub-array on the given columns, in the given order, re-sorted.
    pub fn select_columns(&self, columns: &[usize]) -> Result<OrthogonalArray> {
        let k = columns.len();
        check_shape(k, self.n)?;
        if let Some(&c) = columns.iter().find(|&&c| c >= self.k) {
            return Err(Error::Dimension(format!("column {} out of range 1..={}", c + 1, self.k)));
        }
        let mut distinct = columns.to_vec();
        distinct.sort_unstable();
        distinct.dedup();
        if distinct.len() != k {
            return Err(Error::Dimension("repeated column in selection".into()));
        }
        let cells: Vec<u8> =
            self.cells.chunks_exact(self.k).flat_map(|row| columns.iter().map(move |&c| row[c])).collect();
        let (cells, _) = sort_cells(k, self.n, &cells);
        Ok(OrthogonalArray { k, n: self.n, cells })
    }

    /// Number of columns in which two rows agree.
    pub fn agreements(&self, r1: usize, r2: usize) -> usize {
        self.row(r1).iter().zip(self.row(r2)).filter(|(a, b)| a == b).count()
    }

    pub(crate) fn from_sorted_unchecked(k: usize, n: usize, cells: Vec<u8>) -> Self {
        debug_assert!(OrthogonalArray::from_cells(k, n, cells.clone()).map(|a| a.cells) == Ok(cells.clone()));
        OrthogonalArray { k, n, cells }
    }
}

impl fmt::Debug for OrthogonalArray {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "OA({},{})", self.k, self.n)?;
        for row in self.cells.chunks_exact(self.k) {
            let line: Vec<String> = row.iter().map(|v| v.to_string()).collect();
            writeln!(f, "  {}", line.join(" "))?;
        }
        Ok(())
    }
}

fn check_shape(k: usize, n: usize) -> Result<()> {
    if !(2..=255).contains(&n) {
        return Err(Error::Dimension(format!("alphabet size {n} out of range 2..=255")));
    }
    if k < 3 || k > n + 1 {
        return Err(Error::Dimension(format!("need 3 <= k <= n+1, got k={k}, n={n}")));
    }
    Ok(())
}

/// Sorts rows into storage order and returns the parity of the sorting
/// permutation. Assumes columns 0 and 1 are orthogonal.
fn sort_cells(k: usize, n: usize, cells: &[u8]) -> (Vec<u8>, Bit) {
    let target: Vec<usize> = cells.chunks_exact(k).map(|row| row[0] as usize * n + row[1] as usize).collect();
    let mut sorted = vec![0u8; cells.len()];
    for (r, &t) in target.iter().enumerate() {
        sorted[t * k..(t + 1) * k].copy_from_slice(&cells[r * k..(r + 1) * k]);
    }
    let mut seen = vec![false; n * n];
    let parity = parity_of(n * n, |r| target[r], &mut seen);
    (sorted, parity)
}

/// Builds the OA whose row `[r, c, M_1[r][c], ...]` lists each cell of the
/// squares in the given order.
pub fn mols_to_oa(squares: &[LatinSquare]) -> Result<OrthogonalArray> {
    let first = squares.first().ok_or_else(|| Error::Dimension("at least one Latin square is required".into()))?;
    let n = first.order();
    if let Some(sq) = squares.iter().find(|sq| sq.order() != n) {
        return Err(Error::Dimension(format!("squares of orders {n} and {} cannot be combined", sq.order())));
    }
    let k = squares.len() + 2;
    check_shape(k, n)?;
    for (i, a) in squares.iter().enumerate() {
        for (j, b) in squares.iter().enumerate().skip(i + 1) {
            if let Some(pair) = a.orthogonality_defect(b) {
                return Err(Error::SquaresNotOrthogonal { first: i + 1, second: j + 1, pair });
            }
        }
    }
    let mut cells = Vec::with_capacity(k * n * n);
    for r in 0..n {
        for c in 0..n {
            cells.push(r as u8);
            cells.push(c as u8);
            cells.extend(squares.iter().map(|sq| sq.get(r, c) as u8));
        }
    }
    Ok(OrthogonalArray { k, n, cells })
}

/// As [`mols_to_oa`] for an unordered collection: the squares are sorted
/// lexicographically by their cells first.
pub fn mols_set_to_oa(squares: &[LatinSquare]) -> Result<OrthogonalArray> {
    let mut sorted = squares.to_vec();
    sorted.sort();
    mols_to_oa(&sorted)
}

/// Reads columns 3.. of an OA as Latin squares indexed by columns 1 and 2.
pub fn oa_to_mols(a: &OrthogonalArray) -> Vec<LatinSquare> {
    let (k, n) = (a.k, a.n);
    (2..k)
        .map(|col| {
            // Storage order puts the row for (r, c) at index r * n + c.
            let cells = a.cells.chunks_exact(k).map(|row| row[col]).collect();
            LatinSquare::from_cells_unchecked(n, cells)
        })
        .collect()
}

/// An isotopy or conjugacy operation on an OA.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Transform {
    /// Logical row `r` moves to position `gamma(r)`; acts on `0..n^2`.
    RowPermutation(Permutation),
    /// Column `c` moves to position `gamma(c)`; acts on `0..k`.
    ColumnPermutation(Permutation),
    /// Every entry `s` in `column` becomes `gamma(s)`.
    SymbolPermutation { column: usize, gamma: Permutation },
}

/// The result of [`apply_transform`].
///
/// `logical_row_parity` is the parity of the row permutation the transform
/// itself performs (nonzero only for row permutations). `storage_parity` is
/// the parity of the permutation that restores lexicographic order afterwards.
/// Each of them complements every off-diagonal σ-parity bit when odd.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TransformOutcome {
    pub array: OrthogonalArray,
    pub logical_row_parity: Bit,
    pub storage_parity: Bit,
}

pub fn apply_transform(a: &OrthogonalArray, t: &Transform) -> Result<TransformOutcome> {
    let (k, n) = (a.k, a.n);
    let (cells, logical_row_parity) = match t {
        Transform::RowPermutation(gamma) => {
            expect_degree(gamma, n * n, "row permutation")?;
            let mut cells = vec![0u8; a.cells.len()];
            for r in 0..n * n {
                let to = gamma.apply(r);
                cells[to * k..(to + 1) * k].copy_from_slice(a.row(r));
            }
            (cells, gamma.parity())
        }
        Transform::ColumnPermutation(gamma) => {
            expect_degree(gamma, k, "column permutation")?;
            let mut cells = vec![0u8; a.cells.len()];
            for r in 0..n * n {
                for c in 0..k {
                    cells[r * k + gamma.apply(c)] = a.cells[r * k + c];
                }
            }
            (cells, 0)
        }
        Transform::SymbolPermutation { column, gamma } => {
            if *column >= k {
                return Err(Error::Dimension(format!("column {} out of range 1..={k}", column + 1)));
            }
            expect_degree(gamma, n, "symbol permutation")?;
            let mut cells = a.cells.clone();
            for r in 0..n * n {
                let cell = &mut cells[r * k + column];
                *cell = gamma.apply(*cell as usize) as u8;
            }
            (cells, 0)
        }
    };
    let (cells, storage_parity) = sort_cells(k, n, &cells);
    Ok(TransformOutcome { array: OrthogonalArray { k, n, cells }, logical_row_parity, storage_parity })
}

fn expect_degree(p: &Permutation, degree: usize, what: &str) -> Result<()> {
    if p.len() != degree {
        return Err(Error::Dimension(format!("{what} acts on {} points, expected {degree}", p.len())));
    }
    Ok(())
}
