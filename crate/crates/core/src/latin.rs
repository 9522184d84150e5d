use std::fmt;

use crate::error::{Error, Result};

/// A Latin square of order `n` over the symbols `0..n`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LatinSquare {
    n: usize,
    cells: Vec<u8>,
}

impl LatinSquare {
    /// Builds a square from row-major cells, checking the Latin property.
    pub fn new(n: usize, cells: Vec<u8>) -> Result<Self> {
        if n == 0 || n > 255 {
            return Err(Error::Dimension(format!("order {n} out of range 1..=255")));
        }
        if cells.len() != n * n {
            return Err(Error::Dimension(format!("expected {} cells for order {n}, got {}", n * n, cells.len())));
        }
        if let Some(&bad) = cells.iter().find(|&&v| v as usize >= n) {
            return Err(Error::SymbolOutOfRange { symbol: bad as usize, n });
        }
        let mut seen = vec![false; n];
        for r in 0..n {
            seen.fill(false);
            for c in 0..n {
                let v = cells[r * n + c] as usize;
                if seen[v] {
                    return Err(Error::NotLatin(format!("symbol {v} repeats in row {r}")));
                }
                seen[v] = true;
            }
        }
        for c in 0..n {
            seen.fill(false);
            for r in 0..n {
                let v = cells[r * n + c] as usize;
                if seen[v] {
                    return Err(Error::NotLatin(format!("symbol {v} repeats in column {c}")));
                }
                seen[v] = true;
            }
        }
        Ok(LatinSquare { n, cells })
    }

    pub fn from_rows(rows: &[Vec<usize>]) -> Result<Self> {
        let n = rows.len();
        let mut cells = Vec::with_capacity(n * n);
        for row in rows {
            if row.len() != n {
                return Err(Error::Dimension(format!("row of length {} in square of order {n}", row.len())));
            }
            for &v in row {
                if v >= n {
                    return Err(Error::SymbolOutOfRange { symbol: v, n });
                }
                cells.push(v as u8);
            }
        }
        LatinSquare::new(n, cells)
    }

    /// `L[r][c] = (r + c) mod n`, the Cayley table of the cyclic group.
    pub fn cyclic(n: usize) -> Self {
        let cells = (0..n).flat_map(|r| (0..n).map(move |c| ((r + c) % n) as u8)).collect();
        LatinSquare { n, cells }
    }

    pub(crate) fn from_cells_unchecked(n: usize, cells: Vec<u8>) -> Self {
        debug_assert!(LatinSquare::new(n, cells.clone()).is_ok());
        LatinSquare { n, cells }
    }

    pub fn order(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> usize {
        self.cells[r * self.n + c] as usize
    }

    pub fn cells(&self) -> &[u8] {
        &self.cells
    }

    pub fn rows(&self) -> Vec<Vec<usize>> {
        self.cells.chunks(self.n).map(|row| row.iter().map(|&v| v as usize).collect()).collect()
    }

    pub fn transpose(&self) -> LatinSquare {
        let n = self.n;
        let cells = (0..n).flat_map(|r| (0..n).map(move |c| (r, c))).map(|(r, c)| self.cells[c * n + r]).collect();
        LatinSquare { n, cells }
    }

    /// Returns the first repeated ordered pair when the two squares are
    /// superimposed, or `None` when they are orthogonal.
    pub fn orthogonality_defect(&self, other: &LatinSquare) -> Option<(usize, usize)> {
        assert_eq!(self.n, other.n);
        let n = self.n;
        let mut seen = vec![false; n * n];
        for (&a, &b) in self.cells.iter().zip(&other.cells) {
            let key = a as usize * n + b as usize;
            if seen[key] {
                return Some((a as usize, b as usize));
            }
            seen[key] = true;
        }
        None
    }

    pub fn is_orthogonal_to(&self, other: &LatinSquare) -> bool {
        self.orthogonality_defect(other).is_none()
    }
}

impl fmt::Debug for LatinSquare {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "LatinSquare({})", self.n)?;
        for row in self.cells.chunks(self.n) {
            let line: Vec<String> = row.iter().map(|v| v.to_string()).collect();
            writeln!(f, "  {}", line.join(" "))?;
        }
        Ok(())
    }
}
