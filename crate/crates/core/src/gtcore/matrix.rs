use std::sync::OnceLock;

use super::BitVec;
use crate::error::{Error, Result};

/// Binary measurement matrix stored row-sparse.
///
/// A column-sparse view is built lazily on first use and cached; the matrix
/// is otherwise immutable.
#[derive(Clone)]
pub struct BitMatrix {
    rows: usize,
    cols: usize,
    row_supports: Vec<Vec<usize>>,
    columns: OnceLock<Vec<Vec<usize>>>,
}

impl BitMatrix {
    /// Validates and sorts each row.
    pub fn new(rows: usize, cols: usize, mut row_supports: Vec<Vec<usize>>) -> Result<Self> {
        if row_supports.len() != rows {
            return Err(Error::mismatch("row count", rows, row_supports.len()));
        }
        for row in &mut row_supports {
            row.sort_unstable();
            if row.windows(2).any(|w| w[0] == w[1]) {
                return Err(Error::InvalidParameter(
                    "duplicate column index in a row".into(),
                ));
            }
            if let Some(&last) = row.last() {
                if last >= cols {
                    return Err(Error::IndexOutOfRange {
                        index: last,
                        universe: cols,
                    });
                }
            }
        }
        Ok(BitMatrix {
            rows,
            cols,
            row_supports,
            columns: OnceLock::new(),
        })
    }

    /// Builds a matrix from per-column row supports.
    pub fn from_columns(rows: usize, columns: &[Vec<usize>]) -> Result<Self> {
        let mut row_supports = vec![Vec::new(); rows];
        for (j, col) in columns.iter().enumerate() {
            for &i in col {
                if i >= rows {
                    return Err(Error::IndexOutOfRange {
                        index: i,
                        universe: rows,
                    });
                }
                row_supports[i].push(j);
            }
        }
        Self::new(rows, columns.len(), row_supports)
    }

    pub fn identity(n: usize) -> Self {
        BitMatrix::new(n, n, (0..n).map(|i| vec![i]).collect()).expect("identity is valid")
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[usize] {
        &self.row_supports[i]
    }

    pub fn row_supports(&self) -> &[Vec<usize>] {
        &self.row_supports
    }

    pub fn get(&self, i: usize, j: usize) -> bool {
        self.row_supports[i].binary_search(&j).is_ok()
    }

    /// Total number of 1 entries.
    pub fn ones(&self) -> usize {
        self.row_supports.iter().map(Vec::len).sum()
    }

    /// Per-column sorted row indices.
    pub fn columns(&self) -> &[Vec<usize>] {
        self.columns.get_or_init(|| {
            let mut cols = vec![Vec::new(); self.cols];
            for (i, row) in self.row_supports.iter().enumerate() {
                for &j in row {
                    cols[j].push(i);
                }
            }
            cols
        })
    }

    pub fn column(&self, j: usize) -> &[usize] {
        &self.columns()[j]
    }

    pub fn column_weight(&self, j: usize) -> usize {
        self.columns()[j].len()
    }

    pub fn column_weights(&self) -> Vec<usize> {
        self.columns().iter().map(Vec::len).collect()
    }

    /// Common column weight, if every column has the same weight.
    pub fn uniform_column_weight(&self) -> Option<usize> {
        let cols = self.columns();
        let w = cols.first().map_or(0, Vec::len);
        cols.iter().all(|c| c.len() == w).then_some(w)
    }

    /// Column `j` as a dense bit vector of length `rows`.
    pub fn column_bits(&self, j: usize) -> BitVec {
        BitVec::from_indices(self.rows, self.column(j)).expect("column rows in range")
    }

    /// Copy of the matrix with columns reordered or repeated: column `j` of
    /// the result is column `picks[j]` of `self`.
    pub fn select_columns(&self, picks: &[usize]) -> Result<BitMatrix> {
        let cols = self.columns();
        let mut chosen = Vec::with_capacity(picks.len());
        for &p in picks {
            let col = cols.get(p).ok_or(Error::IndexOutOfRange {
                index: p,
                universe: self.cols,
            })?;
            chosen.push(col.clone());
        }
        BitMatrix::from_columns(self.rows, &chosen)
    }
}

impl PartialEq for BitMatrix {
    fn eq(&self, other: &Self) -> bool {
        self.rows == other.rows
            && self.cols == other.cols
            && self.row_supports == other.row_supports
    }
}

impl Eq for BitMatrix {}

impl std::fmt::Debug for BitMatrix {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "BitMatrix({}x{}, {} ones)",
            self.rows,
            self.cols,
            self.ones()
        )
    }
}
