use crate::error::{MatroidError, Result};
use crate::ground::{ElementSet, MAX_ELEMENTS};
use crate::oracle::Independence;

/// A matrix over GF(2) whose columns are the elements.
///
/// Column `j` is stored as a `u64` with bit `i` holding entry `(i, j)`, so at
/// most 64 rows are supported.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BinaryRep {
    rows: usize,
    columns: Vec<u64>,
}

impl BinaryRep {
    pub fn new(rows: usize, columns: Vec<u64>) -> Result<Self> {
        if rows > 64 {
            return Err(MatroidError::Domain(format!("{rows} rows; at most 64 are supported")));
        }
        if columns.len() > MAX_ELEMENTS {
            return Err(MatroidError::TooLarge(columns.len()));
        }
        let mask = if rows == 64 { u64::MAX } else { (1u64 << rows) - 1 };
        if let Some(j) = columns.iter().position(|&c| c & !mask != 0) {
            return Err(MatroidError::Domain(format!(
                "column {} has entries beyond row {rows}",
                j + 1
            )));
        }
        Ok(BinaryRep { rows, columns })
    }

    /// Builds the matrix from rows of 0/1 entries.
    pub fn from_rows(rows: &[Vec<u8>]) -> Result<Self> {
        let n = rows.first().map_or(0, Vec::len);
        let mut columns = vec![0u64; n];
        for (i, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(MatroidError::Domain(format!(
                    "row {} has {} entries, expected {n}",
                    i + 1,
                    row.len()
                )));
            }
            for (j, &b) in row.iter().enumerate() {
                match b {
                    0 => {}
                    1 if i < 64 => columns[j] |= 1u64 << i,
                    1 => {}
                    _ => return Err(MatroidError::Domain(format!("entry {b} is not a bit"))),
                }
            }
        }
        BinaryRep::new(rows.len(), columns)
    }

    /// All-zero matrix: every element is a loop.
    pub fn zeros(rows: usize, n: usize) -> Self {
        BinaryRep { rows, columns: vec![0; n] }
    }

    /// The `n x n` identity: the free matroid.
    pub fn identity(n: usize) -> Self {
        BinaryRep {
            rows: n,
            columns: (0..n).map(|j| 1u64 << j).collect(),
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.columns.len()
    }

    pub fn column(&self, j: usize) -> u64 {
        self.columns[j]
    }

    pub fn columns(&self) -> &[u64] {
        &self.columns
    }

    pub fn entry(&self, i: usize, j: usize) -> bool {
        self.columns[j] >> i & 1 == 1
    }

    /// Linear independence of the columns in `set`, by elimination on an XOR basis.
    pub fn is_independent(&self, set: ElementSet) -> bool {
        if set.len() > self.rows {
            return false;
        }
        // basis[b] holds a reduced vector whose highest set bit is b.
        let mut basis = [0u64; 64];
        for j in set.iter() {
            let mut v = self.columns[j];
            while v != 0 {
                let top = 63 - v.leading_zeros() as usize;
                if basis[top] == 0 {
                    basis[top] = v;
                    break;
                }
                v ^= basis[top];
            }
            if v == 0 {
                return false;
            }
        }
        true
    }
}

impl Independence for BinaryRep {
    fn len(&self) -> usize {
        self.columns.len()
    }

    fn is_independent(&self, set: ElementSet) -> bool {
        BinaryRep::is_independent(self, set)
    }
}
