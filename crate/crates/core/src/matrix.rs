//! Dense matrices over a prime field and their rank.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::PrimeField;

/// A dense row-major matrix whose rows are vanishing conditions.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConditionMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<u64>,
    field: PrimeField,
}

impl ConditionMatrix {
    /// Builds a matrix from row-major entries, reducing each into `[0, p)`.
    pub fn new(rows: usize, cols: usize, mut entries: Vec<u64>, field: PrimeField) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::MalformedMatrix(format!(
                "{} entries for a {rows}x{cols} matrix",
                entries.len()
            )));
        }
        for e in entries.iter_mut() {
            *e = field.reduce(*e);
        }
        Ok(ConditionMatrix {
            rows,
            cols,
            entries,
            field,
        })
    }

    pub fn zeros(rows: usize, cols: usize, field: PrimeField) -> Self {
        ConditionMatrix {
            rows,
            cols,
            entries: vec![0; rows * cols],
            field,
        }
    }

    pub fn from_rows(rows: &[Vec<u64>], cols: usize, field: PrimeField) -> Result<Self> {
        let mut entries = Vec::with_capacity(rows.len() * cols);
        for (i, r) in rows.iter().enumerate() {
            if r.len() != cols {
                return Err(Error::MalformedMatrix(format!(
                    "row {i} has {} entries, expected {cols}",
                    r.len()
                )));
            }
            entries.extend_from_slice(r);
        }
        ConditionMatrix::new(rows.len(), cols, entries, field)
    }

    pub fn identity(size: usize, field: PrimeField) -> Self {
        let mut m = ConditionMatrix::zeros(size, size, field);
        for i in 0..size {
            m.entries[i * size + i] = 1 % field.modulus();
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn entries(&self) -> &[u64] {
        &self.entries
    }

    pub fn get(&self, r: usize, c: usize) -> u64 {
        self.entries[r * self.cols + c]
    }

    pub fn row(&self, r: usize) -> &[u64] {
        &self.entries[r * self.cols..(r + 1) * self.cols]
    }

    /// Appends the rows of `other`, which must share width and field.
    pub fn append(&mut self, other: &ConditionMatrix) -> Result<()> {
        if other.cols != self.cols || other.field != self.field {
            return Err(Error::MalformedMatrix("cannot stack incompatible matrices".into()));
        }
        self.entries.extend_from_slice(&other.entries);
        self.rows += other.rows;
        Ok(())
    }

    pub fn transpose(&self) -> ConditionMatrix {
        let mut entries = vec![0; self.entries.len()];
        for r in 0..self.rows {
            for c in 0..self.cols {
                entries[c * self.rows + r] = self.entries[r * self.cols + c];
            }
        }
        ConditionMatrix {
            rows: self.cols,
            cols: self.rows,
            entries,
            field: self.field,
        }
    }

    pub fn rank(&self) -> usize {
        rank(self)
    }

    /// Dimension of the space of coefficient vectors annihilated by every row.
    pub fn kernel_dimension(&self) -> usize {
        self.cols - rank(self)
    }
}

/// Rank by Gaussian elimination on a private copy. The pivot in each column
/// is the first nonzero entry at or below the current pivot row.
pub fn rank(m: &ConditionMatrix) -> usize {
    let (rows, cols) = (m.rows, m.cols);
    let f = m.field;
    let mut a = m.entries.clone();
    let mut pivot_row = 0;
    for col in 0..cols {
        if pivot_row == rows {
            break;
        }
        let Some(found) = (pivot_row..rows).find(|&r| a[r * cols + col] != 0) else {
            continue;
        };
        if found != pivot_row {
            for c in col..cols {
                a.swap(found * cols + c, pivot_row * cols + c);
            }
        }
        let inv = f.inv(a[pivot_row * cols + col]).expect("pivot is nonzero");
        for c in col..cols {
            a[pivot_row * cols + c] = f.mul(a[pivot_row * cols + c], inv);
        }
        let (head, tail) = a.split_at_mut((pivot_row + 1) * cols);
        let pivot = &head[pivot_row * cols..];
        for row in tail.chunks_exact_mut(cols) {
            let lead = row[col];
            if lead == 0 {
                continue;
            }
            let factor = f.neg(lead);
            for c in col..cols {
                row[c] = f.mul_add(row[c], factor, pivot[c]);
            }
        }
        pivot_row += 1;
    }
    pivot_row
}

/// Row echelon basis that grows one row at a time.
///
/// Stored row `i` has a unit in column `pivots[i]` and zeros in the pivot
/// columns of every earlier row, so reducing a new vector against the rows in
/// insertion order clears all pivot columns.
#[derive(Debug, Clone)]
pub struct EchelonBasis {
    field: PrimeField,
    cols: usize,
    rows: Vec<Vec<u64>>,
    pivots: Vec<usize>,
}

impl EchelonBasis {
    pub fn new(cols: usize, field: PrimeField) -> Self {
        EchelonBasis {
            field,
            cols,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    /// Adds `row` to the span. Returns whether the rank went up.
    pub fn insert(&mut self, row: &[u64]) -> bool {
        assert_eq!(row.len(), self.cols, "row width mismatch");
        if self.rows.len() == self.cols {
            return false;
        }
        let f = self.field;
        let mut v: Vec<u64> = row.iter().map(|&x| f.reduce(x)).collect();
        for (basis_row, &pc) in self.rows.iter().zip(&self.pivots) {
            let lead = v[pc];
            if lead == 0 {
                continue;
            }
            let factor = f.neg(lead);
            for (x, &b) in v.iter_mut().zip(basis_row) {
                if b != 0 {
                    *x = f.mul_add(*x, factor, b);
                }
            }
        }
        let Some(pc) = v.iter().position(|&x| x != 0) else {
            return false;
        };
        let inv = f.inv(v[pc]).expect("nonzero");
        for x in v.iter_mut() {
            *x = f.mul(*x, inv);
        }
        self.rows.push(v);
        self.pivots.push(pc);
        true
    }

    pub fn insert_all(&mut self, m: &ConditionMatrix) {
        for r in 0..m.rows() {
            self.insert(m.row(r));
        }
    }
}
