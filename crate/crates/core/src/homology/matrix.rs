use std::fmt::Write as _;

use crate::error::{Error, Result};

/// Sparse integer matrix stored by columns. Each column holds its nonzero
/// `(row, value)` pairs sorted by row.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct IntegerMatrix {
    rows: usize,
    cols: usize,
    columns: Vec<Vec<(u32, i64)>>,
}

impl IntegerMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, cols, columns: vec![Vec::new(); cols] }
    }

    /// Build from `(row, col, value)` triplets; repeated positions add up.
    pub fn from_triplets(
        rows: usize,
        cols: usize,
        entries: impl IntoIterator<Item = (usize, usize, i64)>,
    ) -> Result<Self> {
        let mut columns: Vec<Vec<(u32, i64)>> = vec![Vec::new(); cols];
        for (r, c, v) in entries {
            if r >= rows || c >= cols {
                return Err(Error::BasisMismatch(format!("entry ({r},{c}) outside a {rows}x{cols} matrix")));
            }
            columns[c].push((r as u32, v));
        }
        for col in &mut columns {
            col.sort_unstable_by_key(|e| e.0);
            let mut merged: Vec<(u32, i64)> = Vec::with_capacity(col.len());
            for &(r, v) in col.iter() {
                match merged.last_mut() {
                    Some(last) if last.0 == r => last.1 = last.1.checked_add(v).ok_or(Error::Overflow)?,
                    _ => merged.push((r, v)),
                }
            }
            merged.retain(|e| e.1 != 0);
            *col = merged;
        }
        Ok(Self { rows, cols, columns })
    }

    /// Build from row-major rows; all rows must have the same length.
    pub fn from_dense(rows: &[Vec<i64>]) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::BasisMismatch("ragged rows".into()));
        }
        let entries = rows
            .iter()
            .enumerate()
            .flat_map(|(i, r)| r.iter().enumerate().map(move |(j, &v)| (i, j, v)));
        Self::from_triplets(rows.len(), cols, entries)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn nnz(&self) -> usize {
        self.columns.iter().map(Vec::len).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.columns.iter().all(Vec::is_empty)
    }

    pub fn get(&self, row: usize, col: usize) -> i64 {
        self.columns
            .get(col)
            .and_then(|c| c.binary_search_by_key(&(row as u32), |e| e.0).ok().map(|k| c[k].1))
            .unwrap_or(0)
    }

    /// Nonzero entries of column `col` as `(row, value)`, ascending in row.
    pub fn column(&self, col: usize) -> &[(u32, i64)] {
        &self.columns[col]
    }

    /// Nonzero entries as `(row, col, value)`, column-major.
    pub fn triplets(&self) -> impl Iterator<Item = (usize, usize, i64)> + '_ {
        self.columns
            .iter()
            .enumerate()
            .flat_map(|(c, col)| col.iter().map(move |&(r, v)| (r as usize, c, v)))
    }

    pub fn to_dense(&self) -> Vec<Vec<i64>> {
        let mut out = vec![vec![0; self.cols]; self.rows];
        for (r, c, v) in self.triplets() {
            out[r][c] = v;
        }
        out
    }

    pub fn transpose(&self) -> Self {
        let mut columns: Vec<Vec<(u32, i64)>> = vec![Vec::new(); self.rows];
        for (r, c, v) in self.triplets() {
            columns[r].push((c as u32, v));
        }
        Self { rows: self.cols, cols: self.rows, columns }
    }

    /// `self · rhs` with checked arithmetic.
    pub fn mul(&self, rhs: &IntegerMatrix) -> Result<IntegerMatrix> {
        if self.cols != rhs.rows {
            return Err(Error::BasisMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let mut entries = Vec::new();
        for (j, col) in rhs.columns.iter().enumerate() {
            for &(k, b) in col {
                for &(i, a) in &self.columns[k as usize] {
                    entries.push((i as usize, j, a.checked_mul(b).ok_or(Error::Overflow)?));
                }
            }
        }
        Self::from_triplets(self.rows, rhs.cols, entries)
    }

    /// Sparse triplet text: a `rows cols` header, then one `row col value`
    /// line per nonzero entry.
    pub fn to_triplet_text(&self) -> String {
        let mut out = format!("{} {}\n", self.rows, self.cols);
        for (r, c, v) in self.triplets() {
            let _ = writeln!(out, "{r} {c} {v}");
        }
        out
    }
}
