//! Minimal sparse matrix types used by assembly and the linear solver.
//!
//! `Coo` is the assembly-side triplet list; `Csr` is the deduplicated
//! compressed form used for matrix-vector products, symmetry checks and as
//! the hand-off format to the factorization backend. Conversion sorts
//! triplets and sums duplicates in a fixed order, so repeated assembly of
//! the same physical state yields bit-identical matrices.

use crate::error::{Error, Result};

/// Triplet (COO) sparse matrix.
#[derive(Debug, Clone)]
pub struct Coo {
    nrows: usize,
    ncols: usize,
    entries: Vec<(usize, usize, f64)>,
}

impl Coo {
    pub fn new(nrows: usize, ncols: usize) -> Self {
        Self {
            nrows,
            ncols,
            entries: Vec::new(),
        }
    }

    pub fn with_capacity(nrows: usize, ncols: usize, cap: usize) -> Self {
        Self {
            nrows,
            ncols,
            entries: Vec::with_capacity(cap),
        }
    }

    pub fn nrows(&self) -> usize {
        self.nrows
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn push(&mut self, row: usize, col: usize, val: f64) {
        debug_assert!(row < self.nrows && col < self.ncols);
        if val != 0.0 {
            self.entries.push((row, col, val));
        }
    }

    pub fn entries(&self) -> &[(usize, usize, f64)] {
        &self.entries
    }

    pub fn clear(&mut self) {
        self.entries.clear();
    }

    /// Compress to CSR, summing duplicates.
    pub fn to_csr(&self) -> Csr {
        let mut order: Vec<usize> = (0..self.entries.len()).collect();
        order.sort_unstable_by_key(|&i| (self.entries[i].0, self.entries[i].1));

        let mut indptr = vec![0usize; self.nrows + 1];
        let mut indices = Vec::with_capacity(self.entries.len());
        let mut vals: Vec<f64> = Vec::with_capacity(self.entries.len());

        let mut last: Option<(usize, usize)> = None;
        for &i in &order {
            let (r, c, v) = self.entries[i];
            if last == Some((r, c)) {
                *vals.last_mut().unwrap() += v;
            } else {
                indptr[r + 1] += 1;
                indices.push(c);
                vals.push(v);
                last = Some((r, c));
            }
        }
        for r in 0..self.nrows {
            indptr[r + 1] += indptr[r];
        }
        Csr {
            nrows: self.nrows,
            ncols: self.ncols,
            indptr,
            indices,
            vals,
        }
    }
}

/// Compressed sparse row matrix with sorted, unique column indices per row.
#[derive(Debug, Clone)]
pub struct Csr {
    nrows: usize,
    ncols: usize,
    indptr: Vec<usize>,
    indices: Vec<usize>,
    vals: Vec<f64>,
}

impl Csr {
    pub fn nrows(&self) -> usize {
        self.nrows
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn nnz(&self) -> usize {
        self.vals.len()
    }

    pub fn row(&self, r: usize) -> (&[usize], &[f64]) {
        let (a, b) = (self.indptr[r], self.indptr[r + 1]);
        (&self.indices[a..b], &self.vals[a..b])
    }

    pub fn get(&self, r: usize, c: usize) -> f64 {
        let (cols, vals) = self.row(r);
        match cols.binary_search(&c) {
            Ok(k) => vals[k],
            Err(_) => 0.0,
        }
    }

    pub fn matvec(&self, x: &[f64]) -> Vec<f64> {
        assert_eq!(x.len(), self.ncols);
        let mut y = vec![0.0; self.nrows];
        for r in 0..self.nrows {
            let (cols, vals) = self.row(r);
            let mut acc = 0.0;
            for (c, v) in cols.iter().zip(vals) {
                acc += v * x[*c];
            }
            y[r] = acc;
        }
        y
    }

    /// y = A^T x without forming the transpose.
    pub fn matvec_t(&self, x: &[f64]) -> Vec<f64> {
        assert_eq!(x.len(), self.nrows);
        let mut y = vec![0.0; self.ncols];
        for r in 0..self.nrows {
            let (cols, vals) = self.row(r);
            for (c, v) in cols.iter().zip(vals) {
                y[*c] += v * x[r];
            }
        }
        y
    }

    pub fn max_abs(&self) -> f64 {
        self.vals.iter().fold(0.0f64, |m, v| m.max(v.abs()))
    }

    /// max |A - A^T| over all entries.
    pub fn symmetry_error(&self) -> f64 {
        assert_eq!(self.nrows, self.ncols);
        let mut err: f64 = 0.0;
        for r in 0..self.nrows {
            let (cols, vals) = self.row(r);
            for (c, v) in cols.iter().zip(vals) {
                err = err.max((v - self.get(*c, r)).abs());
            }
        }
        err
    }

    pub fn row_sum(&self, r: usize) -> f64 {
        let (_, vals) = self.row(r);
        vals.iter().sum()
    }

    pub fn to_dense(&self) -> Vec<Vec<f64>> {
        let mut d = vec![vec![0.0; self.ncols]; self.nrows];
        for r in 0..self.nrows {
            let (cols, vals) = self.row(r);
            for (c, v) in cols.iter().zip(vals) {
                d[r][*c] = *v;
            }
        }
        d
    }

    pub fn diag(&self) -> Vec<f64> {
        (0..self.nrows.min(self.ncols))
            .map(|i| self.get(i, i))
            .collect()
    }

    /// Structural check used before factorization: every row and column of a
    /// square matrix must hold at least one entry.
    pub fn check_structurally_nonsingular(&self) -> Result<()> {
        if self.nrows != self.ncols {
            return Err(Error::Consistency(format!(
                "matrix is {}x{}, not square",
                self.nrows, self.ncols
            )));
        }
        let mut col_seen = vec![false; self.ncols];
        for r in 0..self.nrows {
            let (cols, _) = self.row(r);
            if cols.is_empty() {
                return Err(Error::StructuralSingularity(format!("empty row {r}")));
            }
            for c in cols {
                col_seen[*c] = true;
            }
        }
        if let Some(c) = col_seen.iter().position(|s| !s) {
            return Err(Error::StructuralSingularity(format!("empty column {c}")));
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn duplicates_are_summed() {
        let mut a = Coo::new(2, 2);
        a.push(0, 0, 1.0);
        a.push(0, 0, 2.5);
        a.push(1, 0, -1.0);
        let m = a.to_csr();
        assert_eq!(m.nnz(), 2);
        assert_eq!(m.get(0, 0), 3.5);
        assert_eq!(m.get(1, 0), -1.0);
        assert_eq!(m.get(1, 1), 0.0);
    }

    #[test]
    fn matvec_and_transpose() {
        let mut a = Coo::new(2, 3);
        a.push(0, 0, 1.0);
        a.push(0, 2, 2.0);
        a.push(1, 1, 3.0);
        let m = a.to_csr();
        assert_eq!(m.matvec(&[1.0, 1.0, 1.0]), vec![3.0, 3.0]);
        assert_eq!(m.matvec_t(&[1.0, 1.0]), vec![1.0, 3.0, 2.0]);
    }

    #[test]
    fn symmetry_error_detects_asymmetry() {
        let mut a = Coo::new(2, 2);
        a.push(0, 1, 1.0);
        a.push(1, 0, 1.0 + 1e-3);
        a.push(0, 0, 1.0);
        a.push(1, 1, 1.0);
        let e = a.to_csr().symmetry_error();
        assert!((e - 1e-3).abs() < 1e-12);
    }

    #[test]
    fn structural_singularity_detected() {
        let mut a = Coo::new(2, 2);
        a.push(0, 0, 1.0);
        assert!(a.to_csr().check_structurally_nonsingular().is_err());
    }
}
