use nalgebra::{DMatrix, DVector};

/// Real sparse matrix in compressed-column form.
#[derive(Clone, Debug, PartialEq)]
pub struct SparseMatrix {
    nrows: usize,
    ncols: usize,
    colptr: Vec<usize>,
    rowidx: Vec<usize>,
    values: Vec<f64>,
}

impl SparseMatrix {
    /// Build from per-column `(row, value)` lists; duplicates are summed and
    /// exact zeros dropped.
    pub fn from_columns(nrows: usize, columns: Vec<Vec<(usize, f64)>>) -> Self {
        let ncols = columns.len();
        let mut colptr = Vec::with_capacity(ncols + 1);
        let mut rowidx = Vec::new();
        let mut values = Vec::new();
        colptr.push(0);
        for mut col in columns {
            col.sort_unstable_by_key(|&(r, _)| r);
            let mut k = 0;
            while k < col.len() {
                let r = col[k].0;
                let mut v = 0.0;
                while k < col.len() && col[k].0 == r {
                    v += col[k].1;
                    k += 1;
                }
                if v != 0.0 {
                    rowidx.push(r);
                    values.push(v);
                }
            }
            colptr.push(rowidx.len());
        }
        SparseMatrix { nrows, ncols, colptr, rowidx, values }
    }

    pub fn zeros(nrows: usize, ncols: usize) -> Self {
        SparseMatrix { nrows, ncols, colptr: vec![0; ncols + 1], rowidx: Vec::new(), values: Vec::new() }
    }

    pub fn identity(n: usize) -> Self {
        SparseMatrix {
            nrows: n,
            ncols: n,
            colptr: (0..=n).collect(),
            rowidx: (0..n).collect(),
            values: vec![1.0; n],
        }
    }

    pub fn from_dense(m: &DMatrix<f64>) -> Self {
        let columns = (0..m.ncols())
            .map(|c| (0..m.nrows()).filter(|&r| m[(r, c)] != 0.0).map(|r| (r, m[(r, c)])).collect())
            .collect();
        Self::from_columns(m.nrows(), columns)
    }

    pub fn nrows(&self) -> usize {
        self.nrows
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn nnz(&self) -> usize {
        self.values.len()
    }

    pub fn column(&self, j: usize) -> impl Iterator<Item = (usize, f64)> + '_ {
        let range = self.colptr[j]..self.colptr[j + 1];
        self.rowidx[range.clone()].iter().copied().zip(self.values[range].iter().copied())
    }

    pub fn get(&self, r: usize, c: usize) -> f64 {
        self.column(c).find(|&(i, _)| i == r).map_or(0.0, |(_, v)| v)
    }

    pub fn mul_vec(&self, x: &DVector<f64>) -> DVector<f64> {
        assert_eq!(x.len(), self.ncols, "vector length mismatch");
        let mut y = DVector::zeros(self.nrows);
        for j in 0..self.ncols {
            let xj = x[j];
            if xj != 0.0 {
                for (i, v) in self.column(j) {
                    y[i] += v * xj;
                }
            }
        }
        y
    }

    pub fn transpose(&self) -> SparseMatrix {
        let mut columns: Vec<Vec<(usize, f64)>> = vec![Vec::new(); self.nrows];
        for j in 0..self.ncols {
            for (i, v) in self.column(j) {
                columns[i].push((j, v));
            }
        }
        Self::from_columns(self.ncols, columns)
    }

    /// `self · other`.
    pub fn mul(&self, other: &SparseMatrix) -> SparseMatrix {
        assert_eq!(self.ncols, other.nrows, "inner dimensions differ");
        let mut acc = vec![0.0; self.nrows];
        let mut touched: Vec<usize> = Vec::new();
        let mut mark = vec![false; self.nrows];
        let columns = (0..other.ncols)
            .map(|j| {
                for (k, b) in other.column(j) {
                    for (i, a) in self.column(k) {
                        if !mark[i] {
                            mark[i] = true;
                            touched.push(i);
                        }
                        acc[i] += a * b;
                    }
                }
                let col: Vec<(usize, f64)> = touched.iter().map(|&i| (i, acc[i])).collect();
                for &i in &touched {
                    acc[i] = 0.0;
                    mark[i] = false;
                }
                touched.clear();
                col
            })
            .collect();
        Self::from_columns(self.nrows, columns)
    }

    /// `a·self + b·other`.
    pub fn combine(&self, a: f64, other: &SparseMatrix, b: f64) -> SparseMatrix {
        assert_eq!((self.nrows, self.ncols), (other.nrows, other.ncols), "shape mismatch");
        let columns = (0..self.ncols)
            .map(|j| {
                self.column(j)
                    .map(|(i, v)| (i, a * v))
                    .chain(other.column(j).map(|(i, v)| (i, b * v)))
                    .collect()
            })
            .collect();
        Self::from_columns(self.nrows, columns)
    }

    pub fn add(&self, other: &SparseMatrix) -> SparseMatrix {
        self.combine(1.0, other, 1.0)
    }

    pub fn sub(&self, other: &SparseMatrix) -> SparseMatrix {
        self.combine(1.0, other, -1.0)
    }

    pub fn scale(&self, c: f64) -> SparseMatrix {
        let mut out = self.clone();
        out.values.iter_mut().for_each(|v| *v *= c);
        out
    }

    /// `self·other − other·self`.
    pub fn commutator(&self, other: &SparseMatrix) -> SparseMatrix {
        self.mul(other).sub(&other.mul(self))
    }

    /// `self·other + other·self`.
    pub fn anticommutator(&self, other: &SparseMatrix) -> SparseMatrix {
        self.mul(other).add(&other.mul(self))
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.values.iter().map(|v| v * v).sum::<f64>().sqrt()
    }

    /// Frobenius norm of the columns selected by `keep`.
    pub fn frobenius_norm_on(&self, keep: impl Fn(usize) -> bool) -> f64 {
        (0..self.ncols)
            .filter(|&j| keep(j))
            .flat_map(|j| self.column(j).map(|(_, v)| v * v))
            .sum::<f64>()
            .sqrt()
    }

    pub fn max_abs(&self) -> f64 {
        self.values.iter().fold(0.0_f64, |m, v| m.max(v.abs()))
    }

    pub fn to_dense(&self) -> DMatrix<f64> {
        let mut m = DMatrix::zeros(self.nrows, self.ncols);
        for j in 0..self.ncols {
            for (i, v) in self.column(j) {
                m[(i, j)] += v;
            }
        }
        m
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn product_matches_dense() {
        let a = DMatrix::from_row_slice(2, 3, &[1.0, 0.0, 2.0, 0.0, 3.0, 0.0]);
        let b = DMatrix::from_row_slice(3, 2, &[0.0, 1.0, 4.0, 0.0, 5.0, 6.0]);
        let p = SparseMatrix::from_dense(&a).mul(&SparseMatrix::from_dense(&b));
        assert_eq!(p.to_dense(), &a * &b);
        assert_eq!(SparseMatrix::from_dense(&a).transpose().to_dense(), a.transpose());
    }
}
