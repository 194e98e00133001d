//! Dense matrices over the `u32`-packed fields of [`crate::field`].
//!
//! These back the classical code constructions, where sizes stay in the tens
//! of rows and columns. Hot loops over GF(2) work on the bit-packed
//! symplectic rows in [`crate::stabilizer`] instead.

use crate::field::Field;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix {
    cols: usize,
    rows: Vec<Vec<u32>>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { cols, rows: vec![vec![0; cols]; rows] }
    }

    pub fn empty(cols: usize) -> Self {
        Matrix { cols, rows: Vec::new() }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.rows[i][i] = 1;
        }
        m
    }

    /// Panics if the rows have differing lengths.
    pub fn from_rows(cols: usize, rows: Vec<Vec<u32>>) -> Self {
        assert!(rows.iter().all(|r| r.len() == cols), "ragged matrix");
        Matrix { cols, rows }
    }

    pub fn n_rows(&self) -> usize {
        self.rows.len()
    }

    pub fn n_cols(&self) -> usize {
        self.cols
    }

    pub fn rows(&self) -> &[Vec<u32>] {
        &self.rows
    }

    pub fn row(&self, i: usize) -> &[u32] {
        &self.rows[i]
    }

    pub fn get(&self, i: usize, j: usize) -> u32 {
        self.rows[i][j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: u32) {
        self.rows[i][j] = v;
    }

    pub fn push_row(&mut self, row: Vec<u32>) {
        assert_eq!(row.len(), self.cols);
        self.rows.push(row);
    }

    pub fn is_zero(&self) -> bool {
        self.rows.iter().all(|r| r.iter().all(|&x| x == 0))
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.cols, self.rows.len());
        for (i, row) in self.rows.iter().enumerate() {
            for (j, &x) in row.iter().enumerate() {
                t.rows[j][i] = x;
            }
        }
        t
    }

    pub fn mul<F: Field>(&self, other: &Matrix, f: &F) -> Matrix {
        assert_eq!(self.cols, other.rows.len(), "dimension mismatch");
        let mut out = Matrix::zeros(self.rows.len(), other.cols);
        for (i, row) in self.rows.iter().enumerate() {
            for (l, &a) in row.iter().enumerate() {
                if a == 0 {
                    continue;
                }
                for (j, &b) in other.rows[l].iter().enumerate() {
                    out.rows[i][j] ^= f.mul(a, b);
                }
            }
        }
        out
    }

    /// Applies `g` entrywise.
    pub fn map(&self, g: impl Fn(u32) -> u32) -> Matrix {
        Matrix { cols: self.cols, rows: self.rows.iter().map(|r| r.iter().map(|&x| g(x)).collect()).collect() }
    }

    /// Reduced row echelon form in place; zero rows are dropped. Returns the
    /// pivot column of each remaining row.
    pub fn rref<F: Field>(&mut self, f: &F) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            let Some(p) = (r..self.rows.len()).find(|&i| self.rows[i][c] != 0) else {
                continue;
            };
            self.rows.swap(r, p);
            let inv = f.inv(self.rows[r][c]).expect("nonzero pivot");
            for x in self.rows[r].iter_mut() {
                *x = f.mul(*x, inv);
            }
            let pivot_row = self.rows[r].clone();
            for (i, row) in self.rows.iter_mut().enumerate() {
                if i == r || row[c] == 0 {
                    continue;
                }
                let factor = row[c];
                for (x, &y) in row.iter_mut().zip(&pivot_row) {
                    *x ^= f.mul(factor, y);
                }
            }
            pivots.push(c);
            r += 1;
            if r == self.rows.len() {
                break;
            }
        }
        self.rows.truncate(r);
        pivots
    }

    pub fn rank<F: Field>(&self, f: &F) -> usize {
        self.clone().rref(f).len()
    }

    /// A basis of the right null space {x : A xᵀ = 0}, one vector per row.
    pub fn nullspace<F: Field>(&self, f: &F) -> Matrix {
        let mut red = self.clone();
        let pivots = red.rref(f);
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut basis = Matrix::empty(self.cols);
        for &fc in &free {
            let mut v = vec![0u32; self.cols];
            v[fc] = 1;
            for (row, &pc) in red.rows.iter().zip(&pivots) {
                // char 2: -x = x
                v[pc] = row[fc];
            }
            basis.push_row(v);
        }
        basis
    }

    /// Whether `v` lies in the row space.
    pub fn row_space_contains<F: Field>(&self, v: &[u32], f: &F) -> bool {
        let base = self.rank(f);
        let mut ext = self.clone();
        ext.push_row(v.to_vec());
        ext.rank(f) == base
    }

    /// Stacks `other` below `self`.
    pub fn vstack(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.cols);
        let mut rows = self.rows.clone();
        rows.extend(other.rows.iter().cloned());
        Matrix { cols: self.cols, rows }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{Gf2, Gf4};

    #[test]
    fn rref_and_rank_binary() {
        let m = Matrix::from_rows(3, vec![vec![1, 1, 0], vec![0, 1, 1], vec![1, 0, 1]]);
        assert_eq!(m.rank(&Gf2), 2);
        let ns = m.nullspace(&Gf2);
        assert_eq!(ns.n_rows(), 1);
        assert_eq!(ns.row(0), &[1, 1, 1]);
    }

    #[test]
    fn nullspace_is_orthogonal_gf4() {
        let m = Matrix::from_rows(4, vec![vec![1, 2, 3, 0], vec![0, 1, 1, 2]]);
        let ns = m.nullspace(&Gf4);
        assert_eq!(ns.n_rows(), 2);
        assert!(m.mul(&ns.transpose(), &Gf4).is_zero());
    }

    #[test]
    fn identity_has_full_rank() {
        assert_eq!(Matrix::identity(5).rank(&Gf4), 5);
        assert_eq!(Matrix::identity(5).nullspace(&Gf4).n_rows(), 0);
    }
}
