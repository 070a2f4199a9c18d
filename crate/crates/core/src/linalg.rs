//! Exact linear algebra over the rationals: rank, kernels, and linear
//! solving by fraction-free-enough Gaussian elimination on `BigRational`
//! entries. Matrices here are tiny (tens of rows), so clarity wins over
//! pivoting heuristics.

use num::{BigRational, Zero};

pub type Rat = BigRational;

/// Dense rational matrix, row major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Mat {
    pub rows: usize,
    pub cols: usize,
    pub a: Vec<Vec<Rat>>,
}

impl Mat {
    pub fn zero(rows: usize, cols: usize) -> Self {
        Mat { rows, cols, a: vec![vec![Rat::zero(); cols]; rows] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Mat::zero(n, n);
        for i in 0..n {
            m.a[i][i] = Rat::from_integer(1.into());
        }
        m
    }

    pub fn from_rows(a: Vec<Vec<Rat>>) -> Self {
        let rows = a.len();
        let cols = a.first().map_or(0, |r| r.len());
        assert!(a.iter().all(|r| r.len() == cols), "ragged matrix");
        Mat { rows, cols, a }
    }

    /// Integer-entry constructor for fixtures and tests.
    pub fn from_i64(a: &[&[i64]]) -> Self {
        Mat::from_rows(
            a.iter()
                .map(|r| r.iter().map(|&x| Rat::from_integer(x.into())).collect())
                .collect(),
        )
    }

    pub fn mul(&self, other: &Mat) -> Mat {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        let mut out = Mat::zero(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                if self.a[i][k].is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let p = &self.a[i][k] * &other.a[k][j];
                    out.a[i][j] = &out.a[i][j] + p;
                }
            }
        }
        out
    }

    /// Stacks `self` on top of `other`.
    pub fn vstack(&self, other: &Mat) -> Mat {
        assert_eq!(self.cols, other.cols, "dimension mismatch");
        let mut a = self.a.clone();
        a.extend(other.a.iter().cloned());
        Mat::from_rows(a)
    }

    /// Reduces `self` in place to row echelon form and returns the pivot
    /// columns.
    fn echelonize(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..self.cols {
            let Some(p) = (row..self.rows).find(|&r| !self.a[r][col].is_zero()) else {
                continue;
            };
            self.a.swap(row, p);
            let inv = self.a[row][col].recip();
            for j in col..self.cols {
                self.a[row][j] = &self.a[row][j] * &inv;
            }
            for r in 0..self.rows {
                if r != row && !self.a[r][col].is_zero() {
                    let factor = self.a[r][col].clone();
                    for j in col..self.cols {
                        let d = &self.a[row][j] * &factor;
                        self.a[r][j] = &self.a[r][j] - d;
                    }
                }
            }
            pivots.push(col);
            row += 1;
            if row == self.rows {
                break;
            }
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        let mut m = self.clone();
        m.echelonize().len()
    }

    /// Basis of the right kernel `{x : Ax = 0}`.
    pub fn nullspace(&self) -> Vec<Vec<Rat>> {
        let mut m = self.clone();
        let pivots = m.echelonize();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut basis = Vec::new();
        for &f in &free {
            let mut v = vec![Rat::zero(); self.cols];
            v[f] = Rat::from_integer(1.into());
            for (r, &p) in pivots.iter().enumerate() {
                v[p] = -m.a[r][f].clone();
            }
            basis.push(v);
        }
        basis
    }

    pub fn nullity(&self) -> usize {
        self.cols - self.rank()
    }

    /// One solution of `Ax = b`, if the system is consistent. Free
    /// variables are set to zero.
    pub fn solve(&self, b: &[Rat]) -> Option<Vec<Rat>> {
        assert_eq!(b.len(), self.rows, "dimension mismatch");
        let mut aug = self.clone();
        for (r, bi) in b.iter().enumerate() {
            aug.a[r].push(bi.clone());
        }
        aug.cols += 1;
        let pivots = aug.echelonize();
        if pivots.contains(&self.cols) {
            return None;
        }
        let mut x = vec![Rat::zero(); self.cols];
        for (r, &p) in pivots.iter().enumerate() {
            x[p] = aug.a[r][self.cols].clone();
        }
        Some(x)
    }
}
