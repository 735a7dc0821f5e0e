//! Dense matrices over a [`Scalar`] field: classical products and exact
//! elimination.

use std::fmt;

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Row-major dense matrix.
#[derive(Clone, PartialEq, Eq)]
pub struct Matrix<S> {
    rows: usize,
    cols: usize,
    data: Vec<S>,
}

/// Outcome of [`Matrix::solve`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Solution<S> {
    Unique(Vec<S>),
    /// The matrix is singular; carries a nonzero kernel vector.
    Singular(Vec<S>),
}

impl<S: Scalar> Matrix<S> {
    pub fn new(rows: usize, cols: usize, data: Vec<S>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::LengthMismatch { expected: rows * cols, found: data.len() });
        }
        Ok(Matrix { rows, cols, data })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![S::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = S::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<S>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            if row.len() != c {
                return Err(Error::LengthMismatch { expected: c, found: row.len() });
            }
            data.extend(row);
        }
        Ok(Matrix { rows: r, cols: c, data })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &S {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: S) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[S] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<S>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.data[j * self.rows + i] = self.get(i, j).clone();
            }
        }
        t
    }

    pub fn add(&self, rhs: &Self) -> Result<Self> {
        if (self.rows, self.cols) != (rhs.rows, rhs.cols) {
            return Err(Error::LengthMismatch { expected: self.data.len(), found: rhs.data.len() });
        }
        let data = self.data.iter().zip(&rhs.data).map(|(a, b)| a.add(b)).collect();
        Ok(Matrix { rows: self.rows, cols: self.cols, data })
    }

    /// Classical product.
    pub fn mul(&self, rhs: &Self) -> Result<Self> {
        if self.cols != rhs.rows {
            return Err(Error::LengthMismatch { expected: self.cols, found: rhs.rows });
        }
        let mut out = Self::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            let dst = &mut out.data[i * rhs.cols..(i + 1) * rhs.cols];
            for k in 0..self.cols {
                let a = &self.data[i * self.cols + k];
                if a.is_zero() {
                    continue;
                }
                for (d, b) in dst.iter_mut().zip(rhs.row(k)) {
                    if !b.is_zero() {
                        d.add_mul(a, b);
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn matvec(&self, v: &[S]) -> Result<Vec<S>> {
        if v.len() != self.cols {
            return Err(Error::LengthMismatch { expected: self.cols, found: v.len() });
        }
        Ok((0..self.rows)
            .map(|i| {
                let mut acc = S::zero();
                for (a, b) in self.row(i).iter().zip(v) {
                    if !a.is_zero() && !b.is_zero() {
                        acc.add_mul(a, b);
                    }
                }
                acc
            })
            .collect())
    }

    /// Determinant by fraction-free (Bareiss) elimination.
    pub fn determinant(&self) -> Result<S> {
        if self.rows != self.cols {
            return Err(Error::LengthMismatch { expected: self.rows, found: self.cols });
        }
        let n = self.rows;
        if n == 0 {
            return Ok(S::one());
        }
        let mut a = self.to_rows();
        let mut sign = false;
        let mut prev = S::one();
        for k in 0..n {
            let Some(p) = (k..n).find(|&i| !a[i][k].is_zero()) else {
                return Ok(S::zero());
            };
            if p != k {
                a.swap(p, k);
                sign = !sign;
            }
            let prev_inv = prev.inv().expect("nonzero pivot");
            for i in k + 1..n {
                for j in k + 1..n {
                    let mut v = a[i][j].mul(&a[k][k]);
                    v.sub_mul(&a[i][k], &a[k][j]);
                    a[i][j] = v.mul(&prev_inv);
                }
                a[i][k] = S::zero();
            }
            prev = a[k][k].clone();
        }
        let d = a[n - 1][n - 1].clone();
        Ok(if sign { d.neg() } else { d })
    }

    /// Reduced row echelon form; returns the pivot columns.
    fn rref(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(p) = (r..self.rows).find(|&i| !self.get(i, c).is_zero()) else {
                continue;
            };
            if p != r {
                for j in 0..self.cols {
                    self.data.swap(p * self.cols + j, r * self.cols + j);
                }
            }
            let inv = self.get(r, c).inv().expect("nonzero pivot");
            for j in c..self.cols {
                let v = self.get(r, j).mul(&inv);
                self.set(r, j, v);
            }
            for i in 0..self.rows {
                if i == r || self.get(i, c).is_zero() {
                    continue;
                }
                let f = self.get(i, c).clone();
                for j in c..self.cols {
                    if self.get(r, j).is_zero() {
                        continue;
                    }
                    let mut v = self.get(i, j).clone();
                    v.sub_mul(&f, self.get(r, j));
                    self.set(i, j, v);
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        self.clone().rref().len()
    }

    /// Solves the square system `self * x = b` by Gauss-Jordan elimination
    /// with first-nonzero pivoting. On a singular matrix returns a kernel
    /// vector instead.
    pub fn solve(&self, b: &[S]) -> Result<Solution<S>> {
        let n = self.rows;
        if self.cols != n {
            return Err(Error::LengthMismatch { expected: n, found: self.cols });
        }
        if b.len() != n {
            return Err(Error::LengthMismatch { expected: n, found: b.len() });
        }
        let mut aug = Self::zeros(n, n + 1);
        for (i, bi) in b.iter().enumerate() {
            for j in 0..n {
                aug.set(i, j, self.get(i, j).clone());
            }
            aug.set(i, n, bi.clone());
        }
        let pivots = aug.rref();
        let square: Vec<usize> = pivots.iter().copied().filter(|&c| c < n).collect();
        if square.len() == n {
            return Ok(Solution::Unique((0..n).map(|i| aug.get(i, n).clone()).collect()));
        }
        Ok(Solution::Singular(kernel_from_rref(&aug, &square, n)))
    }

    /// A nonzero vector in the right kernel, or `None` if the matrix has full
    /// column rank.
    pub fn kernel_vector(&self) -> Option<Vec<S>> {
        let mut m = self.clone();
        let pivots = m.rref();
        if pivots.len() == self.cols {
            return None;
        }
        Some(kernel_from_rref(&m, &pivots, self.cols))
    }
}

fn kernel_from_rref<S: Scalar>(m: &Matrix<S>, pivots: &[usize], n: usize) -> Vec<S> {
    let free = (0..n).find(|c| !pivots.contains(c)).expect("rank deficient");
    let mut x = vec![S::zero(); n];
    x[free] = S::one();
    for (r, &c) in pivots.iter().enumerate() {
        x[c] = m.get(r, free).neg();
    }
    x
}

impl<S: Scalar> fmt::Debug for Matrix<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.to_rows()).finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Rational;

    fn m(rows: &[&[i64]]) -> Matrix<Rational> {
        Matrix::from_rows(rows.iter().map(|r| r.iter().map(|&v| Rational::from_i64(v)).collect()).collect())
            .unwrap()
    }

    #[test]
    fn det_and_rank() {
        assert_eq!(m(&[&[2, 1], &[1, 3]]).determinant().unwrap(), Rational::from_i64(5));
        assert_eq!(m(&[&[0, 1], &[1, 0]]).determinant().unwrap(), Rational::from_i64(-1));
        let sing = m(&[&[1, 2, 3], &[2, 4, 6], &[1, 0, 1]]);
        assert!(sing.determinant().unwrap().is_zero());
        assert_eq!(sing.rank(), 2);
        let v = m(&[&[1, 1, 1], &[1, 2, 4], &[1, 3, 9]]);
        assert_eq!(v.determinant().unwrap(), Rational::from_i64(2));
    }

    #[test]
    fn solve_and_kernel() {
        let a = m(&[&[2, 1], &[1, 3]]);
        let b = vec![Rational::from_i64(3), Rational::from_i64(4)];
        let Solution::Unique(x) = a.solve(&b).unwrap() else { panic!() };
        assert_eq!(a.matvec(&x).unwrap(), b);
        let s = m(&[&[1, 2], &[2, 4]]);
        let Solution::Singular(k) = s.solve(&b).unwrap() else { panic!() };
        assert!(k.iter().any(|v| !v.is_zero()));
        assert!(s.matvec(&k).unwrap().iter().all(Rational::is_zero));
    }

    #[test]
    fn product() {
        let a = m(&[&[1, 2], &[3, 4]]);
        assert_eq!(a.mul(&Matrix::identity(2)).unwrap(), a);
        assert_eq!(a.mul(&a).unwrap(), m(&[&[7, 10], &[15, 22]]));
        assert_eq!(a.transpose(), m(&[&[1, 3], &[2, 4]]));
    }
}
