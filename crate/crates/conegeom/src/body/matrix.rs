//! Minimal dense square-matrix wrapper. Inversion and determinants go
//! through nalgebra once at construction; evaluators use the cached
//! row-major storage directly.

use crate::error::{Error, Result};
use nalgebra::DMatrix;

#[derive(Debug, Clone, PartialEq)]
pub struct Mat {
    pub n: usize,
    /// row-major entries
    pub a: Vec<f64>,
}

impl Mat {
    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self> {
        let n = rows.len();
        if n == 0 || rows.iter().any(|r| r.len() != n) {
            return Err(Error::InvalidArgument("matrix must be square".into()));
        }
        let mut a = Vec::with_capacity(n * n);
        for r in rows {
            a.extend_from_slice(r);
        }
        if a.iter().any(|x| !x.is_finite()) {
            return Err(Error::InvalidArgument(
                "matrix entries must be finite".into(),
            ));
        }
        Ok(Mat { n, a })
    }

    pub fn identity(n: usize) -> Self {
        let mut a = vec![0.0; n * n];
        for i in 0..n {
            a[i * n + i] = 1.0;
        }
        Mat { n, a }
    }

    pub fn scaled_identity(n: usize, c: f64) -> Self {
        let mut m = Self::identity(n);
        m.a.iter_mut().for_each(|x| *x *= c);
        m
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.a[i * self.n + j]
    }

    pub fn matvec(&self, x: &[f64]) -> Vec<f64> {
        let n = self.n;
        (0..n)
            .map(|i| (0..n).map(|j| self.get(i, j) * x[j]).sum())
            .collect()
    }

    /// transpose(self) * x
    pub fn tmatvec(&self, x: &[f64]) -> Vec<f64> {
        let n = self.n;
        (0..n)
            .map(|j| (0..n).map(|i| self.get(i, j) * x[i]).sum())
            .collect()
    }

    pub fn transpose(&self) -> Mat {
        let n = self.n;
        let mut a = vec![0.0; n * n];
        for i in 0..n {
            for j in 0..n {
                a[j * n + i] = self.get(i, j);
            }
        }
        Mat { n, a }
    }

    pub fn mul(&self, other: &Mat) -> Mat {
        let n = self.n;
        let mut a = vec![0.0; n * n];
        for i in 0..n {
            for j in 0..n {
                a[i * n + j] = (0..n).map(|k| self.get(i, k) * other.get(k, j)).sum();
            }
        }
        Mat { n, a }
    }

    fn to_nalgebra(&self) -> DMatrix<f64> {
        DMatrix::from_row_slice(self.n, self.n, &self.a)
    }

    pub fn det(&self) -> f64 {
        self.to_nalgebra().determinant()
    }

    pub fn inverse(&self) -> Result<Mat> {
        let inv = self
            .to_nalgebra()
            .try_inverse()
            .ok_or_else(|| Error::InvalidArgument("matrix is singular".into()))?;
        let mut a = Vec::with_capacity(self.n * self.n);
        for i in 0..self.n {
            for j in 0..self.n {
                a.push(inv[(i, j)]);
            }
        }
        Ok(Mat { n: self.n, a })
    }
}
