//! Small dense complex matrices, stored row-major.
//!
//! Orders here are desk-scale (at most a few dozen), so everything is
//! straightforward O(n^3) code.

use std::ops::{Index, IndexMut};

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::pencil::Pencil;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

#[derive(Debug, Clone, PartialEq)]
pub struct DenseMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Complex64>,
}

impl DenseMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![ZERO; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, n, |i, j| if i == j { ONE } else { ZERO })
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Complex64) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Self { rows, cols, data }
    }

    pub fn from_row_major(rows: usize, cols: usize, data: Vec<Complex64>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::ShapeMismatch(format!(
                "{} values for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        Ok(Self { rows, cols, data })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn as_slice(&self) -> &[Complex64] {
        &self.data
    }

    pub fn row(&self, i: usize) -> &[Complex64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn matmul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::ShapeMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)];
                if a == ZERO {
                    continue;
                }
                for j in 0..other.cols {
                    out[(i, j)] += a * other[(k, j)];
                }
            }
        }
        Ok(out)
    }

    pub fn conj_transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)].conj())
    }

    /// Copy of the block starting at `(r0, c0)`.
    pub fn block(&self, r0: usize, c0: usize, rows: usize, cols: usize) -> Self {
        Self::from_fn(rows, cols, |i, j| self[(r0 + i, c0 + j)])
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// Entrywise maximum of `|self - other|`.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }
}

impl Index<(usize, usize)> for DenseMatrix {
    type Output = Complex64;

    fn index(&self, (i, j): (usize, usize)) -> &Complex64 {
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for DenseMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex64 {
        &mut self.data[i * self.cols + j]
    }
}

/// Dense assembly of `zJ - H`.
pub fn pencil_matrix(pencil: &Pencil, z: Complex64) -> DenseMatrix {
    let n = pencil.n();
    let mut m = DenseMatrix::zeros(n + 1, n + 1);
    for i in 0..=n {
        m[(i, i)] = pencil.diag_at(i, z);
    }
    for j in 0..n {
        m[(j, j + 1)] = pencil.upper_at(j, z);
        m[(j + 1, j)] = pencil.lower_at(j, z);
    }
    m
}

/// LU factorization with partial (row) pivoting, `P A = L U`.
#[derive(Debug, Clone)]
pub struct Lu {
    lu: DenseMatrix,
    perm: Vec<usize>,
    odd_swaps: bool,
    singular: bool,
}

impl Lu {
    pub fn factor(a: &DenseMatrix) -> Result<Self> {
        if a.rows != a.cols {
            return Err(Error::ShapeMismatch("LU of a non-square matrix".into()));
        }
        let n = a.rows;
        let mut lu = a.clone();
        let mut perm: Vec<usize> = (0..n).collect();
        let mut odd_swaps = false;
        let mut singular = false;
        let tiny = f64::EPSILON * (n.max(1) as f64) * a.max_abs();
        for k in 0..n {
            let (p, best) = (k..n)
                .map(|i| (i, lu[(i, k)].norm()))
                .fold((k, -1.0), |acc, x| if x.1 > acc.1 { x } else { acc });
            if best <= tiny {
                singular = true;
                continue;
            }
            if p != k {
                for j in 0..n {
                    let t = lu[(k, j)];
                    lu[(k, j)] = lu[(p, j)];
                    lu[(p, j)] = t;
                }
                perm.swap(k, p);
                odd_swaps = !odd_swaps;
            }
            let pivot = lu[(k, k)];
            for i in k + 1..n {
                let f = lu[(i, k)] / pivot;
                lu[(i, k)] = f;
                if f == ZERO {
                    continue;
                }
                for j in k + 1..n {
                    let t = lu[(k, j)];
                    lu[(i, j)] -= f * t;
                }
            }
        }
        Ok(Self {
            lu,
            perm,
            odd_swaps,
            singular,
        })
    }

    pub fn is_singular(&self) -> bool {
        self.singular
    }

    pub fn determinant(&self) -> Complex64 {
        if self.singular {
            return ZERO;
        }
        let n = self.lu.rows;
        let prod = (0..n).fold(ONE, |acc, i| acc * self.lu[(i, i)]);
        if self.odd_swaps {
            -prod
        } else {
            prod
        }
    }

    pub fn solve(&self, rhs: &[Complex64]) -> Result<Vec<Complex64>> {
        if self.singular {
            return Err(Error::NearSingular);
        }
        let n = self.lu.rows;
        if rhs.len() != n {
            return Err(Error::OrderMismatch {
                expected: n,
                found: rhs.len(),
            });
        }
        let mut x: Vec<Complex64> = self.perm.iter().map(|&p| rhs[p]).collect();
        for i in 0..n {
            for k in 0..i {
                let t = self.lu[(i, k)] * x[k];
                x[i] -= t;
            }
        }
        for i in (0..n).rev() {
            for k in i + 1..n {
                let t = self.lu[(i, k)] * x[k];
                x[i] -= t;
            }
            x[i] /= self.lu[(i, i)];
        }
        Ok(x)
    }

    pub fn inverse(&self) -> Result<DenseMatrix> {
        let n = self.lu.rows;
        let mut inv = DenseMatrix::zeros(n, n);
        let mut e = vec![ZERO; n];
        for j in 0..n {
            e.iter_mut().for_each(|v| *v = ZERO);
            e[j] = ONE;
            let col = self.solve(&e)?;
            for (i, v) in col.into_iter().enumerate() {
                inv[(i, j)] = v;
            }
        }
        Ok(inv)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn lu_inverse_and_determinant() {
        let a = DenseMatrix::from_row_major(
            3,
            3,
            vec![
                c(0.0, 1.0),
                c(2.0, 0.0),
                c(1.0, -1.0),
                c(1.0, 0.0),
                c(0.0, 0.0),
                c(3.0, 0.5),
                c(-2.0, 0.0),
                c(1.0, 1.0),
                c(0.5, 0.0),
            ],
        )
        .unwrap();
        let lu = Lu::factor(&a).unwrap();
        let inv = lu.inverse().unwrap();
        let prod = a.matmul(&inv).unwrap();
        assert!(prod.max_abs_diff(&DenseMatrix::identity(3)) < 1e-14);
        // cofactor expansion along the first row
        let m = |i: usize, j: usize| a[(i, j)];
        let det = m(0, 0) * (m(1, 1) * m(2, 2) - m(1, 2) * m(2, 1)) - m(0, 1) * (m(1, 0) * m(2, 2) - m(1, 2) * m(2, 0))
            + m(0, 2) * (m(1, 0) * m(2, 1) - m(1, 1) * m(2, 0));
        assert!((lu.determinant() - det).norm() < 1e-13);
    }

    #[test]
    fn singular_matrix_is_flagged() {
        let a = DenseMatrix::from_row_major(2, 2, vec![c(1.0, 0.0), c(2.0, 0.0), c(2.0, 0.0), c(4.0, 0.0)]).unwrap();
        let lu = Lu::factor(&a).unwrap();
        assert!(lu.is_singular());
        assert_eq!(lu.determinant(), ZERO);
        assert_eq!(lu.inverse().unwrap_err(), Error::NearSingular);
    }
}
