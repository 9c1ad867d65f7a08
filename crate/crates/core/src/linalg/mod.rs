//! Dense small-matrix kernel.
//!
//! Everything here works on row-major `f64` storage and is sized for the
//! matrices this crate actually handles (n ≤ 10 for group elements, a few
//! hundred rows for coboundary matrices). Matrices are immutable values;
//! every operation returns a new one.

mod decomp;
mod expm;
mod io;
mod logm;
mod spectrum;

use std::fmt;
use std::ops::{Add, Index, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::{Error, Result};

pub use decomp::{det, det_in_place, inverse, rank_and_kernel, RankKernel, DEFAULT_RANK_TOL};
pub use expm::{expm, expm_minus_identity, DEFAULT_EXPM_TOL};
pub use io::{format_matrix, parse_matrix};
pub use logm::principal_log;
pub use spectrum::{
    characteristic_polynomial, spectrum_probe, symmetric_eigenvalues, trace_powers, SpectrumProbe,
};

/// Square real matrix, stored row-major.
#[derive(Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<Vec<f64>>", into = "Vec<Vec<f64>>")]
pub struct Matrix {
    n: usize,
    data: Vec<f64>,
}

impl Matrix {
    /// Builds an `n × n` matrix from row-major entries, rejecting NaN/Inf.
    pub fn new(n: usize, data: Vec<f64>) -> Result<Self> {
        if n == 0 {
            return Err(Error::EmptyMatrix);
        }
        if data.len() != n * n {
            return Err(Error::ShapeMismatch {
                expected: n * n,
                found: data.len(),
            });
        }
        if let Some(pos) = data.iter().position(|v| !v.is_finite()) {
            return Err(Error::NonFinite {
                row: pos / n,
                col: pos % n,
            });
        }
        Ok(Self { n, data })
    }

    pub fn from_rows(rows: Vec<Vec<f64>>) -> Result<Self> {
        let n = rows.len();
        if let Some(bad) = rows.iter().find(|r| r.len() != n) {
            return Err(Error::ShapeMismatch {
                expected: n,
                found: bad.len(),
            });
        }
        Self::new(n, rows.into_iter().flatten().collect())
    }

    /// Unchecked constructor for results of arithmetic on valid matrices.
    pub(crate) fn from_raw(n: usize, data: Vec<f64>) -> Self {
        debug_assert_eq!(data.len(), n * n);
        Self { n, data }
    }

    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> f64) -> Self {
        let mut data = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                data.push(f(i, j));
            }
        }
        Self { n, data }
    }

    pub fn zeros(n: usize) -> Self {
        Self::from_raw(n, vec![0.0; n * n])
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, |i, j| if i == j { 1.0 } else { 0.0 })
    }

    pub fn diag(values: &[f64]) -> Self {
        Self::from_fn(values.len(), |i, j| if i == j { values[i] } else { 0.0 })
    }

    /// Elementary matrix `E_{pq}` (0-based), the standard basis of `gl(n)`.
    pub fn unit(n: usize, p: usize, q: usize) -> Self {
        let mut m = Self::zeros(n);
        m.data[p * n + q] = 1.0;
        m
    }

    /// Basis element number `index` of `gl(n)` in row-major order.
    pub fn basis(n: usize, index: usize) -> Self {
        Self::unit(n, index / n, index % n)
    }

    /// The permutation matrix swapping rows `i` and `j` (0-based) of the identity.
    pub fn transposition(n: usize, i: usize, j: usize) -> Self {
        Self::from_fn(n, |r, c| {
            let src = if r == i {
                j
            } else if r == j {
                i
            } else {
                r
            };
            if c == src {
                1.0
            } else {
                0.0
            }
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Row-major entries, which are also the coordinates over the `E_{pq}` basis.
    pub fn as_slice(&self) -> &[f64] {
        &self.data
    }

    pub fn into_vec(self) -> Vec<f64> {
        self.data
    }

    pub fn rows(&self) -> Vec<Vec<f64>> {
        self.data.chunks(self.n).map(<[f64]>::to_vec).collect()
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.n + j]
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.n, |i, j| self.get(j, i))
    }

    pub fn trace(&self) -> f64 {
        (0..self.n).map(|i| self.get(i, i)).sum()
    }

    pub fn scale(&self, s: f64) -> Self {
        Self::from_raw(self.n, self.data.iter().map(|v| v * s).collect())
    }

    pub fn norm_fro(&self) -> f64 {
        self.data.iter().map(|v| v * v).sum::<f64>().sqrt()
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().fold(0.0, |m, v| m.max(v.abs()))
    }

    /// `|self - other|_F`.
    pub fn dist(&self, other: &Matrix) -> f64 {
        assert_eq!(self.n, other.n, "dimension mismatch in dist");
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b) * (a - b))
            .sum::<f64>()
            .sqrt()
    }

    pub fn is_finite(&self) -> bool {
        self.data.iter().all(|v| v.is_finite())
    }

    /// `(A + Aᵀ)/2`.
    pub fn symmetrized(&self) -> Self {
        Self::from_fn(self.n, |i, j| 0.5 * (self.get(i, j) + self.get(j, i)))
    }

    /// `|A - Aᵀ|_F`.
    pub fn asymmetry(&self) -> f64 {
        self.dist(&self.transpose())
    }

    pub fn check_dim(&self, n: usize) -> Result<()> {
        if self.n == n {
            Ok(())
        } else {
            Err(Error::DimensionMismatch {
                expected: n,
                found: self.n,
            })
        }
    }

    pub fn powi(&self, k: u32) -> Self {
        let mut acc = Self::identity(self.n);
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.rows()).finish()
    }
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_matrix(self))
    }
}

impl TryFrom<Vec<Vec<f64>>> for Matrix {
    type Error = Error;
    fn try_from(rows: Vec<Vec<f64>>) -> Result<Self> {
        Self::from_rows(rows)
    }
}

impl From<Matrix> for Vec<Vec<f64>> {
    fn from(m: Matrix) -> Self {
        m.rows()
    }
}

impl Index<(usize, usize)> for Matrix {
    type Output = f64;
    fn index(&self, (i, j): (usize, usize)) -> &f64 {
        &self.data[i * self.n + j]
    }
}

impl Mul for &Matrix {
    type Output = Matrix;
    fn mul(self, rhs: &Matrix) -> Matrix {
        assert_eq!(self.n, rhs.n, "dimension mismatch in matrix product");
        let n = self.n;
        let mut out = vec![0.0; n * n];
        for i in 0..n {
            for k in 0..n {
                let a = self.data[i * n + k];
                if a == 0.0 {
                    continue;
                }
                let row = &rhs.data[k * n..(k + 1) * n];
                for (o, b) in out[i * n..(i + 1) * n].iter_mut().zip(row) {
                    *o += a * b;
                }
            }
        }
        Matrix::from_raw(n, out)
    }
}

impl Mul<f64> for &Matrix {
    type Output = Matrix;
    fn mul(self, s: f64) -> Matrix {
        self.scale(s)
    }
}

impl Add for &Matrix {
    type Output = Matrix;
    fn add(self, rhs: &Matrix) -> Matrix {
        assert_eq!(self.n, rhs.n, "dimension mismatch in matrix sum");
        Matrix::from_raw(
            self.n,
            self.data
                .iter()
                .zip(&rhs.data)
                .map(|(a, b)| a + b)
                .collect(),
        )
    }
}

impl Sub for &Matrix {
    type Output = Matrix;
    fn sub(self, rhs: &Matrix) -> Matrix {
        assert_eq!(self.n, rhs.n, "dimension mismatch in matrix difference");
        Matrix::from_raw(
            self.n,
            self.data
                .iter()
                .zip(&rhs.data)
                .map(|(a, b)| a - b)
                .collect(),
        )
    }
}

impl Neg for &Matrix {
    type Output = Matrix;
    fn neg(self) -> Matrix {
        self.scale(-1.0)
    }
}

/// A matrix `β` with `β·β = I`, checked at construction.
#[derive(Clone, PartialEq, Debug, Serialize)]
#[serde(transparent)]
pub struct Involution(Matrix);

impl Involution {
    /// Accepts `beta` when `|β·β - I|_F ≤ 1e-12·n`.
    pub fn new(beta: Matrix) -> Result<Self> {
        let n = beta.n();
        let residual = (&beta * &beta).dist(&Matrix::identity(n));
        if residual <= 1e-12 * n as f64 {
            Ok(Self(beta))
        } else {
            Err(Error::NotInvolution { residual })
        }
    }

    pub fn identity(n: usize) -> Self {
        Self(Matrix::identity(n))
    }

    /// `diag(s_1, …, s_n)`; every sign must be ±1.
    pub fn diag_signs(signs: &[f64]) -> Result<Self> {
        if signs.is_empty() {
            return Err(Error::EmptyMatrix);
        }
        Self::new(Matrix::diag(signs))
    }

    /// `P_{i,j}` with 1-based row indices, as written in the inline syntax.
    pub fn transposition(n: usize, i: usize, j: usize) -> Result<Self> {
        if i == 0 || j == 0 || i > n || j > n || i == j {
            return Err(Error::InvalidArgument(format!(
                "perm({i},{j}) needs distinct indices in 1..={n}"
            )));
        }
        Ok(Self(Matrix::transposition(n, i - 1, j - 1)))
    }

    /// Alternating sign pattern `diag(1, -1, 1, -1, …)`.
    pub fn alternating(n: usize) -> Self {
        Self(Matrix::diag(
            &(0..n)
                .map(|i| if i % 2 == 0 { 1.0 } else { -1.0 })
                .collect::<Vec<_>>(),
        ))
    }

    /// `C·β·C⁻¹`, revalidated.
    pub fn conjugated(&self, c: &Matrix) -> Result<Self> {
        c.check_dim(self.n())?;
        let c_inv = inverse(c)?;
        Self::new(&(c * &self.0) * &c_inv)
    }

    pub fn matrix(&self) -> &Matrix {
        &self.0
    }

    pub fn n(&self) -> usize {
        self.0.n()
    }

    pub fn is_identity(&self) -> bool {
        self.0 == Matrix::identity(self.n())
    }

    /// `β = ±I`.
    pub fn is_scalar(&self) -> bool {
        let id = Matrix::identity(self.n());
        self.0 == id || self.0 == -&id
    }
}

impl AsRef<Matrix> for Involution {
    fn as_ref(&self) -> &Matrix {
        &self.0
    }
}

/// Rectangular row-major matrix used for coboundary operators and kernels.
#[derive(Clone, Debug, PartialEq)]
pub struct RectMatrix {
    rows: usize,
    cols: usize,
    data: Vec<f64>,
}

impl RectMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![0.0; rows * cols],
        }
    }

    pub fn from_rows(rows: &[Vec<f64>]) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|r| r.len() == cols), "ragged rows");
        Self {
            rows: rows.len(),
            cols,
            data: rows.iter().flatten().copied().collect(),
        }
    }

    /// Builds the matrix whose columns are `columns`, each of length `rows`.
    pub fn from_columns(rows: usize, columns: &[Vec<f64>]) -> Self {
        let mut m = Self::zeros(rows, columns.len());
        for (j, col) in columns.iter().enumerate() {
            assert_eq!(col.len(), rows, "column length mismatch");
            for (i, v) in col.iter().enumerate() {
                m.set(i, j, *v);
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: f64) {
        self.data[i * self.cols + j] = v;
    }

    pub fn add_to(&mut self, i: usize, j: usize, v: f64) {
        self.data[i * self.cols + j] += v;
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.data
    }

    pub fn column(&self, j: usize) -> Vec<f64> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    pub fn columns(&self) -> Vec<Vec<f64>> {
        (0..self.cols).map(|j| self.column(j)).collect()
    }

    pub fn mul_vec(&self, v: &[f64]) -> Vec<f64> {
        assert_eq!(v.len(), self.cols, "vector length mismatch");
        self.data
            .chunks(self.cols.max(1))
            .take(self.rows)
            .map(|row| row.iter().zip(v).map(|(a, b)| a * b).sum())
            .collect()
    }

    pub fn matmul(&self, rhs: &RectMatrix) -> RectMatrix {
        assert_eq!(self.cols, rhs.rows, "inner dimension mismatch");
        let mut out = Self::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a == 0.0 {
                    continue;
                }
                for j in 0..rhs.cols {
                    out.add_to(i, j, a * rhs.get(k, j));
                }
            }
        }
        out
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().fold(0.0, |m, v| m.max(v.abs()))
    }

    /// Horizontal concatenation `[self | other]`.
    pub fn hcat(&self, other: &RectMatrix) -> RectMatrix {
        assert_eq!(self.rows, other.rows, "row count mismatch in hcat");
        let mut cols = self.columns();
        cols.extend(other.columns());
        Self::from_columns(self.rows, &cols)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_non_finite_and_empty() {
        assert!(matches!(
            Matrix::new(2, vec![1.0, f64::NAN, 0.0, 1.0]),
            Err(Error::NonFinite { row: 0, col: 1 })
        ));
        assert!(matches!(Matrix::new(0, vec![]), Err(Error::EmptyMatrix)));
        assert!(Matrix::from_rows(vec![vec![1.0, 2.0], vec![3.0]]).is_err());
    }

    #[test]
    fn involution_validation() {
        assert!(Involution::new(Matrix::diag(&[1.0, -1.0])).is_ok());
        assert!(Involution::transposition(3, 1, 2).is_ok());
        assert!(matches!(
            Involution::new(Matrix::diag(&[1.0, 2.0])),
            Err(Error::NotInvolution { .. })
        ));
        let c = Matrix::from_rows(vec![vec![1.0, 1.0], vec![0.0, 1.0]]).unwrap();
        let g = Involution::diag_signs(&[1.0, -1.0])
            .unwrap()
            .conjugated(&c)
            .unwrap();
        assert_eq!(g.matrix().rows(), vec![vec![1.0, -2.0], vec![0.0, -1.0]]);
    }

    #[test]
    fn transposition_swaps_rows() {
        let p = Matrix::transposition(3, 0, 2);
        let a = Matrix::from_fn(3, |i, j| (3 * i + j) as f64);
        let pa = &p * &a;
        assert_eq!(pa.rows()[0], a.rows()[2]);
        assert_eq!(pa.rows()[2], a.rows()[0]);
        assert_eq!(pa.rows()[1], a.rows()[1]);
    }

    #[test]
    fn serde_uses_nested_rows() {
        let m = Matrix::diag(&[1.0, 2.0]);
        let s = serde_json::to_string(&m).unwrap();
        assert_eq!(s, "[[1.0,0.0],[0.0,2.0]]");
        let back: Matrix = serde_json::from_str(&s).unwrap();
        assert_eq!(back, m);
    }
}
