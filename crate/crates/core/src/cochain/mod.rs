//! Alternating cochains on `gl(V)` with trivial coefficients.
//!
//! `gl(n)` carries the basis `E_{pq}` in row-major order, so the coordinates
//! of a matrix are just its entries. A degree-`k` cochain is stored by its
//! values on increasing basis tuples `I = (i_1 < … < i_k)`, listed in
//! lexicographic order; the value on arbitrary arguments is the alternating
//! multilinear extension, i.e. `Σ_I ξ_I · det([x_a]_{I_b})`.

mod coboundary;
mod cohomology;

use std::ops::{Add, Sub};

use crate::linalg::{det_in_place, Matrix};
use crate::sampling::Rng;
use crate::{Error, Result};

pub use coboundary::{
    coboundary_hom, coboundary_lie, coboundary_matrix_hom, coboundary_matrix_lie,
    intertwining_residuals, pullback, pullback_left, pullback_matrix, pullback_right, Intertwining,
};
pub use cohomology::{cohomology, CohomologyReport, DegreeRow, MAX_COHOMOLOGY_N};

pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1usize, |acc, i| acc * (n - i) / (i + 1))
}

/// Increasing `k`-tuples from `0..dim` in lexicographic order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultiIndices {
    dim: usize,
    k: usize,
    tuples: Vec<Vec<usize>>,
}

impl MultiIndices {
    pub fn new(dim: usize, k: usize) -> Self {
        let mut tuples = Vec::with_capacity(binomial(dim, k));
        let mut cur: Vec<usize> = (0..k).collect();
        if k <= dim {
            loop {
                tuples.push(cur.clone());
                // advance the rightmost position that still has room
                let Some(pos) = (0..k).rev().find(|&i| cur[i] < dim - k + i) else {
                    break;
                };
                cur[pos] += 1;
                for i in pos + 1..k {
                    cur[i] = cur[i - 1] + 1;
                }
            }
        }
        Self { dim, k, tuples }
    }

    pub fn len(&self) -> usize {
        self.tuples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tuples.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &[usize]> {
        self.tuples.iter().map(Vec::as_slice)
    }

    pub fn get(&self, pos: usize) -> &[usize] {
        &self.tuples[pos]
    }

    /// Position of an increasing tuple, or `None` if absent.
    pub fn position(&self, tuple: &[usize]) -> Option<usize> {
        self.tuples
            .binary_search_by(|t| t.as_slice().cmp(tuple))
            .ok()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn degree(&self) -> usize {
        self.k
    }
}

/// `Σ_I coeffs_I · det(cols[a][I_b])` over all increasing `I`.
pub(crate) fn alternating_sum(indices: &MultiIndices, coeffs: &[f64], cols: &[&[f64]]) -> f64 {
    let k = indices.degree();
    let mut buf = vec![0.0; k * k];
    indices
        .iter()
        .zip(coeffs)
        .filter(|(_, c)| **c != 0.0)
        .map(|(tuple, c)| c * minor(cols, tuple, &mut buf))
        .sum()
}

/// `det(M)` with `M[a][b] = cols[a][tuple[b]]`.
pub(crate) fn minor(cols: &[&[f64]], tuple: &[usize], buf: &mut [f64]) -> f64 {
    let k = tuple.len();
    for (a, col) in cols.iter().enumerate() {
        for (b, &i) in tuple.iter().enumerate() {
            buf[a * k + b] = col[i];
        }
    }
    det_in_place(&mut buf[..k * k], k)
}

#[derive(Clone, Debug, PartialEq)]
pub struct Cochain {
    n: usize,
    k: usize,
    coeffs: Vec<f64>,
}

impl Cochain {
    pub fn new(n: usize, k: usize, coeffs: Vec<f64>) -> Result<Self> {
        check_degree(n, k)?;
        let expected = binomial(n * n, k);
        if coeffs.len() != expected {
            return Err(Error::ShapeMismatch {
                expected,
                found: coeffs.len(),
            });
        }
        Ok(Self { n, k, coeffs })
    }

    pub fn zero(n: usize, k: usize) -> Result<Self> {
        Self::new(n, k, vec![0.0; binomial(n * n, k)])
    }

    /// The dual basis form `e^{i_1} ∧ … ∧ e^{i_k}` for an increasing 0-based tuple.
    pub fn dual(n: usize, tuple: &[usize]) -> Result<Self> {
        let k = tuple.len();
        let indices = MultiIndices::new(n * n, k);
        let pos = indices.position(tuple).ok_or_else(|| {
            Error::InvalidArgument(format!(
                "{tuple:?} is not an increasing tuple below {}",
                n * n
            ))
        })?;
        let mut coeffs = vec![0.0; indices.len()];
        coeffs[pos] = 1.0;
        Self::new(n, k, coeffs)
    }

    /// Coefficients uniform in `[-1, 1]`.
    pub fn random(rng: &mut Rng, n: usize, k: usize) -> Result<Self> {
        check_degree(n, k)?;
        let coeffs = (0..binomial(n * n, k))
            .map(|_| rand::Rng::gen_range(rng, -1.0..=1.0))
            .collect();
        Self::new(n, k, coeffs)
    }

    /// Reads coefficients off a form by evaluating it on increasing basis tuples.
    pub fn from_evaluations(n: usize, k: usize, f: impl Fn(&[Matrix]) -> f64) -> Result<Self> {
        check_degree(n, k)?;
        let indices = MultiIndices::new(n * n, k);
        let coeffs = indices
            .iter()
            .map(|tuple| {
                let args: Vec<Matrix> = tuple.iter().map(|&i| Matrix::basis(n, i)).collect();
                f(&args)
            })
            .collect();
        Self::new(n, k, coeffs)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn degree(&self) -> usize {
        self.k
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    pub fn norm(&self) -> f64 {
        self.coeffs.iter().map(|c| c * c).sum::<f64>().sqrt()
    }

    pub fn indices(&self) -> MultiIndices {
        MultiIndices::new(self.n * self.n, self.k)
    }

    pub fn scale(&self, s: f64) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|c| c * s).collect(),
            ..self.clone()
        }
    }

    /// Value on `k` matrices.
    pub fn evaluate(&self, args: &[Matrix]) -> Result<f64> {
        if args.len() != self.k {
            return Err(Error::Arity {
                expected: self.k,
                found: args.len(),
            });
        }
        for a in args {
            a.check_dim(self.n)?;
        }
        if self.k == 0 {
            return Ok(self.coeffs[0]);
        }
        let cols: Vec<&[f64]> = args.iter().map(Matrix::as_slice).collect();
        Ok(alternating_sum(&self.indices(), &self.coeffs, &cols))
    }

    fn compatible(&self, other: &Self) {
        assert_eq!(
            (self.n, self.k),
            (other.n, other.k),
            "cochain shape mismatch"
        );
    }
}

impl Add for &Cochain {
    type Output = Cochain;
    fn add(self, rhs: &Cochain) -> Cochain {
        self.compatible(rhs);
        Cochain {
            coeffs: self
                .coeffs
                .iter()
                .zip(&rhs.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
            ..self.clone()
        }
    }
}

impl Sub for &Cochain {
    type Output = Cochain;
    fn sub(self, rhs: &Cochain) -> Cochain {
        self.compatible(rhs);
        Cochain {
            coeffs: self
                .coeffs
                .iter()
                .zip(&rhs.coeffs)
                .map(|(a, b)| a - b)
                .collect(),
            ..self.clone()
        }
    }
}

fn check_degree(n: usize, k: usize) -> Result<()> {
    if n == 0 {
        return Err(Error::EmptyMatrix);
    }
    if k > n * n {
        return Err(Error::DegreeOverflow {
            degree: k,
            dim: n * n,
        });
    }
    Ok(())
}
