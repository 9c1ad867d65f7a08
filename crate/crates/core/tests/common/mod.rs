//! Independent reference implementations on top of nalgebra.

#![allow(dead_code)]

use homlie::cochain::{Cochain, MultiIndices};
use homlie::Matrix;
use nalgebra::DMatrix;

pub fn to_na(m: &Matrix) -> DMatrix<f64> {
    DMatrix::from_row_slice(m.n(), m.n(), m.as_slice())
}

pub fn from_na(m: &DMatrix<f64>) -> Matrix {
    Matrix::from_fn(m.nrows(), |i, j| m[(i, j)])
}

/// `βAβBβ − βBβAβ`.
pub fn bracket(beta: &DMatrix<f64>, a: &DMatrix<f64>, b: &DMatrix<f64>) -> DMatrix<f64> {
    beta * a * beta * b * beta - beta * b * beta * a * beta
}

pub fn ad(beta: &DMatrix<f64>, a: &DMatrix<f64>) -> DMatrix<f64> {
    beta * a * beta
}

pub fn commutator(a: &DMatrix<f64>, b: &DMatrix<f64>) -> DMatrix<f64> {
    a * b - b * a
}

pub fn fro(m: &DMatrix<f64>) -> f64 {
    m.norm()
}

/// Numerical rank from the singular values, relative threshold `tol`.
pub fn svd_rank(rows: usize, cols: usize, entries: &[f64], tol: f64) -> usize {
    if rows == 0 || cols == 0 {
        return 0;
    }
    let m = DMatrix::from_row_slice(rows, cols, entries);
    let sv = m.svd(false, false).singular_values;
    let top = sv.iter().cloned().fold(0.0, f64::max);
    sv.iter().filter(|&&s| s > tol * top.max(1.0)).count()
}

/// `ξ(x_1,…,x_k) = Σ_I ξ_I det[(x_a)_{I_b}]` over increasing multi-indices.
pub fn eval_form(xi: &Cochain, args: &[DMatrix<f64>]) -> f64 {
    let k = xi.degree();
    if k == 0 {
        return xi.coeffs()[0];
    }
    let idx = MultiIndices::new(xi.n() * xi.n(), k);
    let flat: Vec<Vec<f64>> = args
        .iter()
        .map(|a| a.transpose().iter().cloned().collect())
        .collect();
    idx.iter()
        .zip(xi.coeffs())
        .map(|(tuple, c)| {
            let m = DMatrix::from_fn(k, k, |a, b| flat[a][tuple[b]]);
            c * m.determinant()
        })
        .sum()
}

/// The coboundary formula evaluated pointwise:
/// `Σ_{i<j} (−1)^{i+j} ξ(br(x_i,x_j), tw(x_1), …, x̂_i, …, x̂_j, …, tw(x_{k+1}))`
/// with 1-based `i, j`.
pub type BracketFn<'a> = &'a dyn Fn(&DMatrix<f64>, &DMatrix<f64>) -> DMatrix<f64>;

pub fn coboundary_formula(
    xi: &dyn Fn(&[DMatrix<f64>]) -> f64,
    br: BracketFn,
    tw: &dyn Fn(&DMatrix<f64>) -> DMatrix<f64>,
    args: &[DMatrix<f64>],
) -> f64 {
    let m = args.len();
    let mut total = 0.0;
    for i in 0..m {
        for j in i + 1..m {
            let sign = if (i + 1 + j + 1) % 2 == 0 { 1.0 } else { -1.0 };
            let mut a = vec![br(&args[i], &args[j])];
            a.extend((0..m).filter(|&l| l != i && l != j).map(|l| tw(&args[l])));
            total += sign * xi(&a);
        }
    }
    total
}

pub fn random_na(rng: &mut homlie::sampling::Rng, n: usize) -> DMatrix<f64> {
    to_na(&homlie::sampling::uniform(rng, n))
}
