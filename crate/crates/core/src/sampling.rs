//! Seeded random matrices for the property checkers.
//!
//! All samplers draw from [`Rng`], a ChaCha8 stream, so every report is
//! reproducible from its seed on any platform.

use rand::{Rng as _, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::linalg::{det, inverse, Matrix};

pub type Rng = ChaCha8Rng;

pub fn rng(seed: u64) -> Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Entries uniform in `[-1, 1]`.
pub fn uniform(rng: &mut Rng, n: usize) -> Matrix {
    Matrix::from_fn(n, |_, _| rng.gen_range(-1.0..=1.0))
}

/// Uniform direction with `‖X‖_F` uniform in `[0, radius]`.
pub fn in_ball(rng: &mut Rng, n: usize, radius: f64) -> Matrix {
    let x = uniform(rng, n);
    let norm = x.norm_fro();
    if norm == 0.0 {
        return x;
    }
    x.scale(radius * rng.gen_range(0.0..=1.0) / norm)
}

pub fn symmetric(rng: &mut Rng, n: usize) -> Matrix {
    uniform(rng, n).symmetrized()
}

/// Symmetric tridiagonal with diagonal in `[-2, 2]` and off-diagonal in `[0.2, 1]`.
pub fn symmetric_tridiagonal(rng: &mut Rng, n: usize) -> Matrix {
    let diag: Vec<f64> = (0..n).map(|_| rng.gen_range(-2.0..=2.0)).collect();
    let off: Vec<f64> = (0..n.saturating_sub(1))
        .map(|_| rng.gen_range(0.2..=1.0))
        .collect();
    Matrix::from_fn(n, |i, j| {
        if i == j {
            diag[i]
        } else if i + 1 == j {
            off[i]
        } else if j + 1 == i {
            off[j]
        } else {
            0.0
        }
    })
}

/// Invertible matrix with Frobenius condition number `‖C‖_F‖C⁻¹‖_F ≤ max_cond`.
///
/// The Frobenius estimate bounds the 2-norm condition number from above.
/// `max_cond` must exceed `n`, the smallest possible value.
pub fn well_conditioned(rng: &mut Rng, n: usize, max_cond: f64) -> Matrix {
    assert!(
        max_cond > n as f64,
        "no matrix has Frobenius condition below n"
    );
    loop {
        let c = &Matrix::identity(n) + &uniform(rng, n).scale(0.6);
        if let Ok(inv) = inverse(&c) {
            if c.norm_fro() * inv.norm_fro() <= max_cond {
                return c;
            }
        }
    }
}

/// Element of `GL(n)` with negative determinant and Frobenius condition ≤ 100.
pub fn negative_determinant(rng: &mut Rng, n: usize) -> Matrix {
    loop {
        let a = uniform(rng, n);
        let Ok(inv) = inverse(&a) else { continue };
        if a.norm_fro() * inv.norm_fro() > 100.0 {
            continue;
        }
        if det(&a) < 0.0 {
            return a;
        }
        // flipping one row keeps the condition number
        let mut rows = a.rows();
        rows[0].iter_mut().for_each(|v| *v = -*v);
        return Matrix::from_rows(rows).expect("finite");
    }
}

/// Orthogonal matrix by Gram–Schmidt on a random matrix (re-orthogonalized once).
pub fn orthogonal(rng: &mut Rng, n: usize) -> Matrix {
    loop {
        let cols: Vec<Vec<f64>> = (0..n)
            .map(|_| (0..n).map(|_| rng.gen_range(-1.0..=1.0)).collect())
            .collect();
        let mut basis: Vec<Vec<f64>> = Vec::with_capacity(n);
        let mut ok = true;
        for c in cols {
            let mut v = c;
            for _ in 0..2 {
                for b in &basis {
                    let d: f64 = v.iter().zip(b).map(|(x, y)| x * y).sum();
                    v.iter_mut().zip(b).for_each(|(x, y)| *x -= d * y);
                }
            }
            let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
            if norm < 1e-3 {
                ok = false;
                break;
            }
            v.iter_mut().for_each(|x| *x /= norm);
            basis.push(v);
        }
        if ok {
            return Matrix::from_fn(n, |i, j| basis[j][i]);
        }
    }
}
