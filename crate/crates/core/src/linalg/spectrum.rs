//! Isospectral probes: symmetric eigenvalues, power traces, characteristic polynomial.

use super::Matrix;
use crate::{Error, Result};

const MAX_SWEEPS: usize = 100;

/// Sorted eigenvalues together with the power traces `tr(A^k)`, `k = 1..n`.
#[derive(Clone, Debug, PartialEq)]
pub struct SpectrumProbe {
    pub eigenvalues: Vec<f64>,
    pub traces: Vec<f64>,
}

/// Eigenvalues (ascending) of a symmetric matrix by cyclic Jacobi rotations.
///
/// `A` must be symmetric to `1e-8·max(1, ‖A‖_F)`; it is symmetrized before use.
pub fn symmetric_eigenvalues(a: &Matrix) -> Result<Vec<f64>> {
    let asymmetry = a.asymmetry();
    if asymmetry > 1e-8 * a.norm_fro().max(1.0) {
        return Err(Error::NotSymmetric { asymmetry });
    }
    let n = a.n();
    let mut w = a.symmetrized().into_vec();
    let total: f64 = w.iter().map(|v| v * v).sum::<f64>();
    for _ in 0..MAX_SWEEPS {
        let off: f64 = (0..n)
            .flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)))
            .map(|(i, j)| w[i * n + j] * w[i * n + j])
            .sum();
        if off <= 1e-30 * total || off == 0.0 {
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                let apq = w[p * n + q];
                if apq == 0.0 {
                    continue;
                }
                let theta = (w[q * n + q] - w[p * n + p]) / (2.0 * apq);
                let t = if theta.is_finite() {
                    theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt())
                } else {
                    0.0
                };
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for k in 0..n {
                    let (akp, akq) = (w[k * n + p], w[k * n + q]);
                    w[k * n + p] = c * akp - s * akq;
                    w[k * n + q] = s * akp + c * akq;
                }
                for k in 0..n {
                    let (apk, aqk) = (w[p * n + k], w[q * n + k]);
                    w[p * n + k] = c * apk - s * aqk;
                    w[q * n + k] = s * apk + c * aqk;
                }
            }
        }
    }
    let mut eig: Vec<f64> = (0..n).map(|i| w[i * n + i]).collect();
    eig.sort_by(f64::total_cmp);
    Ok(eig)
}

/// `tr(A^k)` for `k = 1..n`.
pub fn trace_powers(a: &Matrix) -> Vec<f64> {
    let mut power = a.clone();
    let mut out = Vec::with_capacity(a.n());
    for k in 0..a.n() {
        if k > 0 {
            power = &power * a;
        }
        out.push(power.trace());
    }
    out
}

/// Coefficients of `det(λI − A)` in descending powers, leading `1.0` first
/// (Faddeev–LeVerrier).
pub fn characteristic_polynomial(a: &Matrix) -> Vec<f64> {
    let n = a.n();
    let mut coeffs = vec![1.0];
    let mut m = Matrix::zeros(n);
    let id = Matrix::identity(n);
    for k in 1..=n {
        let last = *coeffs.last().expect("non-empty");
        m = &(a * &m) + &id.scale(last);
        let c = -(a * &m).trace() / k as f64;
        coeffs.push(c);
    }
    coeffs
}

/// Eigenvalues of a symmetric matrix plus its power traces.
///
/// Non-symmetric input is rejected with [`Error::NotSymmetric`]; callers
/// interested in such matrices should use [`trace_powers`] or
/// [`characteristic_polynomial`].
pub fn spectrum_probe(a: &Matrix) -> Result<SpectrumProbe> {
    Ok(SpectrumProbe {
        eigenvalues: symmetric_eigenvalues(a)?,
        traces: trace_powers(&a.symmetrized()),
    })
}
