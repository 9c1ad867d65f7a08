//! Matrix exponential by scaling and squaring a truncated Taylor series.

use super::Matrix;
use crate::{Error, Result};

/// Series truncation tolerance used throughout the crate.
pub const DEFAULT_EXPM_TOL: f64 = 1e-16;

const SCALED_NORM: f64 = 0.5;
const MAX_TERMS: usize = 64;

/// `e^A`.
///
/// `A` is scaled by `2^-s` until `‖A/2^s‖_F ≤ 0.5`, the series is summed until
/// the next term drops below `tol` times the partial sum, and the result is
/// squared `s` times. A non-finite result is reported as [`Error::Overflow`].
pub fn expm(a: &Matrix, tol: f64) -> Result<Matrix> {
    if !(tol > 0.0) {
        return Err(Error::InvalidArgument(format!(
            "expm tolerance must be positive, got {tol}"
        )));
    }
    let norm = a.norm_fro();
    if !norm.is_finite() {
        return Err(Error::Overflow { norm });
    }
    let mut squarings = 0u32;
    if norm > SCALED_NORM {
        squarings = (norm / SCALED_NORM).log2().ceil() as u32;
    }
    let scaled = a.scale(0.5f64.powi(squarings as i32));

    let n = a.n();
    let mut sum = Matrix::identity(n);
    let mut term = Matrix::identity(n);
    for k in 1..=MAX_TERMS {
        term = (&term * &scaled).scale(1.0 / k as f64);
        sum = &sum + &term;
        if term.norm_fro() < tol * sum.norm_fro() {
            break;
        }
    }
    for _ in 0..squarings {
        sum = &sum * &sum;
        if !sum.is_finite() {
            return Err(Error::Overflow { norm });
        }
    }
    if !sum.is_finite() {
        return Err(Error::Overflow { norm });
    }
    Ok(sum)
}

/// `e^A − I`, summed directly for `‖A‖_F ≤ 1` so that small `A` loses no
/// digits to cancellation against the identity.
pub fn expm_minus_identity(a: &Matrix, tol: f64) -> Result<Matrix> {
    if a.norm_fro() > 1.0 {
        return Ok(&expm(a, tol)? - &Matrix::identity(a.n()));
    }
    if !(tol > 0.0) {
        return Err(Error::InvalidArgument(format!(
            "expm tolerance must be positive, got {tol}"
        )));
    }
    let mut term = a.clone();
    let mut sum = a.clone();
    for k in 2..=MAX_TERMS {
        term = (&term * a).scale(1.0 / k as f64);
        sum = &sum + &term;
        if term.norm_fro() <= tol * sum.norm_fro() {
            break;
        }
    }
    Ok(sum)
}
