//! Real principal logarithm by inverse scaling and squaring.

use super::{expm, inverse, Matrix, DEFAULT_EXPM_TOL};

const MAX_ROOTS: usize = 40;
const DB_ITERS: usize = 80;

/// Principal square root by the Denman–Beavers iteration.
///
/// For a real matrix with eigenvalues on the closed negative real axis no real
/// principal root exists and the iteration does not settle; that case
/// returns `None`, as does any singular iterate.
fn sqrtm(a: &Matrix) -> Option<Matrix> {
    let mut y = a.clone();
    let mut z = Matrix::identity(a.n());
    for _ in 0..DB_ITERS {
        let y_inv = inverse(&y).ok()?;
        let z_inv = inverse(&z).ok()?;
        let y_next = (&y + &z_inv).scale(0.5);
        let z_next = (&z + &y_inv).scale(0.5);
        let step = y_next.dist(&y);
        y = y_next;
        z = z_next;
        if step <= 1e-15 * y.norm_fro() {
            break;
        }
    }
    ((&y * &y).dist(a) <= 1e-10 * a.norm_fro()).then_some(y)
}

/// Real principal logarithm of `a`, or `None` when it cannot be certified
/// (spectrum touching the closed negative real axis, or numerical failure).
///
/// A returned value always satisfies `‖e^L − A‖_F ≤ 1e-9·‖A‖_F`.
pub fn principal_log(a: &Matrix) -> Option<Matrix> {
    let n = a.n();
    let id = Matrix::identity(n);
    let mut x = a.clone();
    let mut roots = 0;
    while x.dist(&id) > 0.25 {
        if roots == MAX_ROOTS {
            return None;
        }
        x = sqrtm(&x)?;
        roots += 1;
    }
    let e = &x - &id;
    let mut power = e.clone();
    let mut sum = e.clone();
    for m in 2..400 {
        power = &power * &e;
        let term = power.scale(if m % 2 == 0 { -1.0 } else { 1.0 } / m as f64);
        sum = &sum + &term;
        if term.norm_fro() <= 1e-17 * sum.norm_fro().max(f64::MIN_POSITIVE) {
            break;
        }
    }
    let log = sum.scale(2f64.powi(roots as i32));
    let back = expm(&log, DEFAULT_EXPM_TOL).ok()?;
    (back.dist(a) <= 1e-9 * a.norm_fro()).then_some(log)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn log_of_identity_is_zero() {
        assert!(principal_log(&Matrix::identity(3)).unwrap().norm_fro() < 1e-15);
    }

    #[test]
    fn log_inverts_exp_near_identity() {
        let x = Matrix::from_rows(vec![
            vec![0.3, -0.7, 0.1],
            vec![0.2, 0.1, -0.4],
            vec![-0.5, 0.6, 0.2],
        ])
        .unwrap();
        let l = principal_log(&expm(&x, DEFAULT_EXPM_TOL).unwrap()).unwrap();
        assert!(l.dist(&x) < 1e-10, "{}", l.dist(&x));
    }

    #[test]
    fn negative_spectrum_is_undecided() {
        assert!(principal_log(&Matrix::diag(&[-1.0, 2.0])).is_none());
        assert!(principal_log(&Matrix::diag(&[-1.0, -1.0])).is_none());
        assert!(principal_log(&Matrix::zeros(2)).is_none());
    }
}
