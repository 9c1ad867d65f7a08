//! Pivoted elimination: inverse, determinant, rank and nullspace.

use super::{Matrix, RectMatrix};
use crate::{Error, Result};

/// Relative pivot tolerance used when a caller has no better value.
pub const DEFAULT_RANK_TOL: f64 = 1e-9;

/// Gauss–Jordan inverse with partial pivoting.
///
/// Fails with [`Error::Singular`] when a pivot vanishes relative to the
/// largest entry, or when the computed inverse misses `‖A·A⁻¹ − I‖_F ≤ 1e-10·n`.
pub fn inverse(a: &Matrix) -> Result<Matrix> {
    let n = a.n();
    let scale = a.max_abs();
    if scale == 0.0 {
        return Err(Error::Singular {
            condition: f64::INFINITY,
        });
    }
    let mut w = a.as_slice().to_vec();
    let mut inv = Matrix::identity(n).into_vec();
    let (mut min_pivot, mut max_pivot) = (f64::INFINITY, 0.0f64);
    for col in 0..n {
        let (piv_row, piv_abs) =
            (col..n)
                .map(|r| (r, w[r * n + col].abs()))
                .fold(
                    (col, -1.0),
                    |best, cur| if cur.1 > best.1 { cur } else { best },
                );
        min_pivot = min_pivot.min(piv_abs);
        max_pivot = max_pivot.max(piv_abs);
        if piv_abs <= 1e-14 * scale {
            return Err(Error::Singular {
                condition: if piv_abs == 0.0 {
                    f64::INFINITY
                } else {
                    max_pivot / piv_abs
                },
            });
        }
        if piv_row != col {
            for j in 0..n {
                w.swap(col * n + j, piv_row * n + j);
                inv.swap(col * n + j, piv_row * n + j);
            }
        }
        let p = w[col * n + col];
        for j in 0..n {
            w[col * n + j] /= p;
            inv[col * n + j] /= p;
        }
        for r in 0..n {
            if r == col {
                continue;
            }
            let f = w[r * n + col];
            if f == 0.0 {
                continue;
            }
            for j in 0..n {
                w[r * n + j] -= f * w[col * n + j];
                inv[r * n + j] -= f * inv[col * n + j];
            }
        }
    }
    let inv = Matrix::from_raw(n, inv);
    let condition = a.norm_fro() * inv.norm_fro();
    if !inv.is_finite() || (a * &inv).dist(&Matrix::identity(n)) > 1e-10 * n as f64 {
        return Err(Error::Singular { condition });
    }
    Ok(inv)
}

/// Determinant of a `k × k` row-major block, destroying it. `k = 0` gives 1.
pub fn det_in_place(a: &mut [f64], k: usize) -> f64 {
    let mut det = 1.0;
    for col in 0..k {
        let mut piv = col;
        for r in col + 1..k {
            if a[r * k + col].abs() > a[piv * k + col].abs() {
                piv = r;
            }
        }
        let p = a[piv * k + col];
        if p == 0.0 {
            return 0.0;
        }
        if piv != col {
            for j in 0..k {
                a.swap(col * k + j, piv * k + j);
            }
            det = -det;
        }
        det *= p;
        for r in col + 1..k {
            let f = a[r * k + col] / p;
            if f == 0.0 {
                continue;
            }
            for j in col..k {
                a[r * k + j] -= f * a[col * k + j];
            }
        }
    }
    det
}

/// Determinant by partial-pivoted LU; exactly `0.0` for an exactly singular input.
pub fn det(a: &Matrix) -> f64 {
    let mut w = a.as_slice().to_vec();
    det_in_place(&mut w, a.n())
}

#[derive(Clone, Debug)]
pub struct RankKernel {
    pub rank: usize,
    /// Basis of the numerical nullspace, one vector per free column.
    pub kernel: Vec<Vec<f64>>,
}

/// Rank and nullspace via fully pivoted reduction to row echelon form.
///
/// A pivot counts when its magnitude exceeds `tol · max|entry|`, so the
/// result is invariant under uniform scaling of `m`.
pub fn rank_and_kernel(m: &RectMatrix, tol: f64) -> RankKernel {
    let (rows, cols) = (m.rows(), m.cols());
    let threshold = tol * m.max_abs();
    let mut w = m.as_slice().to_vec();
    let mut perm: Vec<usize> = (0..cols).collect();
    let mut rank = 0;
    if threshold > 0.0 {
        while rank < rows.min(cols) {
            let mut best = (rank, rank, 0.0f64);
            for i in rank..rows {
                for j in rank..cols {
                    let v = w[i * cols + j].abs();
                    if v > best.2 {
                        best = (i, j, v);
                    }
                }
            }
            if best.2 <= threshold {
                break;
            }
            let (pi, pj, _) = best;
            if pi != rank {
                for j in 0..cols {
                    w.swap(rank * cols + j, pi * cols + j);
                }
            }
            if pj != rank {
                for i in 0..rows {
                    w.swap(i * cols + rank, i * cols + pj);
                }
                perm.swap(rank, pj);
            }
            let p = w[rank * cols + rank];
            for j in 0..cols {
                w[rank * cols + j] /= p;
            }
            for i in 0..rows {
                if i == rank {
                    continue;
                }
                let f = w[i * cols + rank];
                if f == 0.0 {
                    continue;
                }
                for j in 0..cols {
                    w[i * cols + j] -= f * w[rank * cols + j];
                }
            }
            rank += 1;
        }
    }
    let kernel = (rank..cols)
        .map(|free| {
            let mut v = vec![0.0; cols];
            v[perm[free]] = 1.0;
            for (i, &pc) in perm.iter().enumerate().take(rank) {
                v[pc] = -w[i * cols + free];
            }
            v
        })
        .collect();
    RankKernel { rank, kernel }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: Vec<Vec<f64>>) -> Matrix {
        Matrix::from_rows(rows).unwrap()
    }

    #[test]
    fn inverse_examples() {
        assert_eq!(inverse(&Matrix::identity(3)).unwrap(), Matrix::identity(3));
        assert_eq!(
            inverse(&Matrix::diag(&[2.0, 4.0])).unwrap(),
            Matrix::diag(&[0.5, 0.25])
        );
        let p = Matrix::transposition(2, 0, 1);
        assert_eq!(inverse(&p).unwrap(), p);
    }

    #[test]
    fn inverse_rejects_singular() {
        let s = m(vec![vec![1.0, 2.0], vec![2.0, 4.0]]);
        assert!(matches!(inverse(&s), Err(Error::Singular { .. })));
        assert!(matches!(
            inverse(&Matrix::zeros(2)),
            Err(Error::Singular { .. })
        ));
        let near = m(vec![vec![1.0, 1.0], vec![1.0, 1.0 + 1e-15]]);
        assert!(inverse(&near).is_err());
    }

    #[test]
    fn det_examples() {
        assert_eq!(det(&Matrix::identity(4)), 1.0);
        assert_eq!(det(&Matrix::transposition(2, 0, 1)), -1.0);
        assert_eq!(det(&Matrix::diag(&[-1.0, -1.0])), 1.0);
        assert_eq!(det(&m(vec![vec![1.0, 2.0], vec![2.0, 4.0]])), 0.0);
    }

    #[test]
    fn rank_examples() {
        let z = rank_and_kernel(&RectMatrix::zeros(3, 3), 1e-10);
        assert_eq!((z.rank, z.kernel.len()), (0, 3));
        let id = RectMatrix::from_rows(&Matrix::identity(3).rows());
        let r = rank_and_kernel(&id, 1e-10);
        assert_eq!((r.rank, r.kernel.len()), (3, 0));
        let p = RectMatrix::from_rows(&[vec![1.0, 2.0], vec![2.0, 4.0]]);
        let r = rank_and_kernel(&p, 1e-10);
        assert_eq!(r.rank, 1);
        let v = &r.kernel[0];
        assert!((v[0] + v[1] * 2.0).abs() < 1e-14, "{v:?} not ∝ (2,-1)");
    }

    #[test]
    fn kernel_vectors_are_annihilated() {
        let a = RectMatrix::from_rows(&[
            vec![1.0, 0.0, -1.0, 2.0, 0.0],
            vec![0.0, 3.0, 1.0, 0.0, 1.0],
            vec![1.0, 3.0, 0.0, 2.0, 1.0],
        ]);
        let r = rank_and_kernel(&a, 1e-10);
        assert_eq!(r.rank, 2);
        assert_eq!(r.kernel.len(), 3);
        for v in &r.kernel {
            assert!(a.mul_vec(v).iter().all(|x| x.abs() < 1e-12));
        }
    }

    #[test]
    fn wide_and_tall_shapes() {
        let wide = RectMatrix::from_rows(&[vec![1.0, 1.0, 1.0]]);
        let r = rank_and_kernel(&wide, 1e-10);
        assert_eq!((r.rank, r.kernel.len()), (1, 2));
        let tall = RectMatrix::from_rows(&[vec![1.0], vec![2.0], vec![3.0]]);
        let r = rank_and_kernel(&tall, 1e-10);
        assert_eq!((r.rank, r.kernel.len()), (1, 0));
        let empty_rows = RectMatrix::zeros(0, 4);
        let r = rank_and_kernel(&empty_rows, 1e-10);
        assert_eq!((r.rank, r.kernel.len()), (0, 4));
    }
}
