//! The coboundaries `d` (twisted) and `d̂` (classical) and the pullbacks `β^r`, `β^l`.
//!
//! Both differentials are assembled as coefficient matrices by evaluating
//!
//! ```text
//! dξ(x_1,…,x_{k+1}) = Σ_{i<j} (−1)^{i+j} ξ([x_i,x_j], α(x_1), …, x̂_i, …, x̂_j, …, α(x_{k+1}))
//! ```
//!
//! on every increasing basis tuple, with `([·,·], α) = ([·,·]_β, Ad_β)` for `d`
//! and `(commutator, id)` for `d̂`.

use super::{check_degree, minor, Cochain, MultiIndices};
use crate::homalg::HomLieContext;
use crate::linalg::{Involution, Matrix, RectMatrix};
use crate::{Error, Result};

fn assemble(
    n: usize,
    k: usize,
    bracket: impl Fn(&Matrix, &Matrix) -> Matrix,
    twist: impl Fn(&Matrix) -> Matrix,
) -> Result<RectMatrix> {
    let dim = n * n;
    check_degree(n, k)?;
    if k + 1 > dim {
        return Err(Error::DegreeOverflow { degree: k + 1, dim });
    }
    let basis: Vec<Matrix> = (0..dim).map(|i| Matrix::basis(n, i)).collect();
    let twisted: Vec<Vec<f64>> = basis.iter().map(|e| twist(e).into_vec()).collect();
    let mut brackets = vec![Vec::new(); dim * dim];
    for a in 0..dim {
        for b in a + 1..dim {
            brackets[a * dim + b] = bracket(&basis[a], &basis[b]).into_vec();
        }
    }

    let rows_idx = MultiIndices::new(dim, k + 1);
    let cols_idx = MultiIndices::new(dim, k);
    let mut out = RectMatrix::zeros(rows_idx.len(), cols_idx.len());
    let mut buf = vec![0.0; k * k];
    for (row, tuple) in rows_idx.iter().enumerate() {
        for i in 0..=k {
            for j in i + 1..=k {
                // 1-based positions i+1, j+1 give the same parity as i+j
                let sign = if (i + j) % 2 == 0 { 1.0 } else { -1.0 };
                let mut args: Vec<&[f64]> = Vec::with_capacity(k);
                args.push(&brackets[tuple[i] * dim + tuple[j]]);
                args.extend(
                    (0..=k)
                        .filter(|&l| l != i && l != j)
                        .map(|l| twisted[tuple[l]].as_slice()),
                );
                if args[0].iter().all(|v| *v == 0.0) {
                    continue;
                }
                for (col, idx) in cols_idx.iter().enumerate() {
                    let v = minor(&args, idx, &mut buf);
                    if v != 0.0 {
                        out.add_to(row, col, sign * v);
                    }
                }
            }
        }
    }
    Ok(out)
}

/// Coefficient matrix of `d: ∧^k → ∧^{k+1}`, of shape `C(n²,k+1) × C(n²,k)`.
pub fn coboundary_matrix_hom(ctx: &HomLieContext, k: usize) -> Result<RectMatrix> {
    assemble(
        ctx.n(),
        k,
        |a, b| ctx.bracket_unchecked(a, b),
        |a| ctx.ad_unchecked(a),
    )
}

/// Coefficient matrix of the classical `d̂`.
pub fn coboundary_matrix_lie(n: usize, k: usize) -> Result<RectMatrix> {
    assemble(n, k, |a, b| &(a * b) - &(b * a), Matrix::clone)
}

fn apply(m: &RectMatrix, xi: &Cochain) -> Cochain {
    Cochain {
        n: xi.n,
        k: xi.k + 1,
        coeffs: m.mul_vec(&xi.coeffs),
    }
}

/// `dξ` for the twisted algebra of `ctx`.
pub fn coboundary_hom(ctx: &HomLieContext, xi: &Cochain) -> Result<Cochain> {
    if xi.n != ctx.n() {
        return Err(Error::DimensionMismatch {
            expected: ctx.n(),
            found: xi.n,
        });
    }
    Ok(apply(&coboundary_matrix_hom(ctx, xi.k)?, xi))
}

/// `d̂ξ` for the classical Lie algebra `gl(n)`.
pub fn coboundary_lie(xi: &Cochain) -> Result<Cochain> {
    Ok(apply(&coboundary_matrix_lie(xi.n, xi.k)?, xi))
}

/// Matrix of the pullback `T^*` on `∧^k`, where `t` is the `n² × n²`
/// coordinate matrix of a linear map `T` on `gl(n)`. Entry `(I, J)` is
/// `det(t[J, I])`, the `k`-th compound matrix transposed.
pub fn pullback_matrix(t: &RectMatrix, k: usize) -> RectMatrix {
    let dim = t.cols();
    let idx = MultiIndices::new(dim, k);
    let columns: Vec<Vec<f64>> = t.columns();
    let mut out = RectMatrix::zeros(idx.len(), idx.len());
    let mut buf = vec![0.0; k * k];
    for (i, src) in idx.iter().enumerate() {
        let args: Vec<&[f64]> = src.iter().map(|&c| columns[c].as_slice()).collect();
        for (j, dst) in idx.iter().enumerate() {
            let v = minor(&args, dst, &mut buf);
            if v != 0.0 {
                out.set(i, j, v);
            }
        }
    }
    out
}

/// `(T^*ξ)(x_1,…,x_k) = ξ(Tx_1,…,Tx_k)`.
pub fn pullback(t: &RectMatrix, xi: &Cochain) -> Cochain {
    assert_eq!(t.cols(), xi.n * xi.n, "map dimension mismatch");
    Cochain {
        coeffs: pullback_matrix(t, xi.k).mul_vec(&xi.coeffs),
        ..xi.clone()
    }
}

fn multiplication_coordinates(n: usize, f: impl Fn(&Matrix) -> Matrix) -> RectMatrix {
    let cols: Vec<Vec<f64>> = (0..n * n)
        .map(|i| f(&Matrix::basis(n, i)).into_vec())
        .collect();
    RectMatrix::from_columns(n * n, &cols)
}

pub(crate) fn right_coordinates(beta: &Involution) -> RectMatrix {
    multiplication_coordinates(beta.n(), |x| x * beta.matrix())
}

pub(crate) fn left_coordinates(beta: &Involution) -> RectMatrix {
    multiplication_coordinates(beta.n(), |x| beta.matrix() * x)
}

fn check_same_n(beta: &Involution, xi: &Cochain) -> Result<()> {
    if beta.n() == xi.n {
        Ok(())
    } else {
        Err(Error::DimensionMismatch {
            expected: beta.n(),
            found: xi.n,
        })
    }
}

/// `β^r(ξ)(x_1,…,x_k) = ξ(x_1β,…,x_kβ)`.
pub fn pullback_right(beta: &Involution, xi: &Cochain) -> Result<Cochain> {
    check_same_n(beta, xi)?;
    Ok(pullback(&right_coordinates(beta), xi))
}

/// `β^l(ξ)(x_1,…,x_k) = ξ(βx_1,…,βx_k)`.
pub fn pullback_left(beta: &Involution, xi: &Cochain) -> Result<Cochain> {
    check_same_n(beta, xi)?;
    Ok(pullback(&left_coordinates(beta), xi))
}

/// Norms of the four commutation defects between the differentials and the pullbacks.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Intertwining {
    /// `‖β^r(dξ) − d̂(β^l ξ)‖`, identically zero.
    pub r1: f64,
    /// `‖d(β^r ξ) − β^l(d̂ξ)‖`, identically zero.
    pub r2: f64,
    /// `‖β^l(d̂ξ) − d̂(β^l ξ)‖`, generically nonzero.
    pub r3: f64,
    /// `‖β^r(dξ) − d(β^r ξ)‖`, generically nonzero.
    pub r4: f64,
}

pub fn intertwining_residuals(ctx: &HomLieContext, xi: &Cochain) -> Result<Intertwining> {
    let beta = ctx.beta();
    let d_xi = coboundary_hom(ctx, xi)?;
    let dl_xi = coboundary_lie(xi)?;
    let r_xi = pullback_right(beta, xi)?;
    let l_xi = pullback_left(beta, xi)?;
    let r_d = pullback_right(beta, &d_xi)?;
    let l_dl = pullback_left(beta, &dl_xi)?;
    let dl_l = coboundary_lie(&l_xi)?;
    let d_r = coboundary_hom(ctx, &r_xi)?;
    Ok(Intertwining {
        r1: (&r_d - &dl_l).norm(),
        r2: (&d_r - &l_dl).norm(),
        r3: (&l_dl - &dl_l).norm(),
        r4: (&r_d - &d_r).norm(),
    })
}
