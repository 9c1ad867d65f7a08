//! Brute-force cohomology of the twisted and classical complexes.

use std::fmt::Write as _;

use serde::Serialize;

use super::coboundary::{left_coordinates, right_coordinates};
use super::{binomial, coboundary_matrix_hom, coboundary_matrix_lie, pullback_matrix};
use crate::homalg::HomLieContext;
use crate::linalg::{rank_and_kernel, Matrix, RectMatrix};
use crate::{Error, Result};

/// Largest `n` accepted by [`cohomology`]; `gl(3)` already has 126-dimensional middle degrees.
pub const MAX_COHOMOLOGY_N: usize = 3;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DegreeRow {
    pub k: usize,
    pub dim_z_hom: usize,
    pub dim_b_hom: usize,
    pub dim_h_hom: usize,
    pub dim_z_lie: usize,
    pub dim_b_lie: usize,
    pub dim_h_lie: usize,
    /// `Z^k(HL) = Z^k(L)` as subspaces of `∧^k gl(V)*`.
    pub subspace_equal_z: bool,
    /// `B^k(HL) = B^k(L)` as subspaces.
    pub subspace_equal_b: bool,
    /// `Z^k(HL) = β^l(Z^k(L))`.
    pub transported_equal_z: bool,
    /// `B^k(HL) = β^r(B^k(L))`.
    pub transported_equal_b: bool,
}

impl DegreeRow {
    pub fn dims_agree(&self) -> bool {
        self.dim_h_hom == self.dim_h_lie
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CohomologyReport {
    pub n: usize,
    pub beta: Matrix,
    pub tolerance: f64,
    pub rows: Vec<DegreeRow>,
}

impl CohomologyReport {
    pub fn dims_agree(&self) -> bool {
        self.rows.iter().all(DegreeRow::dims_agree)
    }

    pub fn transported_subspaces_agree(&self) -> bool {
        self.rows
            .iter()
            .all(|r| r.transported_equal_z && r.transported_equal_b)
    }

    pub fn literal_subspaces_agree(&self) -> bool {
        self.rows
            .iter()
            .all(|r| r.subspace_equal_z && r.subspace_equal_b)
    }

    pub fn to_table(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(
            out,
            "{:>2} | {:>5} {:>5} {:>5} | {:>5} {:>5} {:>5} | {:>6} {:>6} | {:>7} {:>7}",
            "k", "Z_HL", "B_HL", "H_HL", "Z_L", "B_L", "H_L", "Z eq", "B eq", "Z~β^l", "B~β^r"
        );
        let yn = |b: bool| if b { "yes" } else { "no" };
        for r in &self.rows {
            let _ = writeln!(
                out,
                "{:>2} | {:>5} {:>5} {:>5} | {:>5} {:>5} {:>5} | {:>6} {:>6} | {:>7} {:>7}",
                r.k,
                r.dim_z_hom,
                r.dim_b_hom,
                r.dim_h_hom,
                r.dim_z_lie,
                r.dim_b_lie,
                r.dim_h_lie,
                yn(r.subspace_equal_z),
                yn(r.subspace_equal_b),
                yn(r.transported_equal_z),
                yn(r.transported_equal_b),
            );
        }
        out
    }
}

fn rank_of_columns(dim: usize, cols: &[Vec<f64>], tol: f64) -> usize {
    if cols.is_empty() {
        return 0;
    }
    rank_and_kernel(&RectMatrix::from_columns(dim, cols), tol).rank
}

/// Two finite families span the same subspace of `ℝ^dim`.
fn same_span(dim: usize, a: &[Vec<f64>], b: &[Vec<f64>], tol: f64) -> bool {
    let ra = rank_of_columns(dim, a, tol);
    let rb = rank_of_columns(dim, b, tol);
    let both: Vec<Vec<f64>> = a.iter().chain(b).cloned().collect();
    ra == rb && rank_of_columns(dim, &both, tol) == ra
}

struct Complex {
    /// `d_k` for `k = 0..=top`, `None` at the top degree where the target is zero.
    maps: Vec<Option<RectMatrix>>,
}

impl Complex {
    fn kernel(&self, dim_k: usize, k: usize, tol: f64) -> Vec<Vec<f64>> {
        match &self.maps[k] {
            Some(d) => rank_and_kernel(d, tol).kernel,
            None => (0..dim_k)
                .map(|i| {
                    let mut v = vec![0.0; dim_k];
                    v[i] = 1.0;
                    v
                })
                .collect(),
        }
    }

    fn image(&self, k: usize) -> Vec<Vec<f64>> {
        if k == 0 {
            return Vec::new();
        }
        self.maps[k - 1]
            .as_ref()
            .map(RectMatrix::columns)
            .unwrap_or_default()
    }
}

/// Dimensions of `Z^k`, `B^k`, `H^k` for both complexes, `k = 0..=k_max`,
/// together with subspace comparisons. `n ≤ 3`.
pub fn cohomology(ctx: &HomLieContext, k_max: usize, tol: f64) -> Result<CohomologyReport> {
    let n = ctx.n();
    if n > MAX_COHOMOLOGY_N {
        return Err(Error::TooLarge {
            n,
            max: MAX_COHOMOLOGY_N,
        });
    }
    let dim = n * n;
    if k_max > dim {
        return Err(Error::DegreeOverflow { degree: k_max, dim });
    }
    if !(tol > 0.0) {
        return Err(Error::InvalidArgument(format!(
            "rank tolerance must be positive, got {tol}"
        )));
    }
    let build = |hom: bool| -> Result<Complex> {
        let maps = (0..=k_max)
            .map(|k| {
                if k == dim {
                    Ok(None)
                } else if hom {
                    coboundary_matrix_hom(ctx, k).map(Some)
                } else {
                    coboundary_matrix_lie(n, k).map(Some)
                }
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Complex { maps })
    };
    let hom = build(true)?;
    let lie = build(false)?;
    let right = right_coordinates(ctx.beta());
    let left = left_coordinates(ctx.beta());

    let mut rows = Vec::with_capacity(k_max + 1);
    for k in 0..=k_max {
        let dim_k = binomial(dim, k);
        let z_hom = hom.kernel(dim_k, k, tol);
        let z_lie = lie.kernel(dim_k, k, tol);
        let b_hom = hom.image(k);
        let b_lie = lie.image(k);
        let dim_b_hom = rank_of_columns(dim_k, &b_hom, tol);
        let dim_b_lie = rank_of_columns(dim_k, &b_lie, tol);

        let left_k = pullback_matrix(&left, k);
        let right_k = pullback_matrix(&right, k);
        let z_lie_moved: Vec<Vec<f64>> = z_lie.iter().map(|v| left_k.mul_vec(v)).collect();
        let b_lie_moved: Vec<Vec<f64>> = b_lie.iter().map(|v| right_k.mul_vec(v)).collect();

        rows.push(DegreeRow {
            k,
            dim_z_hom: z_hom.len(),
            dim_b_hom,
            dim_h_hom: z_hom.len() - dim_b_hom,
            dim_z_lie: z_lie.len(),
            dim_b_lie,
            dim_h_lie: z_lie.len() - dim_b_lie,
            subspace_equal_z: same_span(dim_k, &z_hom, &z_lie, tol),
            subspace_equal_b: same_span(dim_k, &b_hom, &b_lie, tol),
            transported_equal_z: same_span(dim_k, &z_hom, &z_lie_moved, tol),
            transported_equal_b: same_span(dim_k, &b_hom, &b_lie_moved, tol),
        });
    }
    Ok(CohomologyReport {
        n,
        beta: ctx.beta().matrix().clone(),
        tolerance: tol,
        rows,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{Involution, DEFAULT_RANK_TOL};

    #[test]
    fn gl1_is_abelian() {
        for s in [1.0, -1.0] {
            let ctx = HomLieContext::new(Involution::diag_signs(&[s]).unwrap());
            let rep = cohomology(&ctx, 1, DEFAULT_RANK_TOL).unwrap();
            for r in &rep.rows {
                assert_eq!((r.dim_h_hom, r.dim_h_lie), (1, 1));
                assert!(r.subspace_equal_z && r.subspace_equal_b);
            }
        }
    }

    #[test]
    fn identity_twist_columns_coincide() {
        let rep = cohomology(&HomLieContext::classical(2), 4, DEFAULT_RANK_TOL).unwrap();
        for r in &rep.rows {
            assert_eq!(r.dim_z_hom, r.dim_z_lie);
            assert_eq!(r.dim_b_hom, r.dim_b_lie);
            assert!(r.subspace_equal_z && r.subspace_equal_b);
        }
        // H*(gl(2)) = H*(sl(2)) ⊗ H*(ℝ): Betti numbers 1,1,0,1,1
        let betti: Vec<usize> = rep.rows.iter().map(|r| r.dim_h_lie).collect();
        assert_eq!(betti, vec![1, 1, 0, 1, 1]);
    }

    #[test]
    fn twisted_dims_agree_and_transport() {
        let ctx = HomLieContext::new(Involution::diag_signs(&[1.0, -1.0]).unwrap());
        let rep = cohomology(&ctx, 4, DEFAULT_RANK_TOL).unwrap();
        assert!(rep.dims_agree());
        assert!(rep.transported_subspaces_agree());
        // the trace is closed for d̂ but not for d
        assert!(!rep.rows[1].subspace_equal_z);
    }

    #[test]
    fn limits_are_enforced() {
        let ctx = HomLieContext::classical(4);
        assert!(matches!(
            cohomology(&ctx, 1, 1e-9),
            Err(Error::TooLarge { .. })
        ));
        let ctx = HomLieContext::classical(2);
        assert!(matches!(
            cohomology(&ctx, 5, 1e-9),
            Err(Error::DegreeOverflow { .. })
        ));
        assert!(cohomology(&ctx, 2, 0.0).is_err());
    }
}
