//! The twisted matrix Hom-Lie algebra `(gl(V), [·,·]_β, Ad_β)`.
//!
//! With `β² = I` the bracket is `[A,B]_β = βAβBβ − βBβAβ` and the twist is
//! `Ad_β(A) = βAβ`. For `β = I` both collapse to the commutator and the
//! identity map.

use std::fmt;
use std::sync::Arc;

use crate::linalg::{inverse, Involution, Matrix, RectMatrix};
use crate::report::{Case, Report};
use crate::sampling;
use crate::{Error, Result};

/// Pass threshold for [`check_morphism`].
pub const MORPHISM_TOL: f64 = 1e-8;
pub const DEFAULT_SAMPLES: usize = 100;

#[derive(Clone, Debug, PartialEq)]
pub struct HomLieContext {
    beta: Involution,
}

impl HomLieContext {
    pub fn new(beta: Involution) -> Self {
        Self { beta }
    }

    /// The untwisted Lie algebra `gl(n)`.
    pub fn classical(n: usize) -> Self {
        Self::new(Involution::identity(n))
    }

    pub fn n(&self) -> usize {
        self.beta.n()
    }

    pub fn beta(&self) -> &Involution {
        &self.beta
    }

    fn check(&self, m: &Matrix) -> Result<()> {
        m.check_dim(self.n())
    }

    /// `[A,B]_β`.
    pub fn bracket(&self, a: &Matrix, b: &Matrix) -> Result<Matrix> {
        self.check(a)?;
        self.check(b)?;
        Ok(self.bracket_unchecked(a, b))
    }

    pub(crate) fn bracket_unchecked(&self, a: &Matrix, b: &Matrix) -> Matrix {
        let beta = self.beta.matrix();
        let a_tw = self.ad_unchecked(a);
        let b_tw = self.ad_unchecked(b);
        let ab = &a_tw * &(b * beta);
        let ba = &b_tw * &(a * beta);
        &ab - &ba
    }

    /// `Ad_β(A) = βAβ`.
    pub fn ad(&self, a: &Matrix) -> Result<Matrix> {
        self.check(a)?;
        Ok(self.ad_unchecked(a))
    }

    pub(crate) fn ad_unchecked(&self, a: &Matrix) -> Matrix {
        let beta = self.beta.matrix();
        &(beta * a) * beta
    }

    /// `‖[Ad x,[y,z]] + [Ad y,[z,x]] + [Ad z,[x,y]]‖_F` for the twisted bracket.
    pub fn hom_jacobi_residual(&self, x: &Matrix, y: &Matrix, z: &Matrix) -> Result<f64> {
        for m in [x, y, z] {
            self.check(m)?;
        }
        let br = |a: &Matrix, b: &Matrix| self.bracket_unchecked(a, b);
        let sum = &(&br(&self.ad_unchecked(x), &br(y, z)) + &br(&self.ad_unchecked(y), &br(z, x)))
            + &br(&self.ad_unchecked(z), &br(x, y));
        Ok(sum.norm_fro())
    }

    /// Same cyclic sum without the twist on the outer arguments. Nonzero
    /// values witness that `[·,·]_β` is not itself a Lie bracket.
    pub fn untwisted_jacobi_residual(&self, x: &Matrix, y: &Matrix, z: &Matrix) -> Result<f64> {
        for m in [x, y, z] {
            self.check(m)?;
        }
        let br = |a: &Matrix, b: &Matrix| self.bracket_unchecked(a, b);
        let sum = &(&br(x, &br(y, z)) + &br(y, &br(z, x))) + &br(z, &br(x, y));
        Ok(sum.norm_fro())
    }

    /// Exhaustive search over basis triples `(E_a, E_b, E_c)` for the largest
    /// untwisted Jacobi residual. Returns the residual and the triple.
    pub fn untwisted_jacobi_witness(&self) -> (f64, [usize; 3]) {
        let dim = self.n() * self.n();
        let basis: Vec<Matrix> = (0..dim).map(|i| Matrix::basis(self.n(), i)).collect();
        let mut best = (0.0, [0, 0, 0]);
        for a in 0..dim {
            for b in 0..dim {
                for c in 0..dim {
                    let r = self
                        .untwisted_jacobi_residual(&basis[a], &basis[b], &basis[c])
                        .expect("basis has context dimension");
                    if r > best.0 {
                        best = (r, [a, b, c]);
                    }
                }
            }
        }
        best
    }
}

/// A linear map between matrix spaces, given by its action or by its
/// coordinate matrix over the row-major `E_{pq}` basis (column `i` holds the
/// coordinates of `ψ(E_i)`).
#[derive(Clone)]
pub enum LinearMap {
    Action {
        out_dim: usize,
        f: Arc<dyn Fn(&Matrix) -> Matrix + Send + Sync>,
    },
    Coordinates(RectMatrix),
}

impl fmt::Debug for LinearMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Action { out_dim, .. } => write!(f, "LinearMap::Action(→ gl({out_dim}))"),
            Self::Coordinates(m) => write!(f, "LinearMap::Coordinates({}×{})", m.rows(), m.cols()),
        }
    }
}

impl LinearMap {
    pub fn from_fn(out_dim: usize, f: impl Fn(&Matrix) -> Matrix + Send + Sync + 'static) -> Self {
        Self::Action {
            out_dim,
            f: Arc::new(f),
        }
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, Matrix::clone)
    }

    pub fn apply(&self, x: &Matrix) -> Matrix {
        match self {
            Self::Action { f, .. } => f(x),
            Self::Coordinates(m) => {
                let out = m.mul_vec(x.as_slice());
                let n = (out.len() as f64).sqrt().round() as usize;
                Matrix::from_raw(n, out)
            }
        }
    }

    /// Coordinate matrix of the map restricted to `gl(n_in)`.
    pub fn coordinates(&self, n_in: usize) -> RectMatrix {
        match self {
            Self::Coordinates(m) => m.clone(),
            Self::Action { .. } => {
                let cols: Vec<Vec<f64>> = (0..n_in * n_in)
                    .map(|i| self.apply(&Matrix::basis(n_in, i)).into_vec())
                    .collect();
                let rows = cols.first().map_or(0, Vec::len);
                RectMatrix::from_columns(rows, &cols)
            }
        }
    }

    fn out_dim(&self) -> Option<usize> {
        match self {
            Self::Action { out_dim, .. } => Some(*out_dim),
            Self::Coordinates(m) => {
                let n = (m.rows() as f64).sqrt().round() as usize;
                (n * n == m.rows()).then_some(n)
            }
        }
    }

    fn in_dim(&self) -> Option<usize> {
        match self {
            Self::Action { .. } => None,
            Self::Coordinates(m) => {
                let n = (m.cols() as f64).sqrt().round() as usize;
                (n * n == m.cols()).then_some(n)
            }
        }
    }
}

/// A candidate morphism `ψ: (gl, [·,·]_source, Ad_source) → (gl, [·,·]_target, Ad_target)`.
#[derive(Clone, Debug)]
pub struct MorphismData {
    pub psi: LinearMap,
    pub source: HomLieContext,
    pub target: HomLieContext,
}

impl MorphismData {
    pub fn new(psi: LinearMap, source: HomLieContext, target: HomLieContext) -> Result<Self> {
        let expect_out = target.n();
        match psi.out_dim() {
            Some(d) if d == expect_out => {}
            Some(d) => {
                return Err(Error::DimensionMismatch {
                    expected: expect_out,
                    found: d,
                })
            }
            None => {
                return Err(Error::InvalidArgument(
                    "coordinate matrix rows are not a square count".into(),
                ))
            }
        }
        if let LinearMap::Coordinates(m) = &psi {
            match psi.in_dim() {
                Some(d) if d == source.n() => {}
                _ => {
                    return Err(Error::DimensionMismatch {
                        expected: source.n() * source.n(),
                        found: m.cols(),
                    })
                }
            }
        }
        Ok(Self {
            psi,
            source,
            target,
        })
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct MorphismReport {
    pub max_bracket_residual: f64,
    pub max_twist_residual: f64,
    pub max_linearity_residual: f64,
    pub pass: bool,
}

impl MorphismReport {
    pub fn into_report(self, suite: &str, n: usize, beta_id: &str) -> Report {
        let mut r = Report::new(suite, n, beta_id);
        r.push(Case::at_most(
            "morphism: bracket",
            "ψ([x,y]_source) = [ψ(x),ψ(y)]_target",
            self.max_bracket_residual,
            MORPHISM_TOL,
        ));
        r.push(Case::at_most(
            "morphism: twist",
            "ψ∘α = δ∘ψ",
            self.max_twist_residual,
            MORPHISM_TOL,
        ));
        r.push(Case::at_most(
            "morphism: linearity",
            "ψ(ax+by) = aψ(x)+bψ(y)",
            self.max_linearity_residual,
            1e-10,
        ));
        r
    }
}

/// Samples random pairs and measures how far `ψ` is from intertwining the
/// brackets and the twists. Passes iff both residuals are `≤ 1e-8` and the map
/// is linear to `1e-10` relative.
pub fn check_morphism(m: &MorphismData, samples: usize, seed: u64) -> Result<MorphismReport> {
    if samples == 0 {
        return Err(Error::InvalidArgument("samples must be at least 1".into()));
    }
    let n = m.source.n();
    let mut rng = sampling::rng(seed);
    let (mut bracket, mut twist, mut linear) = (0.0f64, 0.0f64, 0.0f64);
    for _ in 0..samples {
        let x = sampling::uniform(&mut rng, n);
        let y = sampling::uniform(&mut rng, n);
        let (a, b) = (
            rand::Rng::gen_range(&mut rng, -2.0..2.0),
            rand::Rng::gen_range(&mut rng, -2.0..2.0),
        );
        let px = m.psi.apply(&x);
        let py = m.psi.apply(&y);
        px.check_dim(m.target.n())?;
        let lhs = m.psi.apply(&m.source.bracket_unchecked(&x, &y));
        bracket = bracket.max(lhs.dist(&m.target.bracket_unchecked(&px, &py)));
        let lhs = m.psi.apply(&m.source.ad_unchecked(&x));
        twist = twist.max(lhs.dist(&m.target.ad_unchecked(&px)));
        let combo = m.psi.apply(&(&x.scale(a) + &y.scale(b)));
        let expect = &px.scale(a) + &py.scale(b);
        linear = linear.max(combo.dist(&expect) / (1.0 + expect.norm_fro()));
    }
    Ok(MorphismReport {
        max_bracket_residual: bracket,
        max_twist_residual: twist,
        max_linearity_residual: linear,
        pass: bracket <= MORPHISM_TOL && twist <= MORPHISM_TOL && linear <= 1e-10,
    })
}

/// For invertible `C`, the context twisted by `γ = CβC⁻¹` and the map
/// `F(x) = CxC⁻¹` between the two algebras.
pub fn conjugation_transport(
    ctx: &HomLieContext,
    c: &Matrix,
) -> Result<(HomLieContext, MorphismData)> {
    c.check_dim(ctx.n())?;
    let c_inv = inverse(c)?;
    let gamma = ctx.beta().conjugated(c)?;
    let gamma_ctx = HomLieContext::new(gamma);
    let cc = c.clone();
    let psi = LinearMap::from_fn(ctx.n(), move |x| &(&cc * x) * &c_inv);
    let data = MorphismData::new(psi, ctx.clone(), gamma_ctx.clone())?;
    Ok((gamma_ctx, data))
}
