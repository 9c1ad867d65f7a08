//! Homomorphisms between Hom-Lie groups `(M_γ, R_γ) → (M_β, R_β)` and the
//! induced morphism of Hom-Lie algebras.

use std::sync::Arc;

use super::{Component, GroupTwist, Membership};
use crate::homalg::HomLieContext;
use crate::linalg::{det, expm, inverse, Involution, Matrix, DEFAULT_EXPM_TOL};
use crate::report::{Case, Report};
use crate::sampling;
use crate::{Error, Result};

pub const EXACT_TOL: f64 = 1e-9;
pub const DERIVATIVE_TOL: f64 = 1e-6;
pub const DERIVATIVE_STEP: f64 = 1e-4;
pub const DET_SIGN_TOL: f64 = 1e-12;

/// A group map `Φ` paired with its candidate algebra map `φ`.
pub trait GroupMorphismPair {
    fn gamma(&self) -> &Involution;
    fn beta(&self) -> &Involution;
    fn big_phi(&self, a: &Matrix) -> Matrix;
    fn small_phi(&self, x: &Matrix) -> Matrix;

    fn n(&self) -> usize {
        self.gamma().n()
    }
}

/// `Φ(A) = CAC⁻¹`, `φ(X) = CXC⁻¹`, and `β = CγC⁻¹`.
#[derive(Clone, Debug, PartialEq)]
pub struct ConjugationMorphism {
    c: Matrix,
    c_inv: Matrix,
    gamma: Involution,
    beta: Involution,
}

impl ConjugationMorphism {
    pub fn new(c: Matrix, gamma: Involution) -> Result<Self> {
        c.check_dim(gamma.n())?;
        let c_inv = inverse(&c)?;
        let beta = Involution::new(&(&c * gamma.matrix()) * &c_inv)?;
        Ok(Self {
            c,
            c_inv,
            gamma,
            beta,
        })
    }

    pub fn c(&self) -> &Matrix {
        &self.c
    }

    fn conjugate(&self, a: &Matrix) -> Matrix {
        &(&self.c * a) * &self.c_inv
    }
}

impl GroupMorphismPair for ConjugationMorphism {
    fn gamma(&self) -> &Involution {
        &self.gamma
    }

    fn beta(&self) -> &Involution {
        &self.beta
    }

    fn big_phi(&self, a: &Matrix) -> Matrix {
        self.conjugate(a)
    }

    fn small_phi(&self, x: &Matrix) -> Matrix {
        self.conjugate(x)
    }
}

type MatrixFn = Arc<dyn Fn(&Matrix) -> Matrix + Send + Sync>;

/// A user-supplied `(Φ, φ)` pair.
#[derive(Clone)]
pub struct CallableMorphism {
    gamma: Involution,
    beta: Involution,
    big: MatrixFn,
    small: MatrixFn,
}

impl CallableMorphism {
    pub fn new(
        gamma: Involution,
        beta: Involution,
        big_phi: impl Fn(&Matrix) -> Matrix + Send + Sync + 'static,
        small_phi: impl Fn(&Matrix) -> Matrix + Send + Sync + 'static,
    ) -> Result<Self> {
        if gamma.n() != beta.n() {
            return Err(Error::DimensionMismatch {
                expected: gamma.n(),
                found: beta.n(),
            });
        }
        Ok(Self {
            gamma,
            beta,
            big: Arc::new(big_phi),
            small: Arc::new(small_phi),
        })
    }
}

impl std::fmt::Debug for CallableMorphism {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("CallableMorphism")
            .field("gamma", &self.gamma)
            .field("beta", &self.beta)
            .finish_non_exhaustive()
    }
}

impl GroupMorphismPair for CallableMorphism {
    fn gamma(&self) -> &Involution {
        &self.gamma
    }

    fn beta(&self) -> &Involution {
        &self.beta
    }

    fn big_phi(&self, a: &Matrix) -> Matrix {
        (self.big)(a)
    }

    fn small_phi(&self, x: &Matrix) -> Matrix {
        (self.small)(x)
    }
}

fn exp(a: &Matrix) -> Result<Matrix> {
    expm(a, DEFAULT_EXPM_TOL)
}

/// Lie product approximation `(e^{A/m}e^{B/m})^m` by repeated squaring (`m = 2^levels`).
fn lie_product(a: &Matrix, b: &Matrix, levels: u32) -> Result<Matrix> {
    let m = f64::from(1u32 << levels);
    let mut p = &exp(&a.scale(1.0 / m))? * &exp(&b.scale(1.0 / m))?;
    for _ in 0..levels {
        p = &p * &p;
    }
    Ok(p)
}

/// Checks `Φ(γ) = β`, the twist compatibility `R_β∘Φ(xy) = Φ∘R_γ(xy)`, the
/// exponential intertwining `Φ(e^{γX}) = e^{βφ(X)}`, and the four properties
/// of `φ` over random `X, Y` with `‖X‖_F, ‖Y‖_F ≤ 1`.
pub fn morphism_theorem_check(
    m: &dyn GroupMorphismPair,
    samples: usize,
    seed: u64,
) -> Result<Report> {
    if samples == 0 {
        return Err(Error::InvalidArgument("samples must be at least 1".into()));
    }
    let n = m.n();
    let gamma = m.gamma().matrix();
    let beta = m.beta().matrix();
    let tgt = HomLieContext::new(m.beta().clone());
    let src = HomLieContext::new(m.gamma().clone());
    let (r_gamma, r_beta) = (
        GroupTwist::new(m.gamma().clone()),
        GroupTwist::new(m.beta().clone()),
    );
    let mut rng = sampling::rng(seed);

    let mut worst = [0.0f64; 6];
    let (mut lie_gap_coarse, mut lie_gap_fine) = (0.0f64, 0.0f64);
    for _ in 0..samples {
        let x = sampling::in_ball(&mut rng, n, 1.0);
        let y = sampling::in_ball(&mut rng, n, 1.0);
        let (px, py) = (m.small_phi(&x), m.small_phi(&y));
        let gx = gamma * &x;

        // the exponential intertwines
        let step1 = m.big_phi(&exp(&gx)?).dist(&exp(&(beta * &px))?);

        // φ∘Ad_γ = Ad_β∘φ
        let p1 = m
            .small_phi(&src.ad_unchecked(&x))
            .dist(&tgt.ad_unchecked(&px));

        // φ(e^{γX}γYe^{−γX}γ) = Φ(e^{γX}γ)φ(Y)Φ(e^{−γX}γ)
        let fwd = &exp(&gx)? * gamma;
        let back = &exp(&gx.scale(-1.0))? * gamma;
        let lhs2 = m.small_phi(&(&(&fwd * &y) * &back));
        let rhs2 = &(&m.big_phi(&fwd) * &py) * &m.big_phi(&back);
        let p2 = lhs2.dist(&rhs2);

        // φ([X,Y]_γ) = [φX, φY]_β
        let p3 = m
            .small_phi(&src.bracket_unchecked(&x, &y))
            .dist(&tgt.bracket_unchecked(&px, &py));

        // βφ(X) = d/dt Φ(e^{tγX}) at t = 0
        let h = DERIVATIVE_STEP;
        let deriv =
            (&m.big_phi(&exp(&gx.scale(h))?) - &m.big_phi(&exp(&gx.scale(-h))?)).scale(0.5 / h);
        let p4 = deriv.dist(&(beta * &px));

        // twist compatibility on products of M_γ elements
        let (u, v) = (fwd.clone(), &exp(&(gamma * &y))? * gamma);
        let uv = &u * &v;
        let compat = r_beta
            .apply(&m.big_phi(&uv))
            .dist(&m.big_phi(&r_gamma.apply(&uv)));

        for (w, r) in worst.iter_mut().zip([step1, p1, p2, p3, p4, compat]) {
            *w = w.max(r);
        }

        // Φ(lim (e^{γX/m}e^{γY/m})^m) against e^{β(φX+φY)}
        let target = exp(&(beta * &(&px + &py)))?;
        let (a, b) = (&gx, &(gamma * &y));
        let coarse = m.big_phi(&lie_product(a, b, 9)?).dist(&target);
        let fine = m.big_phi(&lie_product(a, b, 10)?).dist(&target);
        lie_gap_coarse = lie_gap_coarse.max(coarse);
        lie_gap_fine = lie_gap_fine.max(fine);
    }
    let phi_gamma = m.big_phi(gamma).dist(beta);

    let mut r = Report::new("group-morphism", n, format!("{:?}", beta.rows()));
    r.push(Case::at_most(
        "Phi(gamma) = beta",
        "Φ(γ) = β",
        phi_gamma,
        EXACT_TOL,
    ));
    r.push(Case::at_most(
        "twist compatibility",
        "R_β∘Φ(xy) = Φ∘R_γ(xy)",
        worst[5],
        EXACT_TOL,
    ));
    r.push(Case::at_most(
        "exp intertwining",
        "Φ(e^{γX}) = e^{βφ(X)}",
        worst[0],
        EXACT_TOL,
    ));
    r.push(Case::at_most(
        "twist property",
        "φ∘Ad_γ = Ad_β∘φ",
        worst[1],
        EXACT_TOL,
    ));
    r.push(Case::at_most(
        "adjoint property",
        "φ(e^{γX}γYe^{−γX}γ) = Φ(e^{γX}γ)φ(Y)Φ(e^{−γX}γ)",
        worst[2],
        EXACT_TOL,
    ));
    r.push(Case::at_most(
        "bracket property",
        "φ([X,Y]_γ) = [φX,φY]_β",
        worst[3],
        EXACT_TOL,
    ));
    r.push(Case::at_most(
        "derivative property",
        "βφ(X) = d/dt Φ(e^{tγX})|₀",
        worst[4],
        DERIVATIVE_TOL,
    ));
    r.push(Case::at_most(
        "additivity via Lie product (m = 2^10 gap below m = 2^9 gap)",
        "Φ(lim (e^{γX/m}e^{γY/m})^m) = e^{β(φX+φY)}",
        lie_gap_fine,
        lie_gap_coarse,
    ));
    r.note(format!(
        "Lie product gaps: m=512 {lie_gap_coarse:.3e}, m=1024 {lie_gap_fine:.3e}"
    ));
    if m.gamma() == m.beta() || m.gamma().is_identity() || m.beta().is_identity() {
        r.note("γ = β or an identity twist: outside the theorem's hypotheses, checked as a degenerate case");
    }
    Ok(r)
}

/// The determinant as a homomorphism from `(GL_neg, R_P)` to `({y < 0}, y ↦ −y)`,
/// with `P = P_{1,2}`, and the inclusion of `O(n)`'s negative component in `GL_neg`.
pub fn det_homomorphism_check(n: usize, samples: usize, seed: u64) -> Result<Report> {
    if n < 2 {
        return Err(Error::InvalidArgument(format!(
            "determinant check needs n ≥ 2, got {n}"
        )));
    }
    if samples == 0 {
        return Err(Error::InvalidArgument("samples must be at least 1".into()));
    }
    let p = Matrix::transposition(n, 0, 1);
    let gl_neg = Component::GlNeg { n };
    let o_neg = Component::ODetNeg { n };
    let mut rng = sampling::rng(seed);
    let (mut sign_rel, mut outside) = (0.0f64, 0usize);
    let mut bad_inclusion = 0usize;
    for _ in 0..samples {
        let a = sampling::negative_determinant(&mut rng, n);
        let b = sampling::negative_determinant(&mut rng, n);
        if !(det(&a) < 0.0 && det(&b) < 0.0) {
            outside += 1;
        }
        let ab = &a * &b;
        let d_ab = det(&ab);
        sign_rel = sign_rel.max((det(&(&ab * &p)) + d_ab).abs() / d_ab.abs());
        let q = o_neg.sample(&mut rng);
        if o_neg.membership(&q) != Membership::Yes || gl_neg.membership(&q) != Membership::Yes {
            bad_inclusion += 1;
        }
    }
    let mut diag = vec![1.0; n];
    diag[0] = -1.0;
    let d = Matrix::diag(&diag);
    let example = det(&(&(&d * &d) * &p));

    let mut r = Report::new("det-homomorphism", n, "P_{1,2}");
    r.push(Case::at_most(
        "g(S) in {y < 0}",
        "det A < 0 on GL_neg",
        outside as f64,
        0.0,
    ));
    r.push(Case::at_most(
        "sign identity",
        "det(ABP) = −det(AB)",
        sign_rel,
        DET_SIGN_TOL,
    ));
    r.push(Case::at_most(
        "diag(-1,1,..) example",
        "det(D·D·P) = −1",
        (example + 1.0).abs(),
        DET_SIGN_TOL,
    ));
    r.push(Case::at_most(
        "inclusion O_detneg in GL_neg",
        "det-negative orthogonal matrices lie in GL_neg",
        bad_inclusion as f64,
        0.0,
    ));
    Ok(r)
}
