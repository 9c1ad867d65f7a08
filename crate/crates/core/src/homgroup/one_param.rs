//! One-parameter subgroups, the derivative of the twisted adjoint action, and `M_β`.

use super::{GroupTwist, O11Component};
use crate::homalg::HomLieContext;
use crate::linalg::{expm, expm_minus_identity, Involution, Matrix, DEFAULT_EXPM_TOL};
use crate::sampling;
use crate::Result;

/// A curve `p: ℝ → S` together with the twist of its Hom-Lie group.
pub trait OneParameterCurve {
    fn at(&self, t: f64) -> Result<Matrix>;
    fn twist(&self) -> GroupTwist;
}

/// `p(t) = e^{tβX}β` in `(M_β, R_β)`.
#[derive(Clone, Debug, PartialEq)]
pub struct ExpCurve {
    generator: Matrix,
    beta: Involution,
}

impl ExpCurve {
    pub fn new(generator: Matrix, beta: Involution) -> Result<Self> {
        generator.check_dim(beta.n())?;
        Ok(Self { generator, beta })
    }

    pub fn generator(&self) -> &Matrix {
        &self.generator
    }
}

impl OneParameterCurve for ExpCurve {
    fn at(&self, t: f64) -> Result<Matrix> {
        let beta = self.beta.matrix();
        let e = expm(&(beta * &self.generator).scale(t), DEFAULT_EXPM_TOL)?;
        Ok(&e * beta)
    }

    fn twist(&self) -> GroupTwist {
        GroupTwist::new(self.beta.clone())
    }
}

/// The closed-form hyperbolic curve through a component of `O(1,1)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct O11Curve(pub O11Component);

impl OneParameterCurve for O11Curve {
    fn at(&self, t: f64) -> Result<Matrix> {
        Ok(self.0.element(t))
    }

    fn twist(&self) -> GroupTwist {
        self.0.twist()
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct OneParamReport {
    /// `max ‖F(p(t+s)) − F(p(t))F(p(s))‖_F` over the grid.
    pub max_group_law_residual: f64,
    /// `‖F(p(0)) − I‖_F`.
    pub identity_residual: f64,
}

impl OneParamReport {
    pub fn max(&self) -> f64 {
        self.max_group_law_residual.max(self.identity_residual)
    }
}

pub fn one_param_check(curve: &dyn OneParameterCurve, t_grid: &[f64]) -> Result<OneParamReport> {
    let f = curve.twist();
    let twisted: Vec<Matrix> = t_grid
        .iter()
        .map(|&t| curve.at(t).map(|p| f.apply(&p)))
        .collect::<Result<_>>()?;
    let mut law = 0.0f64;
    for (i, &t) in t_grid.iter().enumerate() {
        for (j, &s) in t_grid.iter().enumerate() {
            let lhs = f.apply(&curve.at(t + s)?);
            law = law.max(lhs.dist(&(&twisted[i] * &twisted[j])));
        }
    }
    let p0 = f.apply(&curve.at(0.0)?);
    Ok(OneParamReport {
        max_group_law_residual: law,
        identity_residual: p0.dist(&Matrix::identity(p0.n())),
    })
}

/// `(g(h) − g(−h))/(2h)` for `g(t) = E(t)·N·E(t)⁻¹·β`, `E(t) = e^{tβX}`, `N = βY`.
///
/// With `E(h) = I + F` and `E(−h) = I + G` the difference expands to
/// `(F−G)N − N(F−G) + FNG − GNF`, which is evaluated directly.
fn central_difference(ctx: &HomLieContext, x: &Matrix, y: &Matrix, h: f64) -> Result<Matrix> {
    let beta = ctx.beta().matrix();
    let a = beta * x;
    let nn = beta * y;
    let f = expm_minus_identity(&a.scale(h), DEFAULT_EXPM_TOL)?;
    let g = expm_minus_identity(&a.scale(-h), DEFAULT_EXPM_TOL)?;
    let s = &f - &g;
    let diff = &(&(&s * &nn) - &(&nn * &s)) + &(&(&(&f * &nn) * &g) - &(&(&g * &nn) * &f));
    Ok((&diff * beta).scale(0.5 / h))
}

/// `‖D_h − [X,Y]_β‖_F` where `D_h` is the central difference at `t = 0` of
/// `g(t) = e^{tβX}βYe^{−tβX}β`. The residual is `O(h²)`.
pub fn derivative_bracket_check(
    ctx: &HomLieContext,
    x: &Matrix,
    y: &Matrix,
    h: f64,
) -> Result<f64> {
    if !(h > 0.0) {
        return Err(crate::Error::InvalidArgument(format!(
            "step must be positive, got {h}"
        )));
    }
    let exact = ctx.bracket(x, y)?;
    Ok(central_difference(ctx, x, y, h)?.dist(&exact))
}

/// Residuals at `h` and `h/2`, and the residual of their Richardson
/// extrapolation `(4·D_{h/2} − D_h)/3`, which is `O(h⁴)`.
pub fn derivative_bracket_convergence(
    ctx: &HomLieContext,
    x: &Matrix,
    y: &Matrix,
    h: f64,
) -> Result<(f64, f64, f64)> {
    let exact = ctx.bracket(x, y)?;
    let d_h = central_difference(ctx, x, y, h)?;
    let d_half = central_difference(ctx, x, y, 0.5 * h)?;
    let richardson = (&d_half.scale(4.0) - &d_h).scale(1.0 / 3.0);
    Ok((
        d_h.dist(&exact),
        d_half.dist(&exact),
        richardson.dist(&exact),
    ))
}

/// An element `e^{βX}β` of `M_β` that remembers its generator.
#[derive(Clone, Debug, PartialEq)]
pub struct HomGroupElement {
    pub generator: Matrix,
    pub beta: Involution,
    pub value: Matrix,
}

impl HomGroupElement {
    pub fn new(generator: Matrix, beta: Involution) -> Result<Self> {
        let value = ExpCurve::new(generator.clone(), beta.clone())?.at(1.0)?;
        Ok(Self {
            generator,
            beta,
            value,
        })
    }

    /// `e^{−βX}β`.
    pub fn hom_inverse(&self) -> Result<Matrix> {
        ExpCurve::new(self.generator.scale(-1.0), self.beta.clone())?.at(1.0)
    }

    /// `‖R_β(value)·R_β(hom_inverse) − I‖_F`.
    pub fn hom_inverse_residual(&self) -> Result<f64> {
        let f = GroupTwist::new(self.beta.clone());
        let prod = &f.apply(&self.value) * &f.apply(&self.hom_inverse()?);
        Ok(prod.dist(&Matrix::identity(self.value.n())))
    }
}

/// `count` elements `e^{βX}β` with `‖X‖_F ≤ radius`.
pub fn m_beta_sampler(
    beta: &Involution,
    count: usize,
    seed: u64,
    radius: f64,
) -> Result<Vec<HomGroupElement>> {
    if !(radius > 0.0) {
        return Err(crate::Error::InvalidArgument(format!(
            "radius must be positive, got {radius}"
        )));
    }
    let mut rng = sampling::rng(seed);
    (0..count)
        .map(|_| HomGroupElement::new(sampling::in_ball(&mut rng, beta.n(), radius), beta.clone()))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    const GRID: [f64; 5] = [-2.0, -1.0, 0.0, 1.0, 2.0];

    #[test]
    fn zero_generator_is_constant() {
        let beta = Involution::transposition(3, 1, 2).unwrap();
        let c = ExpCurve::new(Matrix::zeros(3), beta.clone()).unwrap();
        assert_eq!(c.at(1.7).unwrap(), beta.matrix().clone());
        let r = one_param_check(&c, &GRID).unwrap();
        assert_eq!((r.max_group_law_residual, r.identity_residual), (0.0, 0.0));
    }

    #[test]
    fn o11_curves_obey_group_law() {
        for comp in O11Component::ALL {
            let r = one_param_check(&O11Curve(comp), &GRID).unwrap();
            assert!(r.max() <= 1e-12, "{comp:?}: {r:?}");
        }
    }

    #[test]
    fn exp_curve_group_law() {
        let mut rng = sampling::rng(12);
        let beta = Involution::transposition(3, 1, 2).unwrap();
        for _ in 0..10 {
            let c = ExpCurve::new(sampling::in_ball(&mut rng, 3, 1.0), beta.clone()).unwrap();
            assert!(one_param_check(&c, &GRID).unwrap().max() <= 1e-9);
        }
    }

    #[test]
    fn derivative_matches_bracket() {
        let mut rng = sampling::rng(13);
        let classical = HomLieContext::classical(3);
        let x = sampling::in_ball(&mut rng, 3, 1.0);
        let y = sampling::in_ball(&mut rng, 3, 1.0);
        let r = derivative_bracket_check(&classical, &x, &y, 1e-4).unwrap();
        assert!(r <= 1e-8);
        assert!(derivative_bracket_check(&classical, &x, &x, 1e-4).unwrap() <= 1e-10);

        let ctx = HomLieContext::new(Involution::diag_signs(&[1.0, -1.0, -1.0]).unwrap());
        let (h1, h2, rich) = derivative_bracket_convergence(&ctx, &x, &y, 1e-2).unwrap();
        assert!((h1 / h2 - 4.0).abs() < 0.1, "ratio {}", h1 / h2);
        assert!(rich < h2 / 10.0);
        assert!(derivative_bracket_check(&ctx, &x, &y, 0.0).is_err());
    }

    #[test]
    fn m_beta_elements() {
        let beta = Involution::diag_signs(&[1.0, -1.0]).unwrap();
        let e = HomGroupElement::new(Matrix::zeros(2), beta.clone()).unwrap();
        assert_eq!(e.value, beta.matrix().clone());
        assert_eq!(e.hom_inverse().unwrap(), beta.matrix().clone());
        for el in m_beta_sampler(&beta, 20, 3, 1.5).unwrap() {
            assert!(el.hom_inverse_residual().unwrap() <= 1e-10);
        }
        let id = Involution::identity(2);
        for el in m_beta_sampler(&id, 5, 3, 1.0).unwrap() {
            let plain = expm(&el.generator, DEFAULT_EXPM_TOL).unwrap();
            assert_eq!(el.value, plain);
        }
        assert!(m_beta_sampler(&beta, 1, 0, 0.0).is_err());
    }
}
