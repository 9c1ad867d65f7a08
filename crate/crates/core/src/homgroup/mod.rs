//! Hom-Lie groups `(S, F)`: a submanifold `S` of a matrix group together with
//! a twist `F` such that `F(S)` is a subgroup.
//!
//! Every twist here is right multiplication by a fixed involution `P`, so
//! `F∘F = id` and `z ∈ F(S)` is tested as `F(z) ∈ S`.

mod morphism;
mod one_param;

use rand::Rng as _;
use serde::{Deserialize, Serialize};

use crate::linalg::{det, inverse, principal_log, Involution, Matrix};
use crate::report::{Case, Report};
use crate::sampling::{self, Rng};
use crate::{Error, Result};

pub use morphism::{
    det_homomorphism_check, morphism_theorem_check, CallableMorphism, ConjugationMorphism,
    GroupMorphismPair,
};
pub use one_param::{
    derivative_bracket_check, derivative_bracket_convergence, m_beta_sampler, one_param_check,
    ExpCurve, HomGroupElement, O11Curve, OneParamReport, OneParameterCurve,
};

pub const HOM_INVERSE_TOL: f64 = 1e-10;

/// `F(A) = A·P`.
#[derive(Clone, Debug, PartialEq)]
pub struct GroupTwist {
    p: Involution,
}

impl GroupTwist {
    pub fn new(p: Involution) -> Self {
        Self { p }
    }

    pub fn identity(n: usize) -> Self {
        Self::new(Involution::identity(n))
    }

    pub fn apply(&self, a: &Matrix) -> Matrix {
        a * self.p.matrix()
    }

    pub fn matrix(&self) -> &Matrix {
        self.p.matrix()
    }

    pub fn involution(&self) -> &Involution {
        &self.p
    }

    pub fn n(&self) -> usize {
        self.p.n()
    }
}

/// `P·A⁻¹·P`, the element whose twist inverts the twist of `A`.
pub fn hom_inverse(a: &Matrix, twist: &GroupTwist) -> Result<Matrix> {
    a.check_dim(twist.n())?;
    let p = twist.matrix();
    Ok(&(p * &inverse(a)?) * p)
}

/// The four connected components of `O(1,1)`, written as hyperbolic curves.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum O11Component {
    S1,
    S2,
    S3,
    S4,
}

impl O11Component {
    pub const ALL: [Self; 4] = [Self::S1, Self::S2, Self::S3, Self::S4];

    /// Signs `(a, b)` with element `[[a·cosh t, b·sinh t], [sinh t, a·b·cosh t]]`.
    fn signs(self) -> (f64, f64) {
        match self {
            Self::S1 => (1.0, 1.0),
            Self::S2 => (-1.0, 1.0),
            Self::S3 => (1.0, -1.0),
            Self::S4 => (-1.0, -1.0),
        }
    }

    pub fn element(self, t: f64) -> Matrix {
        let (a, b) = self.signs();
        let (c, s) = (t.cosh(), t.sinh());
        Matrix::from_raw(2, vec![a * c, b * s, s, a * b * c])
    }

    /// The twist that maps this component onto the boost subgroup `S1`.
    pub fn twist(self) -> GroupTwist {
        let (a, b) = self.signs();
        GroupTwist::new(Involution::diag_signs(&[a, a * b]).expect("sign matrix"))
    }

    /// Membership in this component of `O(1,1)` (`AᵀJA = J`, signs of the diagonal).
    pub fn contains(self, m: &Matrix) -> bool {
        if m.n() != 2 {
            return false;
        }
        let j = Matrix::diag(&[1.0, -1.0]);
        let scale = 1.0 + m.norm_fro() * m.norm_fro();
        if (&(&m.transpose() * &j) * m).dist(&j) > 1e-9 * scale {
            return false;
        }
        let (a, b) = self.signs();
        m.get(0, 0).signum() == a && m.get(1, 1).signum() == a * b
    }

    pub fn name(self) -> &'static str {
        match self {
            Self::S1 => "O11_S1",
            Self::S2 => "O11_S2",
            Self::S3 => "O11_S3",
            Self::S4 => "O11_S4",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Membership {
    Yes,
    No,
    /// The principal-logarithm test could not decide (spectrum near `ℝ⁻`).
    Undecidable,
}

impl From<bool> for Membership {
    fn from(b: bool) -> Self {
        if b {
            Self::Yes
        } else {
            Self::No
        }
    }
}

/// Submanifolds of matrix groups that ship with a sampler and a membership test.
#[derive(Clone, Debug, PartialEq)]
pub enum Component {
    /// `{A ∈ GL(n) : det A < 0}`.
    GlNeg {
        n: usize,
    },
    /// `{A ∈ O(n) : det A = −1}`.
    ODetNeg {
        n: usize,
    },
    O11(O11Component),
    /// `M_β = {e^{βX}β}`, sampled with `‖X‖_F ≤ radius`.
    MBeta {
        beta: Involution,
        radius: f64,
    },
}

impl Component {
    pub fn name(&self) -> &'static str {
        match self {
            Self::GlNeg { .. } => "GL_neg",
            Self::ODetNeg { .. } => "O_detneg",
            Self::O11(c) => c.name(),
            Self::MBeta { .. } => "M_beta_sample",
        }
    }

    pub fn n(&self) -> usize {
        match self {
            Self::GlNeg { n } | Self::ODetNeg { n } => *n,
            Self::O11(_) => 2,
            Self::MBeta { beta, .. } => beta.n(),
        }
    }

    pub fn membership(&self, m: &Matrix) -> Membership {
        if m.n() != self.n() || !m.is_finite() {
            return Membership::No;
        }
        match self {
            Self::GlNeg { n } => {
                let floor = 1e-12 * m.norm_fro().max(1.0).powi(*n as i32);
                (det(m) < -floor).into()
            }
            Self::ODetNeg { n } => {
                let orth = (&m.transpose() * m).dist(&Matrix::identity(*n)) <= 1e-9 * *n as f64;
                (orth && (det(m) + 1.0).abs() <= 1e-9).into()
            }
            Self::O11(c) => c.contains(m).into(),
            Self::MBeta { beta, .. } => {
                let shifted = m * beta.matrix();
                if det(&shifted) <= 0.0 {
                    return Membership::No;
                }
                match principal_log(&shifted) {
                    Some(_) => Membership::Yes,
                    None => Membership::Undecidable,
                }
            }
        }
    }

    pub fn sample(&self, rng: &mut Rng) -> Matrix {
        match self {
            Self::GlNeg { n } => sampling::negative_determinant(rng, *n),
            Self::ODetNeg { n } => {
                let q = sampling::orthogonal(rng, *n);
                if det(&q) < 0.0 {
                    q
                } else {
                    let mut rows = q.rows();
                    rows[0].iter_mut().for_each(|v| *v = -*v);
                    Matrix::from_rows(rows).expect("finite")
                }
            }
            Self::O11(c) => c.element(rng.gen_range(-2.0..=2.0)),
            Self::MBeta { beta, radius } => {
                let x = sampling::in_ball(rng, beta.n(), *radius);
                one_param::ExpCurve::new(x, beta.clone())
                    .expect("same dimension")
                    .at(1.0)
                    .expect("bounded generator")
            }
        }
    }
}

/// Samples `S` and checks that `F(S)` behaves as a subgroup: closure under
/// products, the identity, inverses, and the Hom-inverse law `F(y) = F(x)⁻¹`
/// for `y = P·x⁻¹·P`.
pub fn hom_group_axiom_check(
    component: &Component,
    twist: &GroupTwist,
    samples: usize,
    seed: u64,
) -> Result<Report> {
    if twist.n() != component.n() {
        return Err(Error::DimensionMismatch {
            expected: component.n(),
            found: twist.n(),
        });
    }
    if samples == 0 {
        return Err(Error::InvalidArgument("samples must be at least 1".into()));
    }
    let mut rng = sampling::rng(seed);
    let in_twisted = |z: &Matrix| component.membership(&twist.apply(z));
    let (mut bad_sample, mut bad_closure, mut bad_inverse, mut bad_hom_inv) = (0, 0, 0, 0);
    let mut undecided = 0;
    let mut law = 0.0f64;
    for _ in 0..samples {
        let x = component.sample(&mut rng);
        let y = component.sample(&mut rng);
        for s in [&x, &y] {
            if component.membership(s) != Membership::Yes {
                bad_sample += 1;
            }
        }
        match in_twisted(&(&twist.apply(&x) * &twist.apply(&y))) {
            Membership::Yes => {}
            Membership::No => bad_closure += 1,
            Membership::Undecidable => undecided += 1,
        }
        let fx = twist.apply(&x);
        let fx_inv = inverse(&fx)?;
        if in_twisted(&fx_inv) == Membership::No {
            bad_inverse += 1;
        }
        let hinv = hom_inverse(&x, twist)?;
        if component.membership(&hinv) == Membership::No {
            bad_hom_inv += 1;
        }
        law = law.max(twist.apply(&hinv).dist(&fx_inv));
    }
    let id_ok = in_twisted(&Matrix::identity(component.n())) == Membership::Yes;

    let mut r = Report::new(
        format!("group-axioms:{}", component.name()),
        component.n(),
        format!("{:?}", twist.matrix().rows()),
    );
    r.push(Case::at_most(
        "samples lie in S",
        "sampler contract",
        bad_sample as f64,
        0.0,
    ));
    r.push(Case::at_most(
        "closure F(x)F(y) ∈ F(S)",
        "F(S) is a subgroup",
        bad_closure as f64,
        0.0,
    ));
    r.push(Case::holds(
        "identity I ∈ F(S)",
        "F(S) is a subgroup",
        id_ok,
    ));
    r.push(Case::at_most(
        "inverse F(x)⁻¹ ∈ F(S)",
        "F(S) is a subgroup",
        bad_inverse as f64,
        0.0,
    ));
    r.push(Case::at_most(
        "Hom-inverse lies in S",
        "Hom-inverse P·x⁻¹·P",
        bad_hom_inv as f64,
        0.0,
    ));
    r.push(Case::at_most(
        "Hom-inverse law F(y) = F(x)⁻¹",
        "Hom-inverse P·x⁻¹·P",
        law,
        HOM_INVERSE_TOL,
    ));
    if undecided > 0 {
        r.note(format!(
            "{undecided} closure products were undecidable by the principal logarithm"
        ));
    }
    if matches!(component, Component::MBeta { .. }) {
        r.note("M_beta is checked only on sampled products; the real exponential is not onto the identity component, so the set-level component claim is not asserted");
    }
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn twist_is_involutive() {
        let t = GroupTwist::new(Involution::transposition(3, 1, 2).unwrap());
        let a = sampling::uniform(&mut sampling::rng(1), 3);
        assert_eq!(t.apply(&t.apply(&a)), a);
    }

    #[test]
    fn hom_inverse_examples() {
        let mut rng = sampling::rng(2);
        let a = sampling::negative_determinant(&mut rng, 3);
        let plain = hom_inverse(&a, &GroupTwist::identity(3)).unwrap();
        assert_eq!(plain, inverse(&a).unwrap());
        let p = GroupTwist::new(Involution::transposition(3, 1, 2).unwrap());
        assert_eq!(hom_inverse(p.matrix(), &p).unwrap(), p.matrix().clone());
        let y = hom_inverse(&a, &p).unwrap();
        assert!((&p.apply(&y) * &p.apply(&a)).dist(&Matrix::identity(3)) < 1e-10);
        assert!(hom_inverse(&Matrix::zeros(3), &p).is_err());
    }

    #[test]
    fn o11_elements_classify() {
        for c in O11Component::ALL {
            for t in [-1.5, 0.0, 0.7] {
                let m = c.element(t);
                for other in O11Component::ALL {
                    assert_eq!(other.contains(&m), other == c, "{c:?} at {t} vs {other:?}");
                }
                // the twist lands in the boost subgroup
                assert!(O11Component::S1.contains(&c.twist().apply(&m)));
            }
        }
    }

    #[test]
    fn membership_is_stable_under_tiny_perturbations() {
        let mut rng = sampling::rng(3);
        let comps = [
            Component::GlNeg { n: 3 },
            Component::ODetNeg { n: 3 },
            Component::O11(O11Component::S3),
        ];
        for c in &comps {
            for _ in 0..20 {
                let x = c.sample(&mut rng);
                let bump = &x + &sampling::uniform(&mut rng, c.n()).scale(1e-13);
                assert_eq!(c.membership(&x), Membership::Yes);
                assert_eq!(c.membership(&bump), Membership::Yes);
            }
        }
    }

    #[test]
    fn axiom_check_examples() {
        let s2 = Component::O11(O11Component::S2);
        let f2 = GroupTwist::new(Involution::diag_signs(&[-1.0, -1.0]).unwrap());
        assert_eq!(f2, O11Component::S2.twist());
        let r = hom_group_axiom_check(&s2, &f2, 50, 1).unwrap();
        assert!(r.pass, "{}", r.to_text());

        let gl = Component::GlNeg { n: 3 };
        let p12 = GroupTwist::new(Involution::transposition(3, 1, 2).unwrap());
        assert!(hom_group_axiom_check(&gl, &p12, 100, 2).unwrap().pass);

        let r = hom_group_axiom_check(&gl, &GroupTwist::identity(3), 100, 2).unwrap();
        assert!(!r.pass);
        let closure = r
            .cases
            .iter()
            .find(|c| c.name.starts_with("closure"))
            .unwrap();
        assert_eq!(closure.max_residual, 100.0);

        assert!(hom_group_axiom_check(&gl, &GroupTwist::identity(2), 1, 0).is_err());
    }

    #[test]
    fn m_beta_membership() {
        let beta = Involution::transposition(3, 1, 2).unwrap();
        let c = Component::MBeta {
            beta: beta.clone(),
            radius: 1.0,
        };
        let mut rng = sampling::rng(4);
        for _ in 0..10 {
            assert_eq!(c.membership(&c.sample(&mut rng)), Membership::Yes);
        }
        // M_β does not contain the identity when β ≠ I: det(I·β) < 0
        assert_eq!(c.membership(&Matrix::identity(3)), Membership::No);
        let r = hom_group_axiom_check(&c, &GroupTwist::new(beta), 30, 5).unwrap();
        assert!(r.pass, "{}", r.to_text());
    }
}
