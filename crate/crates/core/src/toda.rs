//! The β-deformed Toda lattice `dL/dt = [B, L]_β` with `B = L_{>0} − L_{<0}`.
//!
//! For `β = I` this is the classical Lax form `dL/dt = BL − LB`. The state is
//! the full dense symmetric `L`; tridiagonality is probed along the flow, not
//! assumed.

use std::io::Write;

use serde::Serialize;

use crate::homalg::HomLieContext;
use crate::linalg::{symmetric_eigenvalues, trace_powers, Matrix};
use crate::report::{Case, Report};
use crate::sampling;
use crate::{Error, Result};

/// Relative-drift denominators are floored at this value.
pub const DRIFT_FLOOR: f64 = 1e-14;
/// Tolerance on `|tr(L·rhs(L))| / ‖L‖_F³`.
pub const IDENTITY_TOL: f64 = 1e-12;

/// `B = L_{>0} − L_{<0}`.
pub fn b_of_l(l: &Matrix) -> Matrix {
    Matrix::from_fn(l.n(), |i, j| match i.cmp(&j) {
        std::cmp::Ordering::Less => l.get(i, j),
        std::cmp::Ordering::Greater => -l.get(i, j),
        std::cmp::Ordering::Equal => 0.0,
    })
}

/// `[B, L]_β = βBβLβ − βLβBβ`.
pub fn rhs(ctx: &HomLieContext, l: &Matrix) -> Result<Matrix> {
    l.check_dim(ctx.n())?;
    Ok(ctx.bracket_unchecked(&b_of_l(l), l))
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TodaState {
    pub t: f64,
    #[serde(rename = "L")]
    pub l: Matrix,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Probe {
    /// `tr(L^k)` for `k = 1..n`.
    pub traces: Vec<f64>,
    /// Ascending.
    pub eigenvalues: Vec<f64>,
    pub tr_l2: f64,
    pub max_offdiag: f64,
    /// `max |L_ij|` over `|i − j| > 1`.
    pub max_offtridiag: f64,
}

impl Probe {
    pub fn of(l: &Matrix) -> Result<Self> {
        let n = l.n();
        let traces = trace_powers(l);
        let mut max_offdiag = 0.0f64;
        let mut max_offtridiag = 0.0f64;
        for i in 0..n {
            for j in 0..n {
                let v = l.get(i, j).abs();
                if i != j {
                    max_offdiag = max_offdiag.max(v);
                }
                if i.abs_diff(j) > 1 {
                    max_offtridiag = max_offtridiag.max(v);
                }
            }
        }
        Ok(Self {
            eigenvalues: symmetric_eigenvalues(l)?,
            tr_l2: l.as_slice().iter().map(|v| v * v).sum(),
            traces,
            max_offdiag,
            max_offtridiag,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Trajectory {
    pub states: Vec<TodaState>,
    pub probes: Vec<Probe>,
    /// Largest `‖L − Lᵀ‖_F / ‖L‖_F` seen before each re-symmetrization.
    pub max_asymmetry: f64,
}

impl Trajectory {
    pub fn n(&self) -> usize {
        self.states.first().map_or(0, |s| s.l.n())
    }

    pub fn last(&self) -> &TodaState {
        self.states
            .last()
            .expect("trajectory holds the initial state")
    }

    fn push(&mut self, t: f64, l: &Matrix) -> Result<()> {
        self.probes.push(Probe::of(l)?);
        self.states.push(TodaState { t, l: l.clone() });
        Ok(())
    }

    fn header(n: usize) -> Vec<String> {
        let mut h = vec!["t".to_string()];
        h.extend((1..=n).flat_map(|i| (1..=n).map(move |j| format!("L_{i}_{j}"))));
        h.extend((1..=n).map(|k| format!("tr{k}")));
        h.extend((1..=n).map(|k| format!("eig{k}")));
        h.extend(["trL2", "maxoffdiag", "maxofftridiag"].map(String::from));
        h
    }

    /// Full CSV: `t`, `L_i_j` (row-major, 1-based), `tr1..trN`, `eig1..eigN`,
    /// `trL2`, `maxoffdiag`, `maxofftridiag`.
    pub fn write_csv<W: Write>(&self, w: W) -> Result<()> {
        let mut out = csv::Writer::from_writer(w);
        out.write_record(Self::header(self.n()))?;
        for (s, p) in self.states.iter().zip(&self.probes) {
            let mut row = vec![s.t];
            row.extend_from_slice(s.l.as_slice());
            row.extend(&p.traces);
            row.extend(&p.eigenvalues);
            row.extend([p.tr_l2, p.max_offdiag, p.max_offtridiag]);
            out.write_record(row.iter().map(|v| format!("{v:e}")))?;
        }
        out.flush()?;
        Ok(())
    }

    /// Reduced CSV: `t`, `eig1..eigN`, `trL2`.
    pub fn write_plot_csv<W: Write>(&self, w: W) -> Result<()> {
        let mut out = csv::Writer::from_writer(w);
        let mut h = vec!["t".to_string()];
        h.extend((1..=self.n()).map(|k| format!("eig{k}")));
        h.push("trL2".into());
        out.write_record(h)?;
        for (s, p) in self.states.iter().zip(&self.probes) {
            let mut row = vec![s.t];
            row.extend(&p.eigenvalues);
            row.push(p.tr_l2);
            out.write_record(row.iter().map(|v| format!("{v:e}")))?;
        }
        out.flush()?;
        Ok(())
    }

    pub fn summary(&self) -> TodaSummary {
        let first = &self.probes[0];
        let mut drifts = Vec::new();
        let mut track = |name: String, get: &dyn Fn(&Probe) -> f64| {
            let initial = get(first);
            let max_abs = self
                .probes
                .iter()
                .map(|p| (get(p) - initial).abs())
                .fold(0.0, f64::max);
            drifts.push(ProbeDrift {
                name,
                initial,
                last: get(self.probes.last().expect("non-empty")),
                max_abs_drift: max_abs,
                max_rel_drift: max_abs / initial.abs().max(DRIFT_FLOOR),
            });
        };
        let n = self.n();
        for k in 0..n {
            track(format!("tr{}", k + 1), &|p| p.traces[k]);
        }
        for k in 0..n {
            track(format!("eig{}", k + 1), &|p| p.eigenvalues[k]);
        }
        track("trL2".into(), &|p| p.tr_l2);
        let last = self.last();
        let diag: Vec<f64> = (0..n).map(|i| last.l.get(i, i)).collect();
        TodaSummary {
            n,
            t_end: last.t,
            records: self.states.len(),
            drifts,
            max_asymmetry: self.max_asymmetry,
            max_offtridiag: self
                .probes
                .iter()
                .map(|p| p.max_offtridiag)
                .fold(0.0, f64::max),
            final_max_offdiag: self.probes.last().expect("non-empty").max_offdiag,
            final_diagonal_descending: diag.windows(2).all(|w| w[0] >= w[1]),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ProbeDrift {
    pub name: String,
    pub initial: f64,
    pub last: f64,
    pub max_abs_drift: f64,
    /// Against the initial value, with denominator floored at [`DRIFT_FLOOR`].
    pub max_rel_drift: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TodaSummary {
    pub n: usize,
    pub t_end: f64,
    pub records: usize,
    pub drifts: Vec<ProbeDrift>,
    pub max_asymmetry: f64,
    pub max_offtridiag: f64,
    pub final_max_offdiag: f64,
    pub final_diagonal_descending: bool,
}

impl TodaSummary {
    pub fn drift(&self, name: &str) -> Option<&ProbeDrift> {
        self.drifts.iter().find(|d| d.name == name)
    }

    /// Largest absolute drift over all eigenvalues.
    pub fn max_eigenvalue_drift(&self) -> f64 {
        self.drifts
            .iter()
            .filter(|d| d.name.starts_with("eig"))
            .map(|d| d.max_abs_drift)
            .fold(0.0, f64::max)
    }
}

fn rk4_step(ctx: &HomLieContext, l: &Matrix, h: f64) -> Matrix {
    let f = |m: &Matrix| ctx.bracket_unchecked(&b_of_l(m), m);
    let k1 = f(l);
    let k2 = f(&(l + &k1.scale(h / 2.0)));
    let k3 = f(&(l + &k2.scale(h / 2.0)));
    let k4 = f(&(l + &k3.scale(h)));
    let incr = &(&(&k1 + &k2.scale(2.0)) + &k3.scale(2.0)) + &k4;
    l + &incr.scale(h / 6.0)
}

fn check_symmetric(l: &Matrix) -> Result<()> {
    let asymmetry = l.asymmetry();
    if asymmetry > 1e-8 * l.norm_fro().max(1.0) {
        return Err(Error::NotSymmetric { asymmetry });
    }
    Ok(())
}

fn step_count(t_end: f64, dt: f64) -> usize {
    let raw = t_end / dt;
    let rounded = raw.round();
    if (raw - rounded).abs() <= 1e-9 * raw.max(1.0) {
        rounded as usize
    } else {
        raw.ceil() as usize
    }
}

/// Fixed-step RK4 on `rhs`, re-symmetrizing `L` after every step. Records the
/// initial state, every `record_every`-th step and the final state. Step `k`
/// ends at `t = min(k·dt, t_end)`.
pub fn integrate(
    ctx: &HomLieContext,
    l0: &Matrix,
    t_end: f64,
    dt: f64,
    record_every: usize,
) -> Result<Trajectory> {
    l0.check_dim(ctx.n())?;
    check_symmetric(l0)?;
    if !(dt > 0.0 && dt.is_finite()) || !(t_end > 0.0 && t_end.is_finite()) {
        return Err(Error::InvalidArgument(format!(
            "need dt > 0 and t_end > 0, got dt = {dt}, t_end = {t_end}"
        )));
    }
    if record_every == 0 {
        return Err(Error::InvalidArgument(
            "record_every must be at least 1".into(),
        ));
    }
    let steps = step_count(t_end, dt);
    let mut traj = Trajectory {
        states: Vec::new(),
        probes: Vec::new(),
        max_asymmetry: 0.0,
    };
    let mut l = l0.symmetrized();
    traj.push(0.0, &l)?;
    for k in 1..=steps {
        let t_prev = (k - 1) as f64 * dt;
        let t = if k == steps { t_end } else { k as f64 * dt };
        let next = rk4_step(ctx, &l, t - t_prev);
        if !next.is_finite() || next.norm_fro() > 1e150 {
            return Err(Error::FlowBlowUp {
                t,
                partial: Box::new(traj),
            });
        }
        traj.max_asymmetry = traj
            .max_asymmetry
            .max(next.asymmetry() / next.norm_fro().max(DRIFT_FLOOR));
        l = next.symmetrized();
        if k % record_every == 0 || k == steps {
            traj.push(t, &l)?;
        }
    }
    Ok(traj)
}

/// Final state of a run with no intermediate records.
pub fn flow_to(ctx: &HomLieContext, l0: &Matrix, t_end: f64, dt: f64) -> Result<Matrix> {
    let traj = integrate(ctx, l0, t_end, dt, usize::MAX)?;
    Ok(traj.last().l.clone())
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct StepHalving {
    pub error_dt: f64,
    pub error_half: f64,
    pub ratio: f64,
}

/// `‖L_dt(T) − L_ref(T)‖_F / ‖L_{dt/2}(T) − L_ref(T)‖_F` with reference step `dt/8`.
pub fn step_halving_order(
    ctx: &HomLieContext,
    l0: &Matrix,
    t_end: f64,
    dt: f64,
) -> Result<StepHalving> {
    let reference = flow_to(ctx, l0, t_end, dt / 8.0)?;
    let error_dt = flow_to(ctx, l0, t_end, dt)?.dist(&reference);
    let error_half = flow_to(ctx, l0, t_end, dt / 2.0)?.dist(&reference);
    Ok(StepHalving {
        error_dt,
        error_half,
        ratio: error_dt / error_half,
    })
}

/// Algebraic conservation identities on random symmetric `L` with entries in `[−1, 1]`:
/// `tr(L·rhs(L)) = 0` (so `tr(L²)` is conserved) for every `β`, and `tr(rhs(L))`,
/// which vanishes for scalar `β` and generically not otherwise.
pub fn conservation_identity_check(
    ctx: &HomLieContext,
    samples: usize,
    seed: u64,
) -> Result<Report> {
    if samples == 0 {
        return Err(Error::InvalidArgument("samples must be at least 1".into()));
    }
    let n = ctx.n();
    let mut rng = sampling::rng(seed);
    let (mut quad, mut lin) = (0.0f64, 0.0f64);
    let mut lin_rel = 0.0f64;
    for _ in 0..samples {
        let l = sampling::symmetric(&mut rng, n);
        let r = rhs(ctx, &l)?;
        let norm = l.norm_fro().max(DRIFT_FLOOR);
        quad = quad.max((&l * &r).trace().abs() / norm.powi(3));
        lin = lin.max(r.trace().abs());
        lin_rel = lin_rel.max(r.trace().abs() / norm.powi(2));
    }
    let mut rep = Report::new(
        "toda-identities",
        n,
        format!("{:?}", ctx.beta().matrix().rows()),
    );
    rep.push(Case::at_most(
        "tr(L·rhs(L)) / |L|^3",
        "d/dt tr(L²) = 2·tr(L·[B,L]_β) = 0",
        quad,
        IDENTITY_TOL,
    ));
    if ctx.beta().is_scalar() || n == 1 {
        rep.push(Case::at_most(
            "tr(rhs(L)) / |L|^2",
            "d/dt tr(L) = 0 for scalar β",
            lin_rel,
            IDENTITY_TOL,
        ));
    } else {
        rep.push(Case::exceeds(
            "max |tr(rhs(L))| (tr L not conserved)",
            "d/dt tr(L) = tr(B[β,L]) ≠ 0",
            lin,
            1e-6,
        ));
    }
    Ok(rep)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::Involution;

    fn two_by_two() -> Matrix {
        Matrix::from_rows(vec![vec![1.0, 1.0], vec![1.0, -1.0]]).unwrap()
    }

    #[test]
    fn b_of_l_examples() {
        assert_eq!(b_of_l(&Matrix::diag(&[1.0, 2.0, 3.0])), Matrix::zeros(3));
        let l = Matrix::from_rows(vec![vec![2.0, 3.0], vec![3.0, 5.0]]).unwrap();
        assert_eq!(
            b_of_l(&l),
            Matrix::from_rows(vec![vec![0.0, 3.0], vec![-3.0, 0.0]]).unwrap()
        );
        let s = sampling::symmetric(&mut sampling::rng(1), 5);
        let b = b_of_l(&s);
        assert_eq!(&b + &b.transpose(), Matrix::zeros(5));
    }

    #[test]
    fn rhs_examples() {
        let (a, b, c) = (0.3, -1.2, 2.0);
        let l = Matrix::from_rows(vec![vec![a, b], vec![b, c]]).unwrap();
        let expected = Matrix::from_rows(vec![
            vec![2.0 * b * b, b * (c - a)],
            vec![b * (c - a), -2.0 * b * b],
        ])
        .unwrap();
        assert!(
            rhs(&HomLieContext::classical(2), &l)
                .unwrap()
                .dist(&expected)
                < 1e-15
        );

        let mut rng = sampling::rng(2);
        for beta in [
            Involution::alternating(4),
            Involution::transposition(4, 1, 3).unwrap(),
        ] {
            let ctx = HomLieContext::new(beta);
            assert_eq!(
                rhs(&ctx, &Matrix::diag(&[1.0, -2.0, 0.5, 3.0])).unwrap(),
                Matrix::zeros(4)
            );
            let l = sampling::symmetric(&mut rng, 4);
            assert!(rhs(&ctx, &l).unwrap().asymmetry() <= 1e-12);
        }
        assert!(rhs(&HomLieContext::classical(3), &l).is_err());
    }

    #[test]
    fn trace_witness() {
        let ctx = HomLieContext::new(Involution::diag_signs(&[1.0, -1.0]).unwrap());
        let l = Matrix::from_rows(vec![vec![0.0, 1.0], vec![1.0, 0.0]]).unwrap();
        // B = [[0,1],[-1,0]] gives rhs = -2I
        let r = rhs(&ctx, &l).unwrap();
        let expected = Matrix::from_rows(vec![vec![-2.0, 0.0], vec![0.0, -2.0]]).unwrap();
        assert_eq!(r, expected);
        assert_eq!(r.trace(), -4.0);
    }

    #[test]
    fn diagonal_start_is_fixed() {
        let l0 = Matrix::diag(&[3.0, 1.0, -2.0]);
        let ctx = HomLieContext::new(Involution::transposition(3, 1, 2).unwrap());
        let traj = integrate(&ctx, &l0, 1.0, 0.1, 1).unwrap();
        assert_eq!(traj.states.len(), 11);
        assert!(traj.states.iter().all(|s| s.l == l0));
        assert!(traj.states.windows(2).all(|w| w[0].t < w[1].t));
        assert_eq!(traj.last().t, 1.0);
    }

    #[test]
    fn classical_two_by_two_sorts() {
        let traj = integrate(&HomLieContext::classical(2), &two_by_two(), 10.0, 1e-3, 100).unwrap();
        let s = traj.summary();
        assert!(s.max_eigenvalue_drift() <= 1e-8, "{s:?}");
        let last = &traj.last().l;
        let r2 = std::f64::consts::SQRT_2;
        assert!((last.get(0, 0) - r2).abs() < 1e-4);
        assert!((last.get(1, 1) + r2).abs() < 1e-4);
        assert!(s.final_max_offdiag < 1e-4);
        assert!(s.final_diagonal_descending);
    }

    #[test]
    fn deformed_two_by_two_conserves_tr_l2() {
        let ctx = HomLieContext::new(Involution::diag_signs(&[1.0, -1.0]).unwrap());
        let s = integrate(&ctx, &two_by_two(), 10.0, 1e-3, 100)
            .unwrap()
            .summary();
        let d = s.drift("trL2").unwrap();
        assert_eq!(d.initial, 4.0);
        assert!(d.max_rel_drift <= 1e-8, "{d:?}");
        assert!(s.max_asymmetry <= 1e-8);
    }

    #[test]
    fn fourth_order() {
        let l0 = sampling::symmetric_tridiagonal(&mut sampling::rng(4), 4);
        for beta in [Involution::identity(4), Involution::alternating(4)] {
            let ctx = HomLieContext::new(beta);
            let r = step_halving_order(&ctx, &l0, 2.0, 0.02).unwrap();
            assert!((12.0..=20.0).contains(&r.ratio), "{r:?}");
        }
    }

    #[test]
    fn identities() {
        for n in 2..=4 {
            let r = conservation_identity_check(&HomLieContext::classical(n), 200, 5).unwrap();
            assert!(r.pass, "{}", r.to_text());
            let r = conservation_identity_check(
                &HomLieContext::new(Involution::alternating(n)),
                200,
                5,
            )
            .unwrap();
            assert!(r.pass, "{}", r.to_text());
        }
    }

    #[test]
    fn bad_inputs() {
        let ctx = HomLieContext::classical(2);
        let asym = Matrix::from_rows(vec![vec![0.0, 1.0], vec![0.0, 0.0]]).unwrap();
        assert!(matches!(
            integrate(&ctx, &asym, 1.0, 0.1, 1),
            Err(Error::NotSymmetric { .. })
        ));
        assert!(integrate(&ctx, &two_by_two(), 1.0, 0.0, 1).is_err());
        assert!(integrate(&ctx, &two_by_two(), -1.0, 0.1, 1).is_err());
        assert!(integrate(&ctx, &two_by_two(), 1.0, 0.1, 0).is_err());
    }

    #[test]
    fn blow_up_keeps_partial_trajectory() {
        let ctx = HomLieContext::classical(2);
        let big = Matrix::from_rows(vec![vec![0.0, 1e120], vec![1e120, 0.0]]).unwrap();
        match integrate(&ctx, &big, 10.0, 1.0, 1) {
            Err(Error::FlowBlowUp { t, partial }) => {
                assert_eq!(t, 1.0);
                assert_eq!(partial.states.len(), 1);
            }
            other => panic!("expected blow-up, got {other:?}"),
        }
    }

    #[test]
    fn csv_layout() {
        let traj = integrate(&HomLieContext::classical(2), &two_by_two(), 0.2, 0.1, 1).unwrap();
        let mut buf = Vec::new();
        traj.write_csv(&mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let header = text.lines().next().unwrap();
        assert_eq!(
            header,
            "t,L_1_1,L_1_2,L_2_1,L_2_2,tr1,tr2,eig1,eig2,trL2,maxoffdiag,maxofftridiag"
        );
        assert_eq!(text.lines().count(), 4);
        let mut buf = Vec::new();
        traj.write_plot_csv(&mut buf).unwrap();
        assert!(String::from_utf8(buf)
            .unwrap()
            .starts_with("t,eig1,eig2,trL2\n"));
    }
}
