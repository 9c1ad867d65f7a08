//! One-parameter curves t ↦ e^{tβX}β and the derivative of t ↦ Ad of the curve.
//!
//! ```bash
//! cargo run --example one_parameter
//! ```

use homlie::homgroup::{
    derivative_bracket_convergence, one_param_check, ExpCurve, HomGroupElement, O11Component,
    O11Curve, OneParameterCurve,
};
use homlie::{sampling, HomLieContext, Involution};

fn main() -> homlie::Result<()> {
    let beta = Involution::alternating(3);
    let x = sampling::in_ball(&mut sampling::rng(2), 3, 1.0);
    let curve = ExpCurve::new(x.clone(), beta.clone())?;
    let grid = [-1.0, -0.5, 0.0, 0.5, 1.0];
    let report = one_param_check(&curve, &grid)?;
    println!(
        "M_beta curve: group law {:.1e}, identity {:.1e}",
        report.max_group_law_residual, report.identity_residual
    );
    println!("value at t = 1:\n{}", curve.at(1.0)?);

    for comp in [O11Component::S2, O11Component::S3, O11Component::S4] {
        let r = one_param_check(&O11Curve(comp), &grid)?;
        println!("{}: {:.1e}", comp.name(), r.max());
    }

    let element = HomGroupElement::new(x.clone(), beta.clone())?;
    println!(
        "Hom-inverse residual {:.1e}",
        element.hom_inverse_residual()?
    );

    let ctx = HomLieContext::new(beta);
    let y = sampling::uniform(&mut sampling::rng(4), 3);
    println!(
        "{:>8} {:>12} {:>12} {:>8}",
        "h", "res(h)", "res(h/2)", "ratio"
    );
    for h in [1e-1, 1e-2, 1e-3] {
        let (r1, r2, _) = derivative_bracket_convergence(&ctx, &x, &y, h)?;
        println!("{h:>8.0e} {r1:>12.3e} {r2:>12.3e} {:>8.3}", r1 / r2);
    }
    Ok(())
}
