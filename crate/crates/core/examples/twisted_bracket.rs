//! The twisted bracket on gl(3) for a coordinate transposition.
//!
//! ```bash
//! cargo run --example twisted_bracket
//! ```

use homlie::homalg::conjugation_transport;
use homlie::{sampling, HomLieContext, Involution, Matrix};

fn main() -> homlie::Result<()> {
    let beta = Involution::transposition(3, 1, 2)?;
    let ctx = HomLieContext::new(beta);
    let mut rng = sampling::rng(1);
    let (x, y, z) = (
        sampling::uniform(&mut rng, 3),
        sampling::uniform(&mut rng, 3),
        sampling::uniform(&mut rng, 3),
    );

    println!("beta =\n{}", ctx.beta().matrix());
    println!("[X, Y]_beta =\n{}", ctx.bracket(&x, &y)?);
    println!("Ad_beta(X) =\n{}", ctx.ad(&x)?);

    // The hom-Jacobi identity holds; the plain Jacobi identity for the same bracket does not.
    println!(
        "hom-Jacobi residual      {:.2e}",
        ctx.hom_jacobi_residual(&x, &y, &z)?
    );
    println!(
        "untwisted Jacobi residual {:.2e}",
        ctx.untwisted_jacobi_residual(&x, &y, &z)?
    );
    let (size, basis) = ctx.untwisted_jacobi_witness();
    println!("basis witness E{:?}: {size:.1}", basis);

    // Conjugating by C moves the structure to the twist C beta C^-1.
    let c = Matrix::from_rows(vec![
        vec![2.0, 1.0, 0.0],
        vec![0.0, 1.0, 0.0],
        vec![0.0, 0.0, 1.0],
    ])?;
    let (target, morphism) = conjugation_transport(&ctx, &c)?;
    let report = homlie::homalg::check_morphism(&morphism, 50, 2)?;
    println!("transported twist =\n{}", target.beta().matrix());
    println!(
        "morphism residuals: bracket {:.1e}, twist {:.1e}",
        report.max_bracket_residual, report.max_twist_residual
    );
    Ok(())
}
