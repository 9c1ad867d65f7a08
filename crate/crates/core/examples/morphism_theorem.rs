//! Group homomorphisms and their differentials: conjugation, a deliberately
//! broken pair, and the determinant on the negative component.
//!
//! ```bash
//! cargo run --example morphism_theorem
//! ```

use homlie::homgroup::{
    det_homomorphism_check, morphism_theorem_check, CallableMorphism, ConjugationMorphism,
    GroupMorphismPair,
};
use homlie::{Involution, Matrix};

fn main() -> homlie::Result<()> {
    let c = Matrix::from_rows(vec![vec![1.0, 1.0], vec![0.0, 1.0]])?;
    let good = ConjugationMorphism::new(c, Involution::diag_signs(&[1.0, -1.0])?)?;
    println!(
        "induced twist beta = C gamma C^-1 =\n{}",
        good.beta().matrix()
    );
    let report = morphism_theorem_check(&good, 50, 1)?;
    println!("{}", report.to_text());

    // Shifting the differential by a multiple of I keeps the twist relation
    // but breaks the bracket relation; the checker must notice.
    let (outer, inner) = (good.clone(), good.clone());
    let shift = Matrix::identity(2).scale(1e-3);
    let broken = CallableMorphism::new(
        good.gamma().clone(),
        good.beta().clone(),
        move |a| outer.big_phi(a),
        move |x| &inner.small_phi(x) + &shift,
    )?;
    println!(
        "broken pair passes: {}",
        morphism_theorem_check(&broken, 50, 1)?.pass
    );

    println!("{}", det_homomorphism_check(3, 100, 2)?.to_text());
    Ok(())
}
