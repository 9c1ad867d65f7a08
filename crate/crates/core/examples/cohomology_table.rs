//! Cohomology of the twisted and untwisted structures on gl(2), side by side.
//!
//! ```bash
//! cargo run --example cohomology_table
//! ```

use homlie::cochain::{cohomology, intertwining_residuals, Cochain};
use homlie::linalg::DEFAULT_RANK_TOL;
use homlie::{sampling, HomLieContext, Involution};

fn main() -> homlie::Result<()> {
    let ctx = HomLieContext::new(Involution::diag_signs(&[1.0, -1.0])?);

    // d∘β^r = β^r∘d̂ and β^l∘d = d̂∘β^l on a random 2-cochain
    let xi = Cochain::random(&mut sampling::rng(3), 2, 2)?;
    let r = intertwining_residuals(&ctx, &xi)?;
    println!("intertwining residuals: {:.1e} {:.1e}", r.r1, r.r2);

    let report = cohomology(&ctx, 4, DEFAULT_RANK_TOL)?;
    println!("{}", report.to_table());
    println!("dimensions agree:            {}", report.dims_agree());
    println!(
        "cocycles/coboundaries agree after transport by beta: {}",
        report.transported_subspaces_agree()
    );
    println!(
        "same subspaces without transport: {}",
        report.literal_subspaces_agree()
    );
    Ok(())
}
