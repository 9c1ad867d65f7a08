//! Classical and twisted Toda flows from the same tridiagonal start.
//!
//! ```bash
//! cargo run --release --example toda_flow
//! ```
//! Writes `toda_alternating.csv` to the working directory.

use std::fs::File;

use homlie::toda::{integrate, step_halving_order};
use homlie::{sampling, HomLieContext, Involution};

fn main() -> homlie::Result<()> {
    let n = 4;
    let l0 = sampling::symmetric_tridiagonal(&mut sampling::rng(11), n);
    println!("L0 =\n{l0}");

    let classical = integrate(&HomLieContext::classical(n), &l0, 40.0, 1e-3, 1000)?;
    let s = classical.summary();
    println!(
        "classical: eigenvalue drift {:.1e}, final off-diagonal {:.1e}, sorted {}",
        s.max_eigenvalue_drift(),
        s.final_max_offdiag,
        s.final_diagonal_descending
    );
    println!("L(40) =\n{}", classical.last().l);

    let ctx = HomLieContext::new(Involution::alternating(n));
    let twisted = integrate(&ctx, &l0, 10.0, 1e-3, 100)?;
    let s = twisted.summary();
    for d in &s.drifts {
        println!(
            "{:<10} initial {:>12.6} final {:>12.6} drift {:.1e}",
            d.name, d.initial, d.last, d.max_abs_drift
        );
    }
    twisted.write_csv(File::create("toda_alternating.csv")?)?;

    let order = step_halving_order(&ctx, &l0, 2.0, 0.02)?;
    println!(
        "step halving error ratio {:.2} (fourth order gives 16)",
        order.ratio
    );
    Ok(())
}
