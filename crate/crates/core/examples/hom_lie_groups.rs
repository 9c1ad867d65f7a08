//! Hom-Lie group components of GL(n), O(n) and O(1,1), checked against the axioms.
//!
//! ```bash
//! cargo run --example hom_lie_groups
//! ```

use homlie::homgroup::{hom_group_axiom_check, hom_inverse, Component, GroupTwist, O11Component};
use homlie::{sampling, Involution};

fn main() -> homlie::Result<()> {
    let p12 = GroupTwist::new(Involution::transposition(3, 1, 2)?);
    let mut runs = vec![
        (Component::GlNeg { n: 3 }, p12.clone()),
        (Component::ODetNeg { n: 3 }, p12.clone()),
    ];
    for comp in [O11Component::S2, O11Component::S3, O11Component::S4] {
        runs.push((Component::O11(comp), comp.twist()));
    }
    for (component, twist) in &runs {
        let report = hom_group_axiom_check(component, twist, 100, 5)?;
        println!("{:<12} pass = {}", component.name(), report.pass);
    }

    // With no twist the negative-determinant component is not closed under products.
    let control =
        hom_group_axiom_check(&Component::GlNeg { n: 3 }, &GroupTwist::identity(3), 100, 5)?;
    for case in control
        .cases
        .iter()
        .filter(|c| c.name.starts_with("closure"))
    {
        println!("identity twist, {}: pass = {}", case.name, case.pass);
    }

    let x = sampling::negative_determinant(&mut sampling::rng(9), 3);
    let y = hom_inverse(&x, &p12)?;
    println!(
        "F(x) F(y) - I = {:.1e}",
        (&p12.apply(&x) * &p12.apply(&y)).dist(&homlie::Matrix::identity(3))
    );
    Ok(())
}
