//! Twisted matrix Hom-Lie algebras `(gl(V), [·,·]_β, Ad_β)` for an involution
//! `β`, together with numerical machinery for everything built on top of them:
//!
//! * [`linalg`]: the small dense kernel (exponential, inverse, determinant,
//!   rank/nullspace, symmetric spectra, principal logarithm).
//! * [`homalg`]: the twisted bracket, the twist `Ad_β`, hom-Jacobi residuals,
//!   conjugation transport and morphism checking.
//! * [`cochain`]: alternating cochains on `gl(V)`, the twisted and classical
//!   coboundaries, the pullbacks `β^r`/`β^l` and brute-force cohomology.
//! * [`homgroup`]: Hom-Lie groups given by a right-multiplication twist,
//!   one-parameter subgroups, the `M_β` family and the homomorphism checker.
//! * [`toda`]: the β-deformed Toda lattice with conserved-quantity probes.
//! * [`cli`]: the `homlie` command line front end and its JSON reports.
//!
//! Runnable walkthroughs of each capability live in the crate's `examples/`.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod cli;
pub mod cochain;
mod error;
pub mod homalg;
pub mod homgroup;
pub mod linalg;
pub mod report;
pub mod sampling;
pub mod toda;

pub use error::{Error, Result};
pub use homalg::HomLieContext;
pub use linalg::{Involution, Matrix};
