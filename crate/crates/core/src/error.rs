use thiserror::Error;

use crate::toda::Trajectory;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("matrix dimension must be at least 1")]
    EmptyMatrix,
    #[error("expected {expected} entries, found {found}")]
    ShapeMismatch { expected: usize, found: usize },
    #[error("non-finite entry at ({row}, {col})")]
    NonFinite { row: usize, col: usize },
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("matrix is not an involution: |β·β - I|_F = {residual:e}")]
    NotInvolution { residual: f64 },
    #[error("matrix is singular or nearly so (condition estimate {condition:e})")]
    Singular { condition: f64 },
    #[error("matrix exponential overflowed (|A|_F = {norm:e})")]
    Overflow { norm: f64 },
    #[error("matrix is not symmetric (asymmetry {asymmetry:e}); use trace_powers or characteristic_polynomial instead")]
    NotSymmetric { asymmetry: f64 },
    #[error("cochain degree {degree} exceeds dim gl(V) = {dim}")]
    DegreeOverflow { degree: usize, dim: usize },
    #[error("expected {expected} arguments, found {found}")]
    Arity { expected: usize, found: usize },
    #[error("n = {n} exceeds the supported maximum {max} for this computation")]
    TooLarge { n: usize, max: usize },
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("flow produced a non-finite state at t = {t}")]
    FlowBlowUp { t: f64, partial: Box<Trajectory> },
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
