//! Explicit Hermitian self-orthogonal GRS codes from coset unions of
//! `F_{q^2}^*`, in three length families (`T4`, `T5`, `T6`).

mod build;
mod cosets;
mod params;
mod systems;

use thiserror::Error;

pub use build::{build, component_vectors, CodeFile, Construction, Provenance, WitnessVectors};
pub use cosets::{choose_lambda, coset_sets, split_units, CosetSplit};
pub use params::{ConstructionParams, ParamError, ParamTuple, ParamsRecord, Theorem, Violation};
pub use systems::{mu_range, solve_system, system_matrix, SystemKind};

use crate::gf::FieldError;
use crate::grs::CodeError;
use crate::linalg::LinalgError;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ConstructionError {
    #[error(transparent)]
    Param(#[from] ParamError),
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Code(#[from] CodeError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error("bad system shape: {0}")]
    SystemShape(String),
    #[error("system solution rejected: {0}")]
    SystemFailure(String),
    #[error("no lambda in F_q^* keeps the merged norms nonzero")]
    LambdaNotFound,
    #[error("{what}: expected {expected}, found {found}")]
    CountMismatch {
        what: &'static str,
        expected: u64,
        found: u64,
    },
    #[error("internal: {0}")]
    Internal(String),
}
