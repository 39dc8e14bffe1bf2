//! Quantum MDS codes from Hermitian self-orthogonal generalized Reed-Solomon
//! codes over `F_{q^2}`.
//!
//! * [`gf`]: exponent-coded arithmetic in `F_{q^2}`.
//! * [`linalg`]: dense exact linear algebra over the same field.
//! * [`grs`]: GRS codes, the power-sum criterion and a Gram-matrix check.
//! * [`constructions`]: the T4/T5/T6 length families.
//! * [`verify`]: independent checks and machine-readable reports.
//! * [`enumerate`]: parameter sweeps and tables.

pub mod constructions;
pub mod enumerate;
pub mod gf;
pub mod grs;
pub mod linalg;
pub mod verify;
