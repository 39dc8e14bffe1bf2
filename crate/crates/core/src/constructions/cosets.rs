//! Coset bookkeeping for the T4/T5 overlap: `A` is the union of the cosets
//! `g^alpha <delta>` with `alpha < h`, `B` the union of `g^beta <theta>` with
//! `beta < r`.

use serde::{Deserialize, Serialize};

use super::params::{ConstructionParams, Theorem};
use super::ConstructionError;
use crate::gf::{FieldContext, Gf};

/// Discrete logs of `A \ B`, `B \ A` and `A ∩ B`, each ascending.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CosetSplit {
    pub a_only: Vec<u32>,
    pub b_only: Vec<u32>,
    pub both: Vec<u32>,
}

impl CosetSplit {
    pub fn len(&self) -> usize {
        self.a_only.len() + self.b_only.len() + self.both.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

/// Splits `F_{q^2}^*` by membership in `A` and `B` with one dlog scan.
pub fn split_units(units: u64, s: u64, t: u64, h: u64, r: u64) -> CosetSplit {
    let mut split = CosetSplit {
        a_only: Vec::new(),
        b_only: Vec::new(),
        both: Vec::new(),
    };
    for k in 0..units {
        match (k % s < h, k % t < r) {
            (true, true) => split.both.push(k as u32),
            (true, false) => split.a_only.push(k as u32),
            (false, true) => split.b_only.push(k as u32),
            (false, false) => {}
        }
    }
    split
}

/// [`split_units`] for a T4/T5 tuple, checking `|A ∩ B|` against
/// `(q^2-1)/(st) h r`.
pub fn coset_sets(params: &ConstructionParams) -> Result<CosetSplit, ConstructionError> {
    if params.theorem() == Theorem::T6 {
        return Err(ConstructionError::SystemShape(
            "T6 uses disjoint square/nonsquare halves, not the A/B split".into(),
        ));
    }
    let units = u64::from(params.ctx().units());
    let split = split_units(units, params.s(), params.t(), params.h(), params.r());
    let expected = params.overlap();
    if split.both.len() as u64 != expected {
        return Err(ConstructionError::CountMismatch {
            what: "|A ∩ B|",
            expected,
            found: split.both.len() as u64,
        });
    }
    Ok(split)
}

/// First `lambda = g^{(q+1) i}` with every `f1_k + lambda f2_k` nonzero.
pub fn choose_lambda(ctx: &FieldContext, f1: &[Gf], f2: &[Gf]) -> Result<Gf, ConstructionError> {
    if f1.len() != f2.len() {
        return Err(ConstructionError::SystemShape(format!(
            "f1 has {} values, f2 has {}",
            f1.len(),
            f2.len()
        )));
    }
    ctx.base_units()
        .find(|&lambda| {
            f1.iter()
                .zip(f2)
                .all(|(&x, &y)| !ctx.add(x, ctx.mul(lambda, y)).is_zero())
        })
        .ok_or(ConstructionError::LambdaNotFound)
}
