//! The small linear systems whose solutions `u in (F_q^*)^h` fix the norms
//! `v^{q+1}` on the `delta`-coset half of each construction.
//!
//! All three share one shape: with `xi = g^l` and `mu` running over
//! `ceil((s-h)/2) + 1 ..= floor((s+h)/2) - 1`, row `mu` has entries
//! `g^{c_k (mu l - shift)}`:
//!
//! | system       | family | `c_k`    | `shift` | extra row       |
//! |--------------|--------|----------|---------|-----------------|
//! | `Normalized` | T4     | `k`      | `0`     | `sum u_k = 1`   |
//! | `Shifted`    | T5     | `k`      | `q + 1` | none            |
//! | `OddShifted` | T6     | `2k + 1` | `q + 1` | none            |
//!
//! The rows are permuted by Frobenius (`mu -> s - mu`), so a solution
//! pinned down by a Frobenius-invariant normalization lies in `F_q`. When the
//! homogeneous system has `h - 1` rows the normalization `sum u_k = 1`
//! determines `u`; with `h - 2` rows the solution comes from
//! [`Matrix::kernel_vector_nonzero_coords`].

use std::ops::RangeInclusive;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::params::{ConstructionParams, Theorem};
use super::ConstructionError;
use crate::gf::{FieldContext, Gf};
use crate::linalg::{Matrix, Solution};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SystemKind {
    Normalized,
    Shifted,
    OddShifted,
}

impl SystemKind {
    pub fn for_theorem(theorem: Theorem) -> Self {
        match theorem {
            Theorem::T4 => SystemKind::Normalized,
            Theorem::T5 => SystemKind::Shifted,
            Theorem::T6 => SystemKind::OddShifted,
        }
    }
}

/// `ceil((s-h)/2) + 1 ..= floor((s+h)/2) - 1`, possibly empty.
pub fn mu_range(s: u64, h: u64) -> RangeInclusive<i64> {
    let (s, h) = (s as i64, h as i64);
    let lo = (s - h + 1).div_euclid(2) + 1;
    let hi = (s + h).div_euclid(2) - 1;
    lo..=hi
}

fn check_shape(ctx: &FieldContext, kind: SystemKind, s: u64, h: u64) -> Result<(), ConstructionError> {
    let q = u64::from(ctx.q());
    let bad = |why: &str| {
        Err(ConstructionError::SystemShape(format!(
            "{kind:?} system with q = {q}, s = {s}, h = {h}: {why}"
        )))
    };
    if s == 0 || (q + 1) % s != 0 {
        return bad("s must divide q + 1");
    }
    match kind {
        SystemKind::Normalized if s % 2 == 0 || h % 2 == 0 || h == 0 || h >= s => {
            bad("needs odd s and odd 1 <= h <= s - 1")
        }
        SystemKind::Shifted if s % 2 == 0 || h == 0 || h >= s => bad("needs odd s and 1 <= h <= s - 1"),
        SystemKind::OddShifted if s % 2 == 1 || h == 0 || 2 * h > s => {
            bad("needs even s and 1 <= h <= s/2")
        }
        _ => Ok(()),
    }
}

/// Homogeneous constraint matrix: one row per `mu`, `h` columns.
pub fn system_matrix(
    ctx: &Arc<FieldContext>,
    kind: SystemKind,
    s: u64,
    h: u64,
) -> Result<Matrix, ConstructionError> {
    check_shape(ctx, kind, s, h)?;
    let units = i64::from(ctx.units());
    let l = units / s as i64;
    let shift = match kind {
        SystemKind::Normalized => 0,
        SystemKind::Shifted | SystemKind::OddShifted => i64::from(ctx.q()) + 1,
    };
    let mus: Vec<i64> = mu_range(s, h).collect();
    Ok(Matrix::from_fn(ctx.clone(), mus.len(), h as usize, |row, k| {
        let ck = match kind {
            SystemKind::OddShifted => 2 * k as i64 + 1,
            _ => k as i64,
        };
        let base = (mus[row] * l - shift).rem_euclid(units);
        ctx.exp((ck * base).rem_euclid(units))
    }))
}

/// Solves the system and checks the result by substitution.
pub fn solve_system(
    ctx: &Arc<FieldContext>,
    kind: SystemKind,
    s: u64,
    h: u64,
) -> Result<Vec<Gf>, ConstructionError> {
    let a = system_matrix(ctx, kind, s, h)?;
    let h = h as usize;
    let u = if h == 1 {
        vec![Gf::ONE]
    } else if kind == SystemKind::Normalized || a.rows() + 1 == h {
        let aug = a.with_ones_row();
        let mut rhs = vec![Gf::ZERO; aug.rows()];
        rhs[0] = Gf::ONE;
        match aug.solve(&rhs)? {
            Solution::Unique(u) => u,
            // the ones row can coincide with a constraint row in small
            // characteristic, so the kernel route still applies
            _ if kind != SystemKind::Normalized => a.kernel_vector_nonzero_coords()?,
            other => {
                return Err(ConstructionError::SystemFailure(format!(
                    "normalized {kind:?} system for s = {s}, h = {h} is singular: {other:?}"
                )))
            }
        }
    } else {
        a.kernel_vector_nonzero_coords()?
    };
    check_solution(ctx, kind, &a, &u)?;
    Ok(u)
}

fn check_solution(
    ctx: &FieldContext,
    kind: SystemKind,
    a: &Matrix,
    u: &[Gf],
) -> Result<(), ConstructionError> {
    if let Some(k) = u.iter().position(|&x| x.is_zero() || !ctx.in_base_field(x)) {
        return Err(ConstructionError::SystemFailure(format!(
            "u_{k} = {} is not in F_q^*",
            u[k]
        )));
    }
    if a.mul_vec(u)?.iter().any(|x| !x.is_zero()) {
        return Err(ConstructionError::SystemFailure(
            "solution does not annihilate the constraint rows".into(),
        ));
    }
    if kind == SystemKind::Normalized && ctx.sum(u.iter().copied()) != Gf::ONE {
        return Err(ConstructionError::SystemFailure(
            "solution does not sum to 1".into(),
        ));
    }
    Ok(())
}

impl ConstructionParams {
    /// The `u` vector this tuple's construction uses.
    pub fn system_solution(&self) -> Result<Vec<Gf>, ConstructionError> {
        solve_system(
            self.ctx(),
            SystemKind::for_theorem(self.theorem()),
            self.s(),
            self.h(),
        )
    }
}
