//! Builders for the three length families.
//!
//! Every builder produces the merged code together with the two component
//! pairs `(a1, v1)` and `(a2, v2)` whose power sums it is assembled from.
//! Components keep their natural block layout (`g^alpha delta^i` blocks,
//! `g^beta theta^j` blocks); the merged code sorts each part by dlog.

use serde::{Deserialize, Serialize};

use super::cosets::{choose_lambda, coset_sets};
use super::params::{ConstructionParams, ParamsRecord, Theorem};
use super::systems::SystemKind;
use super::ConstructionError;
use crate::gf::{FieldContext, Gf};
use crate::grs::{CodeRecord, GrsCode, QuantumParams};

/// Component vectors and the auxiliary choices behind a construction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WitnessVectors {
    pub a1: Vec<Gf>,
    pub v1: Vec<Gf>,
    pub a2: Vec<Gf>,
    pub v2: Vec<Gf>,
    /// Weight of the second component in the merge (T4/T5).
    pub lambda: Option<Gf>,
    pub u: Vec<Gf>,
    /// `e` with `e^{q+1} = -l`, the multiplier at the point `0` (T4).
    pub zero_multiplier: Option<Gf>,
}

#[derive(Debug, Clone)]
pub struct Construction {
    params: ConstructionParams,
    code: GrsCode,
    witness: WitnessVectors,
}

/// What a code file records about how it was built.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Provenance {
    pub theorem: Theorem,
    pub params: ParamsRecord,
    pub n: u64,
    pub d_max: u64,
    pub system: SystemKind,
    pub u: Vec<Gf>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lambda: Option<Gf>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub zero_multiplier: Option<Gf>,
}

/// On-disk code: the plain code record, optionally with its provenance.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CodeFile {
    #[serde(flatten)]
    pub code: CodeRecord,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub provenance: Option<Provenance>,
}

impl ConstructionParams {
    /// Inclusive bound `B` such that the first component's power sums vanish
    /// for all `0 <= i, j <= B`; negative when the range is empty.
    pub fn first_component_bound(&self) -> i64 {
        let (s, h, q) = (self.s() as i64, self.h() as i64, self.q() as i64);
        match self.theorem() {
            Theorem::T4 => (s + h) / 2 * ((q + 1) / s) - 2,
            Theorem::T5 | Theorem::T6 => (s + h) / 2 * ((q + 1) / s) - 3,
        }
    }

    /// Inclusive bound for the second component, `(q+1)/2 + (q-1)/t - 2`.
    pub fn second_component_bound(&self) -> i64 {
        let (t, q) = (self.t() as i64, self.q() as i64);
        (q + 1) / 2 + (q - 1) / t - 2
    }
}

/// Builds the code of dimension `d` (default `d_max`).
pub fn build(params: &ConstructionParams, d: Option<usize>) -> Result<Construction, ConstructionError> {
    let d = d.unwrap_or_else(|| params.d_max());
    params.check_dimension(d)?;
    let u = params.system_solution()?;
    let (a1, v1, a2, v2) = component_vectors(params, &u)?;
    let (a, norms, lambda, zero_multiplier) = match params.theorem() {
        Theorem::T4 | Theorem::T5 => merge_overlapping(params, &u)?,
        Theorem::T6 => merge_disjoint(params, &u),
    };
    let ctx = params.ctx();
    if a.len() as u64 != params.length() {
        return Err(ConstructionError::CountMismatch {
            what: "code length",
            expected: params.length(),
            found: a.len() as u64,
        });
    }
    let v = norms
        .iter()
        .map(|&w| ctx.solve_norm(w))
        .collect::<Result<Vec<_>, _>>()?;
    let code = GrsCode::new(ctx.clone(), a, v, d)?;
    Ok(Construction {
        params: params.clone(),
        code,
        witness: WitnessVectors {
            a1,
            v1,
            a2,
            v2,
            lambda,
            u,
            zero_multiplier,
        },
    })
}

impl Construction {
    pub fn params(&self) -> &ConstructionParams {
        &self.params
    }

    pub fn code(&self) -> &GrsCode {
        &self.code
    }

    pub fn witness(&self) -> &WitnessVectors {
        &self.witness
    }

    pub fn quantum_params(&self) -> QuantumParams {
        self.code
            .quantum_params()
            .expect("validated constructions satisfy 2d <= n")
    }

    pub fn provenance(&self) -> Provenance {
        Provenance {
            theorem: self.params.theorem(),
            params: self.params.record(self.code.dimension()),
            n: self.params.length(),
            d_max: self.params.d_max() as u64,
            system: SystemKind::for_theorem(self.params.theorem()),
            u: self.witness.u.clone(),
            lambda: self.witness.lambda,
            zero_multiplier: self.witness.zero_multiplier,
        }
    }

    pub fn to_file(&self) -> CodeFile {
        CodeFile {
            code: self.code.to_record(),
            provenance: Some(self.provenance()),
        }
    }
}

/// `g^{e mod (q^2-1)}` from a possibly large exponent.
fn power_of_g(ctx: &FieldContext, e: u64) -> Gf {
    ctx.exp((e % u64::from(ctx.units())) as i64)
}

/// `f2(g^beta theta^j) = theta^{j (q+1)/2}`, keyed by dlog `beta + t j`.
fn f2_norm(params: &ConstructionParams, dlog: u64) -> Gf {
    let j = dlog / params.t();
    power_of_g(params.ctx(), params.t() * j * (params.q() + 1) / 2)
}

/// Norm on the `delta`-coset part, keyed by dlog `alpha + s i`.
fn f1_norm(params: &ConstructionParams, u: &[Gf], dlog: u64) -> Gf {
    let ctx = params.ctx();
    let (alpha, i) = (dlog % params.s(), dlog / params.s());
    match params.theorem() {
        Theorem::T4 => u[alpha as usize],
        Theorem::T5 => ctx.mul(u[alpha as usize], power_of_g(ctx, params.s() * i * (params.q() + 1))),
        Theorem::T6 => {
            let k = (alpha - 1) / 2;
            ctx.mul(u[k as usize], power_of_g(ctx, params.s() * i * (params.q() + 1)))
        }
    }
}

type Merged = (Vec<Gf>, Vec<Gf>, Option<Gf>, Option<Gf>);

fn merge_overlapping(params: &ConstructionParams, u: &[Gf]) -> Result<Merged, ConstructionError> {
    let ctx = params.ctx();
    let split = coset_sets(params)?;
    let f1_both: Vec<Gf> = split.both.iter().map(|&k| f1_norm(params, u, k.into())).collect();
    let f2_both: Vec<Gf> = split.both.iter().map(|&k| f2_norm(params, k.into())).collect();
    let lambda = choose_lambda(ctx, &f1_both, &f2_both)?;

    let mut a = Vec::with_capacity(split.len() + 1);
    let mut norms = Vec::with_capacity(split.len() + 1);
    let mut zero_multiplier = None;
    if params.theorem() == Theorem::T4 {
        let minus_l = ctx.from_int(-(params.l() as i64));
        let e = ctx.solve_norm(minus_l)?;
        a.push(Gf::ZERO);
        norms.push(minus_l);
        zero_multiplier = Some(e);
    }
    for &k in &split.a_only {
        a.push(ctx.exp(k.into()));
        norms.push(f1_norm(params, u, k.into()));
    }
    for &k in &split.b_only {
        a.push(ctx.exp(k.into()));
        norms.push(ctx.mul(lambda, f2_norm(params, k.into())));
    }
    for ((&k, &x), &y) in split.both.iter().zip(&f1_both).zip(&f2_both) {
        let w = ctx.add(x, ctx.mul(lambda, y));
        if w.is_zero() {
            return Err(ConstructionError::Internal(format!(
                "merged norm vanishes at g^{k}"
            )));
        }
        a.push(ctx.exp(k.into()));
        norms.push(w);
    }
    Ok((a, norms, Some(lambda), zero_multiplier))
}

fn merge_disjoint(params: &ConstructionParams, u: &[Gf]) -> Merged {
    let ctx = params.ctx();
    let (s, t, h, r) = (params.s(), params.t(), params.h(), params.r());
    let mut first: Vec<u64> = Vec::with_capacity((params.l() * h) as usize);
    let mut second: Vec<u64> = Vec::with_capacity((params.m() * r) as usize);
    for k in 0..u64::from(ctx.units()) {
        let (alpha, beta) = (k % s, k % t);
        if alpha % 2 == 1 && alpha < 2 * h {
            first.push(k);
        } else if beta % 2 == 0 && beta < 2 * r {
            second.push(k);
        }
    }
    let mut a = Vec::with_capacity(first.len() + second.len());
    let mut norms = Vec::with_capacity(first.len() + second.len());
    for k in first {
        a.push(power_of_g(ctx, k));
        norms.push(f1_norm(params, u, k));
    }
    for k in second {
        a.push(power_of_g(ctx, k));
        norms.push(f2_norm(params, k));
    }
    (a, norms, None, None)
}

type Components = (Vec<Gf>, Vec<Gf>, Vec<Gf>, Vec<Gf>);

/// `(a1, v1, a2, v2)` in block layout.
pub fn component_vectors(params: &ConstructionParams, u: &[Gf]) -> Result<Components, ConstructionError> {
    let ctx = params.ctx();
    let (s, t, h, r) = (params.s(), params.t(), params.h(), params.r());
    let (l, m) = (params.l(), params.m());
    let base: Vec<Gf> = u
        .iter()
        .map(|&x| ctx.solve_norm(x))
        .collect::<Result<_, _>>()?;

    let mut a1 = Vec::new();
    let mut v1 = Vec::new();
    if params.theorem() == Theorem::T4 {
        a1.push(Gf::ZERO);
        v1.push(ctx.solve_norm(ctx.from_int(-(l as i64)))?);
    }
    for k in 0..h {
        let alpha = match params.theorem() {
            Theorem::T6 => 2 * k + 1,
            _ => k,
        };
        for i in 0..l {
            a1.push(power_of_g(ctx, alpha + s * i));
            v1.push(match params.theorem() {
                Theorem::T4 => base[k as usize],
                _ => ctx.mul(base[k as usize], power_of_g(ctx, s * i)),
            });
        }
    }

    let mut a2 = Vec::with_capacity((m * r) as usize);
    let mut v2 = Vec::with_capacity((m * r) as usize);
    for k in 0..r {
        let beta = match params.theorem() {
            Theorem::T6 => 2 * k,
            _ => k,
        };
        for j in 0..m {
            a2.push(power_of_g(ctx, beta + t * j));
            v2.push(power_of_g(ctx, j * t / 2));
        }
    }
    Ok((a1, v1, a2, v2))
}
