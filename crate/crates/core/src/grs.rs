//! Generalized Reed-Solomon codes over `F_{q^2}` and their Hermitian
//! self-orthogonality.
//!
//! `GRS_d(a, v)` is the set of words `(v_1 f(a_1), ..., v_n f(a_n))` with
//! `deg f < d`. It is Hermitian self-orthogonal exactly when every power sum
//! `sum_k a_k^{q i + j} v_k^{q+1}` vanishes for `0 <= i, j < d`. That grid is
//! evaluated by [`PowerSumScanner`]; [`GrsCode::gram_counterexample`] reaches
//! the same verdict from the generator matrix rows instead.

use std::fmt;
use std::sync::Arc;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::gf::{FieldContext, FieldError, Gf};
use crate::linalg::Matrix;

/// Default cap on the number of codewords `brute_min_distance` may visit.
pub const DEFAULT_BUDGET: u64 = 1_000_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CodeError {
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error("evaluation points {first} and {second} coincide")]
    RepeatedPoint { first: usize, second: usize },
    #[error("column multiplier {0} is zero")]
    ZeroMultiplier(usize),
    #[error("need 1 <= d <= n <= q^2, got d = {d}, n = {n}")]
    Dimension { d: usize, n: usize },
    #[error("length mismatch: {0}")]
    LengthMismatch(String),
    #[error("enumeration needs {needed} codewords, budget is {budget}")]
    BudgetExceeded { needed: u128, budget: u64 },
    #[error("quantum parameters need 1 <= d and 2d <= n, got n = {n}, d = {d}")]
    QuantumRange { n: u64, d: u64 },
}

/// Parameters `[[n, k, dmin]]_q` of a quantum code.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct QuantumParams {
    pub n: u64,
    pub k: u64,
    pub dmin: u64,
    pub q: u64,
}

impl QuantumParams {
    /// Quantum Singleton equality `k = n - 2 dmin + 2`.
    pub fn is_mds(&self) -> bool {
        self.dmin >= 1 && self.k + 2 * self.dmin == self.n + 2
    }
}

impl fmt::Display for QuantumParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[[{},{},{}]]_{}", self.n, self.k, self.dmin, self.q)
    }
}

/// Quantum code obtained from a Hermitian self-orthogonal `[n, d, n-d+1]`
/// code over `F_{q^2}`: `[[n, n - 2d, d + 1]]_q`.
pub fn quantum_params(n: u64, d: u64, q: u64) -> Result<QuantumParams, CodeError> {
    if d == 0 || 2 * d > n {
        return Err(CodeError::QuantumRange { n, d });
    }
    let qp = QuantumParams {
        n,
        k: n - 2 * d,
        dmin: d + 1,
        q,
    };
    debug_assert!(qp.is_mds());
    Ok(qp)
}

/// A power sum (or Gram entry) that failed to vanish.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct NonVanishing {
    pub i: usize,
    pub j: usize,
    pub value: Gf,
}

#[derive(Clone)]
pub struct GrsCode {
    ctx: Arc<FieldContext>,
    a: Vec<Gf>,
    v: Vec<Gf>,
    d: usize,
}

impl fmt::Debug for GrsCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("GrsCode")
            .field("q", &self.ctx.q())
            .field("n", &self.len())
            .field("d", &self.d)
            .finish()
    }
}

impl GrsCode {
    pub fn new(ctx: Arc<FieldContext>, a: Vec<Gf>, v: Vec<Gf>, d: usize) -> Result<Self, CodeError> {
        if a.len() != v.len() {
            return Err(CodeError::LengthMismatch(format!(
                "{} evaluation points, {} multipliers",
                a.len(),
                v.len()
            )));
        }
        let n = a.len();
        if d == 0 || d > n || n as u64 > ctx.order() {
            return Err(CodeError::Dimension { d, n });
        }
        for &x in a.iter().chain(&v) {
            ctx.check(x)?;
        }
        if let Some(k) = v.iter().position(|x| x.is_zero()) {
            return Err(CodeError::ZeroMultiplier(k));
        }
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_unstable_by_key(|&k| a[k]);
        if let Some(w) = order.windows(2).find(|w| a[w[0]] == a[w[1]]) {
            let (first, second) = (w[0].min(w[1]), w[0].max(w[1]));
            return Err(CodeError::RepeatedPoint { first, second });
        }
        Ok(Self { ctx, a, v, d })
    }

    pub fn ctx(&self) -> &Arc<FieldContext> {
        &self.ctx
    }

    pub fn points(&self) -> &[Gf] {
        &self.a
    }

    pub fn multipliers(&self) -> &[Gf] {
        &self.v
    }

    pub fn dimension(&self) -> usize {
        self.d
    }

    pub fn len(&self) -> usize {
        self.a.len()
    }

    pub fn is_empty(&self) -> bool {
        self.a.is_empty()
    }

    /// Same points and multipliers, different dimension.
    pub fn with_dimension(&self, d: usize) -> Result<Self, CodeError> {
        Self::new(self.ctx.clone(), self.a.clone(), self.v.clone(), d)
    }

    /// `[[n, n - 2d, d + 1]]_q`.
    pub fn quantum_params(&self) -> Result<QuantumParams, CodeError> {
        quantum_params(self.len() as u64, self.d as u64, u64::from(self.ctx.q()))
    }

    /// `v^{q+1}` coordinatewise.
    pub fn norms(&self) -> Vec<Gf> {
        self.v.iter().map(|&x| self.ctx.norm(x)).collect()
    }

    /// `d x n` matrix with entries `v_j a_j^i` (`0^0 = 1`).
    pub fn generator_matrix(&self) -> Matrix {
        let ctx = &self.ctx;
        Matrix::from_fn(ctx.clone(), self.d, self.len(), |i, j| {
            let pw = ctx.pow(self.a[j], i as i64).expect("nonnegative power");
            ctx.mul(self.v[j], pw)
        })
    }

    /// Codeword of the polynomial with coefficients `coeffs` (constant first).
    pub fn encode(&self, coeffs: &[Gf]) -> Result<Vec<Gf>, CodeError> {
        if coeffs.len() != self.d {
            return Err(CodeError::LengthMismatch(format!(
                "{} coefficients for dimension {}",
                coeffs.len(),
                self.d
            )));
        }
        let ctx = &self.ctx;
        Ok(self
            .a
            .iter()
            .zip(&self.v)
            .map(|(&x, &vk)| {
                let fx = coeffs
                    .iter()
                    .rev()
                    .fold(Gf::ZERO, |acc, &c| ctx.add(ctx.mul(acc, x), c));
                ctx.mul(vk, fx)
            })
            .collect())
    }

    /// `sum_k a_k^{q i + j} v_k^{q+1}`, term by term.
    pub fn power_sum(&self, i: u64, j: u64) -> Gf {
        power_sum(&self.ctx, &self.a, &self.norms(), i, j)
    }

    /// First `(i, j)` in `[0, d)^2`, row-major, whose power sum is nonzero.
    pub fn criterion_counterexample(&self) -> Option<NonVanishing> {
        let norms = self.norms();
        PowerSumScanner::new(&self.ctx, &self.a, &norms).first_nonzero(self.d - 1, self.d - 1)
    }

    pub fn is_hermitian_self_orthogonal(&self) -> bool {
        self.criterion_counterexample().is_none()
    }

    /// First generator-row pair `(i, j)`, `i <= j`, with nonzero Hermitian
    /// inner product. Conjugate symmetry covers `i > j`.
    pub fn gram_counterexample(&self) -> Option<NonVanishing> {
        let g = self.generator_matrix();
        let conj = g.conjugate();
        let ctx = &self.ctx;
        (0..self.d).into_par_iter().find_map_first(|i| {
            (i..self.d).find_map(|j| {
                let value = ctx.sum(g.row(i).iter().zip(conj.row(j)).map(|(&x, &y)| ctx.mul(x, y)));
                (!value.is_zero()).then_some(NonVanishing { i, j, value })
            })
        })
    }

    pub fn gram_check(&self) -> bool {
        self.gram_counterexample().is_none()
    }

    /// Minimum Hamming weight over all nonzero codewords, by exhaustion.
    ///
    /// Scaling by a nonzero constant preserves weight, so only messages whose
    /// first nonzero coefficient is `1` are visited: `(Q^d - 1)/(Q - 1)` words
    /// with `Q = q^2`.
    pub fn brute_min_distance(&self, budget: u64) -> Result<usize, CodeError> {
        let ctx = &self.ctx;
        let order = u128::from(ctx.order());
        let needed = (order.pow(self.d as u32) - 1) / (order - 1);
        if needed > u128::from(budget) {
            return Err(CodeError::BudgetExceeded { needed, budget });
        }
        // row i is (v_k a_k^i)_k
        let g = self.generator_matrix();
        let elements: Vec<Gf> = ctx.elements().collect();
        Ok((0..self.d)
            .map(|lead| {
                let rest: Vec<&[Gf]> = (lead + 1..self.d).map(|i| g.row(i)).collect();
                min_weight_over_coset(ctx, g.row(lead), &rest, &elements)
            })
            .min()
            .unwrap_or(0))
    }

    pub fn to_record(&self) -> CodeRecord {
        CodeRecord {
            p: self.ctx.p(),
            e: self.ctx.e(),
            modulus: self.ctx.modulus().to_vec(),
            a: self.a.clone(),
            v: self.v.clone(),
            d: self.d,
        }
    }

    pub fn from_record(rec: &CodeRecord) -> Result<Self, CodeError> {
        let ctx = Arc::new(FieldContext::with_modulus(rec.p, rec.e, &rec.modulus)?);
        Self::new(ctx, rec.a.clone(), rec.v.clone(), rec.d)
    }

    /// Like [`GrsCode::from_record`], reusing `ctx` when the field matches.
    pub fn from_record_in(ctx: &Arc<FieldContext>, rec: &CodeRecord) -> Result<Self, CodeError> {
        if ctx.p() == rec.p && ctx.e() == rec.e && ctx.modulus() == rec.modulus.as_slice() {
            Self::new(ctx.clone(), rec.a.clone(), rec.v.clone(), rec.d)
        } else {
            Self::from_record(rec)
        }
    }
}

/// Serialized code: field description plus exponent-coded `a`, `v`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CodeRecord {
    pub p: u32,
    pub e: u32,
    pub modulus: Vec<u32>,
    pub a: Vec<Gf>,
    pub v: Vec<Gf>,
    pub d: usize,
}

/// Minimum weight of `base + sum_i c_i rows[i]` over all coefficient choices.
fn min_weight_over_coset(ctx: &FieldContext, base: &[Gf], rows: &[&[Gf]], elements: &[Gf]) -> usize {
    let weight = |w: &[Gf]| w.iter().filter(|x| !x.is_zero()).count();
    let depth = rows.len();
    if depth == 0 {
        return weight(base);
    }
    let mut best = base.len();
    let mut partials = vec![base.to_vec(); depth + 1];
    let mut digits = vec![0usize; depth];
    // odometer; level i + 1 is recomputed from level i
    let mut level = 0;
    loop {
        let c = elements[digits[level]];
        let (lo, hi) = partials.split_at_mut(level + 1);
        for ((out, &prev), &r) in hi[0].iter_mut().zip(&lo[level]).zip(rows[level]) {
            *out = ctx.add(prev, ctx.mul(c, r));
        }
        if level + 1 < depth {
            level += 1;
            digits[level] = 0;
            continue;
        }
        best = best.min(weight(&partials[depth]));
        loop {
            digits[level] += 1;
            if digits[level] < elements.len() {
                break;
            }
            if level == 0 {
                return best;
            }
            level -= 1;
        }
    }
}

/// `<x, y>_H = sum x_k y_k^q`.
pub fn hermitian_inner(ctx: &FieldContext, x: &[Gf], y: &[Gf]) -> Result<Gf, CodeError> {
    if x.len() != y.len() {
        return Err(CodeError::LengthMismatch(format!(
            "vectors of length {} and {}",
            x.len(),
            y.len()
        )));
    }
    Ok(ctx.sum(x.iter().zip(y).map(|(&a, &b)| ctx.mul(a, ctx.frobenius(b)))))
}

/// `sum_k a_k^{q i + j} w_k` evaluated term by term with `0^0 = 1`.
pub fn power_sum(ctx: &FieldContext, a: &[Gf], w: &[Gf], i: u64, j: u64) -> Gf {
    let exponent = u64::from(ctx.q()) * i + j;
    let reduced = if exponent == 0 {
        0
    } else {
        // keep the exponent positive so that 0^E stays 0
        (exponent - 1) % u64::from(ctx.units()) + 1
    };
    ctx.sum(a.iter().zip(w).map(|(&x, &wk)| {
        let pw = ctx.pow(x, reduced as i64).expect("nonnegative power");
        ctx.mul(pw, wk)
    }))
}

/// Evaluates grids of power sums `S(i, j) = sum_k a_k^{q i + j} w_k`.
///
/// Each row `i` walks `j` upward keeping one running exponent per
/// coordinate, and sums coefficients lane by lane in `u64` so that no field
/// reduction happens inside the inner loop. Rows are scanned in parallel on
/// the current rayon pool; results do not depend on the thread count.
pub struct PowerSumScanner<'a> {
    ctx: &'a FieldContext,
    /// `dlog(a_k)` for nonzero points with nonzero weight.
    steps: Vec<u32>,
    /// `dlog(w_k)` for the same coordinates.
    offsets: Vec<u32>,
    /// Total weight sitting on the point `0`; it only shows up at `q i + j = 0`.
    zero_weight: Gf,
}

impl<'a> PowerSumScanner<'a> {
    pub fn new(ctx: &'a FieldContext, a: &[Gf], w: &[Gf]) -> Self {
        assert_eq!(a.len(), w.len(), "points and weights differ in length");
        let mut steps = Vec::with_capacity(a.len());
        let mut offsets = Vec::with_capacity(a.len());
        let mut zero_weight = Gf::ZERO;
        for (&x, &wk) in a.iter().zip(w) {
            match (x.dlog(), wk.dlog()) {
                (_, None) => {}
                (None, Some(_)) => zero_weight = ctx.add(zero_weight, wk),
                (Some(la), Some(lw)) => {
                    steps.push(la);
                    offsets.push(lw);
                }
            }
        }
        Self {
            ctx,
            steps,
            offsets,
            zero_weight,
        }
    }

    /// `S(i, j)` for a single cell.
    pub fn value(&self, i: usize, j: usize) -> Gf {
        let mut cur = self.row_start(i);
        let units = u64::from(self.ctx.units());
        for (c, &la) in cur.iter_mut().zip(&self.steps) {
            *c = ((u64::from(*c) + u64::from(la) * j as u64) % units) as u32;
        }
        let mut v = self.accumulate_and_advance(&mut cur);
        if i == 0 && j == 0 {
            v = self.ctx.add(v, self.zero_weight);
        }
        v
    }

    /// First nonvanishing cell in `[0, max_i] x [0, max_j]`, row-major.
    pub fn first_nonzero(&self, max_i: usize, max_j: usize) -> Option<NonVanishing> {
        (0..=max_i)
            .into_par_iter()
            .find_map_first(|i| self.row_first_nonzero(i, max_j))
    }

    fn row_start(&self, i: usize) -> Vec<u32> {
        let units = u64::from(self.ctx.units());
        let qi = (u64::from(self.ctx.q()) * i as u64) % units;
        self.steps
            .iter()
            .zip(&self.offsets)
            .map(|(&la, &lw)| ((u64::from(la) * qi + u64::from(lw)) % units) as u32)
            .collect()
    }

    fn row_first_nonzero(&self, i: usize, max_j: usize) -> Option<NonVanishing> {
        let mut cur = self.row_start(i);
        for j in 0..=max_j {
            let mut value = self.accumulate_and_advance(&mut cur);
            if i == 0 && j == 0 {
                value = self.ctx.add(value, self.zero_weight);
            }
            if !value.is_zero() {
                return Some(NonVanishing { i, j, value });
            }
        }
        None
    }

    /// Sums `g^{cur_k}` over `k`, then steps every `cur_k` by `dlog(a_k)`.
    fn accumulate_and_advance(&self, cur: &mut [u32]) -> Gf {
        let ctx = self.ctx;
        let units = ctx.units();
        let advance = |c: &mut u32, la: u32| {
            let next = *c + la;
            *c = if next >= units { next - units } else { next };
        };
        match ctx.digit_table() {
            Some(digits) if ctx.degree() == 2 => {
                let (mut s0, mut s1) = (0u64, 0u64);
                for (c, &la) in cur.iter_mut().zip(&self.steps) {
                    let k = 2 * *c as usize;
                    s0 += u64::from(digits[k]);
                    s1 += u64::from(digits[k + 1]);
                    advance(c, la);
                }
                ctx.from_lane_sums(&[s0, s1])
            }
            Some(digits) => {
                let width = ctx.degree();
                let mut sums = vec![0u64; width];
                for (c, &la) in cur.iter_mut().zip(&self.steps) {
                    let base = width * *c as usize;
                    for (s, &dg) in sums.iter_mut().zip(&digits[base..base + width]) {
                        *s += u64::from(dg);
                    }
                    advance(c, la);
                }
                ctx.from_lane_sums(&sums)
            }
            None => {
                let mut acc = Gf::ZERO;
                for (c, &la) in cur.iter_mut().zip(&self.steps) {
                    acc = ctx.add(acc, ctx.exp(i64::from(*c)));
                    advance(c, la);
                }
                acc
            }
        }
    }
}
