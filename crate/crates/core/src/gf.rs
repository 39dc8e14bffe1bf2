//! Arithmetic in the quadratic extension `F_{q^2}` of `F_q`, `q = p^e`.
//!
//! Nonzero elements are stored by their discrete logarithm with respect to a
//! fixed primitive element `g`, so multiplication, powers, Frobenius and the
//! norm map are exponent arithmetic modulo `q^2 - 1`. Addition goes through a
//! Zech logarithm table. The polynomial representation (coefficients over
//! `F_p` modulo a primitive polynomial of degree `2e`) is kept alongside for
//! conversions and for the lane-wise accumulator used by power-sum scans.

use std::fmt;

use serde::de::{self, Visitor};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

/// Largest supported `q`. Above this the exp/log/Zech tables stop being
/// cheap; `q^2 - 1` then exceeds `2^24` entries.
pub const MAX_Q: u32 = 4096;

/// Above this many `(element, lane)` pairs the per-lane digit table is not
/// materialized and accumulation falls back to Zech addition.
const DIGIT_TABLE_LIMIT: usize = 1 << 25;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FieldError {
    #[error("characteristic {0} is not prime")]
    NotPrime(u32),
    #[error("extension degree must be at least 1")]
    ZeroDegree,
    #[error("field table budget exceeded: q = {p}^{e} is larger than {max}")]
    TableBudget { p: u32, e: u32, max: u32 },
    #[error("modulus {0:?} is not a monic primitive polynomial of the required degree")]
    BadModulus(Vec<u32>),
    #[error("no primitive polynomial of degree {degree} over F_{p}")]
    NoPrimitive { p: u32, degree: u32 },
    #[error("zero has no multiplicative inverse")]
    ZeroInverse,
    #[error("element {0} is not a nonzero element of the base field F_q")]
    NotInBaseField(Gf),
    #[error("exponent {0} is out of range for this field")]
    BadExponent(u64),
}

/// An element of `F_{q^2}`: either zero or `g^k` with `0 <= k < q^2 - 1`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Gf(u32);

impl Gf {
    pub const ZERO: Gf = Gf(u32::MAX);
    pub const ONE: Gf = Gf(0);

    #[inline]
    pub fn is_zero(self) -> bool {
        self.0 == u32::MAX
    }

    /// Discrete logarithm base `g`, `None` for zero.
    #[inline]
    pub fn dlog(self) -> Option<u32> {
        if self.is_zero() {
            None
        } else {
            Some(self.0)
        }
    }
}

impl fmt::Debug for Gf {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.dlog() {
            None => write!(f, "0"),
            Some(k) => write!(f, "g^{k}"),
        }
    }
}

impl fmt::Display for Gf {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

// Wire format: the exponent of g as an integer, or the string "0" for zero.
impl Serialize for Gf {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        match self.dlog() {
            None => serializer.serialize_str("0"),
            Some(k) => serializer.serialize_u32(k),
        }
    }
}

impl<'de> Deserialize<'de> for Gf {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        struct GfVisitor;

        impl Visitor<'_> for GfVisitor {
            type Value = Gf;

            fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str("a nonnegative exponent or the string \"0\"")
            }

            fn visit_u64<E: de::Error>(self, v: u64) -> Result<Gf, E> {
                if v >= u64::from(u32::MAX) {
                    return Err(E::custom(format!("exponent {v} out of range")));
                }
                Ok(Gf(v as u32))
            }

            fn visit_i64<E: de::Error>(self, v: i64) -> Result<Gf, E> {
                if v < 0 {
                    return Err(E::custom(format!("negative exponent {v}")));
                }
                self.visit_u64(v as u64)
            }

            fn visit_str<E: de::Error>(self, v: &str) -> Result<Gf, E> {
                if v == "0" {
                    Ok(Gf::ZERO)
                } else {
                    Err(E::custom(format!("unexpected string {v:?}, only \"0\" denotes zero")))
                }
            }
        }

        deserializer.deserialize_any(GfVisitor)
    }
}

/// Tables and constants for one field `F_{q^2}`. Immutable once built.
#[derive(Clone, PartialEq, Eq)]
pub struct FieldContext {
    p: u32,
    e: u32,
    q: u32,
    /// Number of nonzero elements, `q^2 - 1`.
    units: u32,
    /// Monic modulus of degree `2e`, leading coefficient first.
    modulus: Vec<u32>,
    /// `exp_table[k]` is the polynomial index of `g^k`
    /// (`sum c_i p^i` over coefficients `c_i` of `x^i`).
    exp_table: Vec<u32>,
    /// Inverse of `exp_table`; slot 0 (the zero polynomial) holds `u32::MAX`.
    log_table: Vec<u32>,
    /// `zech[k] = log(1 + g^k)` as a raw element value.
    zech: Vec<u32>,
    /// Coefficients of `g^k`, `2e` lanes per element, when small enough.
    digits: Option<Vec<u16>>,
}

impl fmt::Debug for FieldContext {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FieldContext")
            .field("p", &self.p)
            .field("e", &self.e)
            .field("q", &self.q)
            .field("modulus", &self.modulus)
            .finish_non_exhaustive()
    }
}

impl FieldContext {
    /// Builds `F_{q^2}` for `q = p^e` using the canonical modulus: the
    /// lexicographically smallest monic primitive polynomial of degree `2e`,
    /// coefficients compared from `x^{2e-1}` down to the constant term.
    pub fn new(p: u32, e: u32) -> Result<Self, FieldError> {
        let q = check_size(p, e)?;
        let degree = 2 * e as usize;
        let units = q * q - 1;
        let factors = prime_factors(units);
        let candidates = (p as u64).pow(degree as u32);
        for idx in 0..candidates {
            // idx in base p gives (c_0, c_1, ..., c_{D-1}), c_0 least significant.
            let mut low_to_high = Vec::with_capacity(degree);
            let mut rest = idx;
            for _ in 0..degree {
                low_to_high.push((rest % p as u64) as u32);
                rest /= p as u64;
            }
            if low_to_high[0] == 0 {
                continue;
            }
            if is_primitive(&low_to_high, p, units, &factors) {
                return Ok(Self::from_reduction(p, e, q, low_to_high));
            }
        }
        Err(FieldError::NoPrimitive {
            p,
            degree: degree as u32,
        })
    }

    /// Builds the field from an explicit modulus (leading coefficient first),
    /// which must be monic and primitive of degree `2e`.
    pub fn with_modulus(p: u32, e: u32, modulus: &[u32]) -> Result<Self, FieldError> {
        let q = check_size(p, e)?;
        let degree = 2 * e as usize;
        let bad = || FieldError::BadModulus(modulus.to_vec());
        if modulus.len() != degree + 1 || modulus[0] != 1 || modulus.iter().any(|&c| c >= p) {
            return Err(bad());
        }
        let low_to_high: Vec<u32> = modulus[1..].iter().rev().copied().collect();
        let units = q * q - 1;
        if low_to_high[0] == 0 || !is_primitive(&low_to_high, p, units, &prime_factors(units)) {
            return Err(bad());
        }
        Ok(Self::from_reduction(p, e, q, low_to_high))
    }

    /// `low_to_high` holds `c_0 .. c_{D-1}` of the monic modulus
    /// `x^D + c_{D-1} x^{D-1} + ... + c_0`.
    fn from_reduction(p: u32, e: u32, q: u32, low_to_high: Vec<u32>) -> Self {
        let degree = low_to_high.len();
        let order = q as usize * q as usize;
        let units = (order - 1) as u32;

        let mut exp_table = Vec::with_capacity(units as usize);
        let mut log_table = vec![u32::MAX; order];
        let mut cur = vec![0u32; degree];
        cur[0] = 1;
        for k in 0..units {
            let idx = poly_index(&cur, p);
            exp_table.push(idx);
            log_table[idx as usize] = k;
            // cur <- x * cur mod f
            let top = cur[degree - 1];
            for i in (1..degree).rev() {
                cur[i] = cur[i - 1];
            }
            cur[0] = 0;
            if top != 0 {
                for (c, &f) in cur.iter_mut().zip(&low_to_high) {
                    *c = (*c + p - (top * f) % p) % p;
                }
            }
        }

        let zech = exp_table
            .iter()
            .map(|&idx| {
                let c0 = idx % p;
                let plus_one = idx - c0 + (c0 + 1) % p;
                log_table[plus_one as usize]
            })
            .collect();

        let digits = (units as usize * degree <= DIGIT_TABLE_LIMIT).then(|| {
            let mut out = Vec::with_capacity(units as usize * degree);
            for &idx in &exp_table {
                let mut rest = idx;
                for _ in 0..degree {
                    out.push((rest % p) as u16);
                    rest /= p;
                }
            }
            out
        });

        let mut modulus = vec![1];
        modulus.extend(low_to_high.iter().rev());
        Self {
            p,
            e,
            q,
            units,
            modulus,
            exp_table,
            log_table,
            zech,
            digits,
        }
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn e(&self) -> u32 {
        self.e
    }

    /// Size of the base field `F_q`.
    pub fn q(&self) -> u32 {
        self.q
    }

    /// `q^2`, the size of the field these tables describe.
    pub fn order(&self) -> u64 {
        u64::from(self.q) * u64::from(self.q)
    }

    /// `q^2 - 1`, the order of `g`.
    pub fn units(&self) -> u32 {
        self.units
    }

    /// Modulus coefficients, leading `1` first, constant term last.
    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    /// Degree `2e` of `F_{q^2}` over `F_p`.
    pub fn degree(&self) -> usize {
        self.modulus.len() - 1
    }

    pub fn generator(&self) -> Gf {
        self.exp(1)
    }

    /// `g^k` for any integer `k`.
    #[inline]
    pub fn exp(&self, k: i64) -> Gf {
        Gf(k.rem_euclid(i64::from(self.units)) as u32)
    }

    /// Checks that a raw element belongs to this field.
    pub fn check(&self, x: Gf) -> Result<Gf, FieldError> {
        match x.dlog() {
            Some(k) if k >= self.units => Err(FieldError::BadExponent(u64::from(k))),
            _ => Ok(x),
        }
    }

    /// Image of the integer `c` under `Z -> F_p -> F_{q^2}`.
    pub fn from_int(&self, c: i64) -> Gf {
        let r = c.rem_euclid(i64::from(self.p)) as usize;
        self.from_index(r as u32)
    }

    /// Element with polynomial index `idx` (see [`FieldContext::poly_coeffs`]).
    pub fn from_index(&self, idx: u32) -> Gf {
        Gf(self.log_table[idx as usize])
    }

    /// Polynomial index `sum c_i p^i` of `x`.
    pub fn index(&self, x: Gf) -> u32 {
        match x.dlog() {
            None => 0,
            Some(k) => self.exp_table[k as usize],
        }
    }

    /// Coefficients `c_0 .. c_{2e-1}` of `x` in the basis `1, g, g^2, ...`.
    pub fn poly_coeffs(&self, x: Gf) -> Vec<u32> {
        let mut rest = self.index(x);
        (0..self.degree())
            .map(|_| {
                let c = rest % self.p;
                rest /= self.p;
                c
            })
            .collect()
    }

    pub fn from_poly_coeffs(&self, coeffs: &[u32]) -> Gf {
        let mut padded = vec![0; self.degree()];
        for (slot, &c) in padded.iter_mut().zip(coeffs) {
            *slot = c % self.p;
        }
        self.from_index(poly_index(&padded, self.p))
    }

    #[inline]
    pub fn add(&self, x: Gf, y: Gf) -> Gf {
        if x.is_zero() {
            return y;
        }
        if y.is_zero() {
            return x;
        }
        let diff = if y.0 >= x.0 {
            y.0 - x.0
        } else {
            y.0 + self.units - x.0
        };
        let z = self.zech[diff as usize];
        if z == u32::MAX {
            Gf::ZERO
        } else {
            self.reduce(x.0 + z)
        }
    }

    #[inline]
    pub fn neg(&self, x: Gf) -> Gf {
        if x.is_zero() || self.p == 2 {
            x
        } else {
            self.reduce(x.0 + self.units / 2)
        }
    }

    #[inline]
    pub fn sub(&self, x: Gf, y: Gf) -> Gf {
        self.add(x, self.neg(y))
    }

    #[inline]
    pub fn mul(&self, x: Gf, y: Gf) -> Gf {
        if x.is_zero() || y.is_zero() {
            Gf::ZERO
        } else {
            self.reduce(x.0 + y.0)
        }
    }

    pub fn inv(&self, x: Gf) -> Result<Gf, FieldError> {
        match x.dlog() {
            None => Err(FieldError::ZeroInverse),
            Some(0) => Ok(Gf::ONE),
            Some(k) => Ok(Gf(self.units - k)),
        }
    }

    pub fn div(&self, x: Gf, y: Gf) -> Result<Gf, FieldError> {
        Ok(self.mul(x, self.inv(y)?))
    }

    /// `x^k`, with `0^0 = 1`. Negative `k` requires `x != 0`.
    pub fn pow(&self, x: Gf, k: i64) -> Result<Gf, FieldError> {
        match x.dlog() {
            None if k == 0 => Ok(Gf::ONE),
            None if k < 0 => Err(FieldError::ZeroInverse),
            None => Ok(Gf::ZERO),
            Some(a) => {
                let n = i64::from(self.units);
                let e = (i128::from(a) * i128::from(k.rem_euclid(n))) % i128::from(n);
                Ok(Gf(e as u32))
            }
        }
    }

    /// `x^q`.
    #[inline]
    pub fn frobenius(&self, x: Gf) -> Gf {
        match x.dlog() {
            None => x,
            Some(k) => Gf(((u64::from(k) * u64::from(self.q)) % u64::from(self.units)) as u32),
        }
    }

    /// `x^{q+1}`, which always lies in `F_q`.
    #[inline]
    pub fn norm(&self, x: Gf) -> Gf {
        match x.dlog() {
            None => x,
            Some(k) => {
                Gf(((u64::from(k) * u64::from(self.q + 1)) % u64::from(self.units)) as u32)
            }
        }
    }

    /// True iff `x^q = x`.
    #[inline]
    pub fn in_base_field(&self, x: Gf) -> bool {
        match x.dlog() {
            None => true,
            Some(k) => k % (self.q + 1) == 0,
        }
    }

    /// Smallest-exponent `v` with `v^{q+1} = u`, for `u` in `F_q^*`.
    pub fn solve_norm(&self, u: Gf) -> Result<Gf, FieldError> {
        match u.dlog() {
            Some(k) if k % (self.q + 1) == 0 => Ok(Gf(k / (self.q + 1))),
            _ => Err(FieldError::NotInBaseField(u)),
        }
    }

    /// `F_q^*` in the order `g^{(q+1) i}`, `i = 0, 1, ..., q - 2`.
    pub fn base_units(&self) -> impl Iterator<Item = Gf> + '_ {
        (0..self.q - 1).map(move |i| Gf(i * (self.q + 1)))
    }

    /// Iterates over every element of `F_{q^2}`: zero first, then `g^0, g^1, ...`.
    pub fn elements(&self) -> impl Iterator<Item = Gf> + '_ {
        std::iter::once(Gf::ZERO).chain((0..self.units).map(Gf))
    }

    pub fn sum<I: IntoIterator<Item = Gf>>(&self, terms: I) -> Gf {
        terms.into_iter().fold(Gf::ZERO, |acc, x| self.add(acc, x))
    }

    /// Per-lane coefficient table: lanes `[k * 2e, (k + 1) * 2e)` hold the
    /// coefficients of `g^k`. `None` for fields too large to tabulate.
    pub fn digit_table(&self) -> Option<&[u16]> {
        self.digits.as_deref()
    }

    /// Folds lane-wise integer sums of coefficients back into an element.
    pub fn from_lane_sums(&self, sums: &[u64]) -> Gf {
        let p = u64::from(self.p);
        let coeffs: Vec<u32> = sums.iter().map(|&s| (s % p) as u32).collect();
        self.from_index(poly_index(&coeffs, self.p))
    }

    #[inline]
    fn reduce(&self, k: u32) -> Gf {
        Gf(if k >= self.units { k - self.units } else { k })
    }
}

fn check_size(p: u32, e: u32) -> Result<u32, FieldError> {
    if !is_prime(u64::from(p)) {
        return Err(FieldError::NotPrime(p));
    }
    if e == 0 {
        return Err(FieldError::ZeroDegree);
    }
    let q = u64::from(p).checked_pow(e).filter(|&q| q <= u64::from(MAX_Q));
    q.map(|q| q as u32).ok_or(FieldError::TableBudget { p, e, max: MAX_Q })
}

fn poly_index(coeffs: &[u32], p: u32) -> u32 {
    coeffs.iter().rev().fold(0, |acc, &c| acc * p + c)
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

fn prime_factors(mut n: u32) -> Vec<u32> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Multiplication in `F_p[x] / (f)`; `f` monic, given by its low coefficients.
fn mulmod(a: &[u32], b: &[u32], f_low: &[u32], p: u32) -> Vec<u32> {
    let deg = f_low.len();
    let p64 = u64::from(p);
    let mut prod = vec![0u64; 2 * deg - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            prod[i + j] = (prod[i + j] + u64::from(x) * u64::from(y)) % p64;
        }
    }
    // x^deg = -sum f_i x^i
    for top in (deg..prod.len()).rev() {
        let c = prod[top];
        if c == 0 {
            continue;
        }
        prod[top] = 0;
        for (i, &f) in f_low.iter().enumerate() {
            let slot = &mut prod[top - deg + i];
            *slot = (*slot + p64 - (c * u64::from(f)) % p64) % p64;
        }
    }
    prod.truncate(deg);
    prod.into_iter().map(|c| c as u32).collect()
}

fn x_pow(k: u64, f_low: &[u32], p: u32) -> Vec<u32> {
    let deg = f_low.len();
    let mut result = vec![0u32; deg];
    result[0] = 1;
    let mut base = vec![0u32; deg];
    if deg == 1 {
        base[0] = (p - f_low[0]) % p;
    } else {
        base[1] = 1;
    }
    let mut k = k;
    while k > 0 {
        if k & 1 == 1 {
            result = mulmod(&result, &base, f_low, p);
        }
        base = mulmod(&base, &base, f_low, p);
        k >>= 1;
    }
    result
}

/// `x` has multiplicative order exactly `units` modulo `f`.
fn is_primitive(f_low: &[u32], p: u32, units: u32, factors: &[u32]) -> bool {
    let is_one = |v: &[u32]| v[0] == 1 && v[1..].iter().all(|&c| c == 0);
    is_one(&x_pow(u64::from(units), f_low, p))
        && factors
            .iter()
            .all(|&r| !is_one(&x_pow(u64::from(units / r), f_low, p)))
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Polynomial-arithmetic oracle: x^k mod f by repeated multiplication.
    fn naive_x_pow(k: u64, ctx: &FieldContext) -> Vec<u32> {
        let f_low: Vec<u32> = ctx.modulus()[1..].iter().rev().copied().collect();
        let mut x = vec![0u32; ctx.degree()];
        x[1] = 1;
        let mut acc = vec![0u32; ctx.degree()];
        acc[0] = 1;
        for _ in 0..k {
            acc = mulmod(&acc, &x, &f_low, ctx.p());
        }
        acc
    }

    fn order_of(ctx: &FieldContext, x: Gf) -> u32 {
        let mut acc = x;
        let mut k = 1;
        while acc != Gf::ONE {
            acc = ctx.mul(acc, x);
            k += 1;
        }
        k
    }

    #[test]
    fn f25_modulus_is_first_primitive_quadratic() {
        let ctx = FieldContext::new(5, 1).unwrap();
        assert_eq!(ctx.modulus(), &[1, 1, 2]);
        // exhaustive lexicographic scan: x^2 + b x + c, (b, c) ascending
        let mut first = None;
        'outer: for b in 0..5u32 {
            for c in 1..5u32 {
                let f_low = [c, b];
                let mut acc = vec![1u32, 0];
                for k in 1..=24u32 {
                    acc = mulmod(&acc, &[0, 1], &f_low, 5);
                    if acc == [1, 0] {
                        if k == 24 {
                            first = Some((b, c));
                            break 'outer;
                        }
                        break;
                    }
                }
            }
        }
        assert_eq!(first, Some((1, 2)));
        assert_eq!(order_of(&ctx, ctx.generator()), 24);
    }

    #[test]
    fn f4_generator_has_order_three() {
        let ctx = FieldContext::new(2, 1).unwrap();
        assert_eq!(ctx.units(), 3);
        assert_eq!(order_of(&ctx, ctx.generator()), 3);
    }

    #[test]
    fn f81_base_field_cosets_are_frobenius_fixed() {
        let ctx = FieldContext::new(3, 2).unwrap();
        assert_eq!(order_of(&ctx, ctx.generator()), 80);
        let base: Vec<Gf> = ctx.base_units().collect();
        assert_eq!(base.len(), 8);
        for &x in &base {
            assert_eq!(ctx.pow(x, 9).unwrap(), x);
        }
        let fixed = ctx.elements().filter(|&x| ctx.frobenius(x) == x).count();
        assert_eq!(fixed, 9);
    }

    #[test]
    fn exp_table_matches_polynomial_oracle() {
        for (p, e) in [(5, 1), (3, 2), (2, 2), (7, 1)] {
            let ctx = FieldContext::new(p, e).unwrap();
            for k in 0..ctx.units() {
                assert_eq!(ctx.poly_coeffs(ctx.exp(k.into())), naive_x_pow(k.into(), &ctx));
            }
        }
    }

    #[test]
    fn f25_sixth_power_of_g_is_two() {
        let ctx = FieldContext::new(5, 1).unwrap();
        let two = ctx.from_int(2);
        assert_eq!(naive_x_pow(6, &ctx), vec![2, 0]);
        assert_eq!(ctx.pow(ctx.generator(), 6).unwrap(), two);
        assert_eq!(ctx.norm(ctx.generator()), two);
        assert_eq!(ctx.frobenius(ctx.generator()), ctx.exp(5));
        assert_eq!(ctx.solve_norm(two).unwrap(), ctx.generator());
        let four = ctx.from_int(4);
        assert_eq!(four, ctx.exp(12));
        assert_eq!(ctx.solve_norm(four).unwrap(), ctx.exp(2));
        assert_eq!(ctx.solve_norm(Gf::ONE).unwrap(), Gf::ONE);
    }

    #[test]
    fn basic_identities() {
        let ctx = FieldContext::new(3, 2).unwrap();
        for x in ctx.elements() {
            assert_eq!(ctx.mul(x, Gf::ONE), x);
            assert_eq!(ctx.add(x, ctx.neg(x)), Gf::ZERO);
            assert_eq!(ctx.frobenius(ctx.frobenius(x)), x);
            assert!(ctx.in_base_field(ctx.norm(x)));
        }
        assert_eq!(ctx.frobenius(Gf::ZERO), Gf::ZERO);
        assert_eq!(ctx.norm(Gf::ZERO), Gf::ZERO);
        assert_eq!(ctx.norm(Gf::ONE), Gf::ONE);
        assert!(ctx.in_base_field(Gf::ONE));
        assert!(!ctx.in_base_field(ctx.generator()));
        assert!(ctx.in_base_field(ctx.exp(10)));
    }

    #[test]
    fn error_paths() {
        assert_eq!(FieldContext::new(6, 1).unwrap_err(), FieldError::NotPrime(6));
        assert_eq!(FieldContext::new(5, 0).unwrap_err(), FieldError::ZeroDegree);
        assert!(matches!(
            FieldContext::new(2, 13),
            Err(FieldError::TableBudget { .. })
        ));
        let ctx = FieldContext::new(5, 1).unwrap();
        assert_eq!(ctx.inv(Gf::ZERO), Err(FieldError::ZeroInverse));
        assert_eq!(ctx.pow(Gf::ZERO, -1), Err(FieldError::ZeroInverse));
        assert_eq!(ctx.pow(Gf::ZERO, 0), Ok(Gf::ONE));
        assert!(ctx.solve_norm(Gf::ZERO).is_err());
        assert!(ctx.solve_norm(ctx.generator()).is_err());
        // x^2 + 1 is not primitive over F_5
        assert!(FieldContext::with_modulus(5, 1, &[1, 0, 1]).is_err());
        assert_eq!(FieldContext::with_modulus(5, 1, &[1, 1, 2]).unwrap(), ctx);
    }

    #[test]
    fn wire_format() {
        let xs = vec![Gf::ZERO, Gf::ONE, Gf(17)];
        let text = serde_json::to_string(&xs).unwrap();
        assert_eq!(text, r#"["0",0,17]"#);
        let back: Vec<Gf> = serde_json::from_str(&text).unwrap();
        assert_eq!(back, xs);
        assert!(serde_json::from_str::<Gf>(r#""1""#).is_err());
        assert!(serde_json::from_str::<Gf>("-3").is_err());
    }
}
