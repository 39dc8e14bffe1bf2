use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::gf::{FieldContext, Gf};

/// The three length families.
///
/// * `T4`: `n = 1 + lh + mr - (q^2-1)/(st) hr`, odd `s`, odd `h`, the point
///   `0` included.
/// * `T5`: `n = lh + mr - (q^2-1)/(st) hr`, odd `s`, any `h`.
/// * `T6`: `n = lh + mr`, even `s`, disjoint square/nonsquare halves.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Theorem {
    T4,
    T5,
    T6,
}

impl Theorem {
    pub const ALL: [Theorem; 3] = [Theorem::T4, Theorem::T5, Theorem::T6];

    pub fn as_str(self) -> &'static str {
        match self {
            Theorem::T4 => "t4",
            Theorem::T5 => "t5",
            Theorem::T6 => "t6",
        }
    }
}

impl fmt::Display for Theorem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Theorem {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "t4" => Ok(Theorem::T4),
            "t5" => Ok(Theorem::T5),
            "t6" => Ok(Theorem::T6),
            other => Err(format!("unknown theorem {other:?}, expected t4, t5 or t6")),
        }
    }
}

/// One hypothesis of a theorem statement that a tuple fails.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub hypothesis: &'static str,
    pub detail: String,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "hypothesis `{}` violated: {}", self.hypothesis, self.detail)
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ParamError {
    #[error("invalid parameters:\n{}", .0.iter().map(|v| format!("  - {v}")).collect::<Vec<_>>().join("\n"))]
    Hypotheses(Vec<Violation>),
    #[error("dimension d = {d} outside 1 <= d <= {d_max}")]
    DimensionOutOfRange { d: usize, d_max: i64 },
    #[error("field has q = {field_q}, parameters were given for q = {q}")]
    FieldMismatch { q: u64, field_q: u64 },
}

/// Pure arithmetic view of a parameter tuple; needs no field tables.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ParamTuple {
    pub q: u64,
    pub theorem: Theorem,
    pub s: u64,
    pub t: u64,
    pub h: u64,
    pub r: u64,
}

impl ParamTuple {
    pub fn new(q: u64, theorem: Theorem, s: u64, t: u64, h: u64, r: u64) -> Self {
        Self {
            q,
            theorem,
            s,
            t,
            h,
            r,
        }
    }

    pub fn units(&self) -> u64 {
        self.q * self.q - 1
    }

    /// `l = (q^2 - 1) / s`, the order of `delta = g^s`.
    pub fn l(&self) -> u64 {
        self.units() / self.s
    }

    /// `m = (q^2 - 1) / t`, the order of `theta = g^t`.
    pub fn m(&self) -> u64 {
        self.units() / self.t
    }

    /// Size of the coset overlap `(q^2 - 1)/(st) * h * r`; zero for `T6`.
    pub fn overlap(&self) -> u64 {
        match self.theorem {
            Theorem::T6 => 0,
            _ => self.units() / (self.s * self.t) * self.h * self.r,
        }
    }

    /// Code length `n`.
    pub fn length(&self) -> u64 {
        let base = self.l() * self.h + self.m() * self.r - self.overlap();
        match self.theorem {
            Theorem::T4 => base + 1,
            _ => base,
        }
    }

    /// Largest admissible dimension `d`; may be `< 1` for useless tuples.
    pub fn d_max(&self) -> i64 {
        let (q, s, t, h) = (self.q as i64, self.s as i64, self.t as i64, self.h as i64);
        let second = (q + 1) / 2 + (q - 1) / t - 1;
        let first = match self.theorem {
            // s + h is even here
            Theorem::T4 => (s + h) / 2 * ((q + 1) / s) - 1,
            Theorem::T5 | Theorem::T6 => (s + h) / 2 * ((q + 1) / s) - 2,
        };
        first.min(second)
    }

    /// Every failed hypothesis, in statement order.
    pub fn violations(&self) -> Vec<Violation> {
        let (q, s, t, h, r) = (self.q, self.s, self.t, self.h, self.r);
        let mut out = Vec::new();
        fn fail(out: &mut Vec<Violation>, hypothesis: &'static str, detail: String) {
            out.push(Violation { hypothesis, detail });
        }
        if q < 3 {
            fail(&mut out, "q >= 3", format!("q = {q}"));
            return out;
        }
        if s == 0 || (q + 1) % s != 0 {
            fail(&mut out, "s | q+1", format!("s = {s}, q + 1 = {}", q + 1));
        }
        match self.theorem {
            Theorem::T4 | Theorem::T5 if s % 2 == 0 => fail(&mut out, "odd s", format!("s = {s}")),
            Theorem::T6 if s % 2 == 1 => fail(&mut out, "even s", format!("s = {s}")),
            _ => {}
        }
        if t < 2 {
            fail(&mut out, "t >= 2", format!("t = {t}"));
        }
        if t % 2 == 1 {
            fail(&mut out, "even t", format!("t = {t}"));
        }
        if t == 0 || (q - 1) % t != 0 {
            fail(&mut out, "t | q-1", format!("t = {t}, q - 1 = {}", q - 1));
        }
        match self.theorem {
            Theorem::T4 => {
                if h == 0 || h % 2 == 0 || h + 1 > s {
                    fail(&mut out, "odd h <= s-1", format!("h = {h}, s = {s}"));
                }
            }
            Theorem::T5 => {
                if h == 0 || h + 1 > s {
                    fail(&mut out, "1 <= h <= s-1", format!("h = {h}, s = {s}"));
                }
            }
            Theorem::T6 => {
                if h == 0 || 2 * h > s {
                    fail(&mut out, "1 <= h <= s/2", format!("h = {h}, s = {s}"));
                }
            }
        }
        match self.theorem {
            Theorem::T4 | Theorem::T5 => {
                if r == 0 || r > t {
                    fail(&mut out, "1 <= r <= t", format!("r = {r}, t = {t}"));
                }
            }
            Theorem::T6 => {
                if r == 0 || 2 * r > t {
                    fail(&mut out, "1 <= r <= t/2", format!("r = {r}, t = {t}"));
                }
            }
        }
        if !out.is_empty() {
            // the remaining hypotheses need the divisibility facts above
            return out;
        }
        if self.theorem != Theorem::T6 {
            if gcd(s, t) != 1 {
                fail(&mut out, "gcd(s, t) = 1", format!("gcd({s}, {t}) = {}", gcd(s, t)));
                return out;
            }
            if q - 1 <= self.overlap() {
                fail(
                    &mut out,
                    "q-1 > (q^2-1)/(st) * hr",
                    format!("q - 1 = {}, overlap = {}", q - 1, self.overlap()),
                );
            }
        }
        if self.d_max() < 1 {
            fail(&mut out, "d_max >= 1", format!("d_max = {}", self.d_max()));
        }
        out
    }

    pub fn validate(&self) -> Result<(), ParamError> {
        let v = self.violations();
        if v.is_empty() {
            Ok(())
        } else {
            Err(ParamError::Hypotheses(v))
        }
    }
}

pub(crate) fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// A validated parameter tuple bound to its field.
#[derive(Debug, Clone)]
pub struct ConstructionParams {
    ctx: Arc<FieldContext>,
    tuple: ParamTuple,
}

impl ConstructionParams {
    pub fn new(
        ctx: Arc<FieldContext>,
        theorem: Theorem,
        s: u64,
        t: u64,
        h: u64,
        r: u64,
    ) -> Result<Self, ParamError> {
        let tuple = ParamTuple::new(u64::from(ctx.q()), theorem, s, t, h, r);
        tuple.validate()?;
        Ok(Self { ctx, tuple })
    }

    pub fn from_tuple(ctx: Arc<FieldContext>, tuple: ParamTuple) -> Result<Self, ParamError> {
        if tuple.q != u64::from(ctx.q()) {
            return Err(ParamError::FieldMismatch {
                q: tuple.q,
                field_q: u64::from(ctx.q()),
            });
        }
        tuple.validate()?;
        Ok(Self { ctx, tuple })
    }

    pub fn ctx(&self) -> &Arc<FieldContext> {
        &self.ctx
    }

    pub fn tuple(&self) -> &ParamTuple {
        &self.tuple
    }

    pub fn theorem(&self) -> Theorem {
        self.tuple.theorem
    }

    pub fn q(&self) -> u64 {
        self.tuple.q
    }

    pub fn s(&self) -> u64 {
        self.tuple.s
    }

    pub fn t(&self) -> u64 {
        self.tuple.t
    }

    pub fn h(&self) -> u64 {
        self.tuple.h
    }

    pub fn r(&self) -> u64 {
        self.tuple.r
    }

    pub fn l(&self) -> u64 {
        self.tuple.l()
    }

    pub fn m(&self) -> u64 {
        self.tuple.m()
    }

    pub fn overlap(&self) -> u64 {
        self.tuple.overlap()
    }

    pub fn length(&self) -> u64 {
        self.tuple.length()
    }

    /// Always `>= 1` after validation.
    pub fn d_max(&self) -> usize {
        self.tuple.d_max() as usize
    }

    /// `delta = g^s`.
    pub fn delta(&self) -> Gf {
        self.ctx.exp(self.tuple.s as i64)
    }

    /// `theta = g^t`.
    pub fn theta(&self) -> Gf {
        self.ctx.exp(self.tuple.t as i64)
    }

    pub fn check_dimension(&self, d: usize) -> Result<(), ParamError> {
        if d == 0 || d > self.d_max() {
            Err(ParamError::DimensionOutOfRange {
                d,
                d_max: self.tuple.d_max(),
            })
        } else {
            Ok(())
        }
    }

    pub fn record(&self, d: usize) -> ParamsRecord {
        ParamsRecord {
            p: self.ctx.p(),
            e: self.ctx.e(),
            theorem: self.tuple.theorem,
            s: self.tuple.s,
            t: self.tuple.t,
            h: self.tuple.h,
            r: self.tuple.r,
            d,
        }
    }
}

/// Serialized parameter tuple.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ParamsRecord {
    pub p: u32,
    pub e: u32,
    pub theorem: Theorem,
    pub s: u64,
    pub t: u64,
    pub h: u64,
    pub r: u64,
    pub d: usize,
}
