//! Independent checks on codes and parameter families, collected into
//! machine-readable reports.

use std::collections::BTreeSet;
use std::fmt;
use std::time::{Duration, Instant};

use serde::{Deserialize, Serialize};

use crate::constructions::{
    build, mu_range, split_units, ConstructionError, ConstructionParams, Provenance, ParamsRecord, Theorem,
};
use crate::gf::{FieldContext, Gf};
use crate::grs::{CodeError, GrsCode, NonVanishing, PowerSumScanner, QuantumParams};

/// A nonvanishing cell `(i, j)` of some power-sum grid.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Counterexample {
    pub i: u64,
    pub j: u64,
    pub value: Gf,
}

impl From<NonVanishing> for Counterexample {
    fn from(c: NonVanishing) -> Self {
        Self {
            i: c.i as u64,
            j: c.j as u64,
            value: c.value,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub range: String,
    pub pass: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<Counterexample>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub min_distance: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
    /// Wall time; kept out of the JSON so reports are reproducible.
    #[serde(skip)]
    pub elapsed: Duration,
}

impl Check {
    fn new(name: &str, range: impl Into<String>, pass: bool) -> Self {
        Self {
            name: name.into(),
            range: range.into(),
            pass,
            counterexample: None,
            min_distance: None,
            detail: None,
            elapsed: Duration::ZERO,
        }
    }

    fn grid(name: &str, bound: i64, hit: Option<NonVanishing>) -> Self {
        let range = if bound < 0 {
            "empty".to_string()
        } else {
            format!("0 <= i, j <= {bound}")
        };
        Self {
            counterexample: hit.map(Counterexample::from),
            ..Self::new(name, range, hit.is_none())
        }
    }

    fn with_detail(mut self, detail: impl Into<String>) -> Self {
        self.detail = Some(detail.into());
        self
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct ReportMeta {
    pub q: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub theorem: Option<Theorem>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub params: Option<ParamsRecord>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub subject: String,
    pub checks: Vec<Check>,
    pub meta: ReportMeta,
}

impl VerificationReport {
    fn new(subject: impl Into<String>, q: u64) -> Self {
        Self {
            subject: subject.into(),
            checks: Vec::new(),
            meta: ReportMeta {
                q,
                ..ReportMeta::default()
            },
        }
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.pass)
    }

    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    fn push_timed(&mut self, f: impl FnOnce() -> Check) {
        let start = Instant::now();
        let mut check = f();
        check.elapsed = start.elapsed();
        self.checks.push(check);
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}", self.subject)?;
        for c in &self.checks {
            write!(f, "  {:<20} {:<5} {}", c.name, if c.pass { "pass" } else { "FAIL" }, c.range)?;
            if let Some(ce) = c.counterexample {
                write!(f, "  (i, j) = ({}, {}) gives {}", ce.i, ce.j, ce.value)?;
            }
            if let Some(dist) = c.min_distance {
                write!(f, "  min distance {dist}")?;
            }
            if let Some(detail) = &c.detail {
                write!(f, "  [{detail}]")?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

/// Which checks [`verify_code`] runs.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Levels {
    pub criterion: bool,
    pub gram: bool,
    pub component_ranges: bool,
    pub brute_distance: bool,
    /// Cap for `brute_distance`, in visited messages.
    pub budget: u64,
}

impl Default for Levels {
    fn default() -> Self {
        Self {
            criterion: true,
            gram: false,
            component_ranges: false,
            brute_distance: false,
            budget: crate::grs::DEFAULT_BUDGET,
        }
    }
}

/// Runs the selected checks on `code`.
///
/// `component_ranges` needs `provenance`: the construction is rebuilt from
/// the recorded parameters, compared with `code`, and its two components are
/// scanned over their own (wider) grids.
pub fn verify_code(
    code: &GrsCode,
    provenance: Option<&Provenance>,
    levels: &Levels,
) -> Result<VerificationReport, CodeError> {
    let ctx = code.ctx();
    let q = u64::from(ctx.q());
    let mut report = VerificationReport::new(format!("GRS code n = {}, d = {}", code.len(), code.dimension()), q);
    if let Some(p) = provenance {
        report.meta.theorem = Some(p.theorem);
        report.meta.params = Some(p.params);
    }
    let bound = code.dimension() as i64 - 1;
    if levels.criterion {
        report.push_timed(|| Check::grid("criterion", bound, code.criterion_counterexample()));
    }
    if levels.gram {
        report.push_timed(|| {
            Check::grid("gram", bound, code.gram_counterexample()).with_detail("generator rows (i, j), i <= j")
        });
    }
    if levels.component_ranges {
        component_checks(code, provenance, &mut report);
    }
    if levels.brute_distance {
        let start = Instant::now();
        let dist = code.brute_min_distance(levels.budget)?;
        let expected = code.len() - code.dimension() + 1;
        let mut check = Check::new("brute_distance", "all nonzero codewords", dist == expected);
        check.min_distance = Some(dist);
        check.detail = Some(format!("n - d + 1 = {expected}"));
        check.elapsed = start.elapsed();
        report.checks.push(check);
    }
    Ok(report)
}

fn component_checks(code: &GrsCode, provenance: Option<&Provenance>, report: &mut VerificationReport) {
    let Some(prov) = provenance else {
        report.checks.push(
            Check::new("component_ranges", "n/a", false).with_detail("code file carries no provenance"),
        );
        return;
    };
    let ctx = code.ctx().clone();
    let p = prov.params;
    let rebuilt = ConstructionParams::new(ctx.clone(), p.theorem, p.s, p.t, p.h, p.r)
        .map_err(ConstructionError::from)
        .and_then(|params| build(&params, Some(p.d)));
    let construction = match rebuilt {
        Ok(c) => c,
        Err(e) => {
            report
                .checks
                .push(Check::new("provenance", "rebuild", false).with_detail(e.to_string()));
            return;
        }
    };
    let same = construction.code().points() == code.points() && construction.code().multipliers() == code.multipliers();
    report.push_timed(|| {
        let check = Check::new("provenance", "rebuild", same);
        if same {
            check
        } else {
            check.with_detail("code differs from the construction its provenance names")
        }
    });
    if !same {
        return;
    }
    let params = construction.params();
    let w = construction.witness();
    let scan = |name: &str, a: &[Gf], v: &[Gf], bound: i64| {
        let norms: Vec<Gf> = v.iter().map(|&x| ctx.norm(x)).collect();
        let hit = (bound >= 0)
            .then(|| PowerSumScanner::new(&ctx, a, &norms).first_nonzero(bound as usize, bound as usize))
            .flatten();
        Check::grid(name, bound, hit)
    };
    report.push_timed(|| scan("first_component", &w.a1, &w.v1, params.first_component_bound()));
    report.push_timed(|| scan("second_component", &w.a2, &w.v2, params.second_component_bound()));
}

/// Counts `(i, j) in [0, l) x [0, m)` with `alpha + s i = beta + t j` mod
/// `q^2 - 1`, for a spread of offsets, and compares with `(q^2-1)/(st)`.
/// With `h` and `r` it also counts `|A ∩ B|` exhaustively.
pub fn verify_coset_intersections(q: u64, s: u64, t: u64, hr: Option<(u64, u64)>) -> VerificationReport {
    let units = q * q - 1;
    let mut report = VerificationReport::new(format!("coset intersections q = {q}, s = {s}, t = {t}"), q);
    if s == 0 || t == 0 || units % s != 0 || units % t != 0 {
        report
            .checks
            .push(Check::new("pair_counts", "n/a", false).with_detail("s and t must divide q^2 - 1"));
        return report;
    }
    let (l, m) = (units / s, units / t);
    let expected = units / (s * t);
    let offsets = |n: u64| -> Vec<u64> {
        if n <= 8 {
            (0..n).collect()
        } else {
            (0..8).map(|k| k * (n - 1) / 7).collect()
        }
    };
    report.push_timed(|| {
        let mut hit = vec![false; units as usize];
        for alpha in offsets(s) {
            hit.iter_mut().for_each(|x| *x = false);
            for i in 0..l {
                hit[((alpha + s * i) % units) as usize] = true;
            }
            for beta in offsets(t) {
                let count = (0..m).filter(|&j| hit[((beta + t * j) % units) as usize]).count() as u64;
                if count != expected {
                    return Check::new("pair_counts", "sampled (alpha, beta)", false).with_detail(format!(
                        "alpha = {alpha}, beta = {beta}: {count} solutions, expected {expected}"
                    ));
                }
            }
        }
        Check::new("pair_counts", "sampled (alpha, beta)", true).with_detail(format!("{expected} solutions each"))
    });
    if let Some((h, r)) = hr {
        report.push_timed(|| {
            let found = split_units(units, s, t, h, r).both.len() as u64;
            let closed = expected * h * r;
            let check = Check::new("overlap_size", format!("h = {h}, r = {r}"), found == closed);
            check.with_detail(format!("|A ∩ B| = {found}, closed form {closed}"))
        });
    }
    report
}

/// `sum_{nu < m} theta^{nu (q i + j + (q+1)/2)}` over the square grid
/// `0 <= i, j <= (q+1)/2 + (q-1)/t - 2`, plus the two cells just outside it
/// where the sum is expected to survive.
pub fn verify_theta_sums(ctx: &FieldContext, t: u64) -> VerificationReport {
    let q = u64::from(ctx.q());
    let mut report = VerificationReport::new(format!("theta sums q = {q}, t = {t}"), q);
    if t < 2 || t % 2 == 1 || (q - 1) % t != 0 {
        report.checks.push(
            Check::new("theta_grid", "n/a", false).with_detail("needs even t >= 2 dividing q - 1"),
        );
        return report;
    }
    let units = u64::from(ctx.units());
    let m = units / t;
    let bound = ((q + 1) / 2 + (q - 1) / t) as i64 - 2;
    let sum_at = |i: u64, j: u64| -> Gf {
        let e = (q * i + j + (q + 1) / 2) % units;
        ctx.sum((0..m).map(|nu| ctx.exp(((t * e % units) * nu % units) as i64)))
    };
    report.push_timed(|| {
        let mut hit = None;
        'outer: for i in 0..=bound {
            for j in 0..=bound {
                let value = sum_at(i as u64, j as u64);
                if !value.is_zero() {
                    hit = Some(NonVanishing { i: i as usize, j: j as usize, value });
                    break 'outer;
                }
            }
        }
        Check::grid("theta_grid", bound, hit)
    });
    report.push_timed(|| {
        let outside = (bound + 1) as u64;
        let edge = (q - 1) / t - 1;
        let survivors: Vec<(u64, u64)> = [(outside, edge), (edge, outside)]
            .into_iter()
            .filter(|&(i, j)| !sum_at(i, j).is_zero())
            .collect();
        Check::new("theta_sharpness", format!("(i, j) in {{({outside}, {edge}), ({edge}, {outside})}}"), !survivors.is_empty())
            .with_detail(format!("nonvanishing at {survivors:?}"))
    });
    report
}

/// Compares the exponents `(i, j)` with `l | q i + j + q + 1` (and with
/// `l | q i + j`, `(i, j) != (0, 0)`) against the closed-form list indexed by
/// `mu` in [`mu_range`].
pub fn verify_divisibility(q: u64, s: u64, h: u64) -> VerificationReport {
    let mut report = VerificationReport::new(format!("divisibility pattern q = {q}, s = {s}, h = {h}"), q);
    if s == 0 || (q + 1) % s != 0 || h == 0 || h >= s {
        report
            .checks
            .push(Check::new("shifted", "n/a", false).with_detail("needs s | q+1 and 1 <= h <= s-1"));
        return report;
    }
    let l = (q * q - 1) / s;
    let c = |mu: i64| mu * (q as i64 + 1) / s as i64;
    let mus: Vec<i64> = mu_range(s, h).collect();
    let top = ((s + h) / 2 * ((q + 1) / s)) as i64;
    let compare = |name: &str, bound: i64, shift: u64, skip_origin: bool, predicted: BTreeSet<(i64, i64)>| {
        let mut found = BTreeSet::new();
        for i in 0..=bound {
            for j in 0..=bound {
                if skip_origin && i == 0 && j == 0 {
                    continue;
                }
                if (q * i as u64 + j as u64 + shift) % l == 0 {
                    found.insert((i, j));
                }
            }
        }
        let pass = found == predicted;
        let check = Check::new(name, format!("0 <= i, j <= {bound}"), pass);
        if pass {
            check.with_detail(format!("{} cells", found.len()))
        } else {
            check.with_detail(format!("found {found:?}, predicted {predicted:?}"))
        }
    };
    report.push_timed(|| {
        let predicted = mus.iter().map(|&mu| (c(mu) - 2, q as i64 - c(mu) - 1)).collect();
        compare("shifted", top - 3, q + 1, false, predicted)
    });
    report.push_timed(|| {
        let predicted = mus.iter().map(|&mu| (c(mu) - 1, q as i64 - c(mu))).collect();
        compare("unshifted", top - 2, 0, true, predicted)
    });
    report
}

/// Quantum Singleton equality `k = n - 2 dmin + 2` with `dmin >= 1`.
pub fn verify_quantum_params(qp: &QuantumParams) -> bool {
    qp.is_mds()
}

/// First `d`-subset of generator columns (lexicographic) that is rank
/// deficient, if any.
pub fn rank_deficient_column_subset(code: &GrsCode) -> Option<Vec<usize>> {
    let g = code.generator_matrix();
    let (d, n) = (code.dimension(), code.len());
    let mut idx: Vec<usize> = (0..d).collect();
    loop {
        if g.select_columns(&idx).rank() < d {
            return Some(idx);
        }
        // next combination
        let mut k = d;
        loop {
            if k == 0 {
                return None;
            }
            k -= 1;
            if idx[k] < n - d + k {
                break;
            }
        }
        idx[k] += 1;
        for x in k + 1..d {
            idx[x] = idx[x - 1] + 1;
        }
    }
}
