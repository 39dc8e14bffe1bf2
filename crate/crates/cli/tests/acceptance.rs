//! Acceptance suite. Runs every criterion, prints one PASS/FAIL line each,
//! and exits nonzero if any failed.

use std::collections::BTreeSet;
use std::fs;
use std::path::Path;
use std::process::{Command, ExitCode, Output};
use std::sync::Arc;
use std::time::Instant;

use rayon::prelude::*;

use qmds_core::constructions::{
    build, solve_system, split_units, system_matrix, ConstructionParams, SystemKind, Theorem,
};
use qmds_core::enumerate::{check_table, enumerate_params, TABLE1};
use qmds_core::gf::{FieldContext, Gf};
use qmds_core::verify::{
    rank_deficient_column_subset, verify_code, verify_coset_intersections, verify_divisibility, verify_theta_sums,
    Levels,
};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

const CODE_QS: [(u32, u32); 8] = [(5, 1), (7, 1), (3, 2), (13, 1), (17, 1), (5, 2), (29, 1), (37, 1)];

/// Odd prime powers up to 49 as `(p, e)`.
const SMALL_QS: [(u32, u32); 18] = [
    (3, 1),
    (5, 1),
    (7, 1),
    (3, 2),
    (11, 1),
    (13, 1),
    (17, 1),
    (19, 1),
    (23, 1),
    (5, 2),
    (3, 3),
    (29, 1),
    (31, 1),
    (37, 1),
    (41, 1),
    (43, 1),
    (47, 1),
    (7, 2),
];

fn field(p: u32, e: u32) -> Arc<FieldContext> {
    Arc::new(FieldContext::new(p, e).expect("field in budget"))
}

fn qmds(args: &[&str], dir: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qmds"))
        .args(args)
        .current_dir(dir)
        .output()
        .expect("qmds runs")
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn table1_reproduction() -> Outcome {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let o = qmds(&["--threads", "1", "enumerate", "--p", "37", "--e", "1", "--check-table1"], dir.path());
    let out = String::from_utf8_lossy(&o.stdout);
    ensure(o.status.success(), || format!("exit {:?}\n{out}", o.status.code()))?;
    ensure(out.contains("18 of 18 rows reached"), || out.to_string())?;
    let records = enumerate_params(37);
    for m in check_table(&records, &TABLE1) {
        let r = m.source.ok_or_else(|| format!("{:?} not reached", m.triple))?;
        let (n, k, dmin) = m.triple;
        let d = dmin - 1;
        ensure(r.n == n && n - 2 * d == k && r.d_max >= d, || format!("{:?} mismatched by {r:?}", m.triple))?;
    }
    let find = |s, t, h, r| records.iter().find(|x| x.theorem == Theorem::T6 && (x.s, x.t, x.h, x.r) == (s, t, h, r));
    let first = find(38, 6, 10, 1).ok_or("T6 (38,6,10,1) missing")?;
    let last = find(38, 4, 17, 1).ok_or("T6 (38,4,17,1) missing")?;
    ensure(first.quantum.to_string() == "[[588,544,23]]_37", || first.quantum.to_string())?;
    ensure(last.quantum.to_string() == "[[954,904,26]]_37", || last.quantum.to_string())?;
    Ok("18/18 triples reached with exact (n, n-2d, d+1)".into())
}

fn self_orthogonality() -> Outcome {
    let mut total = 0;
    for (p, e) in CODE_QS {
        let ctx = field(p, e);
        let q = u64::from(ctx.q());
        let records = enumerate_params(q);
        let failures: Vec<String> = records
            .par_iter()
            .filter_map(|rec| {
                let params = ConstructionParams::from_tuple(ctx.clone(), rec.tuple()).ok()?;
                let c = match build(&params, None) {
                    Ok(c) => c,
                    Err(e) => return Some(format!("q = {q} {rec:?}: {e}")),
                };
                let criterion = c.code().is_hermitian_self_orthogonal();
                let gram = c.code().gram_check();
                (!(criterion && gram)).then(|| format!("q = {q} {rec:?}: criterion {criterion}, gram {gram}"))
            })
            .collect();
        ensure(failures.is_empty(), || failures.join("\n"))?;
        total += records.len();
    }
    Ok(format!("{total} codes pass criterion and Gram checks"))
}

fn extended_ranges() -> Outcome {
    let mut codes = 0;
    for (p, e) in CODE_QS {
        let ctx = field(p, e);
        let records = enumerate_params(u64::from(ctx.q()));
        let failures: Vec<String> = records
            .par_iter()
            .filter_map(|rec| {
                let params = ConstructionParams::from_tuple(ctx.clone(), rec.tuple()).ok()?;
                let c = build(&params, None).ok()?;
                let levels = Levels {
                    criterion: false,
                    component_ranges: true,
                    ..Levels::default()
                };
                let report = verify_code(c.code(), Some(&c.provenance()), &levels).ok()?;
                let wider = params.first_component_bound() >= params.d_max() as i64 - 1
                    && params.second_component_bound() >= params.d_max() as i64 - 1;
                (!(report.passed() && wider)).then(|| format!("{rec:?}\n{report}"))
            })
            .collect();
        ensure(failures.is_empty(), || failures.join("\n"))?;
        codes += records.len();
    }
    let mut oracles = 0;
    for (p, e) in SMALL_QS {
        let ctx = field(p, e);
        let q = u64::from(ctx.q());
        for t in (2..q).filter(|t| t % 2 == 0 && (q - 1) % t == 0) {
            let r = verify_theta_sums(&ctx, t);
            ensure(r.passed(), || r.to_string())?;
            oracles += 1;
        }
        for s in (2..=q + 1).filter(|s| (q + 1) % s == 0) {
            for h in 1..s {
                let r = verify_divisibility(q, s, h);
                ensure(r.passed(), || r.to_string())?;
                oracles += 1;
            }
        }
    }
    Ok(format!(
        "{codes} codes: both components vanish on their full ranges; {oracles} theta-sum/divisibility oracles agree"
    ))
}

fn mds_oracle() -> Outcome {
    let mut distance_checks = 0;
    let mut subset_checks = 0;
    for (p, e) in CODE_QS {
        let ctx = field(p, e);
        let q = u64::from(ctx.q());
        for rec in enumerate_params(q) {
            let params = ConstructionParams::from_tuple(ctx.clone(), rec.tuple()).map_err(|e| e.to_string())?;
            for d in 1..=rec.d_max as usize {
                if (q * q).checked_pow(d as u32).is_none_or(|x| x > 1_000_000) {
                    break;
                }
                let c = build(&params, Some(d)).map_err(|e| e.to_string())?;
                let code = c.code();
                let dist = code.brute_min_distance(1_000_000).map_err(|e| e.to_string())?;
                ensure(dist == code.len() - d + 1, || {
                    format!("{rec:?} d = {d}: min distance {dist}, expected {}", code.len() - d + 1)
                })?;
                distance_checks += 1;
                if code.len() <= 14 && d <= 4 {
                    if let Some(cols) = rank_deficient_column_subset(code) {
                        return Err(format!("{rec:?} d = {d}: columns {cols:?} are dependent"));
                    }
                    subset_checks += 1;
                }
            }
        }
    }
    ensure(subset_checks > 0, || "no code with n <= 14 was checked".into())?;
    Ok(format!(
        "{distance_checks} codes with q^(2d) <= 1e6 have distance n-d+1; {subset_checks} codes have all d-column subsets independent"
    ))
}

/// All `u in (F_q^*)^h` solving the system, by exhaustion.
fn exhaustive_solutions(ctx: &Arc<FieldContext>, kind: SystemKind, s: u64, h: u64) -> Vec<Vec<Gf>> {
    let a = system_matrix(ctx, kind, s, h).expect("valid shape");
    let base: Vec<Gf> = ctx.base_units().collect();
    let h = h as usize;
    let mut idx = vec![0usize; h];
    let mut out = Vec::new();
    'outer: loop {
        let u: Vec<Gf> = idx.iter().map(|&i| base[i]).collect();
        let normalized = kind != SystemKind::Normalized || ctx.sum(u.iter().copied()) == Gf::ONE;
        if normalized && a.mul_vec(&u).expect("shape").iter().all(|x| x.is_zero()) {
            out.push(u);
        }
        for i in idx.iter_mut() {
            *i += 1;
            if *i < base.len() {
                continue 'outer;
            }
            *i = 0;
        }
        return out;
    }
}

fn system_solutions() -> Outcome {
    let (mut solved, mut exhaustive) = (0, 0);
    for (p, e) in SMALL_QS {
        let ctx = field(p, e);
        let q = u64::from(ctx.q());
        let mut shapes = Vec::new();
        for s in (2..=q + 1).filter(|s| (q + 1) % s == 0) {
            if s % 2 == 1 {
                for h in 1..s {
                    if h % 2 == 1 {
                        shapes.push((SystemKind::Normalized, s, h));
                    }
                    shapes.push((SystemKind::Shifted, s, h));
                }
            } else {
                for h in 1..=s / 2 {
                    shapes.push((SystemKind::OddShifted, s, h));
                }
            }
        }
        for (kind, s, h) in shapes {
            let u = solve_system(&ctx, kind, s, h).map_err(|e| format!("{kind:?} q = {q}, s = {s}, h = {h}: {e}"))?;
            ensure(u.iter().all(|&x| !x.is_zero() && ctx.in_base_field(x)), || {
                format!("{kind:?} q = {q}, s = {s}, h = {h}: u outside F_q^*")
            })?;
            solved += 1;
            if (q - 1).checked_pow(h as u32).is_some_and(|x| x <= 100_000) {
                let all = exhaustive_solutions(&ctx, kind, s, h);
                ensure(all.contains(&u), || {
                    format!("{kind:?} q = {q}, s = {s}, h = {h}: solver output not among {} solutions", all.len())
                })?;
                exhaustive += 1;
            }
        }
    }
    Ok(format!("{solved} systems solved and substituted; {exhaustive} cross-checked by exhaustive search"))
}

fn overlap_counts() -> Outcome {
    let mut tuples = 0;
    let mut seen = BTreeSet::new();
    for (p, e) in SMALL_QS {
        let q = u64::pow(u64::from(p), e);
        for rec in enumerate_params(q).into_iter().filter(|r| r.theorem != Theorem::T6) {
            let found = split_units(q * q - 1, rec.s, rec.t, rec.h, rec.r).both.len() as u64;
            let closed = (q * q - 1) / (rec.s * rec.t) * rec.h * rec.r;
            ensure(found == closed, || format!("{rec:?}: |A ∩ B| = {found}, closed form {closed}"))?;
            tuples += 1;
            if seen.insert((q, rec.s, rec.t)) {
                let r = verify_coset_intersections(q, rec.s, rec.t, None);
                ensure(r.passed(), || r.to_string())?;
            }
        }
    }
    Ok(format!("{tuples} T4/T5 tuples: exhaustive |A ∩ B| equals the closed form"))
}

fn q641_audit() -> Outcome {
    let ctx = field(641, 1);
    let params = ConstructionParams::new(ctx, Theorem::T4, 107, 32, 5, 1).map_err(|e| e.to_string())?;
    let start = Instant::now();
    let c = build(&params, None).map_err(|e| e.to_string())?;
    let (n, d) = (c.code().len(), c.code().dimension());
    ensure((n, d) == (31441, 335), || format!("built n = {n}, d = {d}"))?;
    if let Some(hit) = c.code().criterion_counterexample() {
        return Err(format!("criterion fails at {hit:?}"));
    }
    let secs = start.elapsed().as_secs_f64();
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let o = qmds(&["enumerate", "--p", "641", "--e", "1", "--audit-example"], dir.path());
    let out = String::from_utf8_lossy(&o.stdout);
    ensure(o.status.success() && out.contains("stated: n = 16081, d+1 = 341") && out.contains("DISCREPANCY"), || {
        out.to_string()
    })?;
    Ok(format!(
        "[[31441,30771,336]]_641 passes the 335x335 criterion grid ({secs:.1} s); stated (16081, 341) flagged as a discrepancy"
    ))
}

fn determinism() -> Outcome {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let construct = |threads: &str, out: &str| {
        qmds(
            &[
                "--threads", threads, "construct", "--p", "37", "--theorem", "t6", "--s", "38", "--t", "6", "--h", "10",
                "--r", "1", "--d", "22", "--out", out,
            ],
            dir.path(),
        )
    };
    let verify = |threads: &str, input: &str, out: &str| {
        qmds(
            &["--threads", threads, "verify", "--input", input, "--gram", "--component-ranges", "--out", out],
            dir.path(),
        )
    };
    let enumerate = |threads: &str, format: &str, out: &str| {
        qmds(
            &["--threads", threads, "enumerate", "--p", "37", "--verify", "--format", format, "--out", out],
            dir.path(),
        )
    };
    let mut runs: Vec<(String, Output)> = Vec::new();
    for (tag, threads) in [("a", "1"), ("b", "4"), ("c", "1")] {
        runs.push((format!("code-{tag}.json"), construct(threads, &format!("code-{tag}.json"))));
        runs.push((
            format!("report-{tag}.json"),
            verify(threads, &format!("code-{tag}.json"), &format!("report-{tag}.json")),
        ));
        for format in ["csv", "json", "markdown"] {
            let name = format!("table-{tag}.{format}");
            runs.push((name.clone(), enumerate(threads, format, &name)));
        }
        runs.push((
            format!("table1-{tag}.txt"),
            qmds(&["--threads", threads, "enumerate", "--p", "37", "--check-table1"], dir.path()),
        ));
    }
    for (name, o) in &runs {
        ensure(o.status.success(), || format!("{name}: exit {:?}", o.status.code()))?;
    }
    let mut compared = 0;
    for (name, o) in runs.iter().filter(|(n, _)| n.contains("-a")) {
        let bytes = |n: &str, o: &Output| -> Vec<u8> {
            if n.starts_with("table1") {
                o.stdout.clone()
            } else {
                fs::read(dir.path().join(n)).unwrap_or_default()
            }
        };
        let reference = bytes(name, o);
        ensure(!reference.is_empty(), || format!("{name} is empty"))?;
        for tag in ["-b", "-c"] {
            let other_name = name.replace("-a", tag);
            let other = &runs.iter().find(|(n, _)| *n == other_name).expect("paired run").1;
            ensure(bytes(&other_name, other) == reference, || format!("{name} differs from {other_name}"))?;
            ensure(other.stdout == o.stdout, || format!("stdout of {name} differs from {other_name}"))?;
            compared += 1;
        }
    }
    Ok(format!("{compared} output pairs byte-identical across runs with 1 and 4 threads"))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 8] = [
        ("AC1 table 1 reproduction", table1_reproduction),
        ("AC2 exact self-orthogonality", self_orthogonality),
        ("AC3 extended component ranges", extended_ranges),
        ("AC4 MDS oracle", mds_oracle),
        ("AC5 system solutions", system_solutions),
        ("AC6 overlap counting", overlap_counts),
        ("AC7 q = 641 audit", q641_audit),
        ("AC8 determinism", determinism),
    ];
    let mut failed = 0;
    for (name, run) in criteria {
        let start = Instant::now();
        let outcome = run();
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("PASS  {name}  ({secs:.1} s)  {detail}"),
            Err(detail) => {
                failed += 1;
                println!("FAIL  {name}  ({secs:.1} s)\n{detail}");
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", 8 - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
