//! `qmds`: construct, verify and enumerate quantum MDS codes built from
//! Hermitian self-orthogonal GRS codes.
//!
//! Exit codes: 0 success, 2 usage or parameter error, 3 a check failed.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};

use qmds_core::constructions::{build, CodeFile, ConstructionError, ConstructionParams, ParamError, Theorem};
use qmds_core::enumerate::{
    audit_q641_example, best_codes, check_table, emit_table, enumerate_params, realizable_pairs, verify_records,
    ParameterRecord, TableFormat, Threshold, TABLE1,
};
use qmds_core::gf::{is_prime, FieldContext};
use qmds_core::grs::{GrsCode, DEFAULT_BUDGET};
use qmds_core::verify::{verify_code, Levels};

const EXIT_USAGE: u8 = 2;
const EXIT_CHECK_FAILED: u8 = 3;

#[derive(Parser, Debug)]
#[command(name = "qmds", version, about = "Quantum MDS codes from Hermitian self-orthogonal GRS codes")]
struct Cli {
    /// Worker threads for grid checks and sweeps (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Build the code for one parameter tuple and write it as JSON.
    Construct(ConstructArgs),
    /// Check a code file and write a verification report.
    Verify(VerifyArgs),
    /// Sweep every valid tuple for one q and emit a parameter table.
    Enumerate(EnumerateArgs),
}

#[derive(Args, Debug, Clone, Copy)]
struct FieldArgs {
    /// Characteristic p of F_q.
    #[arg(long)]
    p: u32,
    /// Extension degree e, q = p^e.
    #[arg(long, default_value_t = 1)]
    e: u32,
}

impl FieldArgs {
    fn q(&self) -> Result<u64> {
        if !is_prime(u64::from(self.p)) {
            bail!("p = {} is not prime", self.p);
        }
        if self.e == 0 {
            bail!("e must be at least 1");
        }
        u64::from(self.p)
            .checked_pow(self.e)
            .with_context(|| format!("{}^{} overflows", self.p, self.e))
    }

    fn context(&self) -> Result<Arc<FieldContext>> {
        Ok(Arc::new(FieldContext::new(self.p, self.e)?))
    }
}

#[derive(Args, Debug)]
struct ConstructArgs {
    #[command(flatten)]
    field: FieldArgs,
    /// Length family: t4, t5 or t6.
    #[arg(long)]
    theorem: Theorem,
    #[arg(long)]
    s: u64,
    #[arg(long)]
    t: u64,
    #[arg(long)]
    h: u64,
    #[arg(long)]
    r: u64,
    /// Code dimension; defaults to the largest allowed.
    #[arg(long)]
    d: Option<usize>,
    /// Output path for the code file.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    /// Code file written by `construct` (or any file with p, e, modulus, a, v, d).
    #[arg(long)]
    input: PathBuf,
    /// Also check the Gram matrix of the generator rows.
    #[arg(long)]
    gram: bool,
    /// Also scan the construction's two components over their full ranges.
    #[arg(long)]
    component_ranges: bool,
    /// Also compute the minimum distance by exhaustion (see QMDS_BUDGET).
    #[arg(long)]
    brute_distance: bool,
    /// Write the JSON report here.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct EnumerateArgs {
    #[command(flatten)]
    field: FieldArgs,
    /// csv, json or markdown.
    #[arg(long, default_value = "csv")]
    format: TableFormat,
    /// Write the table here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Keep only the best d+1 for each length.
    #[arg(long)]
    best: bool,
    /// Distance filter for --best and --summary: none, non-strict, strict.
    #[arg(long, default_value = "none")]
    threshold: Threshold,
    /// Build every record and check its criterion grid.
    #[arg(long)]
    verify: bool,
    /// Check that the 18 published q = 37 triples are reached (q = 37 only).
    #[arg(long)]
    check_table1: bool,
    /// Recompute the q = 641 worked example (q = 641 only).
    #[arg(long, conflicts_with_all = ["check_table1", "verify", "best"])]
    audit_example: bool,
    /// Print record and threshold counts.
    #[arg(long)]
    summary: bool,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let pool = match rayon::ThreadPoolBuilder::new()
        .num_threads(cli.threads.unwrap_or(0))
        .build()
    {
        Ok(pool) => pool,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(EXIT_USAGE);
        }
    };
    match pool.install(|| run(cli.command)) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(EXIT_USAGE)
        }
    }
}

fn run(command: Command) -> Result<ExitCode> {
    match command {
        Command::Construct(args) => construct(args),
        Command::Verify(args) => verify(args),
        Command::Enumerate(args) => enumerate(args),
    }
}

fn write_output(path: &Path, contents: &str) -> Result<()> {
    fs::write(path, contents).with_context(|| format!("writing {}", path.display()))
}

fn construct(args: ConstructArgs) -> Result<ExitCode> {
    args.field.q()?;
    let ctx = args.field.context()?;
    let params = match ConstructionParams::new(ctx, args.theorem, args.s, args.t, args.h, args.r) {
        Ok(p) => p,
        Err(ParamError::Hypotheses(violations)) => {
            eprintln!(
                "error: {} tuple (s, t, h, r) = ({}, {}, {}, {}) violates {} hypothes{}:",
                args.theorem,
                args.s,
                args.t,
                args.h,
                args.r,
                violations.len(),
                if violations.len() == 1 { "is" } else { "es" }
            );
            for v in &violations {
                eprintln!("  - {v}");
            }
            return Ok(ExitCode::from(EXIT_USAGE));
        }
        Err(e) => return Err(e.into()),
    };
    let construction = match build(&params, args.d) {
        Ok(c) => c,
        Err(ConstructionError::Param(e)) => bail!("{e}"),
        Err(e) => return Err(e).context("construction failed"),
    };
    let file = construction.to_file();
    let out = args.out.unwrap_or_else(|| {
        PathBuf::from(format!(
            "{}-q{}-s{}-t{}-h{}-r{}-d{}.json",
            params.theorem(),
            params.q(),
            params.s(),
            params.t(),
            params.h(),
            params.r(),
            construction.code().dimension()
        ))
    });
    let mut json = serde_json::to_string(&file)?;
    json.push('\n');
    write_output(&out, &json)?;
    println!("{}", construction.quantum_params());
    Ok(ExitCode::SUCCESS)
}

fn budget() -> Result<u64> {
    match std::env::var("QMDS_BUDGET") {
        Ok(v) => v
            .trim()
            .parse()
            .with_context(|| format!("QMDS_BUDGET = {v:?} is not a number")),
        Err(_) => Ok(DEFAULT_BUDGET),
    }
}

fn verify(args: VerifyArgs) -> Result<ExitCode> {
    let text = fs::read_to_string(&args.input).with_context(|| format!("reading {}", args.input.display()))?;
    let file: CodeFile =
        serde_json::from_str(&text).with_context(|| format!("parsing {}", args.input.display()))?;
    let code = GrsCode::from_record(&file.code).context("invalid code record")?;
    let levels = Levels {
        criterion: true,
        gram: args.gram,
        component_ranges: args.component_ranges,
        brute_distance: args.brute_distance,
        budget: budget()?,
    };
    let report = verify_code(&code, file.provenance.as_ref(), &levels)?;
    print!("{report}");
    if let Some(out) = &args.out {
        let mut json = serde_json::to_string_pretty(&report)?;
        json.push('\n');
        write_output(out, &json)?;
    }
    Ok(if report.passed() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(EXIT_CHECK_FAILED)
    })
}

fn enumerate(args: EnumerateArgs) -> Result<ExitCode> {
    let q = args.field.q()?;
    if args.audit_example {
        if q != 641 {
            bail!("--audit-example refers to the q = 641 example; got q = {q}");
        }
        let a = audit_q641_example();
        println!(
            "{} (s, t, h, r) = ({}, {}, {}, {}): computed n = {}, d_max = {}, d+1 = {}",
            a.theorem,
            a.s,
            a.t,
            a.h,
            a.r,
            a.computed_n,
            a.computed_dmin - 1,
            a.computed_dmin
        );
        println!("stated: n = {}, d+1 = {}", a.stated_n, a.stated_dmin);
        println!("with h = 1: n = {}, d+1 = {}", a.h1_n, a.h1_dmin);
        if a.consistent() {
            println!("stated values agree with the formulas");
        } else {
            println!("DISCREPANCY: the stated (n, d+1) does not follow from the length and distance formulas");
        }
        return Ok(ExitCode::SUCCESS);
    }
    if args.check_table1 && q != 37 {
        bail!("--check-table1 applies to q = 37 only; got q = {q}");
    }
    let mut records = enumerate_params(q);
    let mut status = ExitCode::SUCCESS;
    if args.verify {
        let ctx = args.field.context()?;
        let failed = verify_records(&ctx, &mut records);
        for r in &failed {
            eprintln!(
                "verification failed: {} (s, t, h, r) = ({}, {}, {}, {})",
                r.theorem, r.s, r.t, r.h, r.r
            );
        }
        if !failed.is_empty() {
            status = ExitCode::from(EXIT_CHECK_FAILED);
        }
    }
    let mut quiet = false;
    if args.check_table1 {
        quiet = true;
        let matches = check_table(&records, &TABLE1);
        let mut missing = 0;
        for m in &matches {
            let (n, k, dmin) = m.triple;
            match &m.source {
                Some(r) => println!(
                    "[[{n},{k},{dmin}]]_37  found  {} (s, t, h, r) = ({}, {}, {}, {}){}",
                    r.theorem,
                    r.s,
                    r.t,
                    r.h,
                    r.r,
                    if m.is_best { "" } else { "  (not the best d+1 at this length)" }
                ),
                None => {
                    missing += 1;
                    println!("[[{n},{k},{dmin}]]_37  MISSING");
                }
            }
        }
        println!("{} of {} rows reached", matches.len() - missing, matches.len());
        if missing > 0 {
            status = ExitCode::from(EXIT_CHECK_FAILED);
        }
    }
    if args.summary {
        quiet = true;
        print_summary(q, &records);
    }
    let table: Vec<ParameterRecord> = if args.best {
        best_codes(&records, args.threshold)
            .into_iter()
            .map(|b| b.sources[0].clone())
            .collect()
    } else {
        records
    };
    let doc = emit_table(&table, args.format);
    match &args.out {
        Some(out) => write_output(out, &doc)?,
        None if !quiet => print!("{doc}"),
        None => {}
    }
    Ok(status)
}

fn print_summary(q: u64, records: &[ParameterRecord]) {
    let lengths = best_codes(records, Threshold::None).len();
    println!("q = {q}: {} valid tuples, {lengths} distinct lengths", records.len());
    for (label, threshold) in [
        ("d+1 >= q/2 + 1", Threshold::NonStrict),
        ("d+1 > q/2 + 1", Threshold::Strict),
    ] {
        println!(
            "{label}: {} lengths with best d+1 above threshold, {} distinct (n, d+1) pairs at d_max, {} realizable (n, d+1) pairs",
            best_codes(records, threshold).len(),
            distinct_at_max(records, threshold),
            realizable_pairs(records, threshold).len()
        );
    }
}

fn distinct_at_max(records: &[ParameterRecord], threshold: Threshold) -> usize {
    let mut pairs: Vec<(u64, u64)> = records
        .iter()
        .filter(|r| threshold.admits(r.quantum.dmin, r.q))
        .map(|r| (r.n, r.quantum.dmin))
        .collect();
    pairs.sort_unstable();
    pairs.dedup();
    pairs.len()
}
