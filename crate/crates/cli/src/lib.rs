//! `upd`: command-line front end over `upd-core`.
//!
//! Every command writes JSON lines to stdout with a `kind` field, rows first
//! and one aggregate line last. Diagnostics and timing go to stderr, also as
//! JSON lines. Stdout is a pure function of the arguments and input files.

use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use rayon::prelude::*;
use rayon::ThreadPool;
use serde_json::{json, Value};
use upd_core::family::parse_ideal;
use upd_core::primary::primary_decomposition;
use upd_core::theorem::{
    battery, bounded_decomposition, h0_point, h0_rows, scan_point, summarize, BoundedCertificate,
};
use upd_core::{
    EngineError, FamilyBox, FamilyError, FamilySpec, IdealError, MonomialIdeal, RingContext,
};

pub mod exit {
    pub const OK: i32 = 0;
    pub const CHECK_FAILED: i32 = 1;
    pub const USAGE: i32 = 2;
    pub const UNIT_IDEAL: i32 = 3;
    pub const CAP_EXCEEDED: i32 = 4;
    pub const K_TOO_SMALL: i32 = 5;
}

/// Number of extra random ideals in the `h0 --battery` set.
pub const BATTERY_EXTRA: usize = 25;

#[derive(Debug, Parser)]
#[command(
    name = "upd",
    version,
    about = "Exact checks on families of monomial ideals"
)]
pub struct Cli {
    /// Worker threads; 0 picks one per core.
    #[arg(long, global = true, env = "UPD_JOBS", default_value_t = 0)]
    pub jobs: usize,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Irredundant primary decomposition of an inline ideal.
    Decompose {
        /// `{"vars": [..], "generators": [..]}`.
        #[arg(long)]
        ideal: String,
    },
    /// Per-point `k_min` over a box and the resulting uniform `k`.
    Scan {
        #[command(flatten)]
        family: FamilyArgs,
        /// Search cap for `k_min` and `l`; defaults to a bound derived from each ideal.
        #[arg(long)]
        cap: Option<u64>,
    },
    /// Bounded primary decompositions at a fixed `k`.
    Certify {
        #[command(flatten)]
        family: FamilyArgs,
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        k: u64,
    },
    /// Uniform saturation exponent for test ideals `J`.
    H0 {
        #[command(flatten)]
        family: FamilyArgs,
        /// A single test ideal; a bare generator list uses the family's variables.
        #[arg(long, conflicts_with = "battery", required_unless_present = "battery")]
        ideal: Option<String>,
        /// Every squarefree monomial prime plus seeded random ideals.
        #[arg(long)]
        battery: bool,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        cap: Option<u64>,
    },
    /// Randomized invariant suites against the staircase oracle.
    OracleCheck {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 100, value_parser = clap::value_parser!(u64).range(1..))]
        cases: u64,
    },
}

#[derive(Debug, Args)]
pub struct FamilyArgs {
    #[arg(long)]
    pub family: PathBuf,
    /// Inclusive ranges, one per parameter: `a..b[,c..d]...`.
    #[arg(long = "box")]
    pub bx: FamilyBox,
}

/// A command's non-zero outcome: exit code plus a stderr diagnostic.
#[derive(Debug)]
pub struct Failure {
    pub code: i32,
    pub diagnostic: Value,
}

impl Failure {
    fn new(code: i32, kind: &str, message: impl ToString) -> Self {
        Failure {
            code,
            diagnostic: json!({ "kind": kind, "message": message.to_string() }),
        }
    }

    fn with(mut self, key: &str, value: Value) -> Self {
        self.diagnostic[key] = value;
        self
    }
}

type Outcome = Result<(), Failure>;

/// Parses `args` (program name first) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            let _ = write!(out, "{e}");
            return exit::OK;
        }
        Err(e) => {
            let message = e.render().to_string();
            emit(
                err,
                &json!({ "kind": "usage", "message": message.trim_end() }),
            );
            return exit::USAGE;
        }
    };
    match execute(cli, out, err) {
        Ok(()) => exit::OK,
        Err(f) => {
            emit(err, &f.diagnostic);
            f.code
        }
    }
}

pub fn execute(cli: Cli, out: &mut dyn Write, err: &mut dyn Write) -> Outcome {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cli.jobs)
        .build()
        .map_err(|e| Failure::new(exit::USAGE, "usage", e))?;
    let started = Instant::now();
    let name = match &cli.command {
        Command::Decompose { .. } => "decompose",
        Command::Scan { .. } => "scan",
        Command::Certify { .. } => "certify",
        Command::H0 { .. } => "h0",
        Command::OracleCheck { .. } => "oracle-check",
    };
    let pool = &pool;
    let result = match cli.command {
        Command::Decompose { ideal } => decompose(&ideal, out),
        Command::Scan { family, cap } => scan(pool, &family, cap, out),
        Command::Certify { family, k } => certify(pool, &family, k, out),
        Command::H0 {
            family,
            ideal,
            battery,
            seed,
            cap,
        } => h0(pool, &family, ideal.as_deref(), battery, seed, cap, out),
        Command::OracleCheck { seed, cases } => oracle_check(seed, cases as usize, out),
    };
    let _ = out.flush();
    emit(
        err,
        &json!({ "kind": "timing", "command": name, "ms": started.elapsed().as_millis() as u64 }),
    );
    result
}

fn emit(w: &mut dyn Write, value: &Value) {
    // A closed pipe is not worth a panic.
    let _ = writeln!(w, "{value}");
}

fn gens(ctx: &RingContext, ideal: &MonomialIdeal) -> Value {
    json!(ideal.render_gens(ctx))
}

fn family_error(source: &str, e: &FamilyError) -> Failure {
    match e {
        FamilyError::Parse {
            line,
            column,
            message,
        } => Failure::new(exit::USAGE, "parse-error", message)
            .with("source", json!(source))
            .with("line", json!(line))
            .with("column", json!(column)),
        FamilyError::Overflow(n) => Failure::new(exit::USAGE, "overflow", e).with("n", json!(n)),
        other => Failure::new(exit::USAGE, "invalid-input", other).with("source", json!(source)),
    }
}

fn engine_error(ctx: &RingContext, e: &EngineError) -> Failure {
    let failure = match e.root() {
        EngineError::CapExceeded { cap, prime } => Failure::new(
            exit::CAP_EXCEEDED,
            "cap-exceeded",
            format!("search exceeded cap {cap}; pass a larger --cap"),
        )
        .with("cap", json!(cap))
        .with("prime", gens(ctx, prime)),
        EngineError::KTooSmall { k, prime, reason } => {
            Failure::new(exit::K_TOO_SMALL, "k-too-small", reason)
                .with("k", json!(k))
                .with(
                    "prime",
                    prime.as_ref().map_or(Value::Null, |p| gens(ctx, p)),
                )
        }
        EngineError::Ideal(e @ IdealError::UnitIdeal) => {
            Failure::new(exit::UNIT_IDEAL, "unit-ideal", e)
        }
        EngineError::Family(f) => family_error("family", f),
        root => Failure::new(exit::USAGE, "invalid-input", root),
    };
    match e.point() {
        Some(n) => failure.with("n", json!(n)),
        None => failure,
    }
}

fn load_family(args: &FamilyArgs) -> Result<FamilySpec, Failure> {
    let source = args.family.display().to_string();
    let text = read(&args.family)?;
    let spec = FamilySpec::from_json(&text).map_err(|e| family_error(&source, &e))?;
    if args.bx.arity() != spec.params().len() {
        let e = FamilyError::Arity {
            expected: spec.params().len(),
            found: args.bx.arity(),
        };
        return Err(Failure::new(exit::USAGE, "invalid-input", e).with("source", json!("--box")));
    }
    Ok(spec)
}

fn read(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| {
        Failure::new(exit::USAGE, "io", e).with("source", json!(path.display().to_string()))
    })
}

/// Runs `f` on every point of the box in parallel; results stay row-major.
fn per_point<T: Send>(pool: &ThreadPool, bx: &FamilyBox, f: impl Fn(&[u64]) -> T + Sync) -> Vec<T> {
    let points: Vec<Vec<u64>> = bx.points().collect();
    pool.install(|| points.par_iter().map(|n| f(n)).collect())
}

fn decompose(text: &str, out: &mut dyn Write) -> Outcome {
    let (ctx, ideal) = parse_ideal(text, None).map_err(|e| family_error("--ideal", &e))?;
    let d = primary_decomposition(&ideal).map_err(|e| engine_error(&ctx, &e.into()))?;
    let components: Vec<Value> = d
        .components
        .iter()
        .map(|c| json!({ "prime": gens(&ctx, &c.prime), "component": gens(&ctx, &c.component) }))
        .collect();
    emit(
        out,
        &json!({
            "kind": "decomposition",
            "vars": ctx.names(),
            "ideal": gens(&ctx, &ideal),
            "components": components,
            "irredundant": d.irredundant,
            "minimal": d.minimal,
        }),
    );
    Ok(())
}

fn scan(pool: &ThreadPool, args: &FamilyArgs, cap: Option<u64>, out: &mut dyn Write) -> Outcome {
    let spec = load_family(args)?;
    let ctx = spec.context();
    let mut rows = Vec::new();
    for result in per_point(pool, &args.bx, |n| scan_point(&spec, n, cap)) {
        let row = result.map_err(|e| engine_error(ctx, &e))?;
        let primes: Vec<Value> = row
            .primes
            .iter()
            .map(|p| json!({ "prime": gens(ctx, &p.prime), "k_min": p.k_min, "l": p.l }))
            .collect();
        emit(
            out,
            &json!({
                "kind": "row",
                "n": row.n,
                "ideal": gens(ctx, &row.ideal),
                "primes": primes,
                "k_min": row.k_min,
            }),
        );
        rows.push(row);
    }
    let report = summarize(rows, &args.bx, spec.mode());
    emit(
        out,
        &json!({
            "kind": "aggregate",
            "uniform_k": report.uniform_k,
            "stabilized": report.stabilized,
            "window": report.window,
            "guarantee": report.guarantee.as_str(),
            "mode": spec.mode().as_str(),
        }),
    );
    Ok(())
}

fn certificate_row(ctx: &RingContext, cert: &BoundedCertificate) -> Value {
    let components: Vec<Value> = cert
        .components
        .iter()
        .map(|c| json!({ "prime": gens(ctx, &c.prime), "component": gens(ctx, &c.component) }))
        .collect();
    let c = cert.checks;
    json!({
        "kind": "certificate",
        "n": cert.n,
        "ideal": gens(ctx, &cert.ideal),
        "k": cert.k,
        "status": if c.all() { "pass" } else { "fail" },
        "components": components,
        "checks": {
            "intersection": c.intersection_ok,
            "power_containment": c.power_containment_ok,
            "irredundant": c.irredundant_ok,
            "minimal": c.minimal_ok,
        },
    })
}

fn certify(pool: &ThreadPool, args: &FamilyArgs, k: u64, out: &mut dyn Write) -> Outcome {
    let spec = load_family(args)?;
    let ctx = spec.context();
    let results = per_point(
        pool,
        &args.bx,
        |n| -> Result<Option<BoundedCertificate>, EngineError> {
            let ideal = spec.evaluate(n).map_err(|e| EngineError::from(e).at(n))?;
            if ideal.is_unit() {
                return Ok(None);
            }
            bounded_decomposition(&ideal, k)
                .map(|c| Some(c.at(n)))
                .map_err(|e| e.at(n))
        },
    );
    let (mut passed, mut failed, mut skipped) = (0u64, 0u64, 0u64);
    let mut first_error = None;
    for (n, result) in args.bx.points().zip(results) {
        match result {
            Ok(None) => {
                skipped += 1;
                emit(
                    out,
                    &json!({ "kind": "certificate", "n": n, "k": k, "status": "L_n = 0" }),
                );
            }
            Ok(Some(cert)) => {
                if cert.checks.all() {
                    passed += 1;
                } else {
                    failed += 1;
                }
                emit(out, &certificate_row(ctx, &cert));
            }
            Err(e) => {
                failed += 1;
                let mut row = engine_error(ctx, &e).diagnostic;
                row["status"] = row["kind"].take();
                row["kind"] = json!("certificate");
                row["k"] = json!(k);
                emit(out, &row);
                first_error.get_or_insert(e);
            }
        }
    }
    emit(
        out,
        &json!({ "kind": "summary", "k": k, "passed": passed, "failed": failed, "skipped": skipped }),
    );
    match first_error {
        Some(e) => Err(engine_error(ctx, &e)),
        None if failed > 0 => Err(Failure::new(
            exit::CHECK_FAILED,
            "check-failed",
            "a certificate check failed",
        )),
        None => Ok(()),
    }
}

fn ok(flag: bool) -> &'static str {
    if flag {
        "ok"
    } else {
        "mismatch"
    }
}

fn h0(
    pool: &ThreadPool,
    args: &FamilyArgs,
    ideal: Option<&str>,
    use_battery: bool,
    seed: u64,
    cap: Option<u64>,
    out: &mut dyn Write,
) -> Outcome {
    let spec = load_family(args)?;
    let ctx = spec.context();
    let tests = match ideal {
        Some(text) => vec![
            parse_ideal(text, Some(ctx))
                .map_err(|e| family_error("--ideal", &e))?
                .1,
        ],
        None => {
            debug_assert!(use_battery);
            battery(ctx.dim(), BATTERY_EXTRA, seed)
        }
    };
    if tests.iter().any(MonomialIdeal::is_zero) {
        return Err(engine_error(ctx, &IdealError::ZeroDivisor.into()));
    }
    let mut staged = Vec::new();
    for (n, result) in args.bx.points().zip(per_point(pool, &args.bx, |n| {
        h0_point(&spec, n, &tests, cap)
    })) {
        if let Some(stage) = result.map_err(|e| engine_error(ctx, &e))? {
            staged.push((n, stage));
        }
    }
    let l_uniform = staged
        .iter()
        .flat_map(|(_, (_, sats))| sats.iter().map(|s| s.1))
        .max()
        .unwrap_or(0);
    let rows = pool
        .install(|| {
            staged
                .into_par_iter()
                .map(|(n, (ideal, sats))| h0_rows(&n, &ideal, &tests, sats, l_uniform))
                .collect::<Vec<_>>()
        })
        .into_iter()
        .collect::<Result<Vec<_>, _>>()
        .map_err(|e| engine_error(ctx, &e))?;
    let (mut colon, mut intersection, mut components, mut count) = (true, true, true, 0usize);
    for row in rows.iter().flatten() {
        count += 1;
        colon &= row.colon_ok;
        intersection &= row.intersection_ok;
        components &= row.components_ok;
        emit(
            out,
            &json!({
                "kind": "row",
                "n": row.n,
                "j": gens(ctx, &tests[row.j_index]),
                "l": row.l,
                "sat": gens(ctx, &row.sat),
                "colon": ok(row.colon_ok),
                "intersection": ok(row.intersection_ok),
                "components": ok(row.components_ok),
            }),
        );
    }
    emit(
        out,
        &json!({
            "kind": "aggregate",
            "l_uniform": l_uniform,
            "tests": tests.len(),
            "rows": count,
            "colon": ok(colon),
            "intersection": ok(intersection),
            "components": ok(components),
        }),
    );
    // The intersection identity may fail when l_uniform is below the
    // family's uniform k; the other two columns may not.
    if colon && components {
        Ok(())
    } else {
        Err(Failure::new(
            exit::CHECK_FAILED,
            "check-failed",
            "saturation cross-check failed",
        ))
    }
}

fn oracle_check(seed: u64, cases: usize, out: &mut dyn Write) -> Outcome {
    let results = upd_core::oracle::run_suites(seed, cases);
    let (mut passed, mut failed) = (0, 0);
    for r in &results {
        passed += r.passed;
        failed += r.failed;
        emit(
            out,
            &json!({ "kind": "suite", "name": r.name, "passed": r.passed, "failed": r.failed }),
        );
        if let Some((case, message)) = &r.counterexample {
            emit(
                out,
                &json!({ "kind": "counterexample", "suite": r.name, "message": message, "case": case.to_json() }),
            );
        }
    }
    emit(
        out,
        &json!({ "kind": "summary", "seed": seed, "cases": cases, "passed": passed, "failed": failed }),
    );
    if failed == 0 {
        Ok(())
    } else {
        Err(Failure::new(
            exit::CHECK_FAILED,
            "check-failed",
            format!("{failed} oracle cases failed"),
        ))
    }
}
