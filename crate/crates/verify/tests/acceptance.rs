//! Acceptance criteria, one line each. Runs without the libtest harness so
//! the lines always print; exits non-zero if any criterion fails.
//!
//! Commands run in-process through `upd_cli::run`, the entry point of the
//! `upd` binary.

use std::collections::BTreeSet;
use std::io::Write;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};
use upd_core::oracle::{random_graded_spec, random_ideal};
use upd_core::primary::{assemble, associated_primes, primary_decomposition_with};
use upd_core::staircase::{monomials_up_to, staircase};
use upd_core::theorem::{bounded_decomposition, h0, h0_via_components, minimal_s, required_k};
use upd_core::{Monomial, MonomialIdeal, RingContext, SplitOrder};
use upd_verify::{brute_k_min, family, from_gens, in_ideal, in_prime_power, strings, upd, vars_of};

type Verdict = Result<String, String>;
type Criterion = (&'static str, fn() -> Verdict);

fn ensure(ok: bool, why: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(why())
    }
}

fn xy() -> RingContext {
    RingContext::new(["x", "y"]).unwrap()
}

fn ideal(gens: &[&[u64]]) -> MonomialIdeal {
    MonomialIdeal::new(
        gens[0].len(),
        gens.iter().map(|g| Monomial::new(g.to_vec())),
    )
    .unwrap()
}

fn criterion_1() -> Verdict {
    let started = Instant::now();
    let i = ideal(&[&[2, 0], &[1, 1]]);
    let p = ideal(&[&[1, 0], &[0, 1]]);
    let mut wrong = Vec::new();
    for n in 0..=30u64 {
        let q = ideal(&[&[2, 0], &[1, 1], &[0, n + 1]]);
        let s = minimal_s(&i, &q, &p, 64).map_err(|e| e.to_string())?;
        if s != n + 1 {
            wrong.push(format!("n={n}: got {s}"));
        }
    }
    let elapsed = started.elapsed();
    ensure(wrong.is_empty(), || {
        format!("expected n+1, mismatches: {}", wrong.join(", "))
    })?;
    ensure(elapsed < Duration::from_secs(1), || {
        format!("took {elapsed:?}")
    })?;
    Ok(format!("minimal_s = n+1 for n in 0..=30 in {elapsed:?}"))
}

fn criterion_2() -> Verdict {
    let ctx = xy();
    let fam = family("embedded_prime.json");
    let run = upd(&["certify", "--family", &fam, "--box", "0..30", "--k", "2"]);
    ensure(run.code == 0, || {
        format!("k=2 exited {}: {}", run.code, run.stderr)
    })?;
    let expected: BTreeSet<(Vec<String>, Vec<String>)> = [
        (vec!["x"], vec!["x"]),
        (vec!["x", "y"], vec!["x^2", "x*y", "y^2"]),
    ]
    .into_iter()
    .map(|(p, q)| {
        (
            p.into_iter().map(String::from).collect(),
            q.into_iter().map(String::from).collect(),
        )
    })
    .collect();
    let rows = run.of_kind("certificate");
    ensure(rows.len() == 31, || format!("{} rows", rows.len()))?;
    for row in &rows {
        let n = &row["n"];
        ensure(row["status"] == "pass", || {
            format!("n={n} status {}", row["status"])
        })?;
        let comps = row["components"].as_array().unwrap();
        let got: BTreeSet<_> = comps
            .iter()
            .map(|c| (strings(&c["prime"]), strings(&c["component"])))
            .collect();
        ensure(got == expected, || format!("n={n} components {got:?}"))?;
        // Oracle: intersection and containment of P^2 + I, checked on the staircase to degree 8.
        let i = from_gens(&ctx, &row["ideal"]);
        let target = staircase(&i, 8);
        let mut meet: Option<BTreeSet<Monomial>> = None;
        for c in comps {
            let (p, q) = (
                from_gens(&ctx, &c["prime"]),
                from_gens(&ctx, &c["component"]),
            );
            let sq = staircase(&q, 8);
            let vars = vars_of(&p);
            ensure(
                monomials_up_to(2, 8)
                    .iter()
                    .all(|m| !(in_prime_power(&vars, 2, m) || in_ideal(&i, m)) || sq.contains(m)),
                || format!("n={n}: P^2 + I not inside its component"),
            )?;
            meet = Some(match meet {
                None => sq,
                Some(acc) => acc.intersection(&sq).cloned().collect(),
            });
        }
        ensure(meet.as_ref() == Some(&target), || {
            format!("n={n}: intersection differs on the staircase")
        })?;
    }
    let run = upd(&["certify", "--family", &fam, "--box", "0..30", "--k", "1"]);
    let diag = run.diagnostics();
    ensure(run.code == 5, || format!("k=1 exited {}", run.code))?;
    ensure(
        diag[0]["kind"] == "k-too-small" && diag[0]["n"] == json!([0]),
        || format!("k=1 diagnostic {}", diag[0]),
    )?;
    Ok("k=2 certificates pass on [0, 30] with the expected components; k=1 fails at n=0".into())
}

fn scan_family(path: &str, bx: &str) -> Result<(Vec<Value>, Value), String> {
    let run = upd(&["scan", "--family", path, "--box", bx]);
    ensure(run.code == 0, || {
        format!("scan {path} exited {}: {}", run.code, run.stderr)
    })?;
    Ok((run.of_kind("row"), run.last()))
}

fn criterion_3() -> Verdict {
    let started = Instant::now();
    let ctx = xy();
    for name in ["embedded_prime.json", "threshold.json"] {
        let (rows, agg) = scan_family(&family(name), "0..30")?;
        ensure(agg["uniform_k"] == 2 && agg["stabilized"] == true, || {
            format!("{name}: {agg}")
        })?;
        for row in &rows {
            let i = from_gens(&ctx, &row["ideal"]);
            for p in row["primes"].as_array().unwrap() {
                let prime = from_gens(&ctx, &p["prime"]);
                let oracle = brute_k_min(&i, &prime, 10);
                ensure(oracle == p["k_min"].as_u64(), || {
                    format!("{name} n={}: oracle {oracle:?} vs {p}", row["n"])
                })?;
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(2_024);
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    for case in 0..50 {
        let spec = random_graded_spec(&mut rng, 3, 5, 4);
        let top = spec.max_thresholds().unwrap()[0];
        let path = dir.path().join(format!("family_{case}.json"));
        std::fs::write(&path, spec.to_json().to_string()).map_err(|e| e.to_string())?;
        let path = path.to_str().unwrap();
        let bx = format!("0..{}", top + 12);
        let (rows, agg) = scan_family(path, &bx)?;
        let tail: BTreeSet<String> = rows
            .iter()
            .filter(|r| r["n"][0].as_u64().unwrap() >= top)
            .map(|r| r["k_min"].to_string())
            .collect();
        ensure(tail.len() == 1, || {
            format!("case {case}: k_min past n={top} takes values {tail:?}")
        })?;
        let k = agg["uniform_k"].as_u64().unwrap().max(1).to_string();
        let run = upd(&["certify", "--family", path, "--box", &bx, "--k", &k]);
        ensure(run.code == 0, || {
            format!(
                "case {case}: certify at k={k} exited {}: {}",
                run.code, run.stderr
            )
        })?;
    }
    let elapsed = started.elapsed();
    ensure(elapsed < Duration::from_secs(60), || {
        format!("took {elapsed:?}")
    })?;
    Ok(format!(
        "uniform_k = 2 and stabilized on both families; 50 random families constant past threshold and certified, {elapsed:?}"
    ))
}

fn criterion_4() -> Verdict {
    let ctx = xy();
    let (rows, agg) = scan_family(&family("affine_control.json"), "0..12")?;
    ensure(rows.len() == 13, || format!("{} rows", rows.len()))?;
    for row in &rows {
        let n = row["n"][0].as_u64().unwrap();
        ensure(row["k_min"].as_u64() == Some(n + 1), || {
            format!("n={n}: k_min {}", row["k_min"])
        })?;
        if n <= 4 {
            let i = from_gens(&ctx, &row["ideal"]);
            let oracle = row["primes"]
                .as_array()
                .unwrap()
                .iter()
                .map(|p| brute_k_min(&i, &from_gens(&ctx, &p["prime"]), 10))
                .max()
                .flatten();
            ensure(oracle == Some(n + 1), || {
                format!("n={n}: oracle {oracle:?}")
            })?;
        }
    }
    ensure(agg["stabilized"] == false, || format!("{agg}"))?;
    ensure(agg["guarantee"] == "no-guarantee", || format!("{agg}"))?;
    Ok("affine control has k_min = n+1 on [0, 12], not stabilized, no-guarantee".into())
}

fn criterion_5() -> Verdict {
    let run = upd(&[
        "h0",
        "--family",
        &family("embedded_prime.json"),
        "--box",
        "0..30",
        "--battery",
    ]);
    ensure(run.code == 0, || {
        format!("exited {}: {}", run.code, run.stderr)
    })?;
    let agg = run.last();
    ensure(agg["l_uniform"] == 2, || format!("{agg}"))?;
    let rows = run.of_kind("row");
    for row in &rows {
        ensure(
            row["colon"] == "ok" && row["intersection"] == "ok" && row["components"] == "ok",
            || format!("row {row}"),
        )?;
    }
    let x_max = rows
        .iter()
        .filter(|r| r["j"] == json!(["x"]))
        .filter_map(|r| r["l"].as_u64())
        .max();
    ensure(x_max == Some(2), || format!("J=(x) reaches l={x_max:?}"))?;
    Ok(format!(
        "l_uniform = 2 over {} battery rows, every check ok",
        rows.len()
    ))
}

fn random_proper<R: Rng>(rng: &mut R, dim: usize) -> MonomialIdeal {
    loop {
        let i = random_ideal(rng, dim, 1, 6, 5);
        if !i.is_unit() {
            return i;
        }
    }
}

fn criterion_6() -> Verdict {
    let mut rng = ChaCha8Rng::seed_from_u64(33);
    for case in 0..500 {
        let dim = rng.gen_range(1..=3);
        let i = random_proper(&mut rng, dim);
        let j = random_ideal(&mut rng, dim, 1, 6, 5);
        let via = h0_via_components(&i, &j).map_err(|e| e.to_string())?;
        let (sat, _) = h0(&i, &j).map_err(|e| e.to_string())?;
        ensure(via == sat, || format!("case {case}: I = {i}, J = {j}"))?;
    }
    Ok("component formula equals saturation on 500 random pairs".into())
}

fn criterion_7() -> Verdict {
    let mut rng = ChaCha8Rng::seed_from_u64(77);
    let mut mixes = 0u64;
    for case in 0..200 {
        let dim = rng.gen_range(1..=3);
        let i = random_proper(&mut rng, dim);
        let a = primary_decomposition_with(&i, SplitOrder::Canonical).map_err(|e| e.to_string())?;
        let b = primary_decomposition_with(&i, SplitOrder::Reversed).map_err(|e| e.to_string())?;
        // A third source with genuinely different components at most primes.
        let k = required_k(&i, 64).map_err(|e| e.to_string())? + 1;
        let c = bounded_decomposition(&i, k).map_err(|e| e.to_string())?;
        let sources = [
            a.picks(),
            b.picks(),
            c.components
                .iter()
                .map(|x| (x.prime.clone(), x.component.clone()))
                .collect(),
        ];
        let primes: Vec<_> = associated_primes(&i)
            .map_err(|e| e.to_string())?
            .into_iter()
            .collect();
        let width = primes.len().min(6) as u32;
        for code in 0..3u64.pow(width) {
            let picks = primes
                .iter()
                .enumerate()
                .map(|(idx, p)| {
                    let src = (code / 3u64.pow(idx as u32 % width)) % 3;
                    (p.clone(), sources[src as usize][p].clone())
                })
                .collect();
            let d = assemble(&i, &picks).map_err(|e| format!("case {case}: {i}: {e}"))?;
            ensure(d.irredundant && d.minimal, || {
                format!("case {case}: {i} flags")
            })?;
            mixes += 1;
        }
    }
    Ok(format!(
        "{mixes} mixes over 200 random ideals all assemble irredundant and minimal"
    ))
}

fn criterion_8() -> Verdict {
    let started = Instant::now();
    let run = upd(&["oracle-check", "--seed", "42", "--cases", "500"]);
    let elapsed = started.elapsed();
    ensure(run.code == 0, || {
        format!("exited {}: {}", run.code, run.stdout)
    })?;
    let names: BTreeSet<String> = run
        .of_kind("suite")
        .iter()
        .map(|s| s["name"].as_str().unwrap().to_owned())
        .collect();
    for op in [
        "sum",
        "product",
        "power",
        "intersect",
        "colon",
        "saturate",
        "radical",
        "decomposition",
    ] {
        ensure(names.contains(op), || format!("no suite for {op}"))?;
    }
    ensure(run.last()["failed"] == 0, || run.last().to_string())?;
    ensure(elapsed < Duration::from_secs(120), || {
        format!("took {elapsed:?}")
    })?;
    Ok(format!(
        "{} suites x 500 cases pass in {elapsed:?}",
        names.len()
    ))
}

fn main() {
    let criteria: [Criterion; 8] = [
        ("unbounded minimal exponent", criterion_1),
        ("bounded decomposition certificates", criterion_2),
        ("uniform k on graded families", criterion_3),
        ("affine negative control", criterion_4),
        ("uniform saturation exponent", criterion_5),
        ("saturation component formula", criterion_6),
        ("component compatibility", criterion_7),
        ("staircase oracle suite", criterion_8),
    ];
    let mut failed = 0;
    let stdout = std::io::stdout();
    let mut out = stdout.lock();
    for (idx, (name, check)) in criteria.iter().enumerate() {
        let (tag, detail) = match check() {
            Ok(d) => ("PASS", d),
            Err(d) => {
                failed += 1;
                ("FAIL", d)
            }
        };
        writeln!(out, "criterion {} [{tag}] {name}: {detail}", idx + 1).unwrap();
    }
    writeln!(
        out,
        "{} of {} criteria pass",
        criteria.len() - failed,
        criteria.len()
    )
    .unwrap();
    if failed > 0 {
        std::process::exit(1);
    }
}
