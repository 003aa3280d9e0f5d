//! Support for the acceptance target: an in-process runner for the `upd`
//! commands and brute-force membership oracles that use no ideal arithmetic.

use std::path::PathBuf;

use serde_json::{json, Value};
use upd_core::family::parse_ideal;
use upd_core::staircase::monomials_up_to;
use upd_core::{Monomial, MonomialIdeal, RingContext};

pub struct Run {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Run {
    pub fn lines(&self) -> Vec<Value> {
        self.stdout
            .lines()
            .map(|l| serde_json::from_str(l).expect("stdout is JSON lines"))
            .collect()
    }

    pub fn last(&self) -> Value {
        self.lines().pop().expect("at least one line")
    }

    pub fn of_kind(&self, kind: &str) -> Vec<Value> {
        self.lines()
            .into_iter()
            .filter(|v| v["kind"] == kind)
            .collect()
    }

    /// Stderr diagnostics other than timing.
    pub fn diagnostics(&self) -> Vec<Value> {
        self.stderr
            .lines()
            .map(|l| serde_json::from_str::<Value>(l).expect("stderr is JSON lines"))
            .filter(|v| v["kind"] != "timing")
            .collect()
    }
}

/// Runs `upd <args>` in-process; the exit code is what the binary would return.
pub fn upd(args: &[&str]) -> Run {
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let code = upd_cli::run(
        std::iter::once("upd").chain(args.iter().copied()),
        &mut out,
        &mut err,
    );
    Run {
        code,
        stdout: String::from_utf8(out).expect("utf-8"),
        stderr: String::from_utf8(err).expect("utf-8"),
    }
}

/// Path of a file in the workspace's `families/` directory.
pub fn family(name: &str) -> String {
    let path: PathBuf = [env!("CARGO_MANIFEST_DIR"), "..", "..", "families", name]
        .iter()
        .collect();
    path.to_str().expect("utf-8 path").to_owned()
}

pub fn strings(v: &Value) -> Vec<String> {
    v.as_array()
        .expect("array")
        .iter()
        .map(|s| s.as_str().expect("string").to_owned())
        .collect()
}

/// Rendered generators (`["x^2", "x*y"]`) back to an ideal.
pub fn from_gens(ctx: &RingContext, v: &Value) -> MonomialIdeal {
    let gens: Vec<Value> = strings(v)
        .iter()
        .map(|g| {
            let mut obj = serde_json::Map::new();
            if g != "1" {
                for factor in g.split('*') {
                    let (var, e) = factor.split_once('^').unwrap_or((factor, "1"));
                    obj.insert(var.to_owned(), json!(e.parse::<u64>().expect("exponent")));
                }
            }
            Value::Object(obj)
        })
        .collect();
    parse_ideal(&Value::Array(gens).to_string(), Some(ctx))
        .expect("rendered generators parse")
        .1
}

/// Variable indices of a monomial prime.
pub fn vars_of(prime: &MonomialIdeal) -> Vec<usize> {
    prime
        .gens()
        .iter()
        .map(|g| g.support().next().expect("prime generator is a variable"))
        .collect()
}

pub fn in_ideal(i: &MonomialIdeal, m: &Monomial) -> bool {
    i.gens().iter().any(|g| g.divides(m))
}

/// `m ∈ P^k` for the prime on `vars`.
pub fn in_prime_power(vars: &[usize], k: u64, m: &Monomial) -> bool {
    vars.iter().map(|&v| m.exponents()[v]).sum::<u64>() >= k
}

/// `m ∈ (I : P^∞)` iff `m v^big ∈ I` for each variable `v` of `P`, once
/// `big` exceeds every exponent in the generators of `I`.
pub fn in_saturation(i: &MonomialIdeal, vars: &[usize], m: &Monomial, big: u64) -> bool {
    vars.iter().all(|&v| {
        let mut e = m.exponents().to_vec();
        e[v] += big;
        in_ideal(i, &Monomial::new(e))
    })
}

/// Least `k ≤ max_k` with `(P^k + I) ∩ (I : P^∞) = I`, by enumeration up to
/// a degree that bounds every generator of either side.
pub fn brute_k_min(i: &MonomialIdeal, prime: &MonomialIdeal, max_k: u64) -> Option<u64> {
    let vars = vars_of(prime);
    let deg = i.max_degree() as u64;
    (1..=max_k).find(|&k| {
        monomials_up_to(i.dim(), k + 2 * deg + 2).iter().all(|m| {
            let lhs = (in_prime_power(&vars, k, m) || in_ideal(i, m))
                && in_saturation(i, &vars, m, deg + 1);
            lhs == in_ideal(i, m)
        })
    })
}
