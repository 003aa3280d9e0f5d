//! Seeded randomized suites checking the ideal algorithms against the
//! staircase oracle and the stated algebraic laws.
//!
//! Every case is drawn from one ChaCha stream seeded by the caller, so a
//! seed fixes the whole case sequence. A failing case is shrunk greedily
//! (dropping generators, lowering exponents) before it is reported.

use std::collections::{BTreeMap, BTreeSet};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::family::{FamilyBox, FamilySpec, GradedGenerator};
use crate::ideal::MonomialIdeal;
use crate::monomial::{Monomial, RingContext};
use crate::primary::{
    assemble, associated_primes, irreducible_decomposition_with, is_irredundant, is_primary,
    primary_decomposition_with, PrimaryComponent, SplitOrder,
};
use crate::staircase::{monomials_up_to, oracle_degree, staircase};
use crate::theorem::{
    bounded_decomposition, default_cap, h0_via_components, k_min, required_k, verify_certificate,
};

pub fn random_monomial<R: Rng>(rng: &mut R, dim: usize, max_exp: u64) -> Monomial {
    Monomial::new((0..dim).map(|_| rng.gen_range(0..=max_exp)).collect())
}

/// A non-zero ideal with `min_gens..=max_gens` random generators (before
/// minimalization).
pub fn random_ideal<R: Rng>(
    rng: &mut R,
    dim: usize,
    min_gens: usize,
    max_gens: usize,
    max_exp: u64,
) -> MonomialIdeal {
    let count = rng.gen_range(min_gens.max(1)..=max_gens.max(1));
    MonomialIdeal::new(dim, (0..count).map(|_| random_monomial(rng, dim, max_exp)))
        .expect("fixed dimension")
}

/// A graded-quotient family with one parameter, `d ≤ max_dim` variables and
/// at most `max_gens` generators of `H`, all exponents `≤ max_exp`.
pub fn random_graded_spec<R: Rng>(
    rng: &mut R,
    max_dim: usize,
    max_gens: usize,
    max_exp: u64,
) -> FamilySpec {
    let dim = rng.gen_range(1..=max_dim);
    let ctx =
        RingContext::new(["x", "y", "z", "w", "v"].iter().take(dim).copied()).expect("fixed names");
    let count = rng.gen_range(1..=max_gens);
    let gens = (0..count)
        .map(|_| GradedGenerator {
            base: random_monomial(rng, dim, max_exp),
            threshold: vec![rng.gen_range(0..=max_exp)],
        })
        .collect();
    FamilySpec::graded(ctx, vec!["n".into()], gens).expect("well-formed")
}

/// Combinatorial primality test: a monomial ideal is primary iff every
/// variable occurring in a generator also has a pure power among the
/// generators. Returns the prime.
pub fn primary_by_pure_powers(q: &MonomialIdeal) -> Option<MonomialIdeal> {
    let occurring: BTreeSet<usize> = q
        .gens()
        .iter()
        .flat_map(|g| g.support().collect::<Vec<_>>())
        .collect();
    let pure: BTreeSet<usize> = q
        .gens()
        .iter()
        .filter(|g| g.is_pure_power())
        .flat_map(|g| g.support().collect::<Vec<_>>())
        .collect();
    (occurring == pure).then(|| MonomialIdeal::prime_from_indices(q.dim(), occurring))
}

/// Inputs for one case of every suite.
#[derive(Debug, Clone)]
pub struct Case {
    pub ideals: [MonomialIdeal; 3],
    pub k: u64,
    pub mix_seed: u64,
}

impl Case {
    fn draw<R: Rng>(rng: &mut R) -> Self {
        let dim = rng.gen_range(1..=3);
        let draw = |rng: &mut R| random_ideal(rng, dim, 1, 6, 5);
        let ideals = [draw(rng), draw(rng), draw(rng)];
        Case {
            ideals,
            k: rng.gen_range(0..=3),
            mix_seed: rng.gen(),
        }
    }

    pub fn dim(&self) -> usize {
        self.ideals[0].dim()
    }

    /// The case as JSON: each ideal in the inline ideal format.
    pub fn to_json(&self) -> serde_json::Value {
        let names = ["x", "y", "z"];
        let ctx = RingContext::new(names.iter().take(self.dim()).copied()).expect("fixed names");
        let ideals: Vec<_> = self
            .ideals
            .iter()
            .map(|i| crate::family::ideal_to_json(&ctx, i))
            .collect();
        serde_json::json!({ "ideals": ideals, "k": self.k, "mix_seed": self.mix_seed })
    }

    /// Smaller variants: one generator dropped, or one exponent lowered.
    fn shrink_candidates(&self) -> Vec<Case> {
        let mut out = Vec::new();
        for (slot, ideal) in self.ideals.iter().enumerate() {
            let gens = ideal.gens();
            for drop in 0..gens.len() {
                if gens.len() > 1 {
                    let rest = gens
                        .iter()
                        .enumerate()
                        .filter(|&(i, _)| i != drop)
                        .map(|(_, g)| g.clone());
                    out.push(self.with(
                        slot,
                        MonomialIdeal::new(ideal.dim(), rest).expect("same dim"),
                    ));
                }
                for v in gens[drop].support().collect::<Vec<_>>() {
                    let mut e = gens[drop].exponents().to_vec();
                    e[v] -= 1;
                    let mut new_gens = gens.to_vec();
                    new_gens[drop] = Monomial::new(e);
                    out.push(self.with(
                        slot,
                        MonomialIdeal::new(ideal.dim(), new_gens).expect("same dim"),
                    ));
                }
            }
        }
        if self.k > 0 {
            out.push(Case {
                k: self.k - 1,
                ..self.clone()
            });
        }
        out
    }

    fn with(&self, slot: usize, ideal: MonomialIdeal) -> Case {
        let mut c = self.clone();
        c.ideals[slot] = ideal;
        c
    }
}

type Check = fn(&Case) -> Result<(), String>;

/// Every suite, in reporting order.
pub const SUITES: &[(&str, Check)] = &[
    ("minimalize", check_minimalize),
    ("sum", check_sum),
    ("product", check_product),
    ("power", check_power),
    ("intersect", check_intersect),
    ("colon", check_colon),
    ("saturate", check_saturate),
    ("radical", check_radical),
    ("lattice-laws", check_lattice),
    ("decomposition", check_decomposition),
    ("h0-components", check_h0_components),
    ("compatibility", check_compatibility),
    ("k-min", check_k_min),
];

#[derive(Debug, Clone)]
pub struct SuiteResult {
    pub name: &'static str,
    pub passed: usize,
    pub failed: usize,
    /// Shrunk first failure and its message.
    pub counterexample: Option<(Case, String)>,
}

/// Runs `cases` cases of every suite plus the graded-family suite.
pub fn run_suites(seed: u64, cases: usize) -> Vec<SuiteResult> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let drawn: Vec<Case> = (0..cases).map(|_| Case::draw(&mut rng)).collect();
    let mut results: Vec<SuiteResult> = SUITES
        .iter()
        .map(|&(name, check)| {
            let mut result = SuiteResult {
                name,
                passed: 0,
                failed: 0,
                counterexample: None,
            };
            for case in &drawn {
                match check(case) {
                    Ok(()) => result.passed += 1,
                    Err(msg) => {
                        result.failed += 1;
                        if result.counterexample.is_none() {
                            result.counterexample = Some(shrink(check, case.clone(), msg));
                        }
                    }
                }
            }
            result
        })
        .collect();
    results.push(run_family_suite(&mut rng, cases));
    results
}

fn shrink(check: Check, mut case: Case, mut msg: String) -> (Case, String) {
    'outer: loop {
        for candidate in case.shrink_candidates() {
            if let Err(m) = check(&candidate) {
                case = candidate;
                msg = m;
                continue 'outer;
            }
        }
        return (case, msg);
    }
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn check_minimalize(c: &Case) -> Result<(), String> {
    let i = &c.ideals[0];
    let again = MonomialIdeal::new(i.dim(), i.gens().iter().cloned()).expect("same dim");
    ensure(again == *i, || format!("not idempotent: {i} vs {again}"))?;
    let mut gens: Vec<Monomial> = i.gens().to_vec();
    let extra: Vec<Monomial> = gens.iter().map(|g| g.mul(&c.ideals[1].gens()[0])).collect();
    gens.extend(extra);
    let mut rng = ChaCha8Rng::seed_from_u64(c.mix_seed);
    gens.shuffle(&mut rng);
    let shuffled = MonomialIdeal::new(i.dim(), gens).expect("same dim");
    ensure(shuffled == *i, || {
        format!("order-dependent: {i} vs {shuffled}")
    })?;
    for (a, b) in i.gens().iter().zip(i.gens().iter().skip(1)) {
        ensure(a < b, || format!("generators out of order in {i}"))?;
    }
    ensure(
        i.gens().iter().enumerate().all(|(x, a)| {
            i.gens()
                .iter()
                .enumerate()
                .all(|(y, b)| x == y || !a.divides(b))
        }),
        || format!("{i} is not minimal"),
    )
}

fn check_sum(c: &Case) -> Result<(), String> {
    let [i, j, _] = &c.ideals;
    let d = oracle_degree([i, j]);
    let got = staircase(&i.sum(j), d);
    let want: BTreeSet<_> = staircase(i, d).union(&staircase(j, d)).cloned().collect();
    ensure(got == want, || {
        format!("sum of {i} and {j} disagrees with the oracle")
    })
}

fn check_product(c: &Case) -> Result<(), String> {
    let [i, j, _] = &c.ideals;
    let d = oracle_degree([i, j]);
    let got = staircase(&i.product(j), d);
    let want: BTreeSet<_> = monomials_up_to(i.dim(), d)
        .into_iter()
        .filter(|m| {
            i.gens()
                .iter()
                .any(|g| j.gens().iter().any(|h| g.mul(h).divides(m)))
        })
        .collect();
    ensure(got == want, || {
        format!("product of {i} and {j} disagrees with the oracle")
    })
}

fn check_power(c: &Case) -> Result<(), String> {
    let i = &c.ideals[0];
    let d = c.k * i.max_degree() as u64 + 2;
    let mut products: BTreeSet<Monomial> = [Monomial::one(i.dim())].into();
    for _ in 0..c.k {
        products = products
            .iter()
            .flat_map(|p| i.gens().iter().map(move |g| p.mul(g)))
            .collect();
    }
    let got = staircase(&i.power(c.k), d);
    let want: BTreeSet<_> = monomials_up_to(i.dim(), d)
        .into_iter()
        .filter(|m| products.iter().any(|p| p.divides(m)))
        .collect();
    ensure(got == want, || {
        format!("{i}^{} disagrees with the oracle", c.k)
    })
}

fn check_intersect(c: &Case) -> Result<(), String> {
    let [i, j, _] = &c.ideals;
    let d = oracle_degree([i, j]);
    let got = staircase(&i.intersect(j), d);
    let want: BTreeSet<_> = staircase(i, d)
        .intersection(&staircase(j, d))
        .cloned()
        .collect();
    ensure(got == want, || {
        format!("intersection of {i} and {j} disagrees with the oracle")
    })
}

fn check_colon(c: &Case) -> Result<(), String> {
    let [i, j, _] = &c.ideals;
    let d = oracle_degree([i, j]);
    let got = staircase(&i.colon(j).map_err(|e| e.to_string())?, d);
    let want: BTreeSet<_> = monomials_up_to(i.dim(), d)
        .into_iter()
        .filter(|m| j.gens().iter().all(|g| i.contains(&m.mul(g))))
        .collect();
    ensure(got == want, || {
        format!("({i} : {j}) disagrees with the oracle")
    })
}

fn check_saturate(c: &Case) -> Result<(), String> {
    let [i, j, _] = &c.ideals;
    let (sat, l) = i.saturate(j).map_err(|e| e.to_string())?;
    let d = oracle_degree([i]);
    // m ∈ (I : g^∞) iff some generator of I divides m off the support of g.
    let want: BTreeSet<_> = monomials_up_to(i.dim(), d)
        .into_iter()
        .filter(|m| {
            j.gens().iter().all(|g| {
                i.gens().iter().any(|h| {
                    (0..i.dim())
                        .all(|v| g.exponents()[v] > 0 || h.exponents()[v] <= m.exponents()[v])
                })
            })
        })
        .collect();
    ensure(staircase(&sat, d) == want, || {
        format!("({i} : {j}^∞) disagrees with the oracle")
    })?;
    let colon_at = |l: usize| i.colon(&j.power(l as u64)).expect("non-zero");
    ensure(colon_at(l) == sat, || {
        format!("({i} : {j}^{l}) is not the saturation")
    })?;
    ensure(l == 0 || colon_at(l - 1) != sat, || {
        format!("index {l} for ({i} : {j}^∞) is not least")
    })?;
    let (again, l2) = sat.saturate(j).expect("non-zero");
    ensure(again == sat && l2 == 0, || {
        format!("saturation of {i} by {j} is not idempotent")
    })
}

fn check_radical(c: &Case) -> Result<(), String> {
    let i = &c.ideals[0];
    let e = i.max_exponents().into_iter().max().unwrap_or(0).max(1);
    let d = oracle_degree([i]);
    let want: BTreeSet<_> = monomials_up_to(i.dim(), d)
        .into_iter()
        .filter(|m| i.contains(&m.pow(e)))
        .collect();
    ensure(staircase(&i.radical(), d) == want, || {
        format!("radical of {i} disagrees with the oracle")
    })
}

fn check_lattice(c: &Case) -> Result<(), String> {
    let [i, j, k] = &c.ideals;
    ensure(i.sum(j) == j.sum(i), || "sum not commutative".into())?;
    ensure(i.intersect(j) == j.intersect(i), || {
        "intersection not commutative".into()
    })?;
    ensure(i.sum(&j.sum(k)) == i.sum(j).sum(k), || {
        "sum not associative".into()
    })?;
    ensure(
        i.intersect(&j.intersect(k)) == i.intersect(j).intersect(k),
        || "intersection not associative".into(),
    )?;
    ensure(i.sum(i) == *i && i.intersect(i) == *i, || {
        "not idempotent".into()
    })?;
    let meet = i.intersect(j);
    let join = i.sum(j);
    ensure(meet.is_subset(i) && i.is_subset(&join), || {
        format!("{meet} ⊆ {i} ⊆ {join} fails")
    })?;
    let eq = i == j;
    ensure(eq == (i.is_subset(j) && j.is_subset(i)), || {
        "equality disagrees with containment".into()
    })?;
    let colon = i.colon(j).expect("non-zero");
    ensure(i.is_subset(&colon), || {
        format!("{i} not inside ({i} : {j})")
    })?;
    let nested = colon.colon(k).expect("non-zero");
    ensure(nested == i.colon(&j.product(k)).expect("non-zero"), || {
        format!("(({i} : {j}) : {k}) differs from ({i} : {j}{k})")
    })
}

fn check_decomposition(c: &Case) -> Result<(), String> {
    let i = &c.ideals[0];
    if i.is_unit() {
        return Ok(());
    }
    let d = oracle_degree([i]);
    let target = staircase(i, d);
    let irr =
        irreducible_decomposition_with(i, SplitOrder::Canonical).map_err(|e| e.to_string())?;
    ensure(irr.iter().all(MonomialIdeal::is_irreducible), || {
        format!("non-irreducible component of {i}")
    })?;
    let meet = irr
        .iter()
        .map(|q| staircase(q, d))
        .reduce(|a, b| a.intersection(&b).cloned().collect())
        .unwrap_or_default();
    ensure(meet == target, || {
        format!("irreducible components of {i} disagree with the oracle")
    })?;
    ensure(
        irr.iter().enumerate().all(|(x, a)| {
            irr.iter()
                .enumerate()
                .all(|(y, b)| x == y || !a.is_subset(b))
        }),
        || format!("irreducible decomposition of {i} is redundant"),
    )?;
    let mut other =
        irreducible_decomposition_with(i, SplitOrder::Reversed).map_err(|e| e.to_string())?;
    let mut sorted = irr.clone();
    sorted.sort();
    other.sort();
    ensure(sorted == other, || format!("split orders disagree on {i}"))?;

    let pd = primary_decomposition_with(i, SplitOrder::Canonical).map_err(|e| e.to_string())?;
    let meet = pd
        .components
        .iter()
        .map(|c| staircase(&c.component, d))
        .reduce(|a, b| a.intersection(&b).cloned().collect())
        .unwrap_or_default();
    ensure(meet == target, || {
        format!("primary components of {i} disagree with the oracle")
    })?;
    ensure(pd.irredundant && pd.minimal, || {
        format!("flags false for {i}")
    })?;
    ensure(is_irredundant(i, &pd.components), || {
        format!("primary decomposition of {i} is redundant")
    })?;
    for comp in &pd.components {
        let p = is_primary(&comp.component).map_err(|e| e.to_string())?;
        ensure(p.as_ref() == Some(&comp.prime), || {
            format!("{} is not {}-primary", comp.component, comp.prime)
        })?;
        if !comp.component.is_zero() {
            ensure(primary_by_pure_powers(&comp.component) == p, || {
                format!("primality tests disagree on {}", comp.component)
            })?;
        }
    }
    let primes: BTreeSet<_> = pd.primes().cloned().collect();
    ensure(
        primes == associated_primes(i).map_err(|e| e.to_string())?,
        || format!("primes of {i} differ from Ass"),
    )?;
    let mut gens = i.gens().to_vec();
    gens.reverse();
    let permuted = MonomialIdeal::new(i.dim(), gens).expect("same dim");
    ensure(associated_primes(&permuted) == associated_primes(i), || {
        "Ass depends on generator order".into()
    })
}

fn check_h0_components(c: &Case) -> Result<(), String> {
    let [i, j, _] = &c.ideals;
    if i.is_unit() {
        return Ok(());
    }
    let via = h0_via_components(i, j).map_err(|e| e.to_string())?;
    let (sat, _) = i.saturate(j).map_err(|e| e.to_string())?;
    ensure(via == sat, || {
        format!("components give {via}, saturation gives {sat} for ({i} : {j}^∞)")
    })
}

/// Per-prime components of `i` from several independent routes.
fn component_sources(
    i: &MonomialIdeal,
) -> Result<Vec<BTreeMap<MonomialIdeal, MonomialIdeal>>, String> {
    let mut sources = Vec::new();
    for order in [SplitOrder::Canonical, SplitOrder::Reversed] {
        sources.push(
            primary_decomposition_with(i, order)
                .map_err(|e| e.to_string())?
                .picks(),
        );
    }
    let k = required_k(i, default_cap(i)).map_err(|e| e.to_string())?;
    for extra in 0..2 {
        let cert = bounded_decomposition(i, k + extra).map_err(|e| e.to_string())?;
        sources.push(
            cert.components
                .into_iter()
                .map(|PrimaryComponent { prime, component }| (prime, component))
                .collect(),
        );
    }
    Ok(sources)
}

fn check_compatibility(c: &Case) -> Result<(), String> {
    let i = &c.ideals[0];
    if i.is_unit() {
        return Ok(());
    }
    let sources = component_sources(i)?;
    let primes: Vec<MonomialIdeal> = sources[0].keys().cloned().collect();
    for s in &sources[1..] {
        ensure(s.keys().eq(primes.iter()), || {
            format!("sources disagree on Ass({i})")
        })?;
    }
    // Components of minimal primes are unique.
    for p in primes
        .iter()
        .filter(|p| !primes.iter().any(|q| q != *p && q.is_subset(p)))
    {
        ensure(sources.iter().all(|s| s[p] == sources[0][p]), || {
            format!("minimal component for {p} of {i} is not unique")
        })?;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(c.mix_seed);
    for _ in 0..8 {
        let picks: BTreeMap<_, _> = primes
            .iter()
            .map(|p| {
                (
                    p.clone(),
                    sources[rng.gen_range(0..sources.len())][p].clone(),
                )
            })
            .collect();
        let d = assemble(i, &picks).map_err(|e| format!("mixing components of {i}: {e}"))?;
        ensure(d.irredundant && d.minimal, || {
            format!("mixed decomposition of {i} has false flags")
        })?;
    }
    Ok(())
}

fn check_k_min(c: &Case) -> Result<(), String> {
    let i = &c.ideals[0];
    if i.is_unit() {
        return Ok(());
    }
    let cap = default_cap(i);
    for p in associated_primes(i)
        .map_err(|e| e.to_string())?
        .iter()
        .filter(|p| !p.is_zero())
    {
        let k = k_min(i, p, cap).map_err(|e| e.to_string())?;
        let (sat, _) = i.saturate(p).expect("non-zero prime");
        let pred = |k: u64| p.power(k).sum(i).intersect(&sat) == *i;
        ensure(k == 1 || !pred(k - 1), || {
            format!("k_min for {p} on {i} is not least")
        })?;
        ensure((k..k + 4).all(pred), || {
            format!("predicate for {p} on {i} is not monotone")
        })?;
    }
    let k = required_k(i, cap).map_err(|e| e.to_string())?;
    let cert = bounded_decomposition(i, k).map_err(|e| e.to_string())?;
    ensure(verify_certificate(&cert).all(), || {
        format!("certificate for {i} at k = {k} fails")
    })
}

fn run_family_suite(rng: &mut ChaCha8Rng, cases: usize) -> SuiteResult {
    let mut result = SuiteResult {
        name: "graded-family",
        passed: 0,
        failed: 0,
        counterexample: None,
    };
    let bx = FamilyBox::single(0, 6).expect("valid box");
    for _ in 0..cases {
        let spec = random_graded_spec(rng, 3, 5, 4);
        let ideals: Vec<MonomialIdeal> = spec.iterate(&bx).map(|r| r.expect("graded").1).collect();
        let monotone = ideals.windows(2).all(|w| w[0].is_subset(&w[1]));
        let pointwise = bx
            .points()
            .zip(&ideals)
            .all(|(n, i)| spec.evaluate(&n).as_ref() == Ok(i));
        if monotone && pointwise {
            result.passed += 1;
        } else {
            result.failed += 1;
            // Family cases are not shrunk; the message carries the family JSON.
            result.counterexample.get_or_insert_with(|| {
                let dim = spec.context().dim();
                let case = Case {
                    ideals: [
                        MonomialIdeal::zero(dim),
                        MonomialIdeal::zero(dim),
                        MonomialIdeal::zero(dim),
                    ],
                    k: 0,
                    mix_seed: 0,
                };
                (case, format!("family {} is not monotone", spec.to_json()))
            });
        }
    }
    result
}
