//! Zeroth local cohomology `H_J^0(A/I(n))` across a family.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::h0;
use crate::error::{EngineError, IdealError};
use crate::family::{FamilyBox, FamilySpec};
use crate::ideal::MonomialIdeal;
use crate::oracle::random_ideal;
use crate::primary::primary_decomposition;

/// `H_J^0(A/I)` as the intersection of the primary components of `I` whose
/// prime does not contain `J`. The empty intersection is `(1)`.
pub fn h0_via_components(
    ideal: &MonomialIdeal,
    j: &MonomialIdeal,
) -> Result<MonomialIdeal, IdealError> {
    if j.is_zero() {
        return Err(IdealError::ZeroDivisor);
    }
    let decomp = primary_decomposition(ideal)?;
    Ok(MonomialIdeal::intersect_all(
        ideal.dim(),
        decomp
            .components
            .iter()
            .filter(|c| !j.is_subset(&c.prime))
            .map(|c| &c.component),
    ))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct H0Row {
    pub n: Vec<u64>,
    /// Index into the list of test ideals.
    pub j_index: usize,
    pub ideal: MonomialIdeal,
    pub l: usize,
    pub sat: MonomialIdeal,
    /// `(I(n) : J^{l_uniform}) = sat`.
    pub colon_ok: bool,
    /// `(J^{l_uniform} + I(n)) ∩ sat = I(n)`.
    pub intersection_ok: bool,
    /// [`h0_via_components`] agrees with `sat`.
    pub components_ok: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct H0Report {
    pub rows: Vec<H0Row>,
    pub l_uniform: usize,
}

impl H0Report {
    pub fn all_colon_ok(&self) -> bool {
        self.rows.iter().all(|r| r.colon_ok)
    }

    pub fn all_intersection_ok(&self) -> bool {
        self.rows.iter().all(|r| r.intersection_ok)
    }

    pub fn all_components_ok(&self) -> bool {
        self.rows.iter().all(|r| r.components_ok)
    }

    /// Rows where the intersection identity holds but the colon identity
    /// does not. The former implies the latter, so any such row is a bug.
    pub fn inconsistent_rows(&self) -> impl Iterator<Item = &H0Row> {
        self.rows
            .iter()
            .filter(|r| r.intersection_ok && !r.colon_ok)
    }
}

/// `I(n)` and `(sat, l)` for each test ideal.
pub type H0Stage = (MonomialIdeal, Vec<(MonomialIdeal, usize)>);

/// First stage of [`verify_h0_uniform`] at one point: `(sat, l)` for every
/// test ideal. `None` when `I(n) = (1)`.
pub fn h0_point(
    spec: &FamilySpec,
    n: &[u64],
    test_ideals: &[MonomialIdeal],
    cap: Option<u64>,
) -> Result<Option<H0Stage>, EngineError> {
    let wrap = |e: EngineError| e.at(n);
    let ideal = spec.evaluate(n).map_err(|e| wrap(e.into()))?;
    if ideal.is_unit() {
        return Ok(None);
    }
    let mut out = Vec::with_capacity(test_ideals.len());
    for j in test_ideals {
        let (sat, l) = h0(&ideal, j).map_err(|e| wrap(e.into()))?;
        if let Some(cap) = cap {
            if l as u64 > cap {
                return Err(wrap(EngineError::CapExceeded {
                    cap,
                    prime: j.clone(),
                }));
            }
        }
        out.push((sat, l));
    }
    Ok(Some((ideal, out)))
}

/// Second stage: with `l_uniform` known, fill in the three checks.
pub fn h0_rows(
    n: &[u64],
    ideal: &MonomialIdeal,
    test_ideals: &[MonomialIdeal],
    sats: Vec<(MonomialIdeal, usize)>,
    l_uniform: usize,
) -> Result<Vec<H0Row>, EngineError> {
    test_ideals
        .iter()
        .zip(sats)
        .enumerate()
        .map(|(j_index, (j, (sat, l)))| {
            let j_pow = j.power(l_uniform as u64);
            let colon_ok = ideal.colon(&j_pow)? == sat;
            let intersection_ok = j_pow.sum(ideal).intersect(&sat) == *ideal;
            let components_ok = h0_via_components(ideal, j)? == sat;
            Ok(H0Row {
                n: n.to_vec(),
                j_index,
                ideal: ideal.clone(),
                l,
                sat,
                colon_ok,
                intersection_ok,
                components_ok,
            })
        })
        .collect::<Result<_, EngineError>>()
        .map_err(|e: EngineError| e.at(n))
}

/// Finds the smallest `l` with `(I(n) : J^l) = (I(n) : J^∞)` for every
/// point of the box and every test ideal, then checks that identity, the
/// intersection form `(J^l + I(n)) ∩ (I(n) : J^∞) = I(n)`, and the
/// component formula for the saturation, row by row.
///
/// The intersection form needs `l` at least the uniform `k` of the family;
/// it can fail while the colon identity holds.
pub fn verify_h0_uniform(
    spec: &FamilySpec,
    bx: &FamilyBox,
    test_ideals: &[MonomialIdeal],
    cap: Option<u64>,
) -> Result<H0Report, EngineError> {
    if test_ideals.iter().any(MonomialIdeal::is_zero) {
        return Err(IdealError::ZeroDivisor.into());
    }
    let mut staged = Vec::new();
    for n in bx.points() {
        if let Some(stage) = h0_point(spec, &n, test_ideals, cap)? {
            staged.push((n, stage));
        }
    }
    let l_uniform = staged
        .iter()
        .flat_map(|(_, (_, sats))| sats.iter().map(|s| s.1))
        .max()
        .unwrap_or(0);
    let mut rows = Vec::new();
    for (n, (ideal, sats)) in staged {
        rows.extend(h0_rows(&n, &ideal, test_ideals, sats, l_uniform)?);
    }
    Ok(H0Report { rows, l_uniform })
}

/// Every non-zero monomial prime in `dim` variables, then `extra` seeded
/// random non-zero monomial ideals.
pub fn battery(dim: usize, extra: usize, seed: u64) -> Vec<MonomialIdeal> {
    let mut out: Vec<MonomialIdeal> = (1u64..(1 << dim))
        .map(|mask| MonomialIdeal::prime_from_indices(dim, (0..dim).filter(|i| mask >> i & 1 == 1)))
        .collect();
    out.sort();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    out.extend((0..extra).map(|_| random_ideal(&mut rng, dim, 1, 4, 3)));
    out
}

/// Checks `(P^m + I(n)) ∩ (I(n) : P^∞) = I(n)` for every point of the box,
/// every prime in the box's union of associated primes and every
/// `m ∈ [k, k + window]`.
pub fn artin_rees_consequence(
    spec: &FamilySpec,
    bx: &FamilyBox,
    k: u64,
    window: u64,
) -> Result<bool, EngineError> {
    let (primes, _) = spec.ass_union(bx)?;
    for item in spec.iterate(bx) {
        let (_, ideal) = item?;
        if ideal.is_unit() {
            continue;
        }
        for prime in primes.iter().filter(|p| !p.is_zero()) {
            let (sat, _) = h0(&ideal, prime)?;
            let mut shifted = prime.power(k).sum(&ideal);
            for _ in k..=k + window {
                if shifted.intersect(&sat) != ideal {
                    return Ok(false);
                }
                shifted = shifted.product(prime).sum(&ideal);
            }
        }
    }
    Ok(true)
}
