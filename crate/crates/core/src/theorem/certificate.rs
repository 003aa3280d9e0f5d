//! Primary decompositions whose `P`-primary component contains `P^k`.
//!
//! For each associated prime `P` of `I`:
//!
//! * if `(I : P^∞) = (1)`, every element of `A/I` is `P`-torsion and
//!   `P^k + I = I` must already hold, so any `P`-primary component of `I`
//!   works and the standard one is taken;
//! * otherwise `P` is associated to `A/(P^k + I)` and the `P`-primary
//!   component of `P^k + I` is taken.
//!
//! The picks are then assembled into a decomposition of `I` and every claim
//! is re-checked by [`verify_certificate`].

use std::collections::BTreeMap;

use super::{h0, k_min};
use crate::error::{AssembleError, EngineError, IdealError};
use crate::ideal::MonomialIdeal;
use crate::primary::{
    assemble, associated_primes, has_distinct_primes, is_irredundant, is_primary,
    primary_decomposition, PrimaryComponent,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct CertificateChecks {
    /// `∩ Q_i = I`.
    pub intersection_ok: bool,
    /// `P_i^k + I ⊆ Q_i` for every `i`.
    pub power_containment_ok: bool,
    /// No component can be dropped.
    pub irredundant_ok: bool,
    /// Primes are distinct, are exactly `Ass(A/I)`, and each `Q_i` is
    /// `P_i`-primary.
    pub minimal_ok: bool,
}

impl CertificateChecks {
    pub fn all(&self) -> bool {
        self.intersection_ok && self.power_containment_ok && self.irredundant_ok && self.minimal_ok
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundedCertificate {
    pub n: Vec<u64>,
    pub ideal: MonomialIdeal,
    pub k: u64,
    pub components: Vec<PrimaryComponent>,
    pub checks: CertificateChecks,
}

impl BoundedCertificate {
    pub fn at(mut self, n: &[u64]) -> Self {
        self.n = n.to_vec();
        self
    }
}

fn too_small(k: u64, prime: Option<&MonomialIdeal>, reason: &str) -> EngineError {
    EngineError::KTooSmall {
        k,
        prime: prime.cloned(),
        reason: reason.into(),
    }
}

pub fn bounded_decomposition(
    ideal: &MonomialIdeal,
    k: u64,
) -> Result<BoundedCertificate, EngineError> {
    if ideal.is_unit() {
        return Err(IdealError::UnitIdeal.into());
    }
    if k == 0 {
        return Err(too_small(0, None, "k must be positive"));
    }
    let components = if ideal.is_zero() {
        vec![PrimaryComponent {
            prime: ideal.clone(),
            component: ideal.clone(),
        }]
    } else {
        let mut picks = BTreeMap::new();
        let mut standard = None;
        for prime in associated_primes(ideal)? {
            let (sat, _) = h0(ideal, &prime)?;
            let shifted = prime.power(k).sum(ideal);
            let pick = if sat.is_unit() {
                if shifted != *ideal {
                    return Err(too_small(
                        k,
                        Some(&prime),
                        "A/I is P-torsion but P^k + I differs from I",
                    ));
                }
                let standard = match &standard {
                    Some(d) => d,
                    None => standard.insert(primary_decomposition(ideal)?),
                };
                standard
                    .component_for(&prime)
                    .expect("associated prime has a component")
                    .clone()
            } else {
                let shifted_decomp = primary_decomposition(&shifted)?;
                match shifted_decomp.component_for(&prime) {
                    Some(q) => q.clone(),
                    None => {
                        return Err(too_small(k, Some(&prime), "P is not associated to P^k + I"))
                    }
                }
            };
            picks.insert(prime, pick);
        }
        match assemble(ideal, &picks) {
            Ok(d) => d.components,
            Err(AssembleError::IntersectionMismatch(_)) => {
                return Err(too_small(
                    k,
                    None,
                    "the picked components do not intersect to I",
                ))
            }
            Err(AssembleError::NotPrimary { prime }) => {
                return Err(too_small(
                    k,
                    Some(&prime),
                    "the pick for P is not P-primary",
                ))
            }
            Err(AssembleError::UnitIdeal) => return Err(IdealError::UnitIdeal.into()),
        }
    };
    let mut cert = BoundedCertificate {
        n: Vec::new(),
        ideal: ideal.clone(),
        k,
        components,
        checks: CertificateChecks::default(),
    };
    cert.checks = verify_certificate(&cert);
    if let Some(c) = cert
        .components
        .iter()
        .find(|c| !c.prime.power(k).sum(ideal).is_subset(&c.component))
    {
        return Err(too_small(
            k,
            Some(&c.prime),
            "the P-component does not contain P^k + I",
        ));
    }
    Ok(cert)
}

/// Recomputes every check from the certificate's data alone.
pub fn verify_certificate(cert: &BoundedCertificate) -> CertificateChecks {
    let ideal = &cert.ideal;
    let comps = &cert.components;
    let meet = MonomialIdeal::intersect_all(ideal.dim(), comps.iter().map(|c| &c.component));
    let power_containment_ok = comps
        .iter()
        .all(|c| c.prime.power(cert.k).sum(ideal).is_subset(&c.component));
    let primes_match = associated_primes(ideal)
        .map(|ass| {
            ass.into_iter().eq(comps
                .iter()
                .map(|c| c.prime.clone())
                .collect::<std::collections::BTreeSet<_>>())
        })
        .unwrap_or(false);
    let each_primary = comps.iter().all(|c| {
        !c.component.is_unit() && is_primary(&c.component).ok().flatten().as_ref() == Some(&c.prime)
    });
    CertificateChecks {
        intersection_ok: !comps.is_empty() && meet == *ideal,
        power_containment_ok,
        irredundant_ok: is_irredundant(ideal, comps),
        minimal_ok: has_distinct_primes(comps) && primes_match && each_primary,
    }
}

/// `k_min` over all associated primes: the smallest `k` accepted by
/// [`bounded_decomposition`] for this ideal.
pub fn required_k(ideal: &MonomialIdeal, cap: u64) -> Result<u64, EngineError> {
    associated_primes(ideal)?
        .iter()
        .map(|p| k_min(ideal, p, cap))
        .try_fold(1, |acc, k| k.map(|k| acc.max(k)))
}
