//! Irreducible and primary decomposition of monomial ideals.
//!
//! Irreducible components are found by the splitting rule
//! `I + (u*v) = (I + (u)) ∩ (I + (v))` for coprime non-units `u`, `v`,
//! applied until every generator is a pure power. Grouping the irreducible
//! components by radical gives a primary decomposition with one component
//! per associated prime.

use std::collections::{BTreeMap, BTreeSet};

use crate::error::{AssembleError, IdealError};
use crate::ideal::MonomialIdeal;
use crate::monomial::Monomial;

/// Which mixed generator to split first, and on which of its variables.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum SplitOrder {
    /// First generator in canonical order with mixed support, split off the
    /// pure power of its lowest-index variable.
    #[default]
    Canonical,
    /// Last mixed generator, split off its highest-index variable.
    Reversed,
}

impl SplitOrder {
    fn pivot(self, ideal: &MonomialIdeal) -> Option<(Monomial, Monomial)> {
        let mixed = |g: &&Monomial| g.support().count() > 1;
        let (g, var) = match self {
            SplitOrder::Canonical => {
                let g = ideal.gens().iter().find(mixed)?;
                (g, g.support().next()?)
            }
            SplitOrder::Reversed => {
                let g = ideal.gens().iter().rev().find(mixed)?;
                (g, g.support().last()?)
            }
        };
        let u = Monomial::var(g.dim(), var, g.exponents()[var]);
        let v = g.quotient(&u);
        Some((u, v))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PrimaryComponent {
    pub prime: MonomialIdeal,
    pub component: MonomialIdeal,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrimaryDecomposition {
    pub ideal: MonomialIdeal,
    pub components: Vec<PrimaryComponent>,
    pub irredundant: bool,
    pub minimal: bool,
}

impl PrimaryDecomposition {
    pub fn primes(&self) -> impl Iterator<Item = &MonomialIdeal> {
        self.components.iter().map(|c| &c.prime)
    }

    pub fn component_for(&self, prime: &MonomialIdeal) -> Option<&MonomialIdeal> {
        self.components
            .iter()
            .find(|c| &c.prime == prime)
            .map(|c| &c.component)
    }

    /// Components keyed by prime, ready for [`assemble`].
    pub fn picks(&self) -> BTreeMap<MonomialIdeal, MonomialIdeal> {
        self.components
            .iter()
            .map(|c| (c.prime.clone(), c.component.clone()))
            .collect()
    }
}

/// Irredundant irreducible decomposition using the canonical split order.
pub fn irreducible_decomposition(ideal: &MonomialIdeal) -> Result<Vec<MonomialIdeal>, IdealError> {
    irreducible_decomposition_with(ideal, SplitOrder::Canonical)
}

pub fn irreducible_decomposition_with(
    ideal: &MonomialIdeal,
    order: SplitOrder,
) -> Result<Vec<MonomialIdeal>, IdealError> {
    if ideal.is_unit() {
        return Err(IdealError::UnitIdeal);
    }
    if ideal.is_zero() {
        return Ok(vec![ideal.clone()]);
    }
    let mut found = Vec::new();
    split(ideal.clone(), order, &mut found);
    Ok(found)
}

fn split(ideal: MonomialIdeal, order: SplitOrder, found: &mut Vec<MonomialIdeal>) {
    // Every leaf below `ideal` contains it, so it would be redundant.
    if found.iter().any(|c| c.is_subset(&ideal)) {
        return;
    }
    match order.pivot(&ideal) {
        Some((u, v)) => {
            split(ideal.add_monomial(&u), order, found);
            split(ideal.add_monomial(&v), order, found);
        }
        None => {
            found.retain(|c| !ideal.is_subset(c));
            found.push(ideal);
        }
    }
}

/// `Ass(A/I)`: the radicals of the irreducible components.
pub fn associated_primes(ideal: &MonomialIdeal) -> Result<BTreeSet<MonomialIdeal>, IdealError> {
    Ok(irreducible_decomposition(ideal)?
        .iter()
        .map(MonomialIdeal::radical)
        .collect())
}

/// Irredundant primary decomposition with distinct primes, components sorted
/// by prime.
pub fn primary_decomposition(ideal: &MonomialIdeal) -> Result<PrimaryDecomposition, IdealError> {
    primary_decomposition_with(ideal, SplitOrder::Canonical)
}

pub fn primary_decomposition_with(
    ideal: &MonomialIdeal,
    order: SplitOrder,
) -> Result<PrimaryDecomposition, IdealError> {
    let mut groups: BTreeMap<MonomialIdeal, MonomialIdeal> = BTreeMap::new();
    for irr in irreducible_decomposition_with(ideal, order)? {
        let prime = irr.radical();
        let merged = match groups.remove(&prime) {
            Some(q) => q.intersect(&irr),
            None => irr,
        };
        groups.insert(prime, merged);
    }
    let mut components: Vec<PrimaryComponent> = groups
        .into_iter()
        .map(|(prime, component)| PrimaryComponent { prime, component })
        .collect();

    let mut i = 0;
    while i < components.len() && components.len() > 1 {
        if intersection_without(ideal.dim(), &components, i) == *ideal {
            components.remove(i);
        } else {
            i += 1;
        }
    }

    Ok(PrimaryDecomposition {
        ideal: ideal.clone(),
        irredundant: is_irredundant(ideal, &components),
        minimal: has_distinct_primes(&components),
        components,
    })
}

fn intersection_without(dim: usize, components: &[PrimaryComponent], skip: usize) -> MonomialIdeal {
    MonomialIdeal::intersect_all(
        dim,
        components
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != skip)
            .map(|(_, c)| &c.component),
    )
}

/// No component can be dropped without enlarging the intersection.
pub fn is_irredundant(ideal: &MonomialIdeal, components: &[PrimaryComponent]) -> bool {
    components.len() <= 1
        || (0..components.len()).all(|i| intersection_without(ideal.dim(), components, i) != *ideal)
}

pub fn has_distinct_primes(components: &[PrimaryComponent]) -> bool {
    let primes: BTreeSet<_> = components.iter().map(|c| &c.prime).collect();
    primes.len() == components.len()
}

/// The prime `P` when `Ass(A/Q) = {P}`.
pub fn is_primary(q: &MonomialIdeal) -> Result<Option<MonomialIdeal>, IdealError> {
    let mut primes = associated_primes(q)?;
    Ok(if primes.len() == 1 {
        primes.pop_first()
    } else {
        None
    })
}

/// Assembles one chosen primary component per associated prime into a
/// decomposition of `ideal`, checking rather than assuming that the picks
/// intersect back to `ideal`.
pub fn assemble(
    ideal: &MonomialIdeal,
    picks: &BTreeMap<MonomialIdeal, MonomialIdeal>,
) -> Result<PrimaryDecomposition, AssembleError> {
    let ass = associated_primes(ideal).map_err(|_| AssembleError::UnitIdeal)?;
    for (prime, q) in picks {
        if q.is_unit() || is_primary(q).ok().flatten().as_ref() != Some(prime) {
            return Err(AssembleError::NotPrimary {
                prime: prime.clone(),
            });
        }
    }
    let keys: BTreeSet<MonomialIdeal> = picks.keys().cloned().collect();
    if keys != ass {
        return Err(AssembleError::IntersectionMismatch(format!(
            "picked primes {} differ from the associated primes {}",
            join(&keys),
            join(&ass)
        )));
    }
    let components: Vec<PrimaryComponent> = picks
        .iter()
        .map(|(p, q)| PrimaryComponent {
            prime: p.clone(),
            component: q.clone(),
        })
        .collect();
    let meet = MonomialIdeal::intersect_all(ideal.dim(), components.iter().map(|c| &c.component));
    if meet != *ideal {
        return Err(AssembleError::IntersectionMismatch(format!(
            "intersection is {meet}, expected {ideal}"
        )));
    }
    Ok(PrimaryDecomposition {
        ideal: ideal.clone(),
        irredundant: is_irredundant(ideal, &components),
        minimal: has_distinct_primes(&components),
        components,
    })
}

fn join(set: &BTreeSet<MonomialIdeal>) -> String {
    let parts: Vec<String> = set.iter().map(ToString::to_string).collect();
    format!("{{{}}}", parts.join(", "))
}
