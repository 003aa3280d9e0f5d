//! Brute-force membership enumeration.
//!
//! Everything here works monomial by monomial using nothing but
//! divisibility, so it serves as ground truth for the generator-level
//! algorithms in [`crate::ideal`] and [`crate::primary`].

use std::collections::BTreeSet;

use crate::ideal::MonomialIdeal;
use crate::monomial::Monomial;

/// All monomials in `dim` variables of total degree at most `max_degree`.
pub fn monomials_up_to(dim: usize, max_degree: u64) -> Vec<Monomial> {
    fn go(prefix: &mut Vec<u64>, dim: usize, budget: u64, out: &mut Vec<Monomial>) {
        if prefix.len() == dim {
            out.push(Monomial::new(prefix.clone()));
            return;
        }
        for e in 0..=budget {
            prefix.push(e);
            go(prefix, dim, budget - e, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    go(&mut Vec::with_capacity(dim), dim, max_degree, &mut out);
    out
}

/// The monomials of total degree `≤ max_degree` lying in `ideal`.
pub fn staircase(ideal: &MonomialIdeal, max_degree: u64) -> BTreeSet<Monomial> {
    monomials_up_to(ideal.dim(), max_degree)
        .into_iter()
        .filter(|m| ideal.gens().iter().any(|g| g.divides(m)))
        .collect()
}

/// Degree bound used by the oracle suites: sum of the largest generator
/// degrees plus two.
pub fn oracle_degree<'a>(ideals: impl IntoIterator<Item = &'a MonomialIdeal>) -> u64 {
    ideals
        .into_iter()
        .map(|i| i.max_degree() as u64)
        .sum::<u64>()
        + 2
}
