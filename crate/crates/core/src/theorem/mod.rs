//! Executable forms of the uniform-bound statements for graded families.
//!
//! Throughout, a component `L_n = A/I(n)` is handled on the ideal side: a
//! submodule `N/I(n)` of `L_n` is the ideal `N ⊇ I(n)`, the zero submodule
//! is `I(n)` itself, `P^k L_n` is `P^k + I(n)` and `H_J^0(L_n)` is the
//! saturation `(I(n) : J^∞)`.

mod certificate;
mod cohomology;
mod scan;

pub use certificate::{
    bounded_decomposition, required_k, verify_certificate, BoundedCertificate, CertificateChecks,
};
pub use cohomology::{
    artin_rees_consequence, battery, h0_point, h0_rows, h0_via_components, verify_h0_uniform,
    H0Report, H0Row, H0Stage,
};
pub use scan::{
    scan_point, scan_uniform_k, stabilization_window, summarize, Guarantee, PrimeEntry, ScanReport,
    ScanRow,
};

use crate::error::{EngineError, IdealError};
use crate::ideal::MonomialIdeal;

/// `H_J^0(A/I)` as the ideal `(I : J^∞)`, with the index `l` at which the
/// chain `(I : J^l)` stops growing.
pub fn h0(ideal: &MonomialIdeal, j: &MonomialIdeal) -> Result<(MonomialIdeal, usize), IdealError> {
    ideal.saturate(j)
}

/// Search limit used when none is given: four more than the sum over the
/// variables of the largest exponent occurring in `ideal`.
pub fn default_cap(ideal: &MonomialIdeal) -> u64 {
    ideal
        .max_exponents()
        .iter()
        .fold(4u64, |acc, &e| acc.saturating_add(e))
}

/// The ideals `P^k + I` for `k = 1, 2, ..`, built as `S_k = S_{k-1}·P + I`
/// so that no full power of `P` is ever formed.
pub(crate) fn shifted_powers<'a>(
    prime: &'a MonomialIdeal,
    ideal: &'a MonomialIdeal,
) -> impl Iterator<Item = (u64, MonomialIdeal)> + 'a {
    let first = prime.sum(ideal);
    std::iter::successors(Some((1u64, first)), move |(k, s)| {
        Some((k + 1, s.product(prime).sum(ideal)))
    })
}

/// Least `k ≥ 1` with `(P^k + I) ∩ (I : P^∞) = I`.
///
/// The predicate is monotone in `k`, so the upward search is exact. The zero
/// prime needs `k = 1`.
pub fn k_min(ideal: &MonomialIdeal, prime: &MonomialIdeal, cap: u64) -> Result<u64, EngineError> {
    if prime.is_zero() {
        return Ok(1);
    }
    let (sat, _) = h0(ideal, prime)?;
    for (k, shifted) in shifted_powers(prime, ideal) {
        if k > cap {
            break;
        }
        if shifted.intersect(&sat) == *ideal {
            return Ok(k);
        }
    }
    Err(EngineError::CapExceeded {
        cap,
        prime: prime.clone(),
    })
}

/// Least `s ≥ 1` with `P^s + I ⊆ Q`.
pub fn minimal_s(
    ideal: &MonomialIdeal,
    q: &MonomialIdeal,
    prime: &MonomialIdeal,
    cap: u64,
) -> Result<u64, EngineError> {
    for (s, shifted) in shifted_powers(prime, ideal) {
        if s > cap {
            break;
        }
        if shifted.is_subset(q) {
            return Ok(s);
        }
    }
    Err(EngineError::CapExceeded {
        cap,
        prime: prime.clone(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::monomial::Monomial;

    fn ideal(gens: &[&[u64]]) -> MonomialIdeal {
        MonomialIdeal::new(2, gens.iter().map(|g| Monomial::new(g.to_vec()))).unwrap()
    }

    const X: &[u64] = &[1, 0];
    const Y: &[u64] = &[0, 1];
    const X2: &[u64] = &[2, 0];
    const XY: &[u64] = &[1, 1];
    const Y2: &[u64] = &[0, 2];

    #[test]
    fn h0_examples() {
        let i = ideal(&[X2, XY]);
        assert_eq!(h0(&i, &ideal(&[X, Y])).unwrap(), (ideal(&[X]), 1));
        assert_eq!(h0(&i, &ideal(&[X])).unwrap(), (MonomialIdeal::unit(2), 2));
        assert_eq!(h0(&ideal(&[X]), &ideal(&[Y])).unwrap(), (ideal(&[X]), 0));
    }

    #[test]
    fn k_min_examples() {
        let i = ideal(&[X2, XY]);
        assert_eq!(k_min(&i, &ideal(&[X, Y]), 10).unwrap(), 2);
        assert_eq!(k_min(&i, &ideal(&[X]), 10).unwrap(), 2);
        let control = ideal(&[&[5, 0], XY]);
        assert_eq!(k_min(&control, &ideal(&[X, Y]), 20).unwrap(), 5);
        assert_eq!(
            k_min(&control, &ideal(&[X, Y]), 4),
            Err(EngineError::CapExceeded {
                cap: 4,
                prime: ideal(&[X, Y])
            })
        );
        assert_eq!(
            k_min(&MonomialIdeal::zero(2), &MonomialIdeal::zero(2), 1).unwrap(),
            1
        );
    }

    #[test]
    fn k_min_predicate_is_monotone() {
        let control = ideal(&[&[5, 0], XY]);
        let p = ideal(&[X, Y]);
        let (sat, _) = h0(&control, &p).unwrap();
        let pred = |k: u64| p.power(k).sum(&control).intersect(&sat) == control;
        let k = k_min(&control, &p, 20).unwrap();
        assert!(!pred(k - 1));
        assert!((k..k + 4).all(pred));
    }

    #[test]
    fn shifted_powers_match_full_powers() {
        let p = ideal(&[X, Y]);
        let i = ideal(&[&[3, 0], XY]);
        for (k, s) in shifted_powers(&p, &i).take(6) {
            assert_eq!(s, p.power(k).sum(&i));
        }
    }

    #[test]
    fn minimal_s_examples() {
        let i = ideal(&[X2, XY]);
        let m = ideal(&[X, Y]);
        for n in 1..=30u64 {
            let q = ideal(&[X2, XY, &[0, n + 1]]);
            assert_eq!(minimal_s(&i, &q, &m, default_cap(&q)).unwrap(), n + 1);
        }
        // At n = 0 the component is (x^2, y), which (x, y) alone misses.
        let q0 = ideal(&[X2, XY, Y]);
        assert_eq!(minimal_s(&i, &q0, &m, 10).unwrap(), 2);
        assert_eq!(minimal_s(&i, &ideal(&[X]), &ideal(&[X]), 10).unwrap(), 1);
        assert_eq!(minimal_s(&i, &ideal(&[X2, XY, Y2]), &m, 10).unwrap(), 2);
        assert!(matches!(
            minimal_s(&i, &ideal(&[X2, XY, &[0, 9]]), &m, 3),
            Err(EngineError::CapExceeded { cap: 3, .. })
        ));
    }

    #[test]
    fn default_cap_sums_largest_exponents() {
        assert_eq!(default_cap(&ideal(&[&[5, 0], XY])), 10);
        assert_eq!(default_cap(&MonomialIdeal::zero(2)), 4);
    }
}
