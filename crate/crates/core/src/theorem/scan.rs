use std::collections::BTreeMap;

use super::{default_cap, h0, k_min};
use crate::error::EngineError;
use crate::family::{FamilyBox, FamilyMode, FamilySpec};
use crate::ideal::MonomialIdeal;
use crate::primary::associated_primes;

/// Whether the family is known to come from a finitely generated graded
/// module, so that a uniform `k` exists over all of `ℕ^t`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Guarantee {
    TheoremApplies,
    NoGuarantee,
}

impl Guarantee {
    pub fn for_mode(mode: FamilyMode) -> Self {
        match mode {
            FamilyMode::GradedQuotient => Guarantee::TheoremApplies,
            FamilyMode::Affine => Guarantee::NoGuarantee,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Guarantee::TheoremApplies => "theorem-applies",
            Guarantee::NoGuarantee => "no-guarantee",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrimeEntry {
    pub prime: MonomialIdeal,
    pub k_min: u64,
    /// Stabilization index of `(I(n) : P^l)`.
    pub l: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScanRow {
    pub n: Vec<u64>,
    pub ideal: MonomialIdeal,
    pub primes: Vec<PrimeEntry>,
    /// `None` when `I(n) = (1)`, i.e. `L_n = 0`.
    pub k_min: Option<u64>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScanReport {
    pub rows: Vec<ScanRow>,
    pub uniform_k: u64,
    pub stabilized: bool,
    pub window: u64,
    pub guarantee: Guarantee,
}

/// Per-prime `k_min` and `l` at one lattice point. With `cap = None` the
/// default cap for `I(n)` is used.
pub fn scan_point(spec: &FamilySpec, n: &[u64], cap: Option<u64>) -> Result<ScanRow, EngineError> {
    let ideal = spec.evaluate(n).map_err(|e| EngineError::from(e).at(n))?;
    if ideal.is_unit() {
        return Ok(ScanRow {
            n: n.to_vec(),
            ideal,
            primes: Vec::new(),
            k_min: None,
        });
    }
    let cap = cap.unwrap_or_else(|| default_cap(&ideal));
    let primes = associated_primes(&ideal)
        .expect("non-unit ideal")
        .into_iter()
        .map(|prime| {
            let k = k_min(&ideal, &prime, cap)?;
            let l = if prime.is_zero() {
                0
            } else {
                h0(&ideal, &prime)?.1
            };
            Ok(PrimeEntry { prime, k_min: k, l })
        })
        .collect::<Result<Vec<_>, EngineError>>()
        .map_err(|e| e.at(n))?;
    let k_min = primes.iter().map(|p| p.k_min).max();
    Ok(ScanRow {
        n: n.to_vec(),
        ideal,
        primes,
        k_min,
    })
}

/// `max(5, w/4)` where `w` is the number of points on the narrowest axis.
pub fn stabilization_window(bx: &FamilyBox) -> u64 {
    (bx.min_width() / 4).max(5)
}

/// Aggregates rows (in any order) into a report with rows in row-major order.
///
/// `stabilized` holds when the box is wider than the window on every axis
/// and `k_min` is constant over the points lying in the last `window`
/// values of every axis.
pub fn summarize(rows: Vec<ScanRow>, bx: &FamilyBox, mode: FamilyMode) -> ScanReport {
    let mut rows: BTreeMap<Vec<u64>, ScanRow> =
        rows.into_iter().map(|r| (r.n.clone(), r)).collect();
    let rows: Vec<ScanRow> = std::mem::take(&mut rows).into_values().collect();
    let window = stabilization_window(bx);
    let uniform_k = rows.iter().filter_map(|r| r.k_min).max().unwrap_or(0);
    let mut tail = rows
        .iter()
        .filter(|r| bx.in_trailing_window(&r.n, window))
        .filter_map(|r| r.k_min);
    let constant = match tail.next() {
        Some(first) => tail.all(|k| k == first),
        None => true,
    };
    ScanReport {
        stabilized: bx.min_width() > window && constant,
        rows,
        uniform_k,
        window,
        guarantee: Guarantee::for_mode(mode),
    }
}

/// Per-point `k_min` over a box, `uniform_k` being the maximum. Points with
/// `L_n = 0` are recorded but do not contribute.
pub fn scan_uniform_k(
    spec: &FamilySpec,
    bx: &FamilyBox,
    cap: Option<u64>,
) -> Result<ScanReport, EngineError> {
    let rows = bx
        .points()
        .map(|n| scan_point(spec, &n, cap))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(summarize(rows, bx, spec.mode()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::family::{AffineExponent, GradedGenerator};
    use crate::monomial::{Monomial, RingContext};

    fn xy() -> RingContext {
        RingContext::new(["x", "y"]).unwrap()
    }

    fn graded(gens: &[([u64; 2], u64)]) -> FamilySpec {
        let gens = gens
            .iter()
            .map(|(b, z)| GradedGenerator {
                base: Monomial::new(b.to_vec()),
                threshold: vec![*z],
            })
            .collect();
        FamilySpec::graded(xy(), vec!["n".into()], gens).unwrap()
    }

    fn affine_control() -> FamilySpec {
        let a = |c, k| AffineExponent {
            constant: c,
            coeffs: vec![k],
        };
        FamilySpec::affine(
            xy(),
            vec!["n".into()],
            vec![vec![a(1, 1), a(0, 0)], vec![a(1, 0), a(1, 0)]],
        )
        .unwrap()
    }

    #[test]
    fn constant_family_scan() {
        let bx = FamilyBox::single(0, 30).unwrap();
        let report = scan_uniform_k(&FamilySpec::embedded_prime_example(), &bx, None).unwrap();
        assert_eq!(report.uniform_k, 2);
        assert!(report.stabilized);
        assert_eq!(report.window, 7);
        assert_eq!(report.guarantee, Guarantee::TheoremApplies);
        assert_eq!(report.rows.len(), 31);
        for row in &report.rows {
            let ks: Vec<_> = row.primes.iter().map(|p| (p.k_min, p.l)).collect();
            assert_eq!(ks, vec![(2, 2), (2, 1)]);
        }
    }

    #[test]
    fn threshold_family_scan() {
        let spec = graded(&[([2, 0], 0), ([1, 1], 0), ([0, 2], 1)]);
        let report = scan_uniform_k(&spec, &FamilyBox::single(0, 30).unwrap(), None).unwrap();
        assert_eq!(report.uniform_k, 2);
        assert!(report.stabilized);
        assert_eq!(report.rows[0].primes.len(), 2);
        assert_eq!(report.rows[1].primes.len(), 1);
    }

    #[test]
    fn affine_control_scan() {
        let report =
            scan_uniform_k(&affine_control(), &FamilyBox::single(0, 12).unwrap(), None).unwrap();
        for row in &report.rows {
            assert_eq!(row.k_min, Some(row.n[0] + 1));
        }
        assert_eq!(report.uniform_k, 13);
        assert!(!report.stabilized);
        assert_eq!(report.guarantee, Guarantee::NoGuarantee);
    }

    #[test]
    fn unit_rows_are_skipped() {
        let spec = graded(&[([0, 0], 2), ([1, 0], 0)]);
        let report = scan_uniform_k(&spec, &FamilyBox::single(0, 3).unwrap(), None).unwrap();
        assert_eq!(report.rows[0].k_min, Some(1));
        assert_eq!(report.rows[2].k_min, None);
        assert_eq!(report.uniform_k, 1);
    }

    #[test]
    fn single_point_is_not_stabilized() {
        let bx = FamilyBox::single(5, 5).unwrap();
        let report = scan_uniform_k(&FamilySpec::embedded_prime_example(), &bx, None).unwrap();
        assert_eq!(report.rows.len(), 1);
        assert!(!report.stabilized);
    }

    #[test]
    fn cap_errors_name_the_point() {
        let err = scan_uniform_k(
            &affine_control(),
            &FamilyBox::single(0, 12).unwrap(),
            Some(6),
        )
        .unwrap_err();
        assert_eq!(err.point(), Some(&[6u64][..]));
        assert!(matches!(
            err.root(),
            EngineError::CapExceeded { cap: 6, .. }
        ));
    }

    #[test]
    fn summarize_orders_rows() {
        let spec = FamilySpec::embedded_prime_example();
        let bx = FamilyBox::single(0, 9).unwrap();
        let mut rows: Vec<_> = bx
            .points()
            .map(|n| scan_point(&spec, &n, None).unwrap())
            .collect();
        rows.reverse();
        let report = summarize(rows, &bx, spec.mode());
        assert_eq!(report, scan_uniform_k(&spec, &bx, None).unwrap());
    }
}
