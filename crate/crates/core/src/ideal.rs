//! Monomial ideals in canonical minimal form.

use std::cmp::Ordering;
use std::fmt;

use crate::error::IdealError;
use crate::monomial::{Monomial, RingContext};

/// A monomial ideal of `K[x_1, .., x_d]`, held by its minimal generators in
/// canonical order.
///
/// Two ideals are equal exactly when their generator lists are identical.
/// An empty list is the zero ideal and `[1]` is the unit ideal.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MonomialIdeal {
    dim: usize,
    gens: Vec<Monomial>,
}

impl MonomialIdeal {
    /// Builds the ideal generated by `gens`, minimalizing them.
    pub fn new(dim: usize, gens: impl IntoIterator<Item = Monomial>) -> Result<Self, IdealError> {
        let gens: Vec<Monomial> = gens.into_iter().collect();
        if let Some(bad) = gens.iter().find(|m| m.dim() != dim) {
            return Err(IdealError::DimensionMismatch {
                expected: dim,
                found: bad.dim(),
            });
        }
        Ok(Self::from_unchecked(dim, gens))
    }

    fn from_unchecked(dim: usize, mut gens: Vec<Monomial>) -> Self {
        gens.sort();
        gens.dedup();
        let mut minimal: Vec<Monomial> = Vec::with_capacity(gens.len());
        // A proper divisor has strictly smaller degree, so it sorts earlier.
        for g in gens {
            if !minimal.iter().any(|m| m.divides(&g)) {
                minimal.push(g);
            }
        }
        Self { dim, gens: minimal }
    }

    pub fn zero(dim: usize) -> Self {
        Self {
            dim,
            gens: Vec::new(),
        }
    }

    pub fn unit(dim: usize) -> Self {
        Self {
            dim,
            gens: vec![Monomial::one(dim)],
        }
    }

    pub fn principal(m: Monomial) -> Self {
        Self {
            dim: m.dim(),
            gens: vec![m],
        }
    }

    /// The prime generated by the variables with the given indices.
    pub fn prime_from_indices(dim: usize, vars: impl IntoIterator<Item = usize>) -> Self {
        Self::from_unchecked(
            dim,
            vars.into_iter().map(|i| Monomial::var(dim, i, 1)).collect(),
        )
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn gens(&self) -> &[Monomial] {
        &self.gens
    }

    pub fn is_zero(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn is_unit(&self) -> bool {
        self.gens.len() == 1 && self.gens[0].is_one()
    }

    /// Generated by a subset of the variables (the zero ideal included).
    pub fn is_monomial_prime(&self) -> bool {
        self.gens.iter().all(|g| g.degree() == 1)
    }

    /// Every generator is a power of a single variable.
    pub fn is_irreducible(&self) -> bool {
        self.gens.iter().all(Monomial::is_pure_power)
    }

    pub fn max_degree(&self) -> u128 {
        self.gens.iter().map(Monomial::degree).max().unwrap_or(0)
    }

    /// Largest exponent of each variable over the generators.
    pub fn max_exponents(&self) -> Vec<u64> {
        let mut out = vec![0; self.dim];
        for g in &self.gens {
            for (o, &e) in out.iter_mut().zip(g.exponents()) {
                *o = (*o).max(e);
            }
        }
        out
    }

    pub fn contains(&self, m: &Monomial) -> bool {
        self.gens.iter().any(|g| g.divides(m))
    }

    /// `self ⊆ other`.
    pub fn is_subset(&self, other: &MonomialIdeal) -> bool {
        self.check_dim(other);
        self.gens.iter().all(|g| other.contains(g))
    }

    pub fn sum(&self, other: &MonomialIdeal) -> MonomialIdeal {
        self.check_dim(other);
        Self::from_unchecked(
            self.dim,
            self.gens.iter().chain(&other.gens).cloned().collect(),
        )
    }

    pub fn add_monomial(&self, m: &Monomial) -> MonomialIdeal {
        assert_eq!(self.dim, m.dim(), "monomial from a different context");
        let mut gens = self.gens.clone();
        gens.push(m.clone());
        Self::from_unchecked(self.dim, gens)
    }

    pub fn product(&self, other: &MonomialIdeal) -> MonomialIdeal {
        self.check_dim(other);
        let gens = self
            .gens
            .iter()
            .flat_map(|a| other.gens.iter().map(move |b| a.mul(b)))
            .collect();
        Self::from_unchecked(self.dim, gens)
    }

    /// `self^k`, with `self^0 = (1)`.
    pub fn power(&self, k: u64) -> MonomialIdeal {
        let mut result = Self::unit(self.dim);
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                result = result.product(&base);
            }
            k >>= 1;
            if k > 0 {
                base = base.product(&base);
            }
        }
        result
    }

    pub fn intersect(&self, other: &MonomialIdeal) -> MonomialIdeal {
        self.check_dim(other);
        let gens = self
            .gens
            .iter()
            .flat_map(|a| other.gens.iter().map(move |b| a.lcm(b)))
            .collect();
        Self::from_unchecked(self.dim, gens)
    }

    /// Intersection of a family; the empty family gives the unit ideal.
    pub fn intersect_all<'a>(
        dim: usize,
        ideals: impl IntoIterator<Item = &'a MonomialIdeal>,
    ) -> MonomialIdeal {
        ideals
            .into_iter()
            .fold(Self::unit(dim), |acc, q| acc.intersect(q))
    }

    /// `(self : m)`.
    pub fn colon_monomial(&self, m: &Monomial) -> MonomialIdeal {
        assert_eq!(self.dim, m.dim(), "monomial from a different context");
        Self::from_unchecked(self.dim, self.gens.iter().map(|g| g.quotient(m)).collect())
    }

    /// `(self : other) = ∩_{g} (self : g)` over the generators of `other`.
    pub fn colon(&self, other: &MonomialIdeal) -> Result<MonomialIdeal, IdealError> {
        self.check_dim(other);
        if other.is_zero() {
            return Err(IdealError::ZeroDivisor);
        }
        let mut parts = other.gens.iter().map(|g| self.colon_monomial(g));
        let first = parts.next().expect("non-zero ideal has a generator");
        Ok(parts.fold(first, |acc, q| acc.intersect(&q)))
    }

    /// `(self : other^∞)` together with the least `l ≥ 0` such that
    /// `(self : other^l) = (self : other^{l+1})`.
    pub fn saturate(&self, other: &MonomialIdeal) -> Result<(MonomialIdeal, usize), IdealError> {
        let mut current = self.clone();
        let mut l = 0;
        loop {
            let next = current.colon(other)?;
            if next == current {
                return Ok((current, l));
            }
            current = next;
            l += 1;
        }
    }

    pub fn radical(&self) -> MonomialIdeal {
        Self::from_unchecked(
            self.dim,
            self.gens.iter().map(Monomial::support_monomial).collect(),
        )
    }

    fn check_dim(&self, other: &MonomialIdeal) {
        assert_eq!(self.dim, other.dim, "ideals from different contexts");
    }

    /// Generators rendered in canonical order; the zero ideal renders as `[]`.
    pub fn render_gens(&self, ctx: &RingContext) -> Vec<String> {
        self.gens.iter().map(|g| g.render(ctx)).collect()
    }

    /// `(x^2, x*y)`, or `(0)` for the zero ideal.
    pub fn render(&self, ctx: &RingContext) -> String {
        if self.is_zero() {
            return "(0)".into();
        }
        format!("({})", self.render_gens(ctx).join(", "))
    }
}

/// Orders ideals by number of generators, then generator lists in canonical
/// order. On monomial primes this sorts by height, then by variables.
impl Ord for MonomialIdeal {
    fn cmp(&self, other: &Self) -> Ordering {
        self.dim
            .cmp(&other.dim)
            .then(self.gens.len().cmp(&other.gens.len()))
            .then_with(|| self.gens.cmp(&other.gens))
    }
}

impl PartialOrd for MonomialIdeal {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Context-free rendering with variables named `x1 .. xd`.
impl fmt::Display for MonomialIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let ctx = RingContext::new((1..=self.dim.max(1)).map(|i| format!("x{i}")))
            .expect("generated names are valid");
        f.write_str(&self.render(&ctx))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::staircase::staircase;

    fn m(e: &[u64]) -> Monomial {
        Monomial::new(e.to_vec())
    }

    fn ideal(gens: &[&[u64]]) -> MonomialIdeal {
        let dim = gens.first().map_or(2, |g| g.len());
        MonomialIdeal::new(dim, gens.iter().map(|g| m(g))).unwrap()
    }

    fn ctx() -> RingContext {
        RingContext::new(["x", "y"]).unwrap()
    }

    const X: &[u64] = &[1, 0];
    const Y: &[u64] = &[0, 1];
    const X2: &[u64] = &[2, 0];
    const XY: &[u64] = &[1, 1];
    const Y2: &[u64] = &[0, 2];
    const ONE: &[u64] = &[0, 0];

    #[test]
    fn minimalize_examples() {
        assert_eq!(ideal(&[X2, XY, &[1, 2]]), ideal(&[X2, XY]));
        assert_eq!(ideal(&[X2, XY, &[1, 2]]).gens().len(), 2);
        assert!(MonomialIdeal::new(2, []).unwrap().is_zero());
        assert!(ideal(&[X, Y, ONE]).is_unit());
        assert_eq!(
            MonomialIdeal::new(2, [m(&[1, 0, 0])]),
            Err(IdealError::DimensionMismatch {
                expected: 2,
                found: 3
            })
        );
    }

    #[test]
    fn rendering_is_canonical() {
        assert_eq!(ideal(&[Y2, XY, X2]).render(&ctx()), "(x^2, x*y, y^2)");
        assert_eq!(MonomialIdeal::zero(2).render(&ctx()), "(0)");
        assert_eq!(MonomialIdeal::unit(2).render(&ctx()), "(1)");
    }

    #[test]
    fn membership_examples() {
        let i = ideal(&[X2, XY]);
        assert!(i.contains(&m(&[1, 3])));
        assert!(!i.contains(&m(&[0, 5])));
        assert!(!MonomialIdeal::zero(2).contains(&Monomial::one(2)));
    }

    #[test]
    fn containment_examples() {
        let i = ideal(&[X2, XY]);
        let x = ideal(&[X]);
        assert!(i.is_subset(&x));
        assert!(!x.is_subset(&i));
        assert!(i.is_subset(&i));
        // The staircase oracle agrees that x lies outside (x^2, xy).
        assert!(!staircase(&i, 1).contains(&m(X)));
    }

    #[test]
    fn arithmetic_examples() {
        let max = ideal(&[X, Y]);
        let sq = ideal(&[X2, XY, Y2]);
        assert_eq!(max.power(2), sq);
        assert_eq!(sq.sum(&ideal(&[X2, XY])), sq);
        assert!(ideal(&[X2, &[0, 3]]).power(0).is_unit());
        assert!(MonomialIdeal::zero(2).power(0).is_unit());
        assert!(MonomialIdeal::zero(2).power(3).is_zero());
        assert_eq!(max.power(3), max.product(&max).product(&max));
    }

    #[test]
    fn intersect_examples() {
        let x = ideal(&[X]);
        for n in 0..6 {
            let q = ideal(&[X2, XY, &[0, n + 1]]);
            assert_eq!(x.intersect(&q), ideal(&[X2, XY]));
        }
        let i = ideal(&[X2, XY]);
        assert_eq!(i.intersect(&MonomialIdeal::unit(2)), i);
        assert!(i.intersect(&MonomialIdeal::zero(2)).is_zero());
    }

    #[test]
    fn colon_examples() {
        let i = ideal(&[X2, XY]);
        assert_eq!(i.colon(&ideal(&[X])).unwrap(), ideal(&[X, Y]));
        assert_eq!(i.colon(&ideal(&[X, Y])).unwrap(), ideal(&[X]));
        assert_eq!(i.colon(&MonomialIdeal::unit(2)).unwrap(), i);
        assert_eq!(
            i.colon(&MonomialIdeal::zero(2)),
            Err(IdealError::ZeroDivisor)
        );
    }

    #[test]
    fn saturate_examples() {
        let i = ideal(&[X2, XY]);
        assert_eq!(i.saturate(&ideal(&[X, Y])).unwrap(), (ideal(&[X]), 1));
        assert_eq!(
            i.saturate(&ideal(&[X])).unwrap(),
            (MonomialIdeal::unit(2), 2)
        );
        assert_eq!(
            ideal(&[X]).saturate(&ideal(&[Y])).unwrap(),
            (ideal(&[X]), 0)
        );
        assert_eq!(
            i.saturate(&MonomialIdeal::zero(2)),
            Err(IdealError::ZeroDivisor)
        );
    }

    #[test]
    fn radical_examples() {
        let i = ideal(&[X2, XY, &[0, 3]]);
        let r = i.radical();
        assert_eq!(r, ideal(&[X, Y]));
        // r^3 lands in i, r^1 does not.
        assert!(r.power(3).is_subset(&i));
        assert!(!r.is_subset(&i));
        assert_eq!(ideal(&[X]).radical(), ideal(&[X]));
        assert!(MonomialIdeal::unit(2).radical().is_unit());
        assert!(MonomialIdeal::zero(2).radical().is_zero());
    }

    #[test]
    fn ideal_order_sorts_primes_by_height() {
        let mut primes = vec![ideal(&[X, Y]), ideal(&[Y]), ideal(&[X])];
        primes.sort();
        assert_eq!(primes, vec![ideal(&[X]), ideal(&[Y]), ideal(&[X, Y])]);
    }
}
