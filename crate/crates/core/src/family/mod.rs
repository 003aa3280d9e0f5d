//! Parametric families `n ↦ I(n)` of monomial ideals, `n ∈ ℕ^t`.
//!
//! In graded-quotient mode the family is the graded module
//! `L = A[Z_1, .., Z_t] / H` for a monomial ideal `H`, whose component in
//! degree `n` is `A/I(n)`. A monomial `a·Z^n` lies in `H` iff some generator
//! `m·Z^e` of `H` has `e ≤ n` componentwise and `m | a`, so
//! `I(n) = (m : m·Z^e ∈ gens(H), e ≤ n)`. This mode is always a finitely
//! generated graded module.
//!
//! Affine mode evaluates generator exponents `a_0 + Σ a_j n_j` pointwise.
//! It admits families that are not components of any finitely generated
//! graded module.

mod json;

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

pub use json::{ideal_to_json, parse_ideal};

use crate::error::FamilyError;
use crate::ideal::MonomialIdeal;
use crate::monomial::{is_identifier, Monomial, RingContext};
use crate::primary::associated_primes;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FamilyMode {
    GradedQuotient,
    Affine,
}

impl FamilyMode {
    pub fn as_str(self) -> &'static str {
        match self {
            FamilyMode::GradedQuotient => "graded",
            FamilyMode::Affine => "affine",
        }
    }
}

/// A generator `base · Z^threshold` of `H` in graded-quotient mode.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GradedGenerator {
    pub base: Monomial,
    pub threshold: Vec<u64>,
}

/// `constant + Σ_j coeffs[j] · n_j`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct AffineExponent {
    pub constant: u64,
    pub coeffs: Vec<u64>,
}

impl AffineExponent {
    pub fn constant(c: u64, params: usize) -> Self {
        Self {
            constant: c,
            coeffs: vec![0; params],
        }
    }

    pub fn eval(&self, n: &[u64]) -> Option<u64> {
        self.coeffs
            .iter()
            .zip(n)
            .try_fold(self.constant, |acc, (&a, &x)| {
                acc.checked_add(a.checked_mul(x)?)
            })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
enum Generators {
    Graded(Vec<GradedGenerator>),
    Affine(Vec<Vec<AffineExponent>>),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FamilySpec {
    context: RingContext,
    params: Vec<String>,
    generators: Generators,
}

impl FamilySpec {
    pub fn graded(
        context: RingContext,
        params: Vec<String>,
        generators: Vec<GradedGenerator>,
    ) -> Result<Self, FamilyError> {
        check_params(&context, &params)?;
        for g in &generators {
            if g.base.dim() != context.dim() || g.threshold.len() != params.len() {
                return Err(FamilyError::Invalid(
                    "generator shape does not match the variables and parameters".into(),
                ));
            }
        }
        Ok(Self {
            context,
            params,
            generators: Generators::Graded(generators),
        })
    }

    pub fn affine(
        context: RingContext,
        params: Vec<String>,
        generators: Vec<Vec<AffineExponent>>,
    ) -> Result<Self, FamilyError> {
        check_params(&context, &params)?;
        for g in &generators {
            if g.len() != context.dim() || g.iter().any(|e| e.coeffs.len() != params.len()) {
                return Err(FamilyError::Invalid(
                    "generator shape does not match the variables and parameters".into(),
                ));
            }
        }
        Ok(Self {
            context,
            params,
            generators: Generators::Affine(generators),
        })
    }

    /// `H = (x^2, x*y)` in `K[x, y][Z]`: the constant family `A/(x^2, xy)`.
    pub fn embedded_prime_example() -> Self {
        let ctx = RingContext::new(["x", "y"]).expect("valid names");
        let gens = [[2, 0], [1, 1]]
            .map(|e| GradedGenerator {
                base: Monomial::new(e.to_vec()),
                threshold: vec![0],
            })
            .to_vec();
        Self::graded(ctx, vec!["n".into()], gens).expect("well-formed")
    }

    pub fn context(&self) -> &RingContext {
        &self.context
    }

    pub fn params(&self) -> &[String] {
        &self.params
    }

    pub fn mode(&self) -> FamilyMode {
        match self.generators {
            Generators::Graded(_) => FamilyMode::GradedQuotient,
            Generators::Affine(_) => FamilyMode::Affine,
        }
    }

    pub fn graded_generators(&self) -> Option<&[GradedGenerator]> {
        match &self.generators {
            Generators::Graded(g) => Some(g),
            Generators::Affine(_) => None,
        }
    }

    pub fn affine_generators(&self) -> Option<&[Vec<AffineExponent>]> {
        match &self.generators {
            Generators::Affine(g) => Some(g),
            Generators::Graded(_) => None,
        }
    }

    /// Per parameter, the largest `Z`-exponent among the generators of `H`
    /// (graded mode only). Past it, `I(n)` no longer changes along that axis.
    pub fn max_thresholds(&self) -> Option<Vec<u64>> {
        let gens = self.graded_generators()?;
        let mut out = vec![0; self.params.len()];
        for g in gens {
            for (o, &e) in out.iter_mut().zip(&g.threshold) {
                *o = (*o).max(e);
            }
        }
        Some(out)
    }

    pub fn evaluate(&self, n: &[u64]) -> Result<MonomialIdeal, FamilyError> {
        if n.len() != self.params.len() {
            return Err(FamilyError::Arity {
                expected: self.params.len(),
                found: n.len(),
            });
        }
        let dim = self.context.dim();
        let gens: Vec<Monomial> = match &self.generators {
            Generators::Graded(gens) => gens
                .iter()
                .filter(|g| g.threshold.iter().zip(n).all(|(e, x)| e <= x))
                .map(|g| g.base.clone())
                .collect(),
            Generators::Affine(gens) => gens
                .iter()
                .map(|exps| {
                    exps.iter()
                        .map(|e| e.eval(n))
                        .collect::<Option<Vec<u64>>>()
                        .map(Monomial::new)
                        .ok_or_else(|| FamilyError::Overflow(n.to_vec()))
                })
                .collect::<Result<_, _>>()?,
        };
        Ok(MonomialIdeal::new(dim, gens).expect("generators built in context"))
    }

    /// `(n, I(n))` for every point of `bx` in row-major order.
    pub fn iterate<'a>(
        &'a self,
        bx: &'a FamilyBox,
    ) -> impl Iterator<Item = Result<(Vec<u64>, MonomialIdeal), FamilyError>> + 'a {
        bx.points().map(move |n| self.evaluate(&n).map(|i| (n, i)))
    }

    /// Union of `Ass(A/I(n))` over the box, and whether the first half of
    /// the box already produced the whole union. Points with `I(n) = (1)`
    /// contribute nothing.
    pub fn ass_union(
        &self,
        bx: &FamilyBox,
    ) -> Result<(BTreeSet<MonomialIdeal>, bool), FamilyError> {
        let mut all = BTreeSet::new();
        let mut early = BTreeSet::new();
        for item in self.iterate(bx) {
            let (n, ideal) = item?;
            if ideal.is_unit() {
                continue;
            }
            let primes = associated_primes(&ideal).expect("non-unit ideal");
            if bx.in_first_half(&n) {
                early.extend(primes.iter().cloned());
            }
            all.extend(primes);
        }
        let stabilized = early == all;
        Ok((all, stabilized))
    }

    pub fn to_json(&self) -> serde_json::Value {
        json::family_to_json(self)
    }

    pub fn from_json(text: &str) -> Result<Self, FamilyError> {
        json::parse_family(text)
    }
}

fn check_params(ctx: &RingContext, params: &[String]) -> Result<(), FamilyError> {
    if params.is_empty() {
        return Err(FamilyError::Invalid(
            "a family needs at least one parameter".into(),
        ));
    }
    for (i, p) in params.iter().enumerate() {
        if !is_identifier(p) {
            return Err(FamilyError::Invalid(format!(
                "`{p}` is not a valid identifier"
            )));
        }
        if params[..i].contains(p) {
            return Err(FamilyError::Invalid(format!("duplicate parameter `{p}`")));
        }
        if ctx.index_of(p).is_some() {
            return Err(FamilyError::Invalid(format!(
                "`{p}` is both a variable and a parameter"
            )));
        }
    }
    Ok(())
}

/// An inclusive lattice box `[lo_1, hi_1] × .. × [lo_t, hi_t]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FamilyBox {
    ranges: Vec<(u64, u64)>,
}

impl FamilyBox {
    pub fn new(ranges: Vec<(u64, u64)>) -> Result<Self, FamilyError> {
        if ranges.is_empty() {
            return Err(FamilyError::Box("at least one range is required".into()));
        }
        if let Some(&(lo, hi)) = ranges.iter().find(|(lo, hi)| lo > hi) {
            return Err(FamilyError::Box(format!("empty range {lo}..{hi}")));
        }
        Ok(Self { ranges })
    }

    pub fn single(lo: u64, hi: u64) -> Result<Self, FamilyError> {
        Self::new(vec![(lo, hi)])
    }

    pub fn ranges(&self) -> &[(u64, u64)] {
        &self.ranges
    }

    pub fn arity(&self) -> usize {
        self.ranges.len()
    }

    /// Number of lattice points (saturating).
    pub fn len(&self) -> u64 {
        self.ranges.iter().fold(1u64, |acc, &(lo, hi)| {
            acc.saturating_mul((hi - lo).saturating_add(1))
        })
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Number of points along the narrowest axis.
    pub fn min_width(&self) -> u64 {
        self.ranges
            .iter()
            .map(|&(lo, hi)| (hi - lo).saturating_add(1))
            .min()
            .unwrap_or(0)
    }

    /// Lattice points, last coordinate varying fastest.
    pub fn points(&self) -> impl Iterator<Item = Vec<u64>> + '_ {
        let mut next = Some(self.ranges.iter().map(|r| r.0).collect::<Vec<_>>());
        std::iter::from_fn(move || {
            let current = next.take()?;
            let mut succ = current.clone();
            for j in (0..succ.len()).rev() {
                if succ[j] < self.ranges[j].1 {
                    succ[j] += 1;
                    next = Some(succ);
                    break;
                }
                succ[j] = self.ranges[j].0;
            }
            Some(current)
        })
    }

    pub fn in_first_half(&self, n: &[u64]) -> bool {
        n.iter()
            .zip(&self.ranges)
            .all(|(&x, &(lo, hi))| x <= lo + (hi - lo) / 2)
    }

    /// Within the last `w` values of every axis.
    pub fn in_trailing_window(&self, n: &[u64], w: u64) -> bool {
        n.iter()
            .zip(&self.ranges)
            .all(|(&x, &(_, hi))| x.saturating_add(w) > hi)
    }
}

/// Parses `a..b[,c..d]...`.
impl FromStr for FamilyBox {
    type Err = FamilyError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let ranges =
            s.split(',')
                .map(|part| {
                    let (lo, hi) = part.trim().split_once("..").ok_or_else(|| {
                        FamilyError::Box(format!("`{part}` is not of the form a..b"))
                    })?;
                    let parse = |v: &str| {
                        v.trim().parse::<u64>().map_err(|_| {
                            FamilyError::Box(format!("`{v}` is not a non-negative integer"))
                        })
                    };
                    Ok((parse(lo)?, parse(hi)?))
                })
                .collect::<Result<Vec<_>, FamilyError>>()?;
        Self::new(ranges)
    }
}

impl fmt::Display for FamilyBox {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .ranges
            .iter()
            .map(|(lo, hi)| format!("{lo}..{hi}"))
            .collect();
        f.write_str(&parts.join(","))
    }
}
