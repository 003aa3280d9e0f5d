//! Exponent vectors over a fixed variable context.

use std::cmp::Ordering;
use std::fmt::Write as _;

use crate::error::ContextError;

/// The variable names of the coefficient ring `A = K[x_1, .., x_d]`.
///
/// The field itself is never materialized: every algorithm in this crate is
/// purely combinatorial on exponents.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RingContext {
    names: Vec<String>,
}

impl RingContext {
    pub fn new<S: Into<String>>(names: impl IntoIterator<Item = S>) -> Result<Self, ContextError> {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        if names.is_empty() {
            return Err(ContextError::Empty);
        }
        for (i, name) in names.iter().enumerate() {
            if !is_identifier(name) {
                return Err(ContextError::InvalidName(name.clone()));
            }
            if names[..i].contains(name) {
                return Err(ContextError::Duplicate(name.clone()));
            }
        }
        Ok(Self { names })
    }

    pub fn dim(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    /// The monomial prime `(x_i : i in vars)`.
    pub fn prime<'a>(
        &self,
        vars: impl IntoIterator<Item = &'a str>,
    ) -> Option<crate::MonomialIdeal> {
        let d = self.dim();
        let gens = vars
            .into_iter()
            .map(|v| self.index_of(v).map(|i| Monomial::var(d, i, 1)))
            .collect::<Option<Vec<_>>>()?;
        Some(crate::MonomialIdeal::new(d, gens).expect("dimension matches context"))
    }
}

pub(crate) fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

/// A monomial `x^a`, stored as its exponent vector `a`.
///
/// Ordering is the canonical generator order: total degree first, then
/// lexicographic with larger exponents on earlier variables first, so that
/// `x^2 < x*y < y^2` in two variables.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Monomial {
    exps: Vec<u64>,
}

impl Monomial {
    pub fn new(exps: Vec<u64>) -> Self {
        Self { exps }
    }

    /// The unit monomial `1`.
    pub fn one(dim: usize) -> Self {
        Self { exps: vec![0; dim] }
    }

    /// `x_i^e`.
    pub fn var(dim: usize, i: usize, e: u64) -> Self {
        let mut exps = vec![0; dim];
        exps[i] = e;
        Self { exps }
    }

    pub fn dim(&self) -> usize {
        self.exps.len()
    }

    pub fn exponents(&self) -> &[u64] {
        &self.exps
    }

    pub fn degree(&self) -> u128 {
        self.exps.iter().map(|&e| e as u128).sum()
    }

    pub fn is_one(&self) -> bool {
        self.exps.iter().all(|&e| e == 0)
    }

    /// Indices of the variables that occur.
    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.exps
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(i, _)| i)
    }

    /// A power of a single variable (not the unit).
    pub fn is_pure_power(&self) -> bool {
        self.support().count() == 1
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        debug_assert_eq!(self.dim(), other.dim());
        self.exps.iter().zip(&other.exps).all(|(a, b)| a <= b)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        self.zip_with(other, |a, b| a.checked_add(b).expect("exponent overflow"))
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        self.zip_with(other, u64::max)
    }

    pub fn gcd(&self, other: &Monomial) -> Monomial {
        self.zip_with(other, u64::min)
    }

    /// `self / gcd(self, other)`: the generator of `(self) : other`.
    pub fn quotient(&self, other: &Monomial) -> Monomial {
        self.zip_with(other, u64::saturating_sub)
    }

    pub fn pow(&self, k: u64) -> Monomial {
        Monomial {
            exps: self
                .exps
                .iter()
                .map(|&e| e.checked_mul(k).expect("exponent overflow"))
                .collect(),
        }
    }

    /// Squarefree part: every occurring variable with exponent one.
    pub fn support_monomial(&self) -> Monomial {
        Monomial {
            exps: self.exps.iter().map(|&e| u64::from(e > 0)).collect(),
        }
    }

    fn zip_with(&self, other: &Monomial, f: impl Fn(u64, u64) -> u64) -> Monomial {
        assert_eq!(self.dim(), other.dim(), "monomials from different contexts");
        Monomial {
            exps: self
                .exps
                .iter()
                .zip(&other.exps)
                .map(|(&a, &b)| f(a, b))
                .collect(),
        }
    }

    /// Renders as `x^2*y`; the unit monomial renders as `1`.
    pub fn render(&self, ctx: &RingContext) -> String {
        let mut out = String::new();
        for i in self.support() {
            if !out.is_empty() {
                out.push('*');
            }
            out.push_str(&ctx.names()[i]);
            if self.exps[i] > 1 {
                write!(out, "^{}", self.exps[i]).unwrap();
            }
        }
        if out.is_empty() {
            out.push('1');
        }
        out
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| other.exps.cmp(&self.exps))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
