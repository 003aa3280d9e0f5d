use thiserror::Error;

use crate::MonomialIdeal;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ContextError {
    #[error("a ring context needs at least one variable")]
    Empty,
    #[error("duplicate variable name `{0}`")]
    Duplicate(String),
    #[error("`{0}` is not a valid identifier")]
    InvalidName(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum IdealError {
    #[error("dimension mismatch: expected {expected} variables, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("quotient by the zero ideal is undefined")]
    ZeroDivisor,
    #[error("the unit ideal has no primary decomposition")]
    UnitIdeal,
}

/// Failures of [`crate::primary::assemble`].
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AssembleError {
    #[error("the unit ideal has no primary decomposition")]
    UnitIdeal,
    #[error("picked components do not intersect to the input ideal: {0}")]
    IntersectionMismatch(String),
    #[error("pick for prime {prime} is not primary to it")]
    NotPrimary { prime: MonomialIdeal },
}

/// Failures of the checks in [`crate::theorem`].
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EngineError {
    #[error(transparent)]
    Ideal(#[from] IdealError),
    #[error("search exceeded cap {cap} for prime {prime}; raise the cap")]
    CapExceeded { cap: u64, prime: MonomialIdeal },
    /// `prime` names the offending associated prime when there is one.
    #[error("k = {k} is too small: {reason}")]
    KTooSmall {
        k: u64,
        prime: Option<MonomialIdeal>,
        reason: String,
    },
    #[error(transparent)]
    Family(#[from] FamilyError),
    #[error("at n = {n:?}: {source}")]
    AtPoint {
        n: Vec<u64>,
        #[source]
        source: Box<EngineError>,
    },
}

impl EngineError {
    /// Attaches the lattice point being processed.
    pub fn at(self, n: &[u64]) -> Self {
        match self {
            e @ EngineError::AtPoint { .. } => e,
            e => EngineError::AtPoint {
                n: n.to_vec(),
                source: Box::new(e),
            },
        }
    }

    /// The error with any lattice point stripped.
    pub fn root(&self) -> &EngineError {
        match self {
            EngineError::AtPoint { source, .. } => source.root(),
            e => e,
        }
    }

    pub fn point(&self) -> Option<&[u64]> {
        match self {
            EngineError::AtPoint { n, .. } => Some(n),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FamilyError {
    #[error("line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("invalid family: {0}")]
    Invalid(String),
    #[error("expected {expected} parameter values, found {found}")]
    Arity { expected: usize, found: usize },
    #[error("exponent overflow evaluating the family at {0:?}")]
    Overflow(Vec<u64>),
    #[error("invalid box: {0}")]
    Box(String),
    #[error(transparent)]
    Context(#[from] ContextError),
}

impl From<serde_json::Error> for FamilyError {
    fn from(e: serde_json::Error) -> Self {
        let full = e.to_string();
        let message = match full.rsplit_once(" at line ") {
            Some((head, _)) => head.to_string(),
            None => full,
        };
        FamilyError::Parse {
            line: e.line(),
            column: e.column(),
            message,
        }
    }
}
