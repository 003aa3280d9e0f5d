//! Exact computations with monomial ideals of `K[x_1, .., x_d]`, organized
//! around one question about graded families `n ↦ A/I(n)`: can every
//! component be given a primary decomposition whose `P`-primary part
//! contains `P^k` for a single `k` independent of `n`?
//!
//! * [`monomial`], [`ideal`], [`staircase`]: monomials, canonical monomial
//!   ideals and a brute-force membership oracle.
//! * [`primary`]: irreducible and primary decompositions, associated
//!   primes, and assembly of per-prime components.
//! * [`family`]: parametric families in graded-quotient or affine mode, plus
//!   the JSON family format.
//! * [`theorem`]: uniform-`k` scans, bounded decompositions with
//!   certificates, and zeroth local cohomology checks.
//! * [`oracle`]: seeded randomized suites comparing everything above against
//!   the staircase oracle.

pub mod error;
pub mod family;
pub mod ideal;
pub mod monomial;
pub mod oracle;
pub mod primary;
pub mod staircase;
pub mod theorem;

pub use error::{AssembleError, ContextError, EngineError, FamilyError, IdealError};
pub use family::{AffineExponent, FamilyBox, FamilyMode, FamilySpec, GradedGenerator};

pub use ideal::MonomialIdeal;
pub use monomial::{Monomial, RingContext};
pub use primary::{PrimaryComponent, PrimaryDecomposition, SplitOrder};
