//! Exact arithmetic toolkit for the growth of multi-recurrences
//!
//! `G(n) = Σ P_i(n)·α_i^n` is studied over ℚ and over the rational function
//! field ℚ(z). The crate provides:
//!
//! - [`exactcore`]: rationals, univariate/multivariate polynomials,
//!   factorization over ℚ and an expression parser,
//! - [`funcfield`]: rational functions, places, valuations, divisors and
//!   projective heights on ℚ(z),
//! - [`model`]: validated multi-recurrence specifications,
//! - [`independence`]: relation lattices, multiplicative dependence and the
//!   Wronskian criterion,
//! - [`bounds`]: explicit growth-bound constants,
//! - [`verify`]: exhaustive exact verification of the growth inequalities.
//!
//! No floating-point value takes part in any accept/reject decision.

pub mod bounds;
pub mod error;
pub mod exactcore;
pub mod funcfield;
pub mod independence;
pub mod model;
pub mod verify;

pub use error::{Error, Result};
pub use exactcore::{MPoly, Poly, Rational};
pub use funcfield::{Divisor, Place, PlaceSet, RatFunc};
pub use model::{FieldTag, MultiRecSpec, Term};
