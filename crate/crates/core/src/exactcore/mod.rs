//! Exact arithmetic over ℚ: rationals, polynomials, factorization, parsing.

pub mod factor;
pub mod field;
pub mod height;
pub mod integer;
pub(crate) mod intpoly;
pub mod modular;
pub mod mpoly;
pub mod parse;
pub mod poly;

pub type Rational = num_rational::BigRational;

pub use factor::{factor_poly, integer_roots, Factorization};
pub use height::{rational_height, rational_height_single};
pub use mpoly::MPoly;
pub use parse::parse_expr;
pub use poly::Poly;
