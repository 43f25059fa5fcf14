//! The rational function field ℚ(z): elements, places, divisors, heights.

pub mod height;
pub mod place;
pub mod ratfunc;

pub use height::{constant_rank, ff_height, ff_height_single, linearly_independent};
pub use place::{divisor, support, valuation, Divisor, Place, PlaceSet};
pub use ratfunc::RatFunc;
