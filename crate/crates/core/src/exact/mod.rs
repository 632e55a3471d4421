//! Exact arithmetic: rationals, Laurent polynomials, truncated series and
//! dense linear algebra.

pub mod laurent;
pub mod linalg;
mod pochhammer;
pub mod rational;
pub mod series;

pub use laurent::LaurentPoly;
pub use pochhammer::{binomial, factorial, falling, pochhammer};
pub use rational::{q, Rational};
pub use series::{GenSeries, DEFAULT_ORDER};
