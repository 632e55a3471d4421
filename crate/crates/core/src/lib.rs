//! Exact tridiagonalization of the hypergeometric operator.
//!
//! Everything is computed over the rationals: operators are normal-form
//! differential operators with Laurent-polynomial coefficients, and every
//! identity is checked as an exact zero residual at concrete parameters.

pub mod diffop;
pub mod error;
pub mod exact;
pub mod hahn;
pub mod jacobi;
pub mod par;
pub mod qalg;
pub mod report;
pub mod sampling;
pub mod suites;
pub mod tables;
pub mod tridiag;
pub mod wilson;

pub use diffop::{AffineMatch, DiffOp};
pub use error::{Error, Result};
pub use exact::{q, GenSeries, LaurentPoly, Rational};
pub use par::Execution;
