//! Exact calculus substrate: univariate polynomials and truncated bivariate
//! Taylor expansions ("jets") in the shift variables `(a, b)`.
//!
//! Jets store Taylor coefficients, i.e. `∂_a^m ∂_b^n f / (m! n!)`, so that
//! multiplication is a plain Cauchy product; factorials only appear in
//! [`apply_operator`].

mod jet2;
mod poly;
mod scalar;

pub use jet2::{apply_operator, Jet2, MAX_EXP_ORDER};
pub use poly::Poly;
pub use scalar::{parse_decimal, rational_from_f64, rational_to_f64, Field, Rational, Scalar};
