//! Mollified second moments of Dirichlet L-functions and Levinson-type lower
//! bounds for the proportion of zeros on the critical line.
//!
//! The crate is organised bottom-up:
//!
//! * [`arith`]: sieves, Dirichlet characters, Gauss and Kloosterman sums.
//! * [`jet`]: polynomials and truncated bivariate Taylor expansions in the
//!   shift variables `(a, b)`.
//! * [`mainterm`]: the analytic main term of the mollified second moment,
//!   with an exact and a quadrature backend, plus an arithmetic brute-force
//!   oracle.
//! * [`levinson`]: the Levinson functional, the resulting bound and a
//!   derivative-free optimiser over mollifier polynomials.
//! * [`moment`]: desk-scale numerical verification of the twisted second
//!   moment through Hurwitz zeta evaluation.

pub mod arith;
pub mod error;
pub mod jet;
pub mod levinson;
pub mod mainterm;
pub mod moment;
pub mod summation;

pub use error::{Error, Result};
