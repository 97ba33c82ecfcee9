//! Exact q-series and high-precision evaluation of reciprocal-sum partition
//! statistics and their modular completions.
//!
//! The crate has two layers that check each other:
//!
//! * an exact layer ([`arith`], [`series`], [`qseries`], [`partitions`])
//!   working over arbitrary-precision rationals, with a brute-force
//!   partition enumerator as ground truth, and
//! * an analytic layer ([`special`], [`maass`], [`numdiff`]) evaluating
//!   Maass Eisenstein series, completed Eichler integrals and the completed
//!   generating functions at points of the upper half-plane in
//!   arbitrary-precision floating point.
//!
//! [`suites`] wires both layers into named verification suites with
//! structured [`report`]s; the `srp-verify` binary exposes them on the
//! command line.

pub mod arith;
pub mod complex;
pub mod error;
pub mod maass;
pub mod numdiff;
pub mod partitions;
pub mod precision;
pub mod qseries;
pub mod report;
pub mod series;
pub mod special;
pub mod suites;
pub mod tables;

pub use complex::HalfPlanePoint;
pub use error::{Error, Result};
pub use precision::PrecisionContext;
pub use series::PowerSeries;

/// Arbitrary-precision rational, the coefficient field of every q-series.
///
/// Always canonical: positive denominator, gcd(|num|, den) = 1.
pub type Rational = rug::Rational;

/// Arbitrary-precision integer.
pub type Integer = rug::Integer;

/// Arbitrary-precision float; precision is carried by the value.
pub type Real = rug::Float;

/// Arbitrary-precision complex number; both parts carry the precision.
pub type BigComplex = rug::Complex;
