//! Exact computation of Stanley's character polynomials for the symmetric
//! group, coloured top factorizations, and their plane-tree encodings.
//!
//! The polynomial and series machinery is generic over the coefficient ring
//! (see [`Scalar`]); the aliases below fix the instantiations used by the
//! rest of the crate and by the command-line tool.
//!
//! Points of permutations are 0-based in the Rust API. The cycle-notation
//! text format (`"(1 6 8 9)(2 5)(3)"`) is 1-based.

pub mod charlib;
pub mod colours;
pub mod error;
pub mod factor;
pub mod perm;
pub mod polyring;
pub mod stanley;
pub mod trees;

pub use error::{Error, Result};
pub use polyring::{Context, Monomial, MultiPoly, PowerSeries, Scalar};

/// Arbitrary-precision rationals, the default coefficient field.
pub type Rational = num_rational::BigRational;
/// Arbitrary-precision integers.
pub type Integer = num_bigint::BigInt;

/// Polynomials over the rationals.
pub type QPoly = MultiPoly<Rational>;
/// Truncated power series with rational polynomial coefficients.
pub type QSeries = PowerSeries<Rational>;
/// Polynomials over the integers.
pub type ZPoly = MultiPoly<Integer>;
/// Truncated power series with integer polynomial coefficients.
pub type ZSeries = PowerSeries<Integer>;
/// Polynomials over checked 128-bit integers. Overflow panics rather than
/// wrapping (the workspace enables overflow checks in every profile).
pub type FastPoly = MultiPoly<i128>;
/// Series over checked 128-bit integers.
pub type FastSeries = PowerSeries<i128>;
