//! Sparse multivariate polynomials and truncated power series over an exact
//! coefficient ring.

mod poly;
mod scalar;
mod series;

pub use poly::{Context, Monomial, MultiPoly, PolyRepr, TermRepr, MAX_VARS};
pub use scalar::Scalar;
pub use series::{compositional_inverse, expand_at_infinity, PowerSeries};
