//! Exact arithmetic for jet differentials on surfaces.
//!
//! The crate is organised bottom-up:
//!
//! - [`polyalg`]: rationals, sparse multivariate polynomials, rational functions,
//!   subresultant gcd and fraction-free linear algebra.
//! - [`chern_ring`]: the cohomology ring of a surface and of its Semple tower
//!   `X_2 -> X_1 -> X`, with relation-based reduction and integration.
//! - [`euler_rr`]: Riemann-Roch for symmetric powers of the cotangent bundle and
//!   for the bundles of invariant 2-jet differentials.
//! - [`jetcalc`]: the local algebra of invariant 2-jet differentials.
//! - [`nadel`]: meromorphic connections on deformed Fermat surfaces and section
//!   counts on `P^3`.
//! - [`thresholds`]: jet-threshold bounds and the degree cutoffs they imply.
//!
//! Nothing here uses floating point.

pub mod chern_ring;
pub mod error;
pub mod euler_rr;
pub mod exec;
pub mod jetcalc;
pub mod nadel;
pub mod polyalg;
pub mod thresholds;

pub use error::{Error, Result};
pub use exec::Exec;
pub use polyalg::{MPoly, Rat, RatFunc, Ring};
