//! Exact-arithmetic kernel: rationals, sparse multivariate polynomials,
//! rational functions and fraction-free linear algebra.

mod gcd;
mod linalg;
mod mpoly;
mod parse;
mod rat;
mod ratfunc;

use std::fmt::Debug;
use std::ops::{Add, Mul, Neg, Sub};

pub use gcd::{gcd_mpoly, lcm_mpoly};
pub use linalg::{det_fraction_free, rank_rat, solve_linear};
pub use mpoly::{divides, Degree, MPoly, Monomial};
pub use parse::parse_mpoly;
pub use rat::{fmt_rat, parse_rat, rat, rat_int, serialize_opt_rat, serialize_rat, Rat};
pub use ratfunc::RatFunc;

/// A commutative ring with exact (partial) division, as needed by fraction-free
/// elimination and by the generic cohomology ring.
pub trait Ring:
    Clone
    + PartialEq
    + Debug
    + Send
    + Sync
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
    fn zero() -> Self;
    fn one() -> Self;
    fn from_rat(r: Rat) -> Self;
    fn is_zero(&self) -> bool;

    /// `Some(q)` with `self = q * rhs` when such a `q` exists in the ring.
    fn div_exact(&self, rhs: &Self) -> Option<Self>;

    fn from_int(n: i64) -> Self {
        Self::from_rat(rat_int(n))
    }

    fn scale(&self, r: &Rat) -> Self {
        self.clone() * Self::from_rat(r.clone())
    }

    fn pow_u(&self, e: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..e {
            acc = acc * self.clone();
        }
        acc
    }
}

impl Ring for Rat {
    fn zero() -> Self {
        num_traits::Zero::zero()
    }
    fn one() -> Self {
        num_traits::One::one()
    }
    fn from_rat(r: Rat) -> Self {
        r
    }
    fn is_zero(&self) -> bool {
        num_traits::Zero::is_zero(self)
    }
    fn div_exact(&self, rhs: &Self) -> Option<Self> {
        if Ring::is_zero(rhs) {
            None
        } else {
            Some(self / rhs)
        }
    }
}
