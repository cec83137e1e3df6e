use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::gcd::gcd_mpoly;
use super::mpoly::{Degree, MPoly};
use super::rat::Rat;
use super::Ring;
use crate::error::{Error, Result};

/// Quotient of polynomials in canonical form: numerator and denominator share
/// no factor, and the denominator has integer coefficients with content 1 and
/// a positive leading coefficient. Zero is `0 / 1`.
#[derive(Clone)]
pub struct RatFunc {
    num: MPoly,
    den: MPoly,
}

impl RatFunc {
    pub fn new(num: MPoly, den: MPoly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::canonical(num, den))
    }

    pub fn from_poly(p: MPoly) -> Self {
        let one = MPoly::one().align(p.vars());
        Self::canonical(p, one)
    }

    fn canonical(num: MPoly, den: MPoly) -> Self {
        if num.is_zero() {
            return RatFunc {
                den: MPoly::one().align(num.vars()),
                num,
            };
        }
        let g = gcd_mpoly(&num, &den);
        let num = num.div_exact(&g).expect("gcd divides numerator");
        let den = den.div_exact(&g).expect("gcd divides denominator");
        let normalized = den.primitive_normalized();
        let factor = normalized.leading_coeff() / den.leading_coeff();
        RatFunc {
            num: num.scale(&factor),
            den: normalized,
        }
    }

    pub fn num(&self) -> &MPoly {
        &self.num
    }

    pub fn den(&self) -> &MPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_constant()
    }

    /// `deg num - deg den` when both are homogeneous in `vars`; `None` for
    /// zero or inhomogeneous fractions.
    pub fn homogeneous_degree(&self, vars: &[&str]) -> Option<i64> {
        let n = self.num.homogeneous_degree(vars)?;
        let d = self.den.homogeneous_degree(vars)?;
        match (n, d) {
            (Degree::Finite(n), Degree::Finite(d)) => Some(n as i64 - d as i64),
            _ => None,
        }
    }

    pub fn inv(&self) -> Result<Self> {
        Self::new(self.den.clone(), self.num.clone())
    }

    pub fn div(&self, rhs: &RatFunc) -> Result<Self> {
        Ok(self * &rhs.inv()?)
    }

    pub fn substitute(&self, var: &str, value: &Rat) -> Result<Self> {
        Self::new(
            self.num.substitute(var, value),
            self.den.substitute(var, value),
        )
    }

    fn add_ref(&self, rhs: &RatFunc) -> RatFunc {
        if self.den == rhs.den {
            return Self::canonical(&self.num + &rhs.num, self.den.clone());
        }
        Self::canonical(
            &(&self.num * &rhs.den) + &(&rhs.num * &self.den),
            &self.den * &rhs.den,
        )
    }

    fn mul_ref(&self, rhs: &RatFunc) -> RatFunc {
        Self::canonical(&self.num * &rhs.num, &self.den * &rhs.den)
    }

    fn neg_ref(&self) -> RatFunc {
        RatFunc {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

impl PartialEq for RatFunc {
    fn eq(&self, other: &Self) -> bool {
        &self.num * &other.den == &other.num * &self.den
    }
}

impl Eq for RatFunc {}

impl fmt::Debug for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RatFunc({self})")
    }
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_polynomial() {
            let c = self.den.leading_coeff();
            return write!(f, "{}", self.num.scale(&(Rat::from_integer(1.into()) / c)));
        }
        write!(f, "({})/({})", self.num, self.den)
    }
}

impl Add for RatFunc {
    type Output = RatFunc;
    fn add(self, rhs: RatFunc) -> RatFunc {
        self.add_ref(&rhs)
    }
}

impl Sub for RatFunc {
    type Output = RatFunc;
    fn sub(self, rhs: RatFunc) -> RatFunc {
        self.add_ref(&rhs.neg_ref())
    }
}

impl Mul for RatFunc {
    type Output = RatFunc;
    fn mul(self, rhs: RatFunc) -> RatFunc {
        self.mul_ref(&rhs)
    }
}

impl<'a> Add<&'a RatFunc> for &'a RatFunc {
    type Output = RatFunc;
    fn add(self, rhs: &'a RatFunc) -> RatFunc {
        self.add_ref(rhs)
    }
}

impl<'a> Sub<&'a RatFunc> for &'a RatFunc {
    type Output = RatFunc;
    fn sub(self, rhs: &'a RatFunc) -> RatFunc {
        self.add_ref(&rhs.neg_ref())
    }
}

impl<'a> Mul<&'a RatFunc> for &'a RatFunc {
    type Output = RatFunc;
    fn mul(self, rhs: &'a RatFunc) -> RatFunc {
        self.mul_ref(rhs)
    }
}

impl Neg for RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        self.neg_ref()
    }
}

impl Ring for RatFunc {
    fn zero() -> Self {
        RatFunc::from_poly(MPoly::zero())
    }
    fn one() -> Self {
        RatFunc::from_poly(MPoly::one())
    }
    fn from_rat(r: Rat) -> Self {
        RatFunc::from_poly(MPoly::constant(r))
    }
    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
    fn div_exact(&self, rhs: &Self) -> Option<Self> {
        self.div(rhs).ok()
    }
}
