use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// Arbitrary-precision rational, always kept in lowest terms with positive
/// denominator.
pub type Rat = BigRational;

pub fn rat(num: i64, den: i64) -> Rat {
    Rat::new(BigInt::from(num), BigInt::from(den))
}

pub fn rat_int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// Canonical text form: `p` for integers, `p/q` otherwise.
pub fn fmt_rat(r: &Rat) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Parses `p`, `-p`, `p/q` (whitespace tolerated around the slash).
pub fn parse_rat(s: &str) -> Result<Rat> {
    let s = s.trim();
    let bad = || Error::Parse(format!("malformed rational `{s}`"));
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let num: BigInt = n.parse().map_err(|_| bad())?;
    let den: BigInt = d.parse().map_err(|_| bad())?;
    if den.is_zero() {
        return Err(Error::Parse(format!("zero denominator in `{s}`")));
    }
    Ok(Rat::new(num, den))
}

pub(crate) fn lcm_big(a: &BigInt, b: &BigInt) -> BigInt {
    use num_integer::Integer;
    a.lcm(b)
}

pub(crate) fn gcd_big(a: &BigInt, b: &BigInt) -> BigInt {
    use num_integer::Integer;
    a.gcd(b)
}

/// Serializes as the [`fmt_rat`] string, for `#[serde(serialize_with)]`.
pub fn serialize_rat<S: serde::Serializer>(r: &Rat, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&fmt_rat(r))
}

pub fn serialize_opt_rat<S: serde::Serializer>(
    r: &Option<Rat>,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    match r {
        Some(r) => s.serialize_str(&fmt_rat(r)),
        None => s.serialize_none(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_form() {
        assert_eq!(rat(6, -4), rat(-3, 2));
        assert_eq!(fmt_rat(&rat(6, -4)), "-3/2");
        assert_eq!(fmt_rat(&rat(510, 648)), "85/108");
        assert_eq!(fmt_rat(&rat(0, 5)), "0");
        assert_eq!(*rat(0, 7).denom(), BigInt::from(1));
    }

    #[test]
    fn parse_round_trip() {
        assert_eq!(parse_rat(" -9 / 12 ").unwrap(), rat(-3, 4));
        assert_eq!(parse_rat("17").unwrap(), rat_int(17));
        assert!(parse_rat("1/0").is_err());
        assert!(parse_rat("x").is_err());
    }
}
