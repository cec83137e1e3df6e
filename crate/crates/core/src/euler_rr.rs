//! Riemann-Roch for `S^m T*_X (x) L` and for the 2-jet bundles `E_{2,m} T*_X`.
//!
//! With formal Chern roots `-alpha, -beta` of `T*_X` (`alpha + beta = c1`,
//! `alpha beta = c2`) the roots of `S^m T*_X (x) L` are
//! `l - (i alpha + (m - i) beta)` for `0 <= i <= m`, so the power sums reduce
//! to the closed forms `S1 = m(m+1)/2`, `S2 = m(m+1)(2m+1)/6` and
//! `S11 = sum i(m-i) = (m-1)m(m+1)/6`. `E_{2,m}` is handled through its
//! graded pieces `S^{m-3j} T*_X (x) K_X^j`.

use crate::chern_ring::{CohClass, SurfaceData};
use crate::error::{Error, Result};
use crate::polyalg::{rat, rat_int, Rat, Ring};

/// Smooth degree-`d` surface in `P^3`.
pub fn p3_surface(d: i64) -> Result<SurfaceData<Rat>> {
    SurfaceData::p3_surface(d)
}

/// A class in `H^2(X)`, written in the Picard basis of its surface.
#[derive(Clone, Debug, PartialEq)]
pub struct TwistClass<C = Rat> {
    pub coords: Vec<C>,
}

impl<C: Ring> TwistClass<C> {
    pub fn zero(rank: usize) -> Self {
        TwistClass {
            coords: vec![C::zero(); rank],
        }
    }

    /// `t K_X = -t c1`.
    pub fn canonical_multiple(surface: &SurfaceData<C>, t: &Rat) -> Self {
        TwistClass {
            coords: surface.c1_coords.iter().map(|c| c.scale(&-t)).collect(),
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        TwistClass {
            coords: self
                .coords
                .iter()
                .zip(&o.coords)
                .map(|(a, b)| a.clone() + b.clone())
                .collect(),
        }
    }

    pub fn scale(&self, r: &Rat) -> Self {
        TwistClass {
            coords: self.coords.iter().map(|a| a.scale(r)).collect(),
        }
    }

    pub fn as_class(&self) -> CohClass<C> {
        CohClass::divisor(self.coords.clone())
    }
}

/// `(1, c1/2, (c1^2 + c2)/12)`.
pub fn todd_degree2<C: Ring>(surface: &SurfaceData<C>) -> CohClass<C> {
    let half = rat(1, 2);
    CohClass {
        h0: C::one(),
        h2: surface.c1_coords.iter().map(|c| c.scale(&half)).collect(),
        h4: (surface.c1sq.clone() + surface.c2.clone()).scale(&rat(1, 12)),
    }
}

/// `chi(X, S^m T*_X (x) L)` by Hirzebruch-Riemann-Roch.
pub fn chi_sym<C: Ring>(surface: &SurfaceData<C>, m: u64, l: &TwistClass<C>) -> C {
    let mi = m as i64;
    let s1 = rat(mi * (mi + 1), 2);
    let s2 = rat(mi * (mi + 1) * (2 * mi + 1), 6);
    let s11 = rat((mi - 1) * mi * (mi + 1), 6);
    let r = rat_int(mi + 1);
    let c1sq = surface.c1sq.clone();
    let c2 = surface.c2.clone();
    let c1l = surface.pair(&surface.c1_coords, &l.coords);
    let ll = surface.pair(&l.coords, &l.coords);
    let td2 = (c1sq.clone() + c2.clone()).scale(&rat(1, 12));
    let ch1_td1 = (c1l.scale(&r) - c1sq.scale(&s1)).scale(&rat(1, 2));
    let ch2 = ((c1sq - c2.scale(&rat_int(2))).scale(&s2) + c2.scale(&(s11 * rat_int(2)))
        - c1l.scale(&(s1 * rat_int(2)))
        + ll.scale(&r))
    .scale(&rat(1, 2));
    td2.scale(&r) + ch1_td1 + ch2
}

/// `chi(X, E_{2,m} T*_X (x) L) = sum_{0 <= j <= m/3} chi(S^{m-3j} T*_X (x) L (x) K_X^j)`.
pub fn chi_e2m<C: Ring>(surface: &SurfaceData<C>, m: u64, l: &TwistClass<C>) -> C {
    let k = TwistClass::canonical_multiple(surface, &rat_int(1));
    let mut acc = C::zero();
    for j in 0..=m / 3 {
        let twist = l.add(&k.scale(&rat_int(j as i64)));
        acc = acc + chi_sym(surface, m - 3 * j, &twist);
    }
    acc
}

/// Whether the data could come from an actual surface: integral data,
/// Noether divisibility `12 | c1^2 + c2`, and the Wu congruence
/// `x^2 = x.c1 (mod 2)` on basis vectors. On such data `chi` of an integral
/// twist must be an integer.
pub fn is_integral_surface(surface: &SurfaceData<Rat>) -> bool {
    let int = |r: &Rat| r.is_integer();
    if !int(&surface.c1sq)
        || !int(&surface.c2)
        || !surface.c1_coords.iter().all(int)
        || !surface.pic_form.iter().flatten().all(int)
    {
        return false;
    }
    let noether = (&surface.c1sq + &surface.c2) / rat_int(12);
    if !noether.is_integer() {
        return false;
    }
    (0..surface.rank()).all(|i| {
        let xc1: Rat = (0..surface.rank())
            .map(|j| &surface.pic_form[i][j] * &surface.c1_coords[j])
            .sum();
        ((&surface.pic_form[i][i] - xc1) / rat_int(2)).is_integer()
    })
}

fn certify_integral(
    surface: &SurfaceData<Rat>,
    l: &TwistClass<Rat>,
    v: Rat,
    what: &str,
) -> Result<Rat> {
    if is_integral_surface(surface) && l.coords.iter().all(Rat::is_integer) && !v.is_integer() {
        return Err(Error::Invariant(format!(
            "{what} = {v} is not an integer for an integral twist"
        )));
    }
    Ok(v)
}

/// [`chi_sym`] with the Riemann-Roch integrality check on integral data.
pub fn chi_sym_checked(surface: &SurfaceData<Rat>, m: u64, l: &TwistClass<Rat>) -> Result<Rat> {
    certify_integral(surface, l, chi_sym(surface, m, l), "chi(S^m T* (x) L)")
}

/// [`chi_e2m`] with the Riemann-Roch integrality check on integral data.
pub fn chi_e2m_checked(surface: &SurfaceData<Rat>, m: u64, l: &TwistClass<Rat>) -> Result<Rat> {
    certify_integral(surface, l, chi_e2m(surface, m, l), "chi(E_2,m T* (x) L)")
}

/// Coefficients `c_0..c_deg` (ascending) of the unique polynomial of degree
/// at most `deg` through the first `deg + 1` samples. Every further sample
/// must lie on it, otherwise the data is not polynomial of that degree.
pub fn interpolate<C: Ring>(xs: &[i64], vals: &[C], deg: usize) -> Result<Vec<C>> {
    if xs.len() != vals.len() || xs.len() < deg + 1 {
        return Err(Error::InvalidArgument(format!(
            "need at least {} samples for degree {deg}, got {}",
            deg + 1,
            xs.len()
        )));
    }
    let n = deg + 1;
    // Newton divided differences on the first n points.
    let mut dd: Vec<C> = vals[..n].to_vec();
    let mut newton = vec![dd[0].clone()];
    for k in 1..n {
        for i in (k..n).rev() {
            if xs[i] == xs[i - k] {
                return Err(Error::InvalidArgument("repeated sample point".into()));
            }
            let h = rat_int(xs[i] - xs[i - k]);
            dd[i] = (dd[i].clone() - dd[i - 1].clone()).scale(&(rat_int(1) / h));
        }
        newton.push(dd[k].clone());
    }
    // Expand the Newton form into ascending monomial coefficients.
    let mut coeffs = vec![C::zero(); n];
    for k in (0..n).rev() {
        // coeffs = coeffs * (x - xs[k]) + newton[k]
        let mut next = vec![C::zero(); n];
        for i in 0..n {
            if coeffs[i].is_zero() {
                continue;
            }
            if i + 1 < n {
                next[i + 1] = next[i + 1].clone() + coeffs[i].clone();
            }
            next[i] = next[i].clone() - coeffs[i].scale(&rat_int(xs[k]));
        }
        next[0] = next[0].clone() + newton[k].clone();
        coeffs = next;
    }
    for (x, v) in xs.iter().zip(vals).skip(n) {
        let mut acc = C::zero();
        for c in coeffs.iter().rev() {
            acc = acc.scale(&rat_int(*x)) + c.clone();
        }
        if acc != *v {
            return Err(Error::Invariant(format!(
                "sample at {x} does not lie on the degree-{deg} interpolant"
            )));
        }
    }
    Ok(coeffs)
}

/// Number of samples per residue class used for extraction; two more than the
/// five needed for a quartic, so every fit is checked.
pub const SAMPLES_PER_CLASS: usize = 7;

/// The cubic `m -> chi(S^m T*_X (x) L)` as ascending coefficients.
pub fn chi_sym_polynomial<C: Ring>(surface: &SurfaceData<C>, l: &TwistClass<C>) -> Result<Vec<C>> {
    let xs: Vec<i64> = (0..SAMPLES_PER_CLASS as i64).collect();
    let vals: Vec<C> = xs.iter().map(|&m| chi_sym(surface, m as u64, l)).collect();
    interpolate(&xs, &vals, 3)
}

/// The `m^3` coefficient of `chi(S^m T*_X (x) L)`; equals `(c1^2 - c2)/6`.
pub fn leading_coeff_chi_sym<C: Ring>(surface: &SurfaceData<C>, l: &TwistClass<C>) -> Result<C> {
    Ok(chi_sym_polynomial(surface, l)?
        .pop()
        .expect("four coefficients"))
}

/// For each residue `r` of `m mod 3`, the quartic `m -> chi(E_{2,m} (x) L)`
/// on `m = r (mod 3)`, as ascending coefficients in `m`.
pub fn chi_e2m_quasi_polynomial<C: Ring>(
    surface: &SurfaceData<C>,
    l: &TwistClass<C>,
) -> Result<[Vec<C>; 3]> {
    let fit = |r: i64| {
        let xs: Vec<i64> = (0..SAMPLES_PER_CLASS as i64).map(|t| r + 3 * t).collect();
        let vals: Vec<C> = xs.iter().map(|&m| chi_e2m(surface, m as u64, l)).collect();
        interpolate(&xs, &vals, 4)
    };
    Ok([fit(0)?, fit(1)?, fit(2)?])
}

/// The `m^4` coefficient of `chi(E_{2,m} T*_X (x) L)`, checked to be the same
/// on all three residue classes; equals `(13 c1^2 - 9 c2)/648`.
pub fn leading_coeff_chi_e2m<C: Ring>(surface: &SurfaceData<C>, l: &TwistClass<C>) -> Result<C> {
    let q = chi_e2m_quasi_polynomial(surface, l)?;
    let lead = q[0][4].clone();
    if q[1][4] != lead || q[2][4] != lead {
        return Err(Error::Invariant(
            "m^4 coefficient differs between residue classes mod 3".into(),
        ));
    }
    Ok(lead)
}

/// `rank E_{2,m} T*_X = sum_{0 <= j <= m/3} (m - 3j + 1)`.
pub fn rank_e2m(m: u64) -> u64 {
    (0..=m / 3).map(|j| m - 3 * j + 1).sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chern_ring::SYMBOLIC_VARS;
    use crate::polyalg::{parse_mpoly, MPoly};

    fn sym(s: &str) -> MPoly {
        parse_mpoly(s, &SYMBOLIC_VARS).unwrap()
    }

    #[test]
    fn todd_values() {
        let s = SurfaceData::symbolic();
        assert_eq!(todd_degree2(&s).h4, sym("1/12*c1sq + 1/12*c2"));
        assert_eq!(todd_degree2(&p3_surface(5).unwrap()).h4, rat_int(5));
        assert_eq!(todd_degree2(&p3_surface(6).unwrap()).h4, rat_int(11));
    }

    #[test]
    fn noether_and_small_cases() {
        let s = SurfaceData::symbolic();
        let z = TwistClass::zero(2);
        assert_eq!(chi_sym(&s, 0, &z), sym("1/12*c1sq + 1/12*c2"));
        let x = p3_surface(15).unwrap();
        let zx = TwistClass::zero(1);
        assert_eq!(chi_sym_checked(&x, 0, &zx).unwrap(), rat_int(365));
        let l = TwistClass {
            coords: vec![rat_int(2)],
        };
        let k = TwistClass::canonical_multiple(&x, &rat_int(1));
        assert_eq!(chi_e2m(&x, 0, &l), chi_sym(&x, 0, &l));
        assert_eq!(
            chi_e2m(&x, 3, &l),
            chi_sym(&x, 3, &l) + chi_sym(&x, 0, &l.add(&k))
        );
    }

    #[test]
    fn symbolic_leading_coefficients() {
        let s = SurfaceData::symbolic();
        let z = TwistClass::zero(2);
        assert_eq!(
            leading_coeff_chi_sym(&s, &z).unwrap(),
            sym("1/6*c1sq - 1/6*c2")
        );
        assert_eq!(
            leading_coeff_chi_e2m(&s, &z).unwrap(),
            sym("13/648*c1sq - 9/648*c2")
        );
        let f = TwistClass {
            coords: vec![MPoly::zero(), MPoly::int(-1)],
        };
        assert_eq!(
            leading_coeff_chi_e2m(&s, &f).unwrap(),
            sym("13/648*c1sq - 9/648*c2")
        );
    }

    #[test]
    fn degree_fifteen_leading_coefficient() {
        let x = p3_surface(15).unwrap();
        let z = TwistClass::zero(1);
        assert_eq!(leading_coeff_chi_e2m(&x, &z).unwrap(), rat(510, 648));
        let minus_h = TwistClass {
            coords: vec![rat_int(-1)],
        };
        assert_eq!(leading_coeff_chi_e2m(&x, &minus_h).unwrap(), rat(510, 648));
    }

    #[test]
    fn interpolation_rejects_non_polynomial_data() {
        let xs = [0, 1, 2, 3];
        let vals = [rat_int(0), rat_int(1), rat_int(4), rat_int(10)];
        assert!(matches!(
            interpolate(&xs, &vals, 2),
            Err(Error::Invariant(_))
        ));
        let ok = interpolate(&xs[..3], &vals[..3], 2).unwrap();
        assert_eq!(ok, vec![rat_int(0), rat_int(0), rat_int(1)]);
    }

    #[test]
    fn integrality_detection() {
        assert!(is_integral_surface(&p3_surface(7).unwrap()));
        let fake = SurfaceData::new(
            rat_int(1),
            rat_int(2),
            vec!["e".into()],
            vec![vec![rat_int(1)]],
            vec![rat_int(1)],
        )
        .unwrap();
        assert!(!is_integral_surface(&fake));
        // A half-canonical twist on a non-spin surface need not give an integer.
        let x = p3_surface(5).unwrap();
        let half = TwistClass::canonical_multiple(&x, &rat(1, 2));
        assert!(chi_sym_checked(&x, 1, &half).is_ok());
    }

    #[test]
    fn ranks() {
        assert_eq!(rank_e2m(0), 1);
        assert_eq!(rank_e2m(3), 5);
        assert_eq!(rank_e2m(6), 12);
    }
}
