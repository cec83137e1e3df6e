//! Bounds on jet thresholds and the sign tests that turn them into degree
//! cutoffs for surfaces in `P^3`.
//!
//! Every inequality here is strict and decided by the exact sign of a
//! [`Verdict::margin`]; a zero margin fails.

use num_traits::Signed;
use serde::Serialize;

use crate::chern_ring::SurfaceData;
use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::polyalg::{rat, rat_int, serialize_opt_rat, serialize_rat, Rat};

pub const ASSUME_PICARD_RANK_ONE: &str =
    "Pic(X) = Z: Noether-Lefschetz for a very generic surface, assumed";
pub const ASSUME_THETA2_LOWER: &str =
    "theta2 >= -1/6 + 1/(2(d-4)): lower bound for a very generic surface, assumed";
pub const ASSUME_THETA2M_GENERIC: &str =
    "theta_{2,m} bounds for m = 3, 4, 5 hold for a generic surface, assumed";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", content = "m", rename_all = "snake_case")]
pub enum ThresholdKind {
    Theta1,
    Theta1m(u32),
    Theta2,
    Theta2m(u32),
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ThresholdBound {
    pub kind: ThresholdKind,
    #[serde(serialize_with = "serialize_opt_rat")]
    pub lower: Option<Rat>,
    #[serde(serialize_with = "serialize_opt_rat")]
    pub upper: Option<Rat>,
    pub provenance: &'static str,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Verdict {
    pub name: String,
    pub holds: bool,
    /// Left side minus right side of the deciding strict inequality.
    #[serde(serialize_with = "serialize_rat")]
    pub margin: Rat,
    pub assumptions: Vec<String>,
}

impl Verdict {
    pub fn from_margin(name: &str, margin: Rat) -> Self {
        Verdict {
            name: name.into(),
            holds: margin.is_positive(),
            margin,
            assumptions: Vec::new(),
        }
    }

    fn assuming(mut self, a: &[&str]) -> Self {
        self.assumptions.extend(a.iter().map(|s| s.to_string()));
        self
    }
}

fn general_type(d: i64) -> Result<()> {
    if d < 5 {
        return Err(Error::InvalidArgument(format!(
            "degree {d} surfaces in P^3 are not of general type"
        )));
    }
    Ok(())
}

fn generic_range(d: i64) -> Result<()> {
    if d < 6 {
        return Err(Error::InvalidArgument(format!(
            "theta_2 bounds need d >= 6, got {d}"
        )));
    }
    Ok(())
}

/// `1/(d-4) <= theta1 <= 2/(d-4)`.
pub fn theta1_bounds(d: i64) -> Result<ThresholdBound> {
    general_type(d)?;
    Ok(ThresholdBound {
        kind: ThresholdKind::Theta1,
        lower: Some(rat(1, d - 4)),
        upper: Some(rat(2, d - 4)),
        provenance: "theta1: sections of S^m T* on P^3 restricted to X",
    })
}

/// `min(2, 1 + (d-1)/m) / (d-4)`.
pub fn theta1m_lower(d: i64, m: i64) -> Result<Rat> {
    general_type(d)?;
    if m < 1 {
        return Err(Error::InvalidArgument(format!(
            "m must be positive, got {m}"
        )));
    }
    let branch = rat_int(1) + rat(d - 1, m);
    Ok(branch.min(rat_int(2)) / rat_int(d - 4))
}

/// `min(t23, t24, t25, theta1_low/2 - 1/6)`.
pub fn theta2_lower_combination(t23: &Rat, t24: &Rat, t25: &Rat, theta1_low: &Rat) -> Rat {
    let tail = theta1_low / rat_int(2) - rat(1, 6);
    [t23, t24, t25]
        .into_iter()
        .cloned()
        .fold(tail, |acc, t| acc.min(t))
}

/// `-1/(2m) + (2 - 7/(2m))/(d-4)` for `m = 3, 4, 5`.
pub fn theta2m_lower(d: i64, m: i64) -> Result<Rat> {
    generic_range(d)?;
    if !(3..=5).contains(&m) {
        return Err(Error::InvalidArgument(format!(
            "m must be 3, 4 or 5, got {m}"
        )));
    }
    Ok(-rat(1, 2 * m) + (rat_int(2) - rat(7, 2 * m)) / rat_int(d - 4))
}

/// Lower bound on `theta2` for a very generic surface of degree `d >= 6`,
/// assembled from [`theta2m_lower`] and [`theta1_bounds`].
pub fn theta2_lower(d: i64) -> Result<ThresholdBound> {
    let t: Vec<Rat> = (3..=5)
        .map(|m| theta2m_lower(d, m))
        .collect::<Result<_>>()?;
    let t1 = theta1_bounds(d)?.lower.expect("two-sided bound");
    Ok(ThresholdBound {
        kind: ThresholdKind::Theta2,
        lower: Some(theta2_lower_combination(&t[0], &t[1], &t[2], &t1)),
        upper: None,
        provenance: "theta2: minimum of the m = 3, 4, 5 bounds and theta1/2 - 1/6",
    })
}

/// `13 c1^2 - 9 c2 > 0`, which forces `theta2 < 0`.
pub fn check_gg_existence(s: &SurfaceData) -> Verdict {
    Verdict::from_margin("gg_existence", rat_int(13) * &s.c1sq - rat_int(9) * &s.c2)
}

/// `c1^2 - 2 c2 > 0`.
pub fn check_miyaoka(s: &SurfaceData) -> Verdict {
    Verdict::from_margin("miyaoka", &s.c1sq - rat_int(2) * &s.c2)
}

/// `7 c1^2 - 9 c2 > 0`.
pub fn check_ratio_7_9(s: &SurfaceData) -> Verdict {
    Verdict::from_margin("ratio_7_9", rat_int(7) * &s.c1sq - rat_int(9) * &s.c2)
}

/// `c1^2 - c2 > 0`.
pub fn check_bogomolov(s: &SurfaceData) -> Verdict {
    Verdict::from_margin("bogomolov", &s.c1sq - &s.c2)
}

/// `c1^2 (13 + 12 theta2_low) > 9 c2` with `13 + 12 theta2_low > 0` required.
/// Fails with the non-positive denominator as margin otherwise.
pub fn check_chern_ratio(s: &SurfaceData, theta2_low: &Rat) -> Verdict {
    let den = rat_int(13) + rat_int(12) * theta2_low;
    if !den.is_positive() {
        let mut v = Verdict::from_margin("hyperbolicity_ratio", den);
        v.holds = false;
        v.assumptions
            .push("13 + 12 theta2 <= 0: the ratio condition is not meaningful".into());
        return v;
    }
    Verdict::from_margin("hyperbolicity_ratio", &s.c1sq * den - rat_int(9) * &s.c2)
}

/// Chern-ratio condition for a very generic surface of degree `d >= 6` in `P^3`
/// with `theta2` replaced by [`theta2_lower`]. The right side decreases in
/// `theta2`, so the lower bound is conservative.
pub fn check_hyperbolicity_ratio(d: i64) -> Result<Verdict> {
    generic_range(d)?;
    let s = SurfaceData::p3_surface(d)?;
    let low = theta2_lower(d)?.lower.expect("lower bound");
    Ok(check_chern_ratio(&s, &low).assuming(&[
        ASSUME_PICARD_RANK_ONE,
        ASSUME_THETA2_LOWER,
        ASSUME_THETA2M_GENERIC,
    ]))
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct FoliationVerdicts {
    /// `m (c1^2 - c2) + c1.F > 0`.
    pub first_order: Verdict,
    /// `m^2 (4c1^2 - 3c2) + m (5c1^2 - 3c2) + (8m + 4) c1.F + 3 F^2
    /// - (3 u1 - c1).G1 > 0`.
    pub second_order: Verdict,
}

/// Positivity tests for a multi-foliation of degree `m`, given the
/// intersection numbers `c1.F`, `F^2`, `u1.G1`, `c1.G1`.
pub fn check_foliation_criterion(
    s: &SurfaceData,
    m: i64,
    c1f: &Rat,
    f2: &Rat,
    u1g1: &Rat,
    c1g1: &Rat,
) -> Result<FoliationVerdicts> {
    if m < 1 {
        return Err(Error::InvalidArgument(format!(
            "m must be positive, got {m}"
        )));
    }
    let mm = rat_int(m);
    let first = &mm * (&s.c1sq - &s.c2) + c1f;
    let second = &mm * &mm * (rat_int(4) * &s.c1sq - rat_int(3) * &s.c2)
        + &mm * (rat_int(5) * &s.c1sq - rat_int(3) * &s.c2)
        + rat_int(8 * m + 4) * c1f
        + rat_int(3) * f2
        - (rat_int(3) * u1g1 - c1g1);
    Ok(FoliationVerdicts {
        first_order: Verdict::from_margin("foliation_first_order", first),
        second_order: Verdict::from_margin("foliation_second_order", second),
    })
}

/// Both `4c1^2 - 3c2` and `5c1^2 - 3c2` positive; the margin is the smaller
/// of the two. These make the second-order foliation test hold for every
/// `m` once `c1.F, F^2 >= 0` and `G1 = 0`.
pub fn check_foliation_quadratics(s: &SurfaceData) -> Verdict {
    let q1 = rat_int(4) * &s.c1sq - rat_int(3) * &s.c2;
    let q2 = rat_int(5) * &s.c1sq - rat_int(3) * &s.c2;
    Verdict::from_margin("foliation_quadratics", q1.min(q2))
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SweepRow {
    pub d: i64,
    #[serde(serialize_with = "serialize_rat")]
    pub c1sq: Rat,
    #[serde(serialize_with = "serialize_rat")]
    pub c2: Rat,
    pub theta1: ThresholdBound,
    /// Absent for `d = 5`.
    pub theta2: Option<ThresholdBound>,
    pub gg_existence: Verdict,
    pub miyaoka: Verdict,
    pub ratio_7_9: Verdict,
    pub bogomolov: Verdict,
    pub foliation: Verdict,
    pub hyperbolicity: Option<Verdict>,
}

impl SweepRow {
    pub fn new(d: i64) -> Result<Self> {
        general_type(d)?;
        let s = SurfaceData::p3_surface(d)?;
        let generic = d >= 6;
        Ok(SweepRow {
            d,
            theta1: theta1_bounds(d)?,
            theta2: generic.then(|| theta2_lower(d)).transpose()?,
            gg_existence: check_gg_existence(&s),
            miyaoka: check_miyaoka(&s),
            ratio_7_9: check_ratio_7_9(&s),
            bogomolov: check_bogomolov(&s),
            foliation: check_foliation_quadratics(&s),
            hyperbolicity: generic.then(|| check_hyperbolicity_ratio(d)).transpose()?,
            c1sq: s.c1sq,
            c2: s.c2,
        })
    }

    pub fn hyperbolicity_holds(&self) -> bool {
        self.hyperbolicity.as_ref().is_some_and(|v| v.holds)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Sweep {
    pub rows: Vec<SweepRow>,
    /// First degree with `13 c1^2 - 9 c2 > 0`.
    pub first_gg: Option<i64>,
    /// First degree with both foliation quadratics positive.
    pub first_foliation: Option<i64>,
    /// First degree passing the Chern-ratio condition.
    pub first_hyperbolic: Option<i64>,
}

/// One [`SweepRow`] per degree in `dmin..=dmax`, rows computed under `exec`.
pub fn degree_sweep(dmin: i64, dmax: i64, exec: Exec) -> Result<Sweep> {
    general_type(dmin)?;
    if dmin > dmax {
        return Err(Error::InvalidArgument(format!(
            "empty degree range [{dmin}, {dmax}]"
        )));
    }
    let ds: Vec<i64> = (dmin..=dmax).collect();
    let rows = exec.try_map(&ds, |&d| SweepRow::new(d))?;
    let first = |f: &dyn Fn(&SweepRow) -> bool| rows.iter().find(|r| f(r)).map(|r| r.d);
    Ok(Sweep {
        first_gg: first(&|r| r.gg_existence.holds),
        first_foliation: first(&|r| r.foliation.holds),
        first_hyperbolic: first(&|r| r.hyperbolicity_holds()),
        rows,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn surf(c1sq: i64, c2: i64) -> SurfaceData {
        SurfaceData {
            c1sq: rat_int(c1sq),
            c2: rat_int(c2),
            pic_basis: vec![],
            pic_form: vec![],
            c1_coords: vec![],
        }
    }

    #[test]
    fn theta1_examples() {
        let b = theta1_bounds(5).unwrap();
        assert_eq!((b.lower, b.upper), (Some(rat_int(1)), Some(rat_int(2))));
        let b = theta1_bounds(21).unwrap();
        assert_eq!((b.lower, b.upper), (Some(rat(1, 17)), Some(rat(2, 17))));
        assert!(theta1_bounds(4).is_err());
    }

    #[test]
    fn theta1m_examples() {
        assert_eq!(theta1m_lower(6, 5).unwrap(), rat_int(1));
        assert_eq!(theta1m_lower(6, 3).unwrap(), rat_int(1));
        assert_eq!(theta1m_lower(6, 10).unwrap(), rat(15, 20));
        assert!(theta1m_lower(6, 0).is_err());
    }

    #[test]
    fn theta2_examples() {
        let z = rat_int(0);
        assert_eq!(theta2_lower_combination(&z, &z, &z, &rat(1, 3)), z);
        assert_eq!(theta2m_lower(6, 3).unwrap(), rat(1, 4));
        assert!(theta2m_lower(6, 6).is_err());
        assert_eq!(theta2_lower(21).unwrap().lower, Some(rat(-7, 51)));
        for d in 6..60 {
            assert_eq!(
                theta2_lower(d).unwrap().lower,
                Some(rat(-1, 6) + rat(1, 2 * (d - 4)))
            );
        }
        // the m = 3 bound tends to -1/6
        assert!(theta2m_lower(10_000, 3).unwrap() - rat(-1, 6) < rat(1, 10_000));
    }

    #[test]
    fn chern_sign_tests() {
        let s15 = SurfaceData::p3_surface(15).unwrap();
        assert_eq!(check_gg_existence(&s15).margin, rat_int(510));
        assert!(check_gg_existence(&s15).holds);
        assert!(!check_gg_existence(&SurfaceData::p3_surface(14).unwrap()).holds);
        assert!(!check_ratio_7_9(&s15).holds);
        assert!(check_miyaoka(&surf(3, 1)).holds);
        assert!(check_ratio_7_9(&surf(2, 1)).holds);
        for d in 5..30 {
            assert!(!check_miyaoka(&SurfaceData::p3_surface(d).unwrap()).holds);
            assert!(!check_bogomolov(&SurfaceData::p3_surface(d).unwrap()).holds);
        }
    }

    #[test]
    fn hyperbolicity_cutoff() {
        let v20 = check_hyperbolicity_ratio(20).unwrap();
        assert!(!v20.holds);
        assert_eq!(v20.margin, rat_int(58240 - 58680));
        let v21 = check_hyperbolicity_ratio(21).unwrap();
        assert!(v21.holds);
        assert_eq!(v21.margin, rat_int(68901 - 68607));
        assert_eq!(v21.assumptions.len(), 3);
        assert!(check_hyperbolicity_ratio(5).is_err());
    }

    #[test]
    fn boundary_margin_fails() {
        let v = check_chern_ratio(&surf(9, 13), &rat_int(0));
        assert_eq!(v.margin, rat_int(0));
        assert!(!v.holds);
        let neg = check_chern_ratio(&surf(9, 1), &rat_int(-2));
        assert!(!neg.holds);
        assert_eq!(neg.margin, rat_int(-11));
    }

    #[test]
    fn foliation_examples() {
        let z = rat_int(0);
        let tiny = rat(1, 1_000_000);
        let s18 = SurfaceData::p3_surface(18).unwrap();
        let v = check_foliation_criterion(&s18, 1, &tiny, &tiny, &z, &z).unwrap();
        assert!(v.second_order.holds);
        let s17 = SurfaceData::p3_surface(17).unwrap();
        assert!(!check_foliation_quadratics(&s17).holds);
        assert!(check_foliation_quadratics(&s18).holds);
        let big_m = check_foliation_criterion(&s17, 1000, &tiny, &tiny, &z, &z).unwrap();
        assert!(!big_m.second_order.holds);
        assert!(check_foliation_criterion(&s17, 0, &z, &z, &z, &z).is_err());
    }

    #[test]
    fn sweep_cutoffs() {
        let s = degree_sweep(5, 30, Exec::Parallel).unwrap();
        assert_eq!(s.rows.len(), 26);
        assert_eq!(
            (s.first_gg, s.first_foliation, s.first_hyperbolic),
            (Some(15), Some(18), Some(21))
        );
        let single = degree_sweep(5, 5, Exec::Sequential).unwrap();
        let r = &single.rows[0];
        assert!(!r.gg_existence.holds && !r.foliation.holds && !r.hyperbolicity_holds());
        assert!(degree_sweep(7, 6, Exec::Sequential).is_err());
        assert!(degree_sweep(4, 6, Exec::Sequential).is_err());
    }

    #[test]
    fn verdict_json_uses_rational_strings() {
        let v = check_hyperbolicity_ratio(21).unwrap();
        let j = serde_json::to_value(&v).unwrap();
        assert_eq!(j["margin"], "294");
        let b = serde_json::to_value(theta1_bounds(21).unwrap()).unwrap();
        assert_eq!(b["lower"], "1/17");
        assert_eq!(b["kind"]["kind"], "theta1");
    }
}
