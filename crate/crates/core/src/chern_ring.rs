//! Cohomology ring of a surface `X` and of its Semple 2-jet tower
//! `X_2 -> X_1 -> X`.
//!
//! `H*(X)` is modelled by the algebraic classes only: a constant, a divisor
//! class in a chosen Picard basis, and a multiple of the point class.
//! `H*(X_2)` is generated over `H*(X)` by `u1 = c1(O_{X_1}(1))` and
//! `u2 = c1(O_{X_2}(1))` subject to
//!
//! ```text
//! u1^2 = -c1 u1 - c2
//! u2^2 = -(c1 + u1) u2 - (2 c2 + c1 u1)
//! ```
//!
//! Here `c1`, `c2` are the Chern classes of `T_X`, and `K_X = -c1`.
//! Everything is generic over the coefficient ring, so the same code handles
//! numeric surfaces (`Rat`) and a fully symbolic one (`MPoly`).

use std::collections::BTreeMap;

use serde::Deserialize;

use crate::error::{Error, Result};
use crate::polyalg::{parse_rat, rat_int, MPoly, Rat, Ring};

/// Chern numbers and a Picard lattice with its intersection form.
#[derive(Clone, Debug, PartialEq)]
pub struct SurfaceData<C = Rat> {
    pub c1sq: C,
    pub c2: C,
    pub pic_basis: Vec<String>,
    pub pic_form: Vec<Vec<C>>,
    pub c1_coords: Vec<C>,
}

/// Variables of the symbolic surface: `c1^2`, `c2`, `c1.F` and `F^2`.
pub const SYMBOLIC_VARS: [&str; 4] = ["c1sq", "c2", "c1F", "FF"];

impl<C: Ring> SurfaceData<C> {
    /// Validates symmetry of the form and `c1 . c1 = c1sq`.
    pub fn new(
        c1sq: C,
        c2: C,
        pic_basis: Vec<String>,
        pic_form: Vec<Vec<C>>,
        c1_coords: Vec<C>,
    ) -> Result<Self> {
        let n = pic_basis.len();
        if pic_form.len() != n || pic_form.iter().any(|r| r.len() != n) || c1_coords.len() != n {
            return Err(Error::DimensionMismatch(format!(
                "Picard basis has {n} elements but the form or c1 has another size"
            )));
        }
        for i in 0..n {
            for j in 0..i {
                if pic_form[i][j] != pic_form[j][i] {
                    return Err(Error::InvalidArgument(format!(
                        "intersection form is not symmetric at ({i},{j})"
                    )));
                }
            }
        }
        let s = SurfaceData {
            c1sq,
            c2,
            pic_basis,
            pic_form,
            c1_coords,
        };
        if s.pair(&s.c1_coords, &s.c1_coords) != s.c1sq {
            return Err(Error::Invariant(
                "c1 coordinates do not square to c1sq".into(),
            ));
        }
        Ok(s)
    }

    pub fn rank(&self) -> usize {
        self.pic_basis.len()
    }

    /// Intersection pairing of two divisor classes.
    pub fn pair(&self, a: &[C], b: &[C]) -> C {
        let mut acc = C::zero();
        for (i, ai) in a.iter().enumerate() {
            if ai.is_zero() {
                continue;
            }
            for (j, bj) in b.iter().enumerate() {
                if bj.is_zero() {
                    continue;
                }
                acc = acc + ai.clone() * bj.clone() * self.pic_form[i][j].clone();
            }
        }
        acc
    }

    pub fn c1(&self) -> CohClass<C> {
        CohClass::divisor(self.c1_coords.clone())
    }

    pub fn canonical(&self) -> CohClass<C> {
        self.c1().neg()
    }

    pub fn c2_class(&self) -> CohClass<C> {
        CohClass::point(self.c2.clone(), self.rank())
    }

    /// Divisor class with the given coordinates in the Picard basis.
    pub fn divisor(&self, coords: Vec<C>) -> Result<CohClass<C>> {
        if coords.len() != self.rank() {
            return Err(Error::DimensionMismatch(format!(
                "divisor has {} coordinates, Picard rank is {}",
                coords.len(),
                self.rank()
            )));
        }
        Ok(CohClass::divisor(coords))
    }

    /// Cup product in `H*(X)`, truncated above real degree 4.
    pub fn mul(&self, a: &CohClass<C>, b: &CohClass<C>) -> CohClass<C> {
        let h0 = a.h0.clone() * b.h0.clone();
        let h2 =
            a.h2.iter()
                .zip(&b.h2)
                .map(|(x, y)| a.h0.clone() * y.clone() + b.h0.clone() * x.clone())
                .collect();
        let h4 =
            a.h0.clone() * b.h4.clone() + b.h0.clone() * a.h4.clone() + self.pair(&a.h2, &b.h2);
        CohClass { h0, h2, h4 }
    }

    pub fn pullback(&self, c: &CohClass<C>) -> SempleClass<C> {
        SempleClass::from_coh(c.clone())
    }

    pub fn u1(&self) -> SempleClass<C> {
        SempleClass::monomial(1, 0, CohClass::one(self.rank()))
    }

    pub fn u2(&self) -> SempleClass<C> {
        SempleClass::monomial(0, 1, CohClass::one(self.rank()))
    }

    pub fn semple_one(&self) -> SempleClass<C> {
        SempleClass::monomial(0, 0, CohClass::one(self.rank()))
    }

    /// Product in `H*(X_2)` followed by reduction to normal form.
    pub fn semple_mul(&self, a: &SempleClass<C>, b: &SempleClass<C>) -> SempleClass<C> {
        let mut out = SempleClass::zero();
        for (&(a1, a2), ca) in &a.terms {
            for (&(b1, b2), cb) in &b.terms {
                out.add_term(a1 + b1, a2 + b2, self.mul(ca, cb));
            }
        }
        self.reduce(&out)
    }

    pub fn semple_pow(&self, a: &SempleClass<C>, e: u32) -> SempleClass<C> {
        let mut acc = self.semple_one();
        for _ in 0..e {
            acc = self.semple_mul(&acc, a);
        }
        acc
    }

    /// Normal form with `u1`- and `u2`-exponents at most one.
    pub fn reduce(&self, c: &SempleClass<C>) -> SempleClass<C> {
        let c1 = self.c1();
        let c2 = self.c2_class();
        let mut work = c.clone();
        loop {
            let next = work
                .terms
                .keys()
                .rev()
                .find(|(e1, e2)| *e1 >= 2 || *e2 >= 2)
                .copied();
            let Some((e1, e2)) = next else { break };
            let coef = work.terms.remove(&(e1, e2)).expect("key present");
            if e2 >= 2 {
                // u2^2 = -c1 u2 - u1 u2 - 2 c2 - c1 u1
                let c1c = self.mul(&coef, &c1).neg();
                work.add_term(e1, e2 - 1, c1c.clone());
                work.add_term(e1 + 1, e2 - 1, coef.neg());
                work.add_term(e1, e2 - 2, self.mul(&coef, &c2).scale_int(-2));
                work.add_term(e1 + 1, e2 - 2, c1c);
            } else {
                // u1^2 = -c1 u1 - c2
                work.add_term(e1 - 1, e2, self.mul(&coef, &c1).neg());
                work.add_term(e1 - 2, e2, self.mul(&coef, &c2).neg());
            }
        }
        work
    }

    /// Degree of the top class of `X_level`: reads the point-class coefficient
    /// of `1`, `u1` or `u1 u2` after reduction.
    pub fn integrate(&self, c: &SempleClass<C>, level: u8) -> Result<C> {
        let key = match level {
            0 => (0, 0),
            1 => (1, 0),
            2 => (1, 1),
            _ => {
                return Err(Error::InvalidArgument(format!(
                    "Semple level {level} is not modelled"
                )))
            }
        };
        let r = self.reduce(c);
        if level < 2 && r.terms.keys().any(|&(_, e2)| e2 > 0) {
            return Err(Error::InvalidArgument(
                "class involves u2 but is integrated below X_2".into(),
            ));
        }
        if level == 0 && r.terms.keys().any(|&(e1, _)| e1 > 0) {
            return Err(Error::InvalidArgument(
                "class involves u1 but is integrated over X".into(),
            ));
        }
        Ok(r.terms.get(&key).map_or_else(C::zero, |cc| cc.h4.clone()))
    }

    /// `u1^4, u1^3 u2, u1^2 u2^2, u1 u2^3, u2^4, u1^3 F, u1^2 u2 F, u1 u2^2 F,
    /// u2^3 F` on `X_2`.
    pub fn intersection_table_x2(&self, f: &CohClass<C>) -> [C; 9] {
        let u1 = self.u1();
        let u2 = self.u2();
        let fp = self.pullback(f);
        let mono = |a: u32, b: u32, with_f: bool| {
            let mut c = self.semple_mul(&self.semple_pow(&u1, a), &self.semple_pow(&u2, b));
            if with_f {
                c = self.semple_mul(&c, &fp);
            }
            self.integrate(&c, 2).expect("level 2 is valid")
        };
        [
            mono(4, 0, false),
            mono(3, 1, false),
            mono(2, 2, false),
            mono(1, 3, false),
            mono(0, 4, false),
            mono(3, 0, true),
            mono(2, 1, true),
            mono(1, 2, true),
            mono(0, 3, true),
        ]
    }

    /// `((u|Z)^2, u|Z . K_X)` for `Z = m u - F` on `X_1`, in closed form:
    /// `(m (c1^2 - c2) + c1.F, m c1^2 + c1.F)`.
    pub fn miyaoka_numbers(&self, m: i64, f: &CohClass<C>) -> (C, C) {
        let c1f = self.pair(&self.c1_coords, &f.h2);
        let mm = C::from_int(m);
        (
            mm.clone() * (self.c1sq.clone() - self.c2.clone()) + c1f.clone(),
            mm * self.c1sq.clone() + c1f,
        )
    }

    /// Same pair as [`Self::miyaoka_numbers`], computed by reduction on `X_1`.
    pub fn miyaoka_numbers_by_reduction(&self, m: i64, f: &CohClass<C>) -> (C, C) {
        let u = self.u1();
        let z = self.zee(m, 0, f);
        let u_sq = self.semple_mul(&u, &u);
        let first = self.integrate(&self.semple_mul(&u_sq, &z), 1);
        let k = self.pullback(&self.canonical());
        let second = self.integrate(&self.semple_mul(&self.semple_mul(&u, &z), &k), 1);
        (
            first.expect("level 1 is valid"),
            second.expect("level 1 is valid"),
        )
    }

    /// `a1 u1 + a2 u2 - F`.
    pub fn zee(&self, a1: i64, a2: i64, f: &CohClass<C>) -> SempleClass<C> {
        let mut z = self.pullback(&f.neg());
        z.add_term(1, 0, CohClass::one(self.rank()).scale_int(a1));
        z.add_term(0, 1, CohClass::one(self.rank()).scale_int(a2));
        z
    }

    /// `(2 u1 + u2)^3 . (a1 u1 + a2 u2 - F)` on `X_2`, by reduction.
    pub fn cube_product(&self, a1: i64, a2: i64, f: &CohClass<C>) -> C {
        let w = self.zee(2, 1, &CohClass::zero(self.rank()));
        let prod = self.semple_mul(&self.semple_pow(&w, 3), &self.zee(a1, a2, f));
        self.integrate(&prod, 2).expect("level 2 is valid")
    }

    /// Closed form `(a1 + a2)(13 c1^2 - 9 c2) + 12 c1.F`.
    pub fn cube_product_closed_form(&self, a1: i64, a2: i64, f: &CohClass<C>) -> C {
        let c1f = self.pair(&self.c1_coords, &f.h2);
        C::from_int(a1 + a2)
            * (C::from_int(13) * self.c1sq.clone() - C::from_int(9) * self.c2.clone())
            + C::from_int(12) * c1f
    }

    /// `m^2 (4 c1^2 - 3 c2) + m (5 c1^2 - 3 c2) + (8m + 4) c1.F + 3 F^2
    /// - (3 u1.G1 - c1.G1)`, with the two `G1` pairings supplied by the caller.
    pub fn tilde_z_numbers(&self, m: i64, f: &CohClass<C>, g1_u1: &C, g1_c1: &C) -> C {
        let c1f = self.pair(&self.c1_coords, &f.h2);
        let ff = self.pair(&f.h2, &f.h2);
        let i = |n: i64| C::from_int(n);
        i(m * m) * (i(4) * self.c1sq.clone() - i(3) * self.c2.clone())
            + i(m) * (i(5) * self.c1sq.clone() - i(3) * self.c2.clone())
            + i(8 * m + 4) * c1f
            + i(3) * ff
            - (i(3) * g1_u1.clone() - g1_c1.clone())
    }

    /// `(2 u1 + u2)^2 . (m u1 - F)(u2 + m u1 - F)` on `X_2`, by reduction.
    pub fn tilde_z_by_reduction(&self, m: i64, f: &CohClass<C>) -> C {
        let zero = CohClass::zero(self.rank());
        let w = self.zee(2, 1, &zero);
        let a = self.zee(m, 0, f);
        let b = self.zee(m, 1, f);
        let prod = self.semple_mul(&self.semple_mul(&self.semple_pow(&w, 2), &a), &b);
        self.integrate(&prod, 2).expect("level 2 is valid")
    }
}

impl SurfaceData<Rat> {
    /// Smooth surface of degree `d` in `P^3`: `Pic` generated by the
    /// hyperplane class `h` with `h^2 = d`, `c1 = (4 - d) h`,
    /// `c2 = d (d^2 - 4d + 6)`.
    pub fn p3_surface(d: i64) -> Result<Self> {
        if d < 1 {
            return Err(Error::InvalidArgument(format!(
                "surface degree must be at least 1, got {d}"
            )));
        }
        let s = SurfaceData::new(
            rat_int(d * (d - 4) * (d - 4)),
            rat_int(d * (d * d - 4 * d + 6)),
            vec!["h".into()],
            vec![vec![rat_int(d)]],
            vec![rat_int(4 - d)],
        )?;
        Ok(s)
    }

    /// Loads `{c1sq, c2, pic_basis, pic_form, c1_coords}`; rationals may be
    /// JSON integers or strings such as `"-3/2"`.
    pub fn from_json(text: &str) -> Result<Self> {
        #[derive(Deserialize)]
        struct Raw {
            c1sq: serde_json::Value,
            c2: serde_json::Value,
            pic_basis: Vec<String>,
            pic_form: Vec<Vec<serde_json::Value>>,
            c1_coords: Vec<serde_json::Value>,
        }
        let raw: Raw =
            serde_json::from_str(text).map_err(|e| Error::Parse(format!("surface JSON: {e}")))?;
        let r = |v: &serde_json::Value| match v {
            serde_json::Value::String(s) => parse_rat(s),
            serde_json::Value::Number(n) if n.is_i64() => Ok(rat_int(n.as_i64().expect("i64"))),
            other => Err(Error::Parse(format!(
                "expected an exact rational, got {other}"
            ))),
        };
        SurfaceData::new(
            r(&raw.c1sq)?,
            r(&raw.c2)?,
            raw.pic_basis,
            raw.pic_form
                .iter()
                .map(|row| row.iter().map(r).collect::<Result<Vec<_>>>())
                .collect::<Result<Vec<_>>>()?,
            raw.c1_coords.iter().map(r).collect::<Result<Vec<_>>>()?,
        )
    }

    /// The hyperplane class of a `P^3` surface.
    pub fn hyperplane(&self) -> CohClass<Rat> {
        let mut h2 = vec![rat_int(0); self.rank()];
        h2[0] = rat_int(1);
        CohClass::divisor(h2)
    }
}

impl SurfaceData<MPoly> {
    /// Generic surface with Picard basis `(c1, F)`, where `c1^2`, `c2`, `c1.F`
    /// and `F^2` are independent symbols.
    pub fn symbolic() -> Self {
        let v = |name: &str| MPoly::var_in(&SYMBOLIC_VARS, name).expect("declared");
        let one = MPoly::one().align(&SYMBOLIC_VARS);
        let zero = MPoly::zero_in(&SYMBOLIC_VARS);
        SurfaceData::new(
            v("c1sq"),
            v("c2"),
            vec!["c1".into(), "F".into()],
            vec![vec![v("c1sq"), v("c1F")], vec![v("c1F"), v("FF")]],
            vec![one, zero],
        )
        .expect("symbolic surface is consistent")
    }

    /// The class `F` of the symbolic surface.
    pub fn symbolic_f(&self) -> CohClass<MPoly> {
        CohClass::divisor(vec![MPoly::zero(), MPoly::one()])
    }
}

/// Element of `H*(X)`: constant, divisor class, point-class multiple.
#[derive(Clone, Debug, PartialEq)]
pub struct CohClass<C = Rat> {
    pub h0: C,
    pub h2: Vec<C>,
    pub h4: C,
}

impl<C: Ring> CohClass<C> {
    pub fn zero(rank: usize) -> Self {
        CohClass {
            h0: C::zero(),
            h2: vec![C::zero(); rank],
            h4: C::zero(),
        }
    }

    pub fn one(rank: usize) -> Self {
        CohClass {
            h0: C::one(),
            ..Self::zero(rank)
        }
    }

    pub fn divisor(h2: Vec<C>) -> Self {
        CohClass {
            h0: C::zero(),
            h2,
            h4: C::zero(),
        }
    }

    pub fn point(h4: C, rank: usize) -> Self {
        CohClass {
            h4,
            ..Self::zero(rank)
        }
    }

    pub fn is_zero(&self) -> bool {
        self.h0.is_zero() && self.h4.is_zero() && self.h2.iter().all(Ring::is_zero)
    }

    pub fn add(&self, o: &Self) -> Self {
        CohClass {
            h0: self.h0.clone() + o.h0.clone(),
            h2: self
                .h2
                .iter()
                .zip(&o.h2)
                .map(|(a, b)| a.clone() + b.clone())
                .collect(),
            h4: self.h4.clone() + o.h4.clone(),
        }
    }

    pub fn neg(&self) -> Self {
        self.scale_int(-1)
    }

    pub fn scale(&self, r: &C) -> Self {
        CohClass {
            h0: self.h0.clone() * r.clone(),
            h2: self.h2.iter().map(|a| a.clone() * r.clone()).collect(),
            h4: self.h4.clone() * r.clone(),
        }
    }

    pub fn scale_int(&self, n: i64) -> Self {
        self.scale(&C::from_int(n))
    }

    /// Drops the components whose real degree plus `shift` exceeds 8.
    fn truncate(mut self, shift: u32) -> Self {
        if shift + 4 > 8 {
            self.h4 = C::zero();
        }
        if shift + 2 > 8 {
            self.h2.iter_mut().for_each(|x| *x = C::zero());
        }
        if shift > 8 {
            self.h0 = C::zero();
        }
        self
    }
}

/// Element of `H*(X_2)`: `sum coeff * u1^e1 u2^e2` with `H*(X)` coefficients.
#[derive(Clone, Debug, PartialEq)]
pub struct SempleClass<C = Rat> {
    terms: BTreeMap<(u32, u32), CohClass<C>>,
}

impl<C: Ring> SempleClass<C> {
    pub fn zero() -> Self {
        SempleClass {
            terms: BTreeMap::new(),
        }
    }

    pub fn from_coh(c: CohClass<C>) -> Self {
        Self::monomial(0, 0, c)
    }

    pub fn monomial(e1: u32, e2: u32, c: CohClass<C>) -> Self {
        let mut s = Self::zero();
        s.add_term(e1, e2, c);
        s
    }

    pub fn terms(&self) -> &BTreeMap<(u32, u32), CohClass<C>> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_reduced(&self) -> bool {
        self.terms.keys().all(|&(a, b)| a <= 1 && b <= 1)
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut s = self.clone();
        for (&(a, b), c) in &o.terms {
            s.add_term(a, b, c.clone());
        }
        s
    }

    pub fn scale_int(&self, n: i64) -> Self {
        let mut s = Self::zero();
        for (&(a, b), c) in &self.terms {
            s.add_term(a, b, c.scale_int(n));
        }
        s
    }

    fn add_term(&mut self, e1: u32, e2: u32, c: CohClass<C>) {
        let c = c.truncate(2 * (e1 + e2));
        if c.is_zero() {
            return;
        }
        let merged = match self.terms.remove(&(e1, e2)) {
            Some(old) => old.add(&c),
            None => c,
        };
        if !merged.is_zero() {
            self.terms.insert((e1, e2), merged);
        }
    }
}

/// Relative positivity of `O_{X_2}(a1, a2)` over `X`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
pub struct WeightedFlags {
    pub rel_effective: bool,
    pub rel_big: bool,
    pub rel_nef: bool,
    pub rel_ample: bool,
}

/// effective iff `a1 + a2 >= 0, a2 >= 0`; big iff `a1 + a2 > 0, a2 > 0`;
/// nef iff `a1 >= 2 a2 >= 0`; ample iff `a1 > 2 a2 > 0`.
pub fn weighted_bundle_classify(a1: i64, a2: i64) -> WeightedFlags {
    WeightedFlags {
        rel_effective: a1 + a2 >= 0 && a2 >= 0,
        rel_big: a1 + a2 > 0 && a2 > 0,
        rel_nef: a1 >= 2 * a2 && a2 >= 0,
        rel_ample: a1 > 2 * a2 && a2 > 0,
    }
}

/// Degrees of the splitting `(+)_{0<=j<=a2} O(a1 + a2 - 3j)` of the direct
/// image of `O_{X_2}(a1, a2)` on a fibre.
pub fn direct_image_splitting(a1: i64, a2: i64) -> Result<Vec<i64>> {
    if a2 < 0 {
        return Err(Error::InvalidArgument(format!(
            "direct image splitting needs a2 >= 0, got {a2}"
        )));
    }
    Ok((0..=a2).map(|j| a1 + a2 - 3 * j).collect())
}

/// `(rank V_k, dim X_k) = (r, n + k (r - 1))` for a directed manifold of
/// dimension `n` and rank `r`.
pub fn semple_dims(n: i64, r: i64, k: i64) -> Result<(i64, i64)> {
    if n < 1 || r < 1 || r > n || k < 0 {
        return Err(Error::InvalidArgument(format!(
            "need n >= 1, 1 <= r <= n, k >= 0; got n={n}, r={r}, k={k}"
        )));
    }
    Ok((r, n + k * (r - 1)))
}
