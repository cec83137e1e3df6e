//! Invariant 2-jet differentials on a surface in local coordinates.
//!
//! A weight-`m` element is `sum a * f1'^{al1} f2'^{al2} W^j` with
//! `al1 + al2 + 3j = m` and `W = f1' f2'' - f1'' f2'`. Coefficients live in
//! any [`Ring`]; the discriminant and the reparametrization check need
//! [`MPoly`] coefficients and reserve the variable names in [`RESERVED`].

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::polyalg::{det_fraction_free, rat_int, Degree, MPoly, Rat, Ring};

/// Variable names used internally for jets; coefficient polynomials must
/// avoid them.
pub const RESERVED: [&str; 7] = ["f1p", "f2p", "f1pp", "f2pp", "W", "tau", "t"];

/// Weighted-homogeneous polynomial in `(f1', f2', W)`; `k_twist` counts the
/// factors of `K_X` picked up through the filtration map.
#[derive(Clone, Debug, PartialEq)]
pub struct JetPoly2<C = MPoly> {
    terms: BTreeMap<(u32, u32, u32), C>,
    weight: u32,
    k_twist: i32,
}

impl<C: Ring> JetPoly2<C> {
    pub fn zero(weight: u32) -> Self {
        JetPoly2 {
            terms: BTreeMap::new(),
            weight,
            k_twist: 0,
        }
    }

    /// `c * f1'^al1 f2'^al2 W^j`, of weight `al1 + al2 + 3j`.
    pub fn monomial(al1: u32, al2: u32, j: u32, c: C) -> Self {
        let mut p = Self::zero(al1 + al2 + 3 * j);
        p.add_term((al1, al2, j), c);
        p
    }

    /// Builds from explicit terms, rejecting any of the wrong weight.
    pub fn from_terms<I>(weight: u32, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = ((u32, u32, u32), C)>,
    {
        let mut p = Self::zero(weight);
        for (e, c) in terms {
            if e.0 + e.1 + 3 * e.2 != weight {
                return Err(Error::InvalidArgument(format!(
                    "term {e:?} does not have weight {weight}"
                )));
            }
            p.add_term(e, c);
        }
        Ok(p)
    }

    pub fn with_twist(mut self, k_twist: i32) -> Self {
        self.k_twist = k_twist;
        self
    }

    pub fn weight(&self) -> u32 {
        self.weight
    }

    pub fn k_twist(&self) -> i32 {
        self.k_twist
    }

    pub fn terms(&self) -> &BTreeMap<(u32, u32, u32), C> {
        &self.terms
    }

    pub fn coeff(&self, al1: u32, al2: u32, j: u32) -> C {
        self.terms
            .get(&(al1, al2, j))
            .cloned()
            .unwrap_or_else(C::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// True when no term involves `W`, i.e. the element lies in `S^m T*`.
    pub fn is_w_free(&self) -> bool {
        self.terms.keys().all(|&(_, _, j)| j == 0)
    }

    fn add_term(&mut self, e: (u32, u32, u32), c: C) {
        if c.is_zero() {
            return;
        }
        let v = match self.terms.remove(&e) {
            Some(old) => old + c,
            None => c,
        };
        if !v.is_zero() {
            self.terms.insert(e, v);
        }
    }

    fn check_compatible(&self, o: &Self) -> Result<()> {
        if self.weight != o.weight || self.k_twist != o.k_twist {
            return Err(Error::DimensionMismatch(format!(
                "cannot add weight {} twist {} to weight {} twist {}",
                self.weight, self.k_twist, o.weight, o.k_twist
            )));
        }
        Ok(())
    }

    pub fn add(&self, o: &Self) -> Result<Self> {
        self.check_compatible(o)?;
        let mut p = self.clone();
        for (e, c) in &o.terms {
            p.add_term(*e, c.clone());
        }
        Ok(p)
    }

    pub fn sub(&self, o: &Self) -> Result<Self> {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> Self {
        JetPoly2 {
            terms: self.terms.iter().map(|(e, c)| (*e, -c.clone())).collect(),
            weight: self.weight,
            k_twist: self.k_twist,
        }
    }

    pub fn scale(&self, c: &C) -> Self {
        let mut p = Self::zero(self.weight).with_twist(self.k_twist);
        for (e, x) in &self.terms {
            p.add_term(*e, x.clone() * c.clone());
        }
        p
    }

    /// Product; weights and twists add.
    pub fn mul(&self, o: &Self) -> Self {
        let mut p = Self::zero(self.weight + o.weight).with_twist(self.k_twist + o.k_twist);
        for (a, ca) in &self.terms {
            for (b, cb) in &o.terms {
                p.add_term((a.0 + b.0, a.1 + b.1, a.2 + b.2), ca.clone() * cb.clone());
            }
        }
        p
    }

    /// The filtration map to `E_{2,m-3} T* (x) K`: keeps the terms divisible
    /// by `W` and divides them by it. Its kernel is `S^m T*`.
    pub fn phi_filtration(&self) -> Result<Self> {
        if self.weight < 3 {
            return Err(Error::InvalidArgument(format!(
                "filtration map needs weight >= 3, got {}",
                self.weight
            )));
        }
        let mut p = Self::zero(self.weight - 3).with_twist(self.k_twist + 1);
        for (&(a1, a2, j), c) in &self.terms {
            if j >= 1 {
                p.add_term((a1, a2, j - 1), c.clone());
            }
        }
        Ok(p)
    }

    /// Coefficients of `P` as a polynomial in `W`: `a_j` collects the
    /// `f'`-monomials multiplying `W^j`.
    fn w_coefficients(&self) -> Vec<Vec<((u32, u32), C)>> {
        let p = self.weight / 3;
        let mut out = vec![Vec::new(); p as usize + 1];
        for (&(a1, a2, j), c) in &self.terms {
            out[j as usize].push(((a1, a2), c.clone()));
        }
        out
    }
}

/// Exponent triples `(al1, al2, j)` with `al1 + al2 + 3j = m`.
pub fn weight_basis(m: u32) -> Vec<(u32, u32, u32)> {
    let mut v = Vec::new();
    for j in 0..=m / 3 {
        let d = m - 3 * j;
        for a1 in (0..=d).rev() {
            v.push((a1, d - a1, j));
        }
    }
    v
}

/// `beta1 P2 - beta2 P1` with `beta_i` the image of `P_i` under the
/// filtration map; lies in `S^{m1+m2-3} T*` for weights in `{3, 4, 5}`.
pub fn proportionality_combination<C: Ring>(
    p1: &JetPoly2<C>,
    p2: &JetPoly2<C>,
) -> Result<JetPoly2<C>> {
    for p in [p1, p2] {
        if !(3..=5).contains(&p.weight) {
            return Err(Error::InvalidArgument(format!(
                "proportionality combination needs weights in 3..=5, got {}",
                p.weight
            )));
        }
    }
    let b1 = p1.phi_filtration()?;
    let b2 = p2.phi_filtration()?;
    let r = b1.mul(p2).sub(&b2.mul(p1))?;
    if !r.is_w_free() {
        return Err(Error::Invariant(
            "proportionality combination is not W-free".into(),
        ));
    }
    Ok(r)
}

/// `gamma[i][j][k]` is the symbol `Gamma^k_{ij}` of a connection on a
/// 2-dimensional chart (indices 0 and 1 for the coordinates 1 and 2).
pub type ChartChristoffel<C> = [[[C; 2]; 2]; 2];

/// The weight-3 operator `W_nabla(f) = f' ^ f''_nabla`:
/// `W - G^2_11 f1'^3 + G^1_22 f2'^3 + (G^1_11 - G^2_12 - G^2_21) f1'^2 f2'
/// - (G^2_22 - G^1_12 - G^1_21) f1' f2'^2`.
pub fn wronskian_from_christoffel<C: Ring>(g: &ChartChristoffel<C>) -> JetPoly2<C> {
    let t = |i: usize, j: usize, k: usize| g[i][j][k].clone();
    JetPoly2::from_terms(
        3,
        [
            ((0, 0, 1), C::one()),
            ((3, 0, 0), -t(0, 0, 1)),
            ((0, 3, 0), t(1, 1, 0)),
            ((2, 1, 0), t(0, 0, 0) - t(0, 1, 1) - t(1, 0, 1)),
            ((1, 2, 0), t(0, 1, 0) + t(1, 0, 0) - t(1, 1, 1)),
        ],
    )
    .expect("all terms have weight 3")
}

/// Adds the partial-projective shift `alpha_i delta_jk + beta_j delta_ik`.
pub fn gauge_shift<C: Ring>(
    g: &ChartChristoffel<C>,
    alpha: &[C; 2],
    beta: &[C; 2],
) -> ChartChristoffel<C> {
    let mut out = g.clone();
    for i in 0..2 {
        for j in 0..2 {
            for k in 0..2 {
                let mut v = out[i][j][k].clone();
                if j == k {
                    v = v + alpha[i].clone();
                }
                if i == k {
                    v = v + beta[j].clone();
                }
                out[i][j][k] = v;
            }
        }
    }
    out
}

fn jet_var(name: &str) -> MPoly {
    MPoly::var(name)
}

/// `W = f1' f2'' - f1'' f2'` in the raw jet variables.
pub fn raw_w() -> MPoly {
    jet_var("f1p") * jet_var("f2pp") - jet_var("f1pp") * jet_var("f2p")
}

impl JetPoly2<MPoly> {
    /// Expands into a polynomial in `f1', f2', f1'', f2''` and the coefficient
    /// variables.
    pub fn to_raw(&self) -> MPoly {
        let f1 = jet_var("f1p");
        let f2 = jet_var("f2p");
        let w = raw_w();
        let mut acc = MPoly::zero();
        for (&(a1, a2, j), c) in &self.terms {
            let mono = f1.pow(a1 as i64).expect("nonnegative")
                * f2.pow(a2 as i64).expect("nonnegative")
                * w.pow(j as i64).expect("nonnegative");
            acc = acc + mono * c.clone();
        }
        acc
    }

    fn check_reserved(&self) -> Result<()> {
        for c in self.terms.values() {
            for v in c.trimmed().vars() {
                if RESERVED.contains(&v.as_str()) {
                    return Err(Error::InvalidArgument(format!(
                        "coefficient uses the reserved variable `{v}`"
                    )));
                }
            }
        }
        Ok(())
    }
}

/// The 2-jet reparametrization `phi(t) = a1 t + a2 t^2`, `a1 != 0`.
#[derive(Clone, Debug, PartialEq)]
pub struct Reparam2 {
    pub a1: Rat,
    pub a2: Rat,
}

impl Reparam2 {
    pub fn new(a1: Rat, a2: Rat) -> Result<Self> {
        if a1 == rat_int(0) {
            return Err(Error::InvalidArgument("a1 must be invertible".into()));
        }
        Ok(Reparam2 { a1, a2 })
    }

    /// `phi'(t) = a1 + 2 a2 t` as a polynomial in `t`.
    pub fn d1(&self) -> MPoly {
        MPoly::constant(self.a1.clone()) + jet_var("t").scale(&(rat_int(2) * &self.a2))
    }

    /// `phi''(t) = 2 a2`.
    pub fn d2(&self) -> MPoly {
        MPoly::constant(rat_int(2) * &self.a2)
    }
}

/// Whether the raw jet polynomial `q` transforms as `Q(f o phi) = phi'^m Q(f) o phi`
/// under `(f o phi)' = phi' f'` and `(f o phi)'' = phi'^2 f'' + phi'' f'`.
pub fn reparam_check_raw(q: &MPoly, m: u32, phi: &Reparam2) -> bool {
    let s = phi.d1();
    let r = phi.d2();
    let s2 = s.pow(2).expect("nonnegative");
    // Images are written in placeholder names so the four substitutions do
    // not see each other's output.
    let images = [
        ("f1p", &s * &jet_var("F1P")),
        ("f2p", &s * &jet_var("F2P")),
        ("f1pp", &(&s2 * &jet_var("F1PP")) + &(&r * &jet_var("F1P"))),
        ("f2pp", &(&s2 * &jet_var("F2PP")) + &(&r * &jet_var("F2P"))),
    ];
    let mut out = q.clone();
    for (v, img) in &images {
        out = out.substitute_poly(v, img);
    }
    out = out.trimmed();
    for (from, to) in [
        ("F1P", "f1p"),
        ("F2P", "f2p"),
        ("F1PP", "f1pp"),
        ("F2PP", "f2pp"),
    ] {
        out = rename(&out, from, to);
    }
    out == &s.pow(m as i64).expect("nonnegative") * q
}

/// Renames a variable (used to keep simultaneous substitutions apart).
fn rename(p: &MPoly, from: &str, to: &str) -> MPoly {
    if p.var_index(from).is_none() {
        return p.clone();
    }
    let vars: Vec<String> = p
        .vars()
        .iter()
        .map(|v| if v == from { to.to_string() } else { v.clone() })
        .collect();
    MPoly::from_terms(
        &vars,
        p.terms().map(|(m, c)| (m.exponents().to_vec(), c.clone())),
    )
}

/// [`reparam_check_raw`] on the expansion of an invariant jet polynomial.
pub fn reparam_check(p: &JetPoly2<MPoly>, phi: &Reparam2) -> Result<bool> {
    p.check_reserved()?;
    Ok(reparam_check_raw(&p.to_raw(), p.weight, phi))
}

/// Normalizing constant between [`discriminant`] and `Res_W(P, dP/dW) / a_p`
/// (Sylvester convention, leading coefficients first). With the matrix laid
/// out as below the two agree exactly.
pub const DISCRIMINANT_CONSTANT: i64 = 1;

/// The discriminant of `P` viewed as a polynomial of degree `p` in `W`.
#[derive(Clone, Debug, PartialEq)]
pub struct Discriminant {
    /// Polynomial in `f1p`, `f2p` and the coefficient variables.
    pub poly: MPoly,
    /// `p` and `q` in `m = 3p + q`.
    pub p: u32,
    pub q: u32,
    /// Homogeneous degree in `f'`, equal to `(p - 1)(3p + 2q)`.
    pub f_degree: u32,
    /// Power of `K_X`, equal to `p (p - 1)`.
    pub k_weight: u32,
}

/// `det(S) / a_p` where `S` is the `(2p-1) x (2p-1)` Sylvester matrix of
/// `P = sum_j a_j W^j` and `dP/dW = sum_j b_j W^j`, `b_j = (j+1) a_{j+1}`:
/// `p - 1` shifted rows of `a_p .. a_0`, then `p` shifted rows of
/// `b_{p-1} .. b_0`.
pub fn discriminant(pj: &JetPoly2<MPoly>) -> Result<Discriminant> {
    pj.check_reserved()?;
    let m = pj.weight;
    let p = m / 3;
    let q = m % 3;
    if p == 0 {
        return Err(Error::InvalidArgument(format!(
            "discriminant needs weight >= 3, got {m}"
        )));
    }
    let f1 = jet_var("f1p");
    let f2 = jet_var("f2p");
    let tau = jet_var("tau");
    // a_j as polynomials in f', tagged with tau^j to track the K-weight.
    let a: Vec<MPoly> = pj
        .w_coefficients()
        .into_iter()
        .enumerate()
        .map(|(j, terms)| {
            let mut acc = MPoly::zero();
            for ((a1, a2), c) in terms {
                acc = acc
                    + c * f1.pow(a1 as i64).expect("nonnegative")
                        * f2.pow(a2 as i64).expect("nonnegative");
            }
            acc * tau.pow(j as i64).expect("nonnegative")
        })
        .collect();
    let pu = p as usize;
    if a[pu].is_zero() {
        return Err(Error::DegenerateLeadingCoefficient { p });
    }
    let b: Vec<MPoly> = (0..pu)
        .map(|j| a[j + 1].scale(&rat_int(j as i64 + 1)))
        .collect();
    let n = 2 * pu - 1;
    let zero = MPoly::zero();
    let mut mat = vec![vec![zero.clone(); n]; n];
    for r in 0..pu.saturating_sub(1) {
        for (k, coeff) in a.iter().rev().enumerate() {
            mat[r][r + k] = coeff.clone();
        }
    }
    for r in 0..pu {
        for (k, coeff) in b.iter().rev().enumerate() {
            mat[pu - 1 + r][r + k] = coeff.clone();
        }
    }
    let det = det_fraction_free(&mat)?;
    let quot = det
        .div_exact(&a[pu])
        .ok_or_else(|| Error::Invariant("a_p does not divide the Sylvester determinant".into()))?;
    // The tau-grading of det is p(p-1) + p (from the division by a_p).
    let k_weight = match quot.homogeneous_degree(&["tau"]) {
        Some(Degree::Finite(k)) => k,
        Some(Degree::NegInfinity) => p * (p - 1),
        None => return Err(Error::Invariant("discriminant is not isobaric".into())),
    };
    let poly = quot.substitute("tau", &rat_int(1)).trimmed();
    let f_degree = match poly.homogeneous_degree(&["f1p", "f2p"]) {
        Some(Degree::Finite(k)) => k,
        Some(Degree::NegInfinity) => (p - 1) * (3 * p + 2 * q),
        None => {
            return Err(Error::Invariant(
                "discriminant is not homogeneous in f'".into(),
            ))
        }
    };
    Ok(Discriminant {
        poly,
        p,
        q,
        f_degree,
        k_weight,
    })
}
