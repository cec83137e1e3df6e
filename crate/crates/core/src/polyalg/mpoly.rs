use std::borrow::Cow;
use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::rat::{gcd_big, lcm_big, Rat};
use crate::error::{Error, Result};

/// Exponent vector, aligned with the variable list of the owning polynomial.
///
/// Ordered graded-lexicographically: total degree first, then the exponent of
/// the first declared variable, and so on.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial(pub(crate) Vec<u32>);

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn total_degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// `self / other` if `other` divides `self`.
    fn div(&self, other: &Monomial) -> Option<Monomial> {
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| a.checked_sub(*b))
            .collect::<Option<Vec<_>>>()
            .map(Monomial)
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.total_degree()
            .cmp(&other.total_degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Degree of a polynomial; the zero polynomial gets its own variant rather
/// than a magic integer.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Degree {
    NegInfinity,
    Finite(u32),
}

impl Degree {
    pub fn finite(self) -> Option<u32> {
        match self {
            Degree::Finite(d) => Some(d),
            Degree::NegInfinity => None,
        }
    }
}

/// Sparse multivariate polynomial with rational coefficients.
///
/// Variables are named and ordered; binary operations on polynomials with
/// different variable lists work over the union (left operand's order first).
/// Equality is semantic, so `x` over `[x]` equals `x` over `[x, y]`.
#[derive(Clone)]
pub struct MPoly {
    vars: Arc<[String]>,
    terms: BTreeMap<Monomial, Rat>,
}

impl MPoly {
    pub fn zero() -> Self {
        MPoly {
            vars: Arc::from(Vec::<String>::new()),
            terms: BTreeMap::new(),
        }
    }

    pub fn one() -> Self {
        Self::constant(Rat::one())
    }

    pub fn constant(c: Rat) -> Self {
        let mut p = Self::zero();
        if !c.is_zero() {
            p.terms.insert(Monomial(vec![]), c);
        }
        p
    }

    pub fn int(n: i64) -> Self {
        Self::constant(Rat::from_integer(BigInt::from(n)))
    }

    /// The zero polynomial over a declared variable list.
    pub fn zero_in<S: AsRef<str>>(vars: &[S]) -> Self {
        MPoly {
            vars: vars.iter().map(|v| v.as_ref().to_string()).collect(),
            terms: BTreeMap::new(),
        }
    }

    pub fn var(name: &str) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(Monomial(vec![1]), Rat::one());
        MPoly {
            vars: Arc::from(vec![name.to_string()]),
            terms,
        }
    }

    /// The variable `name` inside the declared list `vars`.
    pub fn var_in<S: AsRef<str>>(vars: &[S], name: &str) -> Result<Self> {
        let idx = vars
            .iter()
            .position(|v| v.as_ref() == name)
            .ok_or_else(|| Error::UnknownVariable(name.to_string()))?;
        let mut e = vec![0; vars.len()];
        e[idx] = 1;
        Ok(Self::from_terms(vars, [(e, Rat::one())]))
    }

    /// `coeff * prod vars[i]^exps[i]`.
    pub fn monomial<S: AsRef<str>>(vars: &[S], exps: &[u32], coeff: Rat) -> Self {
        Self::from_terms(vars, [(exps.to_vec(), coeff)])
    }

    pub fn from_terms<S, I>(vars: &[S], terms: I) -> Self
    where
        S: AsRef<str>,
        I: IntoIterator<Item = (Vec<u32>, Rat)>,
    {
        let vars: Arc<[String]> = vars.iter().map(|v| v.as_ref().to_string()).collect();
        let mut map: BTreeMap<Monomial, Rat> = BTreeMap::new();
        for (e, c) in terms {
            assert_eq!(e.len(), vars.len(), "exponent vector length mismatch");
            add_term(&mut map, Monomial(e), c);
        }
        MPoly { vars, terms: map }
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == name)
    }

    /// Terms in descending term order (leading term first).
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rat)> {
        self.terms.iter().rev()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(Monomial::is_one)
    }

    pub fn constant_value(&self) -> Option<Rat> {
        if self.is_constant() {
            Some(
                self.terms
                    .values()
                    .next()
                    .cloned()
                    .unwrap_or_else(Rat::zero),
            )
        } else {
            None
        }
    }

    /// Coefficient of the monomial with the given exponents (over `self.vars()`).
    pub fn coeff(&self, exps: &[u32]) -> Rat {
        self.terms
            .get(&Monomial(exps.to_vec()))
            .cloned()
            .unwrap_or_else(Rat::zero)
    }

    pub fn leading_term(&self) -> Option<(&Monomial, &Rat)> {
        self.terms.iter().next_back()
    }

    pub fn leading_coeff(&self) -> Rat {
        self.leading_term()
            .map(|(_, c)| c.clone())
            .unwrap_or_else(Rat::zero)
    }

    pub fn degree(&self) -> Degree {
        self.terms
            .keys()
            .map(Monomial::total_degree)
            .max()
            .map_or(Degree::NegInfinity, Degree::Finite)
    }

    pub fn degree_in(&self, var: &str) -> Degree {
        let Some(i) = self.var_index(var) else {
            return if self.is_zero() {
                Degree::NegInfinity
            } else {
                Degree::Finite(0)
            };
        };
        self.terms
            .keys()
            .map(|m| m.0[i])
            .max()
            .map_or(Degree::NegInfinity, Degree::Finite)
    }

    pub(crate) fn degree_at(&self, i: usize) -> u32 {
        self.terms.keys().map(|m| m.0[i]).max().unwrap_or(0)
    }

    /// Degree in the given subset of variables if every term has the same one.
    /// Variables not in the list are treated as weight-zero parameters.
    pub fn homogeneous_degree(&self, vars: &[&str]) -> Option<Degree> {
        let idx: Vec<usize> = vars.iter().filter_map(|v| self.var_index(v)).collect();
        let mut degs = self
            .terms
            .keys()
            .map(|m| idx.iter().map(|&i| m.0[i]).sum::<u32>());
        match degs.next() {
            None => Some(Degree::NegInfinity),
            Some(first) => degs.all(|d| d == first).then_some(Degree::Finite(first)),
        }
    }

    /// Rewrites the polynomial over `target`, which must contain every variable
    /// that actually occurs in `self`.
    pub fn align<S: AsRef<str>>(&self, target: &[S]) -> MPoly {
        let target: Arc<[String]> = target.iter().map(|v| v.as_ref().to_string()).collect();
        self.align_arc(&target)
    }

    fn align_arc(&self, target: &Arc<[String]>) -> MPoly {
        if Arc::ptr_eq(&self.vars, target) || *self.vars == **target {
            return MPoly {
                vars: target.clone(),
                terms: self.terms.clone(),
            };
        }
        let map: Vec<Option<usize>> = self
            .vars
            .iter()
            .map(|v| target.iter().position(|t| t == v))
            .collect();
        let mut terms = BTreeMap::new();
        for (m, c) in &self.terms {
            let mut e = vec![0u32; target.len()];
            for (i, &x) in m.0.iter().enumerate() {
                if x == 0 {
                    continue;
                }
                let j = map[i].unwrap_or_else(|| {
                    panic!("variable `{}` missing from alignment target", self.vars[i])
                });
                e[j] = x;
            }
            terms.insert(Monomial(e), c.clone());
        }
        MPoly {
            vars: target.clone(),
            terms,
        }
    }

    /// Both operands over a shared variable list.
    pub(crate) fn unify<'a>(a: &'a MPoly, b: &'a MPoly) -> (Cow<'a, MPoly>, Cow<'a, MPoly>) {
        if Arc::ptr_eq(&a.vars, &b.vars) || a.vars == b.vars {
            return (Cow::Borrowed(a), Cow::Borrowed(b));
        }
        if b.vars.iter().all(|v| a.vars.contains(v)) {
            return (Cow::Borrowed(a), Cow::Owned(b.align_arc(&a.vars)));
        }
        let mut union: Vec<String> = a.vars.to_vec();
        for v in b.vars.iter() {
            if !union.contains(v) {
                union.push(v.clone());
            }
        }
        let union: Arc<[String]> = union.into();
        (
            Cow::Owned(a.align_arc(&union)),
            Cow::Owned(b.align_arc(&union)),
        )
    }

    pub fn add_ref(&self, other: &MPoly) -> MPoly {
        let (a, b) = Self::unify(self, other);
        let mut terms = a.terms.clone();
        for (m, c) in &b.terms {
            add_term(&mut terms, m.clone(), c.clone());
        }
        MPoly {
            vars: a.vars.clone(),
            terms,
        }
    }

    pub fn sub_ref(&self, other: &MPoly) -> MPoly {
        let (a, b) = Self::unify(self, other);
        let mut terms = a.terms.clone();
        for (m, c) in &b.terms {
            add_term(&mut terms, m.clone(), -c);
        }
        MPoly {
            vars: a.vars.clone(),
            terms,
        }
    }

    pub fn mul_ref(&self, other: &MPoly) -> MPoly {
        let (a, b) = Self::unify(self, other);
        let mut terms = BTreeMap::new();
        for (ma, ca) in &a.terms {
            for (mb, cb) in &b.terms {
                add_term(&mut terms, ma.mul(mb), ca * cb);
            }
        }
        MPoly {
            vars: a.vars.clone(),
            terms,
        }
    }

    pub fn neg_ref(&self) -> MPoly {
        MPoly {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }

    pub fn scale(&self, r: &Rat) -> MPoly {
        if r.is_zero() {
            return MPoly {
                vars: self.vars.clone(),
                terms: BTreeMap::new(),
            };
        }
        MPoly {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), c * r)).collect(),
        }
    }

    pub fn pow(&self, e: i64) -> Result<MPoly> {
        if e < 0 {
            return Err(Error::NegativeExponent(e));
        }
        let mut base = self.clone();
        let mut e = e as u64;
        let mut acc = MPoly::one().align_arc(&self.vars);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul_ref(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul_ref(&base);
            }
        }
        Ok(acc)
    }

    pub fn partial_derivative(&self, var: &str) -> Result<MPoly> {
        let i = self
            .var_index(var)
            .ok_or_else(|| Error::UnknownVariable(var.to_string()))?;
        let mut terms = BTreeMap::new();
        for (m, c) in &self.terms {
            let e = m.0[i];
            if e == 0 {
                continue;
            }
            let mut d = m.clone();
            d.0[i] -= 1;
            add_term(&mut terms, d, c * Rat::from_integer(BigInt::from(e)));
        }
        Ok(MPoly {
            vars: self.vars.clone(),
            terms,
        })
    }

    /// Substitutes a rational value for `var`; the variable stays declared.
    pub fn substitute(&self, var: &str, value: &Rat) -> MPoly {
        let Some(i) = self.var_index(var) else {
            return self.clone();
        };
        let mut terms = BTreeMap::new();
        for (m, c) in &self.terms {
            let e = m.0[i];
            let mut r = m.clone();
            r.0[i] = 0;
            let factor = if e == 0 {
                Rat::one()
            } else {
                num_traits::pow::pow(value.clone(), e as usize)
            };
            add_term(&mut terms, r, c * factor);
        }
        MPoly {
            vars: self.vars.clone(),
            terms,
        }
    }

    /// Substitutes a polynomial for `var`.
    pub fn substitute_poly(&self, var: &str, value: &MPoly) -> MPoly {
        let Some(i) = self.var_index(var) else {
            return self.clone();
        };
        let maxe = self.degree_at(i) as usize;
        let mut powers = vec![MPoly::one()];
        for k in 1..=maxe {
            let next = powers[k - 1].mul_ref(value);
            powers.push(next);
        }
        let mut acc = MPoly::zero_in(&self.vars);
        for (m, c) in &self.terms {
            let mut r = m.clone();
            let e = r.0[i] as usize;
            r.0[i] = 0;
            let mono = MPoly {
                vars: self.vars.clone(),
                terms: std::iter::once((r, c.clone())).collect(),
            };
            acc = acc.add_ref(&mono.mul_ref(&powers[e]));
        }
        acc
    }

    /// Evaluates at a full assignment; unassigned variables are an error.
    pub fn eval(&self, values: &[(&str, Rat)]) -> Result<Rat> {
        let mut p = self.clone();
        for (v, x) in values {
            p = p.substitute(v, x);
        }
        p.constant_value().ok_or_else(|| {
            Error::InvalidArgument(format!("evaluation leaves free variables in {p}"))
        })
    }

    /// Multiplies by `x^shift` where `shift` is an exponent vector over `self.vars()`.
    pub(crate) fn mul_monomial(&self, shift: &Monomial) -> MPoly {
        MPoly {
            vars: self.vars.clone(),
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.mul(shift), c.clone()))
                .collect(),
        }
    }

    /// Componentwise minimum exponent over all terms (the monomial content).
    pub(crate) fn monomial_content(&self) -> Monomial {
        let n = self.vars.len();
        let mut it = self.terms.keys();
        let Some(first) = it.next() else {
            return Monomial::one(n);
        };
        let mut e = first.0.clone();
        for m in it {
            for (x, y) in e.iter_mut().zip(&m.0) {
                *x = (*x).min(*y);
            }
        }
        Monomial(e)
    }

    pub(crate) fn div_monomial(&self, m: &Monomial) -> MPoly {
        MPoly {
            vars: self.vars.clone(),
            terms: self
                .terms
                .iter()
                .map(|(t, c)| (t.div(m).expect("monomial does not divide"), c.clone()))
                .collect(),
        }
    }

    /// Scales to integer coefficients with gcd 1 and a positive leading
    /// coefficient. Zero stays zero.
    pub fn primitive_normalized(&self) -> MPoly {
        if self.is_zero() {
            return self.clone();
        }
        let mut den_lcm = BigInt::one();
        let mut num_gcd = BigInt::zero();
        for c in self.terms.values() {
            den_lcm = lcm_big(&den_lcm, c.denom());
            num_gcd = gcd_big(&num_gcd, c.numer());
        }
        let mut factor = Rat::new(den_lcm, num_gcd);
        if self.leading_coeff().is_negative() {
            factor = -factor;
        }
        self.scale(&factor)
    }

    /// Exact division. `None` when `rhs` does not divide `self`.
    pub fn div_exact(&self, rhs: &MPoly) -> Option<MPoly> {
        if rhs.is_zero() {
            return None;
        }
        let (a, b) = Self::unify(self, rhs);
        let (lm, lc) = b.leading_term().map(|(m, c)| (m.clone(), c.clone()))?;
        let mut rem = a.terms.clone();
        let mut quot = BTreeMap::new();
        while let Some((m, c)) = rem.iter().next_back().map(|(m, c)| (m.clone(), c.clone())) {
            let qm = m.div(&lm)?;
            let qc = &c / &lc;
            for (bm, bc) in &b.terms {
                add_term(&mut rem, bm.mul(&qm), -(&qc * bc));
            }
            debug_assert!(!rem.contains_key(&m));
            quot.insert(qm, qc);
        }
        Some(MPoly {
            vars: a.vars.clone(),
            terms: quot,
        })
    }

    /// Drops declared variables that do not occur in any term.
    pub fn trimmed(&self) -> MPoly {
        let used: Vec<String> = self
            .vars
            .iter()
            .enumerate()
            .filter(|(i, _)| self.terms.keys().any(|m| m.0[*i] > 0))
            .map(|(_, v)| v.clone())
            .collect();
        self.align(&used)
    }

    pub(crate) fn terms_map(&self) -> &BTreeMap<Monomial, Rat> {
        &self.terms
    }

    pub(crate) fn from_parts(vars: Arc<[String]>, terms: BTreeMap<Monomial, Rat>) -> MPoly {
        MPoly { vars, terms }
    }

    pub(crate) fn vars_arc(&self) -> &Arc<[String]> {
        &self.vars
    }
}

fn add_term(map: &mut BTreeMap<Monomial, Rat>, m: Monomial, c: Rat) {
    if c.is_zero() {
        return;
    }
    use std::collections::btree_map::Entry;
    match map.entry(m) {
        Entry::Vacant(v) => {
            v.insert(c);
        }
        Entry::Occupied(mut o) => {
            *o.get_mut() += c;
            if o.get().is_zero() {
                o.remove();
            }
        }
    }
}

/// `Ok(Some(r))` with `q = p * r` when `p` divides `q` exactly.
pub fn divides(p: &MPoly, q: &MPoly) -> Result<Option<MPoly>> {
    if p.is_zero() {
        return Err(Error::DivisionByZero);
    }
    Ok(q.div_exact(p))
}

impl PartialEq for MPoly {
    fn eq(&self, other: &Self) -> bool {
        let (a, b) = Self::unify(self, other);
        a.terms == b.terms
    }
}

impl Eq for MPoly {}

impl Default for MPoly {
    fn default() -> Self {
        MPoly::zero()
    }
}

impl fmt::Debug for MPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MPoly({self})")
    }
}

impl fmt::Display for MPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (k, (m, c)) in self.terms().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            match (k, neg) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let factors: Vec<String> =
                m.0.iter()
                    .zip(self.vars.iter())
                    .filter(|(e, _)| **e > 0)
                    .map(|(e, v)| {
                        if *e == 1 {
                            v.clone()
                        } else {
                            format!("{v}^{e}")
                        }
                    })
                    .collect();
            let coeff = super::rat::fmt_rat(&abs);
            if factors.is_empty() {
                f.write_str(&coeff)?;
            } else if abs.is_one() {
                f.write_str(&factors.join("*"))?;
            } else {
                write!(f, "{coeff}*{}", factors.join("*"))?;
            }
        }
        Ok(())
    }
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident, $inner:ident) => {
        impl $tr<MPoly> for MPoly {
            type Output = MPoly;
            fn $method(self, rhs: MPoly) -> MPoly {
                self.$inner(&rhs)
            }
        }
        impl<'a> $tr<&'a MPoly> for &'a MPoly {
            type Output = MPoly;
            fn $method(self, rhs: &'a MPoly) -> MPoly {
                self.$inner(rhs)
            }
        }
        impl<'a> $tr<&'a MPoly> for MPoly {
            type Output = MPoly;
            fn $method(self, rhs: &'a MPoly) -> MPoly {
                self.$inner(rhs)
            }
        }
    };
}

forward_binop!(Add, add, add_ref);
forward_binop!(Sub, sub, sub_ref);
forward_binop!(Mul, mul, mul_ref);

impl Neg for MPoly {
    type Output = MPoly;
    fn neg(self) -> MPoly {
        self.neg_ref()
    }
}

impl Neg for &MPoly {
    type Output = MPoly;
    fn neg(self) -> MPoly {
        self.neg_ref()
    }
}

impl super::Ring for MPoly {
    fn zero() -> Self {
        MPoly::zero()
    }
    fn one() -> Self {
        MPoly::one()
    }
    fn from_rat(r: Rat) -> Self {
        MPoly::constant(r)
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
    fn div_exact(&self, rhs: &Self) -> Option<Self> {
        MPoly::div_exact(self, rhs)
    }
    fn scale(&self, r: &Rat) -> Self {
        MPoly::scale(self, r)
    }
}
