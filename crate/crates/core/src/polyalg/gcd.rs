//! Multivariate gcd by content extraction and recursion on a main variable,
//! with the subresultant pseudo-remainder sequence for the primitive parts.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use super::mpoly::{MPoly, Monomial};
use super::rat::Rat;

/// A greatest common divisor, scaled to integer coefficients with content 1
/// and a positive leading coefficient. `gcd(p, 0)` is `p` normalized.
pub fn gcd_mpoly(p: &MPoly, q: &MPoly) -> MPoly {
    let (a, b) = MPoly::unify(p, q);
    gcd_rec(&a, &b).primitive_normalized()
}

/// Least common multiple, normalized like [`gcd_mpoly`]. `lcm(p, 0) = 0`.
pub fn lcm_mpoly(p: &MPoly, q: &MPoly) -> MPoly {
    if p.is_zero() || q.is_zero() {
        return MPoly::zero_in(MPoly::unify(p, q).0.vars());
    }
    let g = gcd_mpoly(p, q);
    let pq = p.div_exact(&g).expect("gcd divides its argument");
    (&pq * q).primitive_normalized()
}

/// gcd up to a nonzero rational factor.
fn gcd_rec(a: &MPoly, b: &MPoly) -> MPoly {
    if a.is_zero() {
        return b.clone();
    }
    if b.is_zero() {
        return a.clone();
    }
    let ma = a.monomial_content();
    let mb = b.monomial_content();
    let shared = Monomial(
        ma.exponents()
            .iter()
            .zip(mb.exponents())
            .map(|(x, y)| (*x).min(*y))
            .collect(),
    );
    let a = a.div_monomial(&ma);
    let b = b.div_monomial(&mb);
    let unit = MPoly::one().align(a.vars());
    if a.is_constant() || b.is_constant() {
        return unit.mul_monomial(&shared);
    }
    if a == b {
        return a.mul_monomial(&shared);
    }

    let n = a.vars().len();
    let deg_a: Vec<u32> = (0..n).map(|i| a.degree_at(i)).collect();
    let deg_b: Vec<u32> = (0..n).map(|i| b.degree_at(i)).collect();

    // A variable present in only one argument: the gcd divides every
    // coefficient with respect to it.
    if let Some(i) = (0..n).find(|&i| (deg_a[i] > 0) != (deg_b[i] > 0)) {
        let (with, without) = if deg_a[i] > 0 { (&a, &b) } else { (&b, &a) };
        let mut g = without.clone();
        for c in coefficients(with, i).values() {
            g = gcd_rec(&g, c);
            if g.is_constant() {
                break;
            }
        }
        return normalize_rat(&g).mul_monomial(&shared);
    }

    // If a specialization of the other variables leaves the two polynomials
    // coprime in `x_i` while keeping both degrees, the gcd is free of `x_i`
    // and divides every coefficient with respect to it.
    if let Some(i) = (0..n).find(|&i| deg_a[i] > 0 && image_gcd_degree(&a, &b, i) == Some(0)) {
        let mut g = MPoly::zero_in(a.vars());
        for c in coefficients(&a, i)
            .values()
            .chain(coefficients(&b, i).values())
        {
            g = gcd_rec(&g, c);
            if g.is_constant() {
                break;
            }
        }
        return normalize_rat(&g).mul_monomial(&shared);
    }

    if let Some(g) = heuristic_gcd(&a.primitive_normalized(), &b.primitive_normalized(), 0) {
        return g.mul_monomial(&shared);
    }

    let main = (0..n)
        .filter(|&i| deg_a[i] > 0)
        .min_by_key(|&i| (deg_a[i].min(deg_b[i]), deg_a[i].max(deg_b[i])))
        .expect("non-constant polynomials share a variable");

    let ua = to_univariate(&a, main);
    let ub = to_univariate(&b, main);
    let ca = content(&ua);
    let cb = content(&ub);
    let c = gcd_rec(&ca, &cb);
    let pa = divide_coeffs(&ua, &ca);
    let pb = divide_coeffs(&ub, &cb);
    let g = subresultant(pa, pb);
    let cg = content(&g);
    let g = divide_coeffs(&g, &cg);
    let g = from_univariate(&g, main, a.vars_arc());
    normalize_rat(&(&c * &g)).mul_monomial(&shared)
}

fn max_norm(p: &MPoly) -> BigInt {
    p.terms_map()
        .values()
        .map(|c| c.numer().abs())
        .max()
        .unwrap_or_else(BigInt::zero)
}

/// Representative of `x mod m` in `(-m/2, m/2]`.
fn symmetric_mod(x: &BigInt, m: &BigInt) -> BigInt {
    let r = x.mod_floor(m);
    if &r * 2 > *m {
        r - m
    } else {
        r
    }
}

const HEURISTIC_TRIES: usize = 6;
const HEURISTIC_MAX_DEPTH: usize = 6;

fn int_content(p: &MPoly) -> BigInt {
    p.terms_map()
        .values()
        .fold(BigInt::zero(), |g, c| g.gcd(c.numer()))
}

/// Heuristic gcd for integer polynomials, integer content included: evaluate
/// the last occurring variable at a large integer `xi`, recurse, rebuild the
/// image gcd from its balanced `xi`-adic digits and accept its primitive part
/// only if it divides both primitive parts. With `xi > 2 min(|a|, |b|) + 1`
/// an accepted candidate is the gcd.
fn heuristic_gcd(a: &MPoly, b: &MPoly, depth: usize) -> Option<MPoly> {
    if depth > HEURISTIC_MAX_DEPTH {
        return None;
    }
    let n = a.vars().len();
    let ca = int_content(a);
    let cb = int_content(b);
    let content = Rat::from_integer(ca.gcd(&cb));
    let Some(i) = (0..n)
        .rev()
        .find(|&i| a.degree_at(i) > 0 || b.degree_at(i) > 0)
    else {
        return Some(MPoly::constant(content).align(a.vars()));
    };
    let pa = a.scale(&Rat::from_integer(ca).recip());
    let pb = b.scale(&Rat::from_integer(cb).recip());
    let var = a.vars()[i].clone();
    let mut xi: BigInt = max_norm(&pa).min(max_norm(&pb)) * 2 + 29;
    for _ in 0..HEURISTIC_TRIES {
        let x = Rat::from_integer(xi.clone());
        let ea = pa.substitute(&var, &x);
        let eb = pb.substitute(&var, &x);
        if !ea.is_zero() && !eb.is_zero() {
            if let Some(gamma) = heuristic_gcd(&ea, &eb, depth + 1) {
                let g = xi_adic_lift(&gamma, &xi, i);
                if !g.is_zero() {
                    let g = g.primitive_normalized();
                    if pa.div_exact(&g).is_some() && pb.div_exact(&g).is_some() {
                        return Some(g.scale(&content));
                    }
                }
            }
        }
        xi = xi * 73794 / 27011;
    }
    None
}

/// `sum_k g_k x_i^k` with `g_k` the balanced `xi`-adic digits of `gamma`.
fn xi_adic_lift(gamma: &MPoly, xi: &BigInt, i: usize) -> MPoly {
    let mut rest: BTreeMap<Monomial, BigInt> = gamma
        .terms_map()
        .iter()
        .map(|(m, c)| (m.clone(), c.numer().clone()))
        .collect();
    let mut out = BTreeMap::new();
    let mut k = 0u32;
    while !rest.is_empty() {
        let mut next = BTreeMap::new();
        for (m, c) in rest {
            let digit = symmetric_mod(&c, xi);
            if !digit.is_zero() {
                let mut e = m.exponents().to_vec();
                e[i] = k;
                out.insert(Monomial(e), Rat::from_integer(digit.clone()));
            }
            let q = (c - digit) / xi;
            if !q.is_zero() {
                next.insert(m, q);
            }
        }
        rest = next;
        k += 1;
    }
    MPoly::from_parts(gamma.vars_arc().clone(), out)
}

/// Degree in `x_i` of `gcd(a, b)` after substituting fixed integers for the
/// other variables; an upper bound for the degree of the true gcd in `x_i`.
/// `None` if no tried point keeps both leading coefficients nonzero.
fn image_gcd_degree(a: &MPoly, b: &MPoly, i: usize) -> Option<usize> {
    const POINTS: [[i64; 8]; 3] = [
        [3, -5, 7, 11, -13, 17, 19, -23],
        [29, 31, -37, 41, 43, -47, 53, 59],
        [-2, 61, 67, -71, 73, 79, -83, 89],
    ];
    let n = a.vars().len();
    for pt in POINTS {
        let vals: Vec<Rat> = (0..n)
            .map(|k| Rat::from_integer(pt[k % 8].into()))
            .collect();
        let ua = eval_except(a, i, &vals);
        let ub = eval_except(b, i, &vals);
        if ua.len() != a.degree_at(i) as usize + 1 || ub.len() != b.degree_at(i) as usize + 1 {
            continue;
        }
        return Some(uni_gcd_degree(ua, ub));
    }
    None
}

/// Ascending coefficients in `x_i` with the other variables set to `vals`,
/// trailing zeros removed.
fn eval_except(p: &MPoly, i: usize, vals: &[Rat]) -> Vec<Rat> {
    let mut out = vec![Rat::from_integer(0.into()); p.degree_at(i) as usize + 1];
    for (m, c) in p.terms_map() {
        let mut v = c.clone();
        for (k, &e) in m.exponents().iter().enumerate() {
            if k != i && e > 0 {
                v *= num_traits::pow(vals[k].clone(), e as usize);
            }
        }
        out[m.exponents()[i] as usize] += v;
    }
    while out.len() > 1 && num_traits::Zero::is_zero(out.last().expect("nonempty")) {
        out.pop();
    }
    out
}

fn uni_gcd_degree(mut a: Vec<Rat>, mut b: Vec<Rat>) -> usize {
    use num_traits::Zero;
    let is_zero = |u: &[Rat]| u.iter().all(Zero::is_zero);
    if a.len() < b.len() {
        std::mem::swap(&mut a, &mut b);
    }
    while !is_zero(&b) {
        let lb = b.last().expect("nonempty").clone();
        while a.len() >= b.len() && !is_zero(&a) {
            let f = a.last().expect("nonempty") / &lb;
            let shift = a.len() - b.len();
            for (k, bc) in b.iter().enumerate() {
                a[shift + k] -= &f * bc;
            }
            a.pop();
            while a.len() > 1 && a.last().is_some_and(Zero::is_zero) {
                a.pop();
            }
        }
        std::mem::swap(&mut a, &mut b);
    }
    a.len() - 1
}

fn normalize_rat(p: &MPoly) -> MPoly {
    if p.is_zero() {
        p.clone()
    } else {
        p.primitive_normalized()
    }
}

/// Coefficients with respect to variable `i`, keyed by exponent.
fn coefficients(p: &MPoly, i: usize) -> BTreeMap<u32, MPoly> {
    let mut out: BTreeMap<u32, BTreeMap<Monomial, Rat>> = BTreeMap::new();
    for (m, c) in p.terms_map() {
        let mut e = m.exponents().to_vec();
        let k = std::mem::take(&mut e[i]);
        out.entry(k).or_default().insert(Monomial(e), c.clone());
    }
    out.into_iter()
        .map(|(k, t)| (k, MPoly::from_parts(p.vars_arc().clone(), t)))
        .collect()
}

type Uni = Vec<MPoly>;

fn to_univariate(p: &MPoly, i: usize) -> Uni {
    let coeffs = coefficients(p, i);
    let deg = coeffs.keys().next_back().copied().unwrap_or(0) as usize;
    let zero = MPoly::zero_in(p.vars());
    let mut v = vec![zero; deg + 1];
    for (k, c) in coeffs {
        v[k as usize] = c;
    }
    v
}

fn from_univariate(u: &Uni, i: usize, vars: &std::sync::Arc<[String]>) -> MPoly {
    let mut terms = BTreeMap::new();
    for (k, c) in u.iter().enumerate() {
        for (m, x) in c.terms_map() {
            let mut e = m.exponents().to_vec();
            e[i] = k as u32;
            terms.insert(Monomial(e), x.clone());
        }
    }
    MPoly::from_parts(vars.clone(), terms)
}

fn trim(u: &mut Uni) {
    while u.len() > 1 && u.last().is_some_and(MPoly::is_zero) {
        u.pop();
    }
}

fn is_zero_uni(u: &Uni) -> bool {
    u.iter().all(MPoly::is_zero)
}

fn degree(u: &Uni) -> usize {
    u.iter().rposition(|c| !c.is_zero()).unwrap_or(0)
}

fn content(u: &Uni) -> MPoly {
    let mut g = MPoly::zero();
    for c in u.iter().filter(|c| !c.is_zero()) {
        g = gcd_rec(&g, c);
        if g.is_constant() {
            return MPoly::one().align(c.vars());
        }
    }
    normalize_rat(&g)
}

fn divide_coeffs(u: &Uni, d: &MPoly) -> Uni {
    u.iter()
        .map(|c| c.div_exact(d).expect("content divides every coefficient"))
        .collect()
}

/// Pseudo-remainder `lc(b)^(deg a - deg b + 1) * a mod b`.
fn prem(a: &Uni, b: &Uni) -> Uni {
    let db = degree(b);
    let lb = &b[db];
    let mut r = a.clone();
    trim(&mut r);
    let mut steps = (degree(a) + 1).saturating_sub(db);
    while !is_zero_uni(&r) && degree(&r) >= db {
        let dr = degree(&r);
        let lr = r[dr].clone();
        for c in r.iter_mut() {
            *c = &*c * lb;
        }
        for (k, bc) in b.iter().enumerate().take(db + 1) {
            let t = &lr * bc;
            r[dr - db + k] = &r[dr - db + k] - &t;
        }
        trim(&mut r);
        steps -= 1;
    }
    let factor = lb.pow(steps as i64).expect("nonnegative");
    r.iter().map(|c| c * &factor).collect()
}

/// Subresultant PRS on primitive inputs; returns a gcd up to content.
fn subresultant(a: Uni, b: Uni) -> Uni {
    let (mut a, mut b) = if degree(&a) >= degree(&b) {
        (a, b)
    } else {
        (b, a)
    };
    let one = MPoly::one().align(a[0].vars());
    let mut g = one.clone();
    let mut h = one.clone();
    loop {
        let delta = degree(&a) - degree(&b);
        let r = prem(&a, &b);
        if is_zero_uni(&r) {
            return b;
        }
        if degree(&r) == 0 {
            return vec![one];
        }
        let divisor = &g * &h.pow(delta as i64).expect("nonnegative");
        a = b;
        b = r
            .iter()
            .map(|c| {
                c.div_exact(&divisor)
                    .expect("subresultant division is exact")
            })
            .collect();
        trim(&mut b);
        g = a[degree(&a)].clone();
        h = if delta == 0 {
            h
        } else {
            let num = g.pow(delta as i64).expect("nonnegative");
            let den = h.pow(delta as i64 - 1).expect("nonnegative");
            num.div_exact(&den).expect("subresultant h update is exact")
        };
    }
}
