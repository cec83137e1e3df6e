//! Meromorphic connections attached to pencils of surfaces in `P^3`, their
//! pole divisors, and section counts of `S^m T*_{P^3}(k)`.
//!
//! A family is given by four forms `s_0..s_3` of degree `d` in `z_0..z_3`.
//! The connection symbols `Gamma^k_ij` solve
//! `sum_k Gamma^k_ij ds_l/dz_k = d^2 s_l / dz_i dz_j` for all `i, j, l`.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::jetcalc::ChartChristoffel;
use crate::polyalg::{
    lcm_mpoly, rank_rat, rat, rat_int, solve_linear, Degree, MPoly, Rat, RatFunc,
};

pub const Z_VARS: [&str; 4] = ["z0", "z1", "z2", "z3"];

/// Name of the deformation parameter in [`fermat_deformation`].
pub const PARAM: &str = "a";

/// Default bound on the domain dimension in [`h0_sym_cotangent_p3`].
pub const DEFAULT_H0_CAP: u64 = 20_000;

#[derive(Clone, Debug)]
pub struct SurfaceFamily {
    d: u32,
    s: [MPoly; 4],
    composition: Option<[u32; 4]>,
}

impl SurfaceFamily {
    /// Checks that every `s_l` is homogeneous of degree `d` in `z_0..z_3`.
    /// Other variables are treated as parameters.
    pub fn new(d: u32, s: [MPoly; 4]) -> Result<Self> {
        let mut vars: Vec<String> = Z_VARS.iter().map(|v| v.to_string()).collect();
        for p in &s {
            for v in p.vars() {
                if !vars.contains(v)
                    && p.degree_in(v) != Degree::NegInfinity
                    && p.degree_in(v) != Degree::Finite(0)
                {
                    vars.push(v.clone());
                }
            }
        }
        let s = s.map(|p| p.trimmed().align(&vars));
        for (l, p) in s.iter().enumerate() {
            if p.homogeneous_degree(&Z_VARS) != Some(Degree::Finite(d)) {
                return Err(Error::InvalidArgument(format!(
                    "s{l} = {p} is not homogeneous of degree {d} in z0..z3"
                )));
            }
        }
        Ok(SurfaceFamily {
            d,
            s,
            composition: None,
        })
    }

    pub fn d(&self) -> u32 {
        self.d
    }

    pub fn s(&self) -> &[MPoly; 4] {
        &self.s
    }

    /// `(k_0, .., k_3)` when built by [`fermat_deformation`].
    pub fn composition(&self) -> Option<[u32; 4]> {
        self.composition
    }

    pub fn vars(&self) -> &[String] {
        self.s[0].vars()
    }

    /// Substitutes a value for a parameter.
    pub fn specialize(&self, param: &str, value: &Rat) -> Result<Self> {
        if Z_VARS.contains(&param) {
            return Err(Error::InvalidArgument(format!(
                "{param} is a coordinate, not a parameter"
            )));
        }
        let mut out = Self::new(self.d, self.s.clone().map(|p| p.substitute(param, value)))?;
        out.composition = self.composition;
        Ok(out)
    }

    /// `jac[l][k] = ds_l / dz_k`.
    pub fn jacobian(&self) -> Vec<Vec<MPoly>> {
        self.s
            .iter()
            .map(|p| {
                Z_VARS
                    .iter()
                    .map(|z| p.partial_derivative(z).expect("coordinates are declared"))
                    .collect()
            })
            .collect()
    }

    fn hessian(&self, l: usize, i: usize, j: usize) -> MPoly {
        self.s[l]
            .partial_derivative(Z_VARS[i])
            .and_then(|p| p.partial_derivative(Z_VARS[j]))
            .expect("coordinates are declared")
    }
}

fn z_monomial(vars: &[String], k: &[u32; 4], skip_z0: bool) -> MPoly {
    let mut e = vec![0u32; vars.len()];
    let from = usize::from(skip_z0);
    e[from..4].copy_from_slice(&k[from..]);
    MPoly::monomial(vars, &e, rat_int(1))
}

fn family_vars() -> Vec<String> {
    Z_VARS
        .iter()
        .chain([PARAM].iter())
        .map(|v| v.to_string())
        .collect()
}

/// `s_0 = z_0^{k_0} (z_0^{d-k_0} + a z_1^{k_1} z_2^{k_2} z_3^{k_3})`, `s_i = z_i^d`.
pub fn fermat_deformation(d: u32, k: [u32; 4]) -> Result<SurfaceFamily> {
    if d == 0 {
        return Err(Error::InvalidArgument("degree must be at least 1".into()));
    }
    let sum: u32 = k.iter().sum();
    if sum != d {
        return Err(Error::InvalidArgument(format!(
            "composition {k:?} sums to {sum}, expected {d}"
        )));
    }
    let vars = family_vars();
    let z = |i: usize| MPoly::var_in(&vars, Z_VARS[i]).expect("declared");
    let a = MPoly::var_in(&vars, PARAM).expect("declared");
    let pw = |p: MPoly, e: u32| p.pow(e as i64).expect("nonnegative exponent");
    let s0 = pw(z(0), d) + a * pw(z(0), k[0]) * z_monomial(&vars, &k, true);
    let s = [s0, pw(z(1), d), pw(z(2), d), pw(z(3), d)];
    let mut fam = SurfaceFamily::new(d, s)?;
    fam.s = fam.s.map(|p| p.align(&vars));
    fam.composition = Some(k);
    Ok(fam)
}

/// `d z_0^{k_1+k_2+k_3} + a k_0 z_1^{k_1} z_2^{k_2} z_3^{k_3}`, the non-coordinate
/// factor expected in the pole divisor of the Fermat deformation. `a` is kept
/// symbolic unless a value is given.
pub fn fermat_pole_candidate(d: u32, k: [u32; 4], a: Option<&Rat>) -> MPoly {
    let vars = family_vars();
    let mut e = vec![0u32; 5];
    e[0] = k[1] + k[2] + k[3];
    let lead = MPoly::monomial(&vars, &e, rat_int(d as i64));
    let param = match a {
        Some(v) => MPoly::constant(v.clone()).align(&vars),
        None => MPoly::var_in(&vars, PARAM).expect("declared"),
    };
    let tail = (param * z_monomial(&vars, &k, true)).scale(&rat_int(k[0] as i64));
    (lead + tail).primitive_normalized()
}

#[derive(Clone, Debug)]
pub struct Christoffel {
    gamma: Vec<RatFunc>,
    jacobian_det: MPoly,
}

/// The ten index pairs `i <= j`.
pub fn index_pairs() -> Vec<(usize, usize)> {
    (0..4).flat_map(|i| (i..4).map(move |j| (i, j))).collect()
}

impl Christoffel {
    fn idx(i: usize, j: usize, k: usize) -> usize {
        16 * i + 4 * j + k
    }

    /// `Gamma^k_ij`.
    pub fn get(&self, i: usize, j: usize, k: usize) -> &RatFunc {
        &self.gamma[Self::idx(i, j, k)]
    }

    /// All entries as `((i, j, k), Gamma^k_ij)` in lexicographic index order.
    pub fn entries(&self) -> impl Iterator<Item = ((usize, usize, usize), &RatFunc)> {
        self.gamma
            .iter()
            .enumerate()
            .map(|(n, g)| ((n / 16, (n / 4) % 4, n % 4), g))
    }

    pub fn jacobian_det(&self) -> &MPoly {
        &self.jacobian_det
    }

    /// Re-checks `sum_k Gamma^k_ij ds_l/dz_k = d^2 s_l/dz_i dz_j` for all
    /// ordered `(i, j)` and every `l`. Returns the number of equations checked.
    pub fn verify(&self, fam: &SurfaceFamily) -> Result<usize> {
        let jac = fam.jacobian();
        let mut checked = 0;
        for i in 0..4 {
            for j in 0..4 {
                for (l, row) in jac.iter().enumerate() {
                    let lhs = (0..4)
                        .map(|k| self.get(i, j, k) * &RatFunc::from_poly(row[k].clone()))
                        .fold(RatFunc::from_poly(MPoly::zero()), |acc, t| acc + t);
                    if lhs != RatFunc::from_poly(fam.hessian(l, i, j)) {
                        return Err(Error::Invariant(format!(
                            "connection equation fails at (i, j, l) = ({i}, {j}, {l})"
                        )));
                    }
                    checked += 1;
                }
            }
        }
        Ok(checked)
    }

    /// Whether every nonzero entry has `z`-degree `-1`.
    pub fn is_homogeneous_of_degree_minus_one(&self) -> bool {
        self.gamma
            .iter()
            .filter(|g| !g.is_zero())
            .all(|g| g.homogeneous_degree(&Z_VARS) == Some(-1))
    }

    /// Adds `alpha_i delta_jk + beta_j delta_ik`.
    pub fn gauge_shift(&self, alpha: &[RatFunc; 4], beta: &[RatFunc; 4]) -> Christoffel {
        let mut out = self.clone();
        for i in 0..4 {
            for j in 0..4 {
                for k in 0..4 {
                    let g = &mut out.gamma[Self::idx(i, j, k)];
                    if j == k {
                        *g = &*g + &alpha[i];
                    }
                    if i == k {
                        *g = &*g + &beta[j];
                    }
                }
            }
        }
        out
    }

    /// The block of symbols with all three indices in `{p, q}`, as used by the
    /// chart formulas of [`crate::jetcalc`].
    pub fn chart(&self, p: usize, q: usize) -> ChartChristoffel<RatFunc> {
        let ix = [p, q];
        std::array::from_fn(|i| {
            std::array::from_fn(|j| std::array::from_fn(|k| self.get(ix[i], ix[j], ix[k]).clone()))
        })
    }
}

/// Solves the connection system by Cramer's rule, one right-hand side per
/// index pair, pairs dispatched under `exec`.
pub fn solve_connection(fam: &SurfaceFamily, exec: Exec) -> Result<Christoffel> {
    let jac = fam.jacobian();
    let jacobian_det = crate::polyalg::det_fraction_free(&jac)?;
    if jacobian_det.is_zero() {
        return Err(Error::SingularSystem {
            det: jacobian_det.to_string(),
        });
    }
    let pairs = index_pairs();
    let solved = exec.try_map(&pairs, |&(i, j)| {
        let rhs: Vec<MPoly> = (0..4).map(|l| fam.hessian(l, i, j)).collect();
        solve_linear(&jac, &rhs, Exec::Sequential)
    })?;
    let mut gamma = vec![RatFunc::from_poly(MPoly::zero()); 64];
    for (&(i, j), sol) in pairs.iter().zip(solved) {
        for (k, g) in sol.into_iter().enumerate() {
            gamma[Christoffel::idx(j, i, k)] = g.clone();
            gamma[Christoffel::idx(i, j, k)] = g;
        }
    }
    Ok(Christoffel {
        gamma,
        jacobian_det,
    })
}

#[derive(Clone, Debug, PartialEq)]
pub struct PoleDivisor {
    /// Normalized factors with multiplicities: coordinate hyperplanes first,
    /// then matched candidates, then an unmatched residual if any.
    pub factors: Vec<(MPoly, u32)>,
    /// `z`-degree of the reduced common denominator.
    pub total_degree: u32,
    /// Part of the denominator that no candidate accounts for. It may be
    /// reducible.
    pub unmatched: Option<MPoly>,
}

impl PoleDivisor {
    /// `B / K` for `K = (d - 4) H`.
    pub fn ratio_over_canonical(&self, d: u32) -> Option<Rat> {
        (d != 4).then(|| rat(self.total_degree as i64, d as i64 - 4))
    }

    pub fn support(&self) -> Vec<&MPoly> {
        self.factors.iter().map(|(f, _)| f).collect()
    }
}

fn z_degree(p: &MPoly) -> u32 {
    let idx: Vec<usize> = Z_VARS.iter().filter_map(|z| p.var_index(z)).collect();
    p.terms()
        .map(|(m, _)| idx.iter().map(|&i| m.exponents()[i]).sum())
        .max()
        .unwrap_or(0)
}

fn strip(residual: &mut MPoly, factor: &MPoly) -> u32 {
    let mut mult = 0;
    while let Some(q) = residual.div_exact(factor) {
        *residual = q;
        mult += 1;
    }
    mult
}

/// Least common multiple of the 64 denominators, split into coordinate
/// hyperplanes, the given candidate factors, and whatever remains.
pub fn pole_divisor(gamma: &Christoffel, candidates: &[MPoly]) -> PoleDivisor {
    let lcm = gamma
        .gamma
        .iter()
        .map(RatFunc::den)
        .fold(MPoly::one(), |acc, d| lcm_mpoly(&acc, d))
        .primitive_normalized();
    let mut residual = lcm.clone();
    let mut factors = Vec::new();
    for z in Z_VARS {
        let zp = MPoly::var_in(residual.vars(), z).unwrap_or_else(|_| MPoly::var(z));
        let m = strip(&mut residual, &zp);
        if m > 0 {
            factors.push((zp, m));
        }
    }
    for c in candidates {
        if c.is_constant() {
            continue;
        }
        let c = c.primitive_normalized();
        let m = strip(&mut residual, &c);
        if m > 0 {
            factors.push((c, m));
        }
    }
    let unmatched = (!residual.is_constant()).then(|| residual.primitive_normalized());
    if let Some(u) = &unmatched {
        factors.push((u.clone(), 1));
    }
    let total_degree = factors.iter().map(|(f, _)| z_degree(f)).sum();
    PoleDivisor {
        factors,
        total_degree,
        unmatched,
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SmoothnessCriterion {
    pub d: u32,
    pub composition: [u32; 4],
    /// `prod k_i^{k_i}` with `0^0 = 1`.
    pub lhs_coeff: BigInt,
    /// `(-d)^d`.
    pub rhs: BigInt,
    /// `Some(nonsingular)` when a value of `a` was supplied.
    pub nonsingular: Option<bool>,
}

impl SmoothnessCriterion {
    /// The critical relation, e.g. `4*a^5 = -3125`.
    pub fn relation(&self) -> String {
        if self.lhs_coeff.is_one() {
            format!("a^{} = {}", self.d, self.rhs)
        } else {
            format!("{}*a^{} = {}", self.lhs_coeff, self.d, self.rhs)
        }
    }

    /// The value `a^d` must avoid.
    pub fn critical_power(&self) -> Rat {
        Rat::new(self.rhs.clone(), self.lhs_coeff.clone())
    }
}

/// The deformed Fermat surface is smooth exactly off `a^d prod k_i^{k_i} = (-d)^d`.
pub fn smoothness_criterion(d: u32, k: [u32; 4], a: Option<&Rat>) -> Result<SmoothnessCriterion> {
    let sum: u32 = k.iter().sum();
    if sum != d {
        return Err(Error::InvalidArgument(format!(
            "composition {k:?} sums to {sum}, expected {d}"
        )));
    }
    let lhs_coeff: BigInt = k
        .iter()
        .map(|&ki| num_traits::pow(BigInt::from(ki), ki as usize))
        .product();
    let rhs = num_traits::pow(BigInt::from(-(d as i64)), d as usize);
    let nonsingular = a.map(|a| {
        let lhs = num_traits::pow(a.clone(), d as usize) * Rat::from_integer(lhs_coeff.clone());
        lhs != Rat::from_integer(rhs.clone())
    });
    Ok(SmoothnessCriterion {
        d,
        composition: k,
        lhs_coeff,
        rhs,
        nonsingular,
    })
}

#[derive(Clone, Debug, PartialEq)]
pub struct ExclusionBound {
    pub m: u32,
    /// `-1/(2m) + (2 - (3 + eps/2)/m)/(d - 4)`.
    pub parity_bound: Rat,
    /// `-1/(2m) + (2 - 7/(2m))/(d - 4)`.
    pub uniform_bound: Rat,
}

#[derive(Clone, Debug, PartialEq)]
pub struct PoleBudget {
    pub d: u32,
    pub p: u32,
    pub epsilon: u32,
    pub t1: Rat,
    pub bounds: Vec<ExclusionBound>,
}

/// Twist budget for a Wronskian section of pole ratio `p/(d-4)` with
/// `p = floor((d+3)/2)`, and the resulting bounds below which `E_{2,m}`
/// twisted by `tK` has no section, `m = 3, 4, 5`.
pub fn pole_budget(d: u32) -> Result<PoleBudget> {
    if d < 6 {
        return Err(Error::InvalidArgument(format!(
            "the pole budget needs d >= 6 so that p >= 4, got d = {d}"
        )));
    }
    let p = (d + 3) / 2;
    debug_assert!((4..=d + 4).contains(&p));
    let epsilon = d % 2;
    let dm4 = Rat::from_integer((d as i64 - 4).into());
    let t1 = rat(p as i64, d as i64 - 4) - rat_int(1);
    let eps_half = rat(epsilon as i64, 2);
    if rat(1, 2) + &t1 != (rat_int(3) + &eps_half) / &dm4 {
        return Err(Error::Invariant(format!("1/2 + t1 mismatch at d = {d}")));
    }
    let bounds = (3..=5u32)
        .map(|m| {
            let mm = rat_int(m as i64);
            let base = -rat(1, 2 * m as i64);
            ExclusionBound {
                m,
                parity_bound: &base + (rat_int(2) - (rat_int(3) + &eps_half) / &mm) / &dm4,
                uniform_bound: &base + (rat_int(2) - rat(7, 2 * m as i64)) / &dm4,
            }
        })
        .collect();
    Ok(PoleBudget {
        d,
        p,
        epsilon,
        t1,
        bounds,
    })
}

fn compositions(total: u32, parts: usize) -> Vec<Vec<u32>> {
    if parts == 1 {
        return vec![vec![total]];
    }
    (0..=total)
        .rev()
        .flat_map(|first| {
            compositions(total - first, parts - 1)
                .into_iter()
                .map(move |mut rest| {
                    rest.insert(0, first);
                    rest
                })
        })
        .collect()
}

fn binom(n: u64, k: u64) -> u64 {
    (0..k).fold(1u64, |acc, i| acc * (n - i) / (i + 1))
}

fn bounded_compositions(total: u32, bound: &[u32]) -> Vec<Vec<u32>> {
    compositions(total, bound.len())
        .into_iter()
        .filter(|c| c.iter().zip(bound).all(|(x, b)| x <= b))
        .collect()
}

/// `dim H^0(P^3, S^m T* (k))`: the kernel of the Euler contraction
/// `y^b z^a -> sum_i b_i y^{b - e_i} z^{a + e_i}` on symmetric `m`-tensors in
/// `y = dz` with coefficients of degree `k - m`. The map preserves the total
/// exponent `a + b`, so the kernel is computed block by block under `exec`.
pub fn h0_sym_cotangent_p3(m: u32, k: i64, cap: u64, exec: Exec) -> Result<u64> {
    if k < m as i64 {
        return Ok(0);
    }
    let deg = (k - m as i64) as u64;
    let needed = binom(m as u64 + 3, 3) * binom(deg + 3, 3);
    if needed > cap {
        return Err(Error::Capacity {
            what: format!("h0 of S^{m} T*(k) on P^3 at k = {k}"),
            needed: needed as usize,
            cap: cap as usize,
        });
    }
    if m == 0 {
        return Ok(needed);
    }
    let blocks = compositions(k as u32, 4);
    let dims = exec.map(&blocks, |w| {
        let domain = bounded_compositions(m, w);
        if domain.is_empty() {
            return 0u64;
        }
        let target: BTreeMap<Vec<u32>, usize> = bounded_compositions(m - 1, w)
            .into_iter()
            .enumerate()
            .map(|(n, c)| (c, n))
            .collect();
        let matrix: Vec<Vec<Rat>> = target
            .keys()
            .map(|c| {
                domain
                    .iter()
                    .map(|b| {
                        let diff: Vec<i64> = b
                            .iter()
                            .zip(c)
                            .map(|(&x, &y)| x as i64 - y as i64)
                            .collect();
                        match diff.iter().position(|&x| x == 1) {
                            Some(i) if diff.iter().filter(|&&x| x != 0).count() == 1 => {
                                rat_int(b[i] as i64)
                            }
                            _ => Rat::zero(),
                        }
                    })
                    .collect()
            })
            .collect();
        (domain.len() - rank_rat(&matrix)) as u64
    });
    Ok(dims.iter().sum())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::jetcalc::wronskian_from_christoffel;
    use crate::polyalg::parse_mpoly;

    fn p(s: &str) -> MPoly {
        parse_mpoly(s, &family_vars()).unwrap()
    }

    #[test]
    fn deformation_shape() {
        let fam = fermat_deformation(6, [1, 2, 2, 1]).unwrap();
        assert_eq!(fam.s()[0], p("z0^6 + a*z0*z1^2*z2^2*z3"));
        assert_eq!(fam.s()[3], p("z3^6"));
        let flat = fermat_deformation(4, [4, 0, 0, 0]).unwrap();
        assert_eq!(flat.s()[0], p("z0^4 + a*z0^4"));
        assert!(fermat_deformation(6, [1, 1, 1, 1]).is_err());
    }

    #[test]
    fn inhomogeneous_family_rejected() {
        let s = [p("z0^3 + z1"), p("z1^3"), p("z2^3"), p("z3^3")];
        assert!(SurfaceFamily::new(3, s).is_err());
    }

    #[test]
    fn fermat_connection_is_diagonal() {
        let fam = fermat_deformation(5, [2, 1, 1, 1])
            .unwrap()
            .specialize(PARAM, &rat_int(0))
            .unwrap();
        let g = solve_connection(&fam, Exec::Sequential).unwrap();
        for ((i, j, k), v) in g.entries() {
            let expected = if i == j && j == k {
                RatFunc::new(MPoly::int(4), MPoly::var(Z_VARS[i])).unwrap()
            } else {
                RatFunc::from_poly(MPoly::zero())
            };
            assert_eq!(*v, expected, "entry ({i},{j},{k})");
        }
        let b = pole_divisor(&g, &[]);
        assert_eq!(b.total_degree, 4);
        assert_eq!(b.unmatched, None);
    }

    #[test]
    fn deformed_connection_checks() {
        let fam = fermat_deformation(5, [2, 1, 1, 1]).unwrap();
        let g = solve_connection(&fam, Exec::Parallel).unwrap();
        assert_eq!(g.verify(&fam).unwrap(), 64);
        assert!(g.is_homogeneous_of_degree_minus_one());
        let cand = fermat_pole_candidate(5, [2, 1, 1, 1], None);
        assert_eq!(cand, p("5*z0^3 + 2*a*z1*z2*z3"));
        let b = pole_divisor(&g, std::slice::from_ref(&cand));
        assert_eq!(b.unmatched, None);
        assert_eq!(b.support().len(), 5);
        assert!(b.support().contains(&&cand));
        assert_eq!(b.total_degree, 7);
        assert_eq!(b.ratio_over_canonical(5), Some(rat_int(7)));
    }

    #[test]
    fn unit_first_exponent_drops_z0_from_denominators() {
        let fam = fermat_deformation(5, [1, 2, 1, 1]).unwrap();
        let g = solve_connection(&fam, Exec::Sequential).unwrap();
        let b = pole_divisor(&g, &[fermat_pole_candidate(5, [1, 2, 1, 1], None)]);
        assert_eq!(b.unmatched, None);
        assert_eq!(b.total_degree, 7);
        assert!(!b
            .support()
            .contains(&&MPoly::var("z0").align(&family_vars())));
    }

    #[test]
    fn singular_family_rejected() {
        let s = [p("z0^2"), p("z0^2"), p("z2^2"), p("z3^2")];
        let fam = SurfaceFamily::new(2, s).unwrap();
        assert!(matches!(
            solve_connection(&fam, Exec::Sequential),
            Err(Error::SingularSystem { .. })
        ));
    }

    #[test]
    fn gauge_shift_preserves_chart_wronskian() {
        let fam = fermat_deformation(5, [2, 1, 1, 1]).unwrap();
        let g = solve_connection(&fam, Exec::Sequential).unwrap();
        let f = |n: &str, d: &str| RatFunc::new(p(n), p(d)).unwrap();
        let alpha = [
            f("z1", "z0^2"),
            f("3", "z2"),
            f("-1", "z1"),
            f("z2", "z3^2"),
        ];
        let beta = [f("2", "z3"), f("z0", "z1*z2"), f("1/2", "z0"), f("5", "z1")];
        let shifted = g.gauge_shift(&alpha, &beta);
        for (a, b) in [(1, 2), (0, 3), (2, 3)] {
            assert_eq!(
                wronskian_from_christoffel(&g.chart(a, b)),
                wronskian_from_christoffel(&shifted.chart(a, b))
            );
        }
    }

    #[test]
    fn smoothness_examples() {
        let c = smoothness_criterion(5, [1, 1, 1, 2], None).unwrap();
        assert_eq!(c.relation(), "4*a^5 = -3125");
        assert_eq!(c.critical_power(), rat(-3125, 4));
        let zero = smoothness_criterion(5, [1, 1, 1, 2], Some(&rat_int(0))).unwrap();
        assert_eq!(zero.nonsingular, Some(true));
        let edge = smoothness_criterion(4, [1, 1, 1, 1], Some(&rat_int(-4))).unwrap();
        assert_eq!(edge.nonsingular, Some(false));
        let with_zero_part = smoothness_criterion(6, [2, 2, 2, 0], None).unwrap();
        assert_eq!(with_zero_part.lhs_coeff, BigInt::from(64));
        assert!(smoothness_criterion(6, [1, 1, 1, 1], None).is_err());
    }

    #[test]
    fn budget_examples() {
        let b = pole_budget(6).unwrap();
        assert_eq!((b.p, b.epsilon, b.t1.clone()), (4, 0, rat_int(1)));
        assert_eq!(b.bounds[0].parity_bound, rat(1, 3));
        assert_eq!(b.bounds[0].uniform_bound, rat(1, 4));
        let odd = pole_budget(7).unwrap();
        assert_eq!((odd.p, odd.epsilon), (5, 1));
        assert_eq!(odd.t1, rat(2, 3));
        for d in 6..40 {
            for e in pole_budget(d).unwrap().bounds {
                assert!(e.parity_bound >= e.uniform_bound);
            }
        }
        assert!(pole_budget(5).is_err());
    }

    #[test]
    fn h0_small_cases() {
        let h = |m, k| h0_sym_cotangent_p3(m, k, DEFAULT_H0_CAP, Exec::Sequential).unwrap();
        assert_eq!(h(1, 1), 0);
        assert_eq!(h(1, 2), 6);
        assert_eq!(h(0, 2), 10);
        assert_eq!(h(2, 3), 0);
        assert!(h(3, 6) > 0);
        assert_eq!(h(2, -3), 0);
        assert!(matches!(
            h0_sym_cotangent_p3(6, 14, 100, Exec::Sequential),
            Err(Error::Capacity { .. })
        ));
    }

    #[test]
    fn h0_strategies_agree() {
        for (m, k) in [(2, 5), (3, 7), (1, 4)] {
            assert_eq!(
                h0_sym_cotangent_p3(m, k, DEFAULT_H0_CAP, Exec::Sequential).unwrap(),
                h0_sym_cotangent_p3(m, k, DEFAULT_H0_CAP, Exec::Parallel).unwrap()
            );
        }
    }

    #[test]
    fn h0_matches_euler_sequence_for_one_forms() {
        // H^0(Omega(k)) = 4 C(k+2, 3) - C(k+3, 3) for k >= 1
        for k in 1..8i64 {
            let k = k as u64;
            let expected = 4 * binom(k + 2, 3) - binom(k + 3, 3);
            assert_eq!(
                h0_sym_cotangent_p3(1, k as i64, DEFAULT_H0_CAP, Exec::Sequential).unwrap(),
                expected
            );
        }
    }
}
