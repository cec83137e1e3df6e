use hypercert::polyalg::{
    det_fraction_free, gcd_mpoly, parse_mpoly, rank_rat, rat, rat_int, solve_linear, MPoly, Rat,
    RatFunc,
};
use hypercert::Exec;
use proptest::prelude::*;

const VARS: [&str; 3] = ["x", "y", "z"];

fn mpoly() -> impl Strategy<Value = MPoly> {
    prop::collection::vec(((0u32..3, 0u32..3, 0u32..3), -5i64..=5), 0..5).prop_map(|terms| {
        MPoly::from_terms(
            &VARS,
            terms
                .into_iter()
                .map(|((a, b, c), k)| (vec![a, b, c], rat_int(k))),
        )
    })
}

fn nonzero_mpoly() -> impl Strategy<Value = MPoly> {
    mpoly().prop_filter("nonzero", |p| !p.is_zero())
}

fn small_rat() -> impl Strategy<Value = Rat> {
    (-9i64..=9, 1i64..=4).prop_map(|(n, d)| rat(n, d))
}

fn cofactor_det(m: &[Vec<Rat>]) -> Rat {
    let n = m.len();
    if n == 0 {
        return rat_int(1);
    }
    (0..n)
        .map(|j| {
            let minor: Vec<Vec<Rat>> = m[1..]
                .iter()
                .map(|row| {
                    row.iter()
                        .enumerate()
                        .filter(|(c, _)| *c != j)
                        .map(|(_, x)| x.clone())
                        .collect()
                })
                .collect();
            let sign = if j % 2 == 0 { rat_int(1) } else { rat_int(-1) };
            sign * &m[0][j] * cofactor_det(&minor)
        })
        .fold(rat_int(0), |a, b| a + b)
}

fn cofactor_det_poly(m: &[Vec<MPoly>]) -> MPoly {
    let n = m.len();
    if n == 0 {
        return MPoly::one();
    }
    (0..n)
        .map(|j| {
            let minor: Vec<Vec<MPoly>> = m[1..]
                .iter()
                .map(|row| {
                    row.iter()
                        .enumerate()
                        .filter(|(c, _)| *c != j)
                        .map(|(_, x)| x.clone())
                        .collect()
                })
                .collect();
            let t = &m[0][j] * &cofactor_det_poly(&minor);
            if j % 2 == 0 {
                t
            } else {
                -t
            }
        })
        .fold(MPoly::zero(), |a, b| a + b)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn ring_axioms(a in mpoly(), b in mpoly(), c in mpoly()) {
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert!((&a - &a).is_zero());
    }

    #[test]
    fn display_parse_round_trip(a in mpoly()) {
        let back = parse_mpoly(&a.to_string(), &VARS).unwrap();
        prop_assert_eq!(back, a);
    }

    #[test]
    fn bareiss_matches_cofactor_rational(n in 1usize..=4, seed in prop::collection::vec(small_rat(), 16)) {
        let m: Vec<Vec<Rat>> = (0..n).map(|i| (0..n).map(|j| seed[i * 4 + j].clone()).collect()).collect();
        prop_assert_eq!(det_fraction_free(&m).unwrap(), cofactor_det(&m));
    }

    #[test]
    fn bareiss_matches_cofactor_polynomial(n in 1usize..=3, seed in prop::collection::vec(mpoly(), 9)) {
        let m: Vec<Vec<MPoly>> = (0..n).map(|i| (0..n).map(|j| seed[i * 3 + j].clone()).collect()).collect();
        prop_assert_eq!(det_fraction_free(&m).unwrap(), cofactor_det_poly(&m));
    }

    #[test]
    fn solve_satisfies_system(seed in prop::collection::vec(mpoly(), 12)) {
        let a: Vec<Vec<MPoly>> = (0..3).map(|i| (0..3).map(|j| seed[i * 3 + j].clone()).collect()).collect();
        let b: Vec<MPoly> = seed[9..].to_vec();
        prop_assume!(!det_fraction_free(&a).unwrap().is_zero());
        let det = det_fraction_free(&a).unwrap();
        let x = solve_linear(&a, &b, Exec::Parallel).unwrap();
        // clear denominators: x_j = n_j / d_j with d_j | det
        let cleared: Vec<MPoly> = x
            .iter()
            .map(|xj| xj.num() * &det.div_exact(xj.den()).expect("denominator divides det"))
            .collect();
        for (row, bi) in a.iter().zip(&b) {
            let lhs = row.iter().zip(&cleared).fold(MPoly::zero(), |s, (aij, cj)| s + aij * cj);
            prop_assert_eq!(lhs, bi * &det);
        }
    }

    #[test]
    fn gcd_divides_and_cofactors_coprime(f in nonzero_mpoly(), a in nonzero_mpoly(), b in nonzero_mpoly()) {
        let p = &f * &a;
        let q = &f * &b;
        let g = gcd_mpoly(&p, &q);
        let pa = p.div_exact(&g);
        let qb = q.div_exact(&g);
        prop_assert!(pa.is_some() && qb.is_some());
        prop_assert!(g.div_exact(&f).is_some(), "common factor lost");
        prop_assert!(gcd_mpoly(&pa.unwrap(), &qb.unwrap()).is_constant());
    }

    #[test]
    fn canonical_fractions_coincide(n in nonzero_mpoly(), d in nonzero_mpoly(), f in nonzero_mpoly(), c in small_rat()) {
        prop_assume!(c != rat_int(0));
        let r1 = RatFunc::new(n.clone(), d.clone()).unwrap();
        let r2 = RatFunc::new((&n * &f).scale(&c), (&d * &f).scale(&c)).unwrap();
        prop_assert_eq!(r1.num().to_string(), r2.num().to_string());
        prop_assert_eq!(r1.den().to_string(), r2.den().to_string());
    }
}

#[test]
fn rank_of_product_is_bounded() {
    let a: Vec<Vec<Rat>> = vec![vec![rat_int(1)], vec![rat_int(2)], vec![rat_int(3)]];
    let b: Vec<Vec<Rat>> = vec![vec![rat_int(4), rat_int(5), rat_int(6)]];
    let prod: Vec<Vec<Rat>> = a
        .iter()
        .map(|r| (0..3).map(|j| &r[0] * &b[0][j]).collect())
        .collect();
    assert_eq!(rank_rat(&prod), 1);
}
