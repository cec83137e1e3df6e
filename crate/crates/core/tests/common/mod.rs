#![allow(dead_code)]

use hypercert::chern_ring::{CohClass, SurfaceData};
use hypercert::polyalg::{rat, rat_int, Rat};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn small_rat(r: &mut impl Rng) -> Rat {
    rat(r.gen_range(-20..=20), r.gen_range(1..=6))
}

/// Rank-2 Picard lattice with a random symmetric form, random `c1` and `c2`.
pub fn random_surface(r: &mut impl Rng) -> SurfaceData {
    let (p, q, s) = (
        r.gen_range(-4..=6),
        r.gen_range(-3..=3),
        r.gen_range(-4..=6),
    );
    let form = vec![vec![rat_int(p), rat_int(q)], vec![rat_int(q), rat_int(s)]];
    let c1 = vec![rat_int(r.gen_range(-5..=5)), rat_int(r.gen_range(-5..=5))];
    let c1sq = &c1[0] * &c1[0] * &form[0][0]
        + rat_int(2) * &c1[0] * &c1[1] * &form[0][1]
        + &c1[1] * &c1[1] * &form[1][1];
    SurfaceData::new(
        c1sq,
        rat_int(r.gen_range(-50..=200)),
        vec!["e1".into(), "e2".into()],
        form,
        c1,
    )
    .expect("consistent by construction")
}

pub fn random_divisor(r: &mut impl Rng) -> CohClass {
    CohClass::divisor(vec![small_rat(r), small_rat(r)])
}

pub fn random_class(r: &mut impl Rng) -> CohClass {
    CohClass {
        h0: small_rat(r),
        h2: vec![small_rat(r), small_rat(r)],
        h4: small_rat(r),
    }
}
