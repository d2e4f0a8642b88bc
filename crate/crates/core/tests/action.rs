mod common;

use nildegen::fields::Field;
use nildegen::structspace::{act_via_kronecker, Matrix3, StructureVector, TripleIndex};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn random_vector(f: &Field, rng: &mut ChaCha8Rng) -> StructureVector<nildegen::fields::Fe> {
    let mut v = StructureVector::zero(&f.zero());
    for t in TripleIndex::all() {
        v.set(t, f.random(rng));
    }
    v
}

fn check_laws(f: &Field, seed: u64) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let lam = random_vector(f, &mut rng);
    let g = Matrix3::random_invertible(f, &mut rng);
    let h = Matrix3::random_invertible(f, &mut rng);
    let lg = lam.act(&g).unwrap();
    assert_eq!(lg.act(&h).unwrap(), lam.act(&g.mul(&h)).unwrap());
    assert_eq!(act_via_kronecker(&lam, &g).unwrap(), lg);
    assert_eq!(lam.act(&Matrix3::identity(&f.one())).unwrap(), lam);
    assert_eq!(lam.act_cleared(&g), lg.scale(g.det()));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn right_action_over_gf7(seed in any::<u64>()) {
        check_laws(&common::gf(7), seed);
    }

    #[test]
    fn right_action_over_gf4(seed in any::<u64>()) {
        check_laws(&common::gf4(), seed);
    }
}

#[test]
fn scaling_multiplies_by_the_scalar() {
    let f = common::gf(7);
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let lam = random_vector(&f, &mut rng);
    let c = f.from_int(3);
    assert_eq!(lam.act(&Matrix3::scalar(&c)).unwrap(), lam.scale(&c));
}
