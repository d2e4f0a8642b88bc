mod common;

use nildegen::catalogue::{
    a2_to_a0delta_matrix, c3_to_chat3_matrix, canonicalize, chain_matrix, g_alpha, g_kappa,
    iso_witness, lemma_h_inverse_matrix, structure_of, AlgebraId, CharConstraint, IsoWitness,
};
use nildegen::fields::Field;
use nildegen::ring::{FieldLike, Ring};

fn function_field(base: &Field, var: &str) -> (Field, nildegen::fields::Fe) {
    let f = Field::rational_functions(base, var).unwrap();
    let x = f.parse(var).unwrap();
    (f, x)
}

#[test]
fn h_beta_to_h_inverse_beta_symbolically() {
    for base in [common::q(), common::gf(2)] {
        let (f, beta) = function_field(&base, "b");
        let inv = beta.inv().unwrap();
        let w = IsoWitness::new(
            AlgebraId::Hbeta(beta.clone()),
            AlgebraId::Hbeta(inv.clone()),
            lemma_h_inverse_matrix(&beta),
            CharConstraint::Any,
            "h-inverse",
        )
        .unwrap();
        assert_eq!(w.dst(), &AlgebraId::Hbeta(inv.clone()));
        let via = iso_witness(&AlgebraId::Hbeta(beta), &AlgebraId::Hbeta(inv), &f).unwrap();
        assert_eq!(via.matrix(), w.matrix());
    }
}

#[test]
fn g_alpha_symbolically() {
    let (_, alpha) = function_field(&common::q(), "a");
    // α² + κα + 1 = 0
    let kappa = alpha
        .mul(&alpha)
        .add(&alpha.field().one())
        .div(&alpha)
        .unwrap()
        .neg();
    let beta = alpha.mul(&alpha).neg();
    let w = IsoWitness::new(
        AlgebraId::A3kappa(kappa),
        AlgebraId::Hbeta(beta),
        g_alpha(&alpha).unwrap(),
        CharConstraint::Not2,
        "g-alpha",
    );
    assert!(w.is_ok(), "{:?}", w.err());
}

#[test]
fn g_kappa_symbolically() {
    for base in [common::q(), common::gf(2)] {
        let (_, kappa) = function_field(&base, "k");
        let delta = kappa.mul(&kappa).inv().unwrap();
        IsoWitness::new(
            AlgebraId::Adelta(delta),
            AlgebraId::A3kappa(kappa.clone()),
            g_kappa(&kappa),
            CharConstraint::Any,
            "g-kappa",
        )
        .unwrap();
    }
}

#[test]
fn wrong_matrix_is_rejected() {
    let (_, kappa) = function_field(&common::q(), "k");
    let delta = kappa.mul(&kappa).inv().unwrap();
    let bad = g_kappa(&kappa.add(&kappa.field().one()));
    assert!(IsoWitness::new(
        AlgebraId::Adelta(delta),
        AlgebraId::A3kappa(kappa),
        bad,
        CharConstraint::Any,
        "g-kappa"
    )
    .is_err());
}

#[test]
fn c3_and_chat3_over_gf5_and_q_omega() {
    let f5 = common::gf(5);
    let qw = common::q_omega();
    for (f, omega) in [
        (f5.clone(), f5.from_int(2)),
        (qw.clone(), qw.generator().unwrap()),
    ] {
        assert_eq!(omega.mul(&omega), f.from_int(-1));
        IsoWitness::new(
            AlgebraId::C3,
            AlgebraId::Chat3,
            c3_to_chat3_matrix(&omega),
            CharConstraint::Not2,
            "c3-chat3",
        )
        .unwrap();
        IsoWitness::new(
            AlgebraId::A2,
            AlgebraId::Adelta(f.zero()),
            a2_to_a0delta_matrix(&f),
            CharConstraint::Any,
            "a2",
        )
        .unwrap();
        assert!(iso_witness(&AlgebraId::C3, &AlgebraId::Chat3, &f).is_ok());
    }
}

#[test]
fn canonical_representatives() {
    let qw = common::q_omega();
    for (id, want) in [
        (AlgebraId::Hbeta(qw.one()), AlgebraId::C3),
        (AlgebraId::Hbeta(qw.from_int(-1)), AlgebraId::L1),
        (AlgebraId::Hbeta(qw.zero()), AlgebraId::Adelta(qw.zero())),
        (AlgebraId::Chat3, AlgebraId::C3),
        (AlgebraId::A2, AlgebraId::Adelta(qw.zero())),
    ] {
        let c = canonicalize(&id, &qw).unwrap();
        assert_eq!(c.id, want.coerce(&c.field).unwrap(), "{id}");
        let start = structure_of(&id.coerce(&c.field).unwrap(), &c.field).unwrap();
        assert_eq!(
            start.act(&chain_matrix(&c.chain, &c.field)).unwrap(),
            structure_of(&c.id, &c.field).unwrap()
        );
    }
}
