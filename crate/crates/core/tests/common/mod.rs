#![allow(dead_code)]

use nildegen::catalogue::AlgebraId;
use nildegen::fields::{extend_with_root, Fe, Field};

pub fn q() -> Field {
    Field::rationals()
}

pub fn gf(p: u64) -> Field {
    Field::prime(p).unwrap()
}

pub fn gf4() -> Field {
    let f2 = gf(2);
    extend_with_root(&f2, &[f2.one(), f2.one(), f2.one()], "w")
        .unwrap()
        .0
}

/// `ω² = −1` adjoined to the rationals.
pub fn q_omega() -> Field {
    let f = q();
    extend_with_root(&f, &[f.one(), f.zero(), f.one()], "w")
        .unwrap()
        .0
}

pub fn fixed_ids() -> Vec<AlgebraId> {
    vec![
        AlgebraId::A0,
        AlgebraId::C1,
        AlgebraId::L1,
        AlgebraId::C3,
        AlgebraId::C5,
    ]
}

pub fn table_ids(deltas: &[Fe]) -> Vec<AlgebraId> {
    let mut v = fixed_ids();
    v.extend(deltas.iter().cloned().map(AlgebraId::Adelta));
    v
}

pub fn gf49() -> Field {
    let f7 = gf(7);
    extend_with_root(&f7, &[f7.one(), f7.zero(), f7.one()], "w")
        .unwrap()
        .0
}

pub fn gf16() -> Field {
    let f2 = gf(2);
    extend_with_root(
        &f2,
        &[f2.one(), f2.one(), f2.zero(), f2.zero(), f2.one()],
        "w",
    )
    .unwrap()
    .0
}
