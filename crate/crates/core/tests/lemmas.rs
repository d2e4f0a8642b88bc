mod common;

use std::time::Instant;

use nildegen::degeneration::{verify_lemma_identities, LemmaInput, Mutation};
use nildegen::structspace::TripleIndex;

#[test]
fn identities_hold_in_both_cases() {
    for f in [
        common::q(),
        common::gf(2),
        common::gf(5),
        common::gf(7),
        common::gf4(),
    ] {
        let start = Instant::now();
        let r = verify_lemma_identities(&f, None);
        assert!(r.all_passed(), "{f}: {:?}", r.failures());
        assert!(r.checks.iter().all(|c| c.variables <= 10));
        assert!(start.elapsed().as_secs() < 10);
    }
    let names: Vec<_> = verify_lemma_identities(&common::gf(2), None)
        .checks
        .into_iter()
        .map(|c| c.name)
        .collect();
    for n in [
        "lemma-3.1 mu231",
        "lemma-3.1 lambda*b",
        "lemma-3.2 nu*b",
        "lemma-3.2 nu in O(rho)",
        "lemma-3.2 gamma=gamma' (char 2)",
    ] {
        assert!(names.iter().any(|x| x == n), "{n}");
    }
}

#[test]
fn every_input_coefficient_is_load_bearing() {
    let f = common::q();
    for input in [
        LemmaInput::SigmaXi,
        LemmaInput::SigmaBeta,
        LemmaInput::Nu,
        LemmaInput::Rho,
    ] {
        for triple in TripleIndex::all() {
            let m = Mutation::Input {
                input,
                triple,
                delta: 1,
            };
            assert!(
                !verify_lemma_identities(&f, Some(&m)).all_passed(),
                "{input:?} at {triple}"
            );
        }
    }
}

const VECTOR_CHECKS: [&str; 3] = [
    "lemma-3.1 lambda*b",
    "lemma-3.2 nu*b",
    "lemma-3.2 nu in O(rho)",
];

#[test]
fn every_formula_coefficient_is_load_bearing() {
    let f = common::gf(2);
    let clean = verify_lemma_identities(&f, None);
    for check in &clean.checks {
        let mut names = vec![check.name.clone()];
        if VECTOR_CHECKS.contains(&check.name.as_str()) {
            names.extend(
                TripleIndex::all().map(|t| format!("{}[{}{}{}]", check.name, t.i(), t.j(), t.k())),
            );
        }
        for name in names {
            let m = Mutation::Formula {
                name: name.clone(),
                delta: 1,
            };
            let r = verify_lemma_identities(&f, Some(&m));
            assert!(!r.check(&check.name).unwrap().passed, "{name}");
        }
    }
}
