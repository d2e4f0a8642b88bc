mod common;

use nildegen::catalogue::{self, AlgebraId};
use nildegen::degeneration::{
    a3_two_to_l1, c3_to_l1_even, c3_to_mu, c5_to_c3_even, c5_to_c3_odd, known_witness, limit,
    swap13, verify_witness, CharClass, Curve, DegenError, WitnessFile,
};
use nildegen::fields::Field;
use nildegen::hasse;
use nildegen::structspace::StructureVector;

fn sv(f: &Field, s: &str) -> StructureVector<nildegen::fields::Fe> {
    StructureVector::parse(f, s).unwrap()
}

#[test]
fn c5_to_c3_in_odd_characteristic() {
    let f = common::q();
    let lam = catalogue::structure_of(&AlgebraId::C5, &f).unwrap();
    let r = verify_witness(&lam, &c5_to_c3_odd(&f), &AlgebraId::C3, true).unwrap();
    assert_eq!(r.limit, sv(&f, "123+213"));
    assert_eq!(r.identified, Some(AlgebraId::C3));
}

#[test]
fn c5_to_c3_in_characteristic_two() {
    let f = common::gf(2);
    let lam = sv(&f, "231+321+332");
    assert_eq!(
        catalogue::structure_of(&AlgebraId::C5, &f)
            .unwrap()
            .act(&swap13(&f))
            .unwrap(),
        lam
    );
    let r = verify_witness(&lam, &c5_to_c3_even(&f), &AlgebraId::C3, true).unwrap();
    assert_eq!(r.limit, sv(&f, "231+321+331"));
    assert_eq!(r.identified, Some(AlgebraId::C3));
}

#[test]
fn c3_to_l1_in_characteristic_two() {
    let f = common::gf(2);
    let mu = sv(&f, "231+321+331");
    assert_eq!(
        catalogue::structure_of(&AlgebraId::C3, &f)
            .unwrap()
            .act(&c3_to_mu(&f))
            .unwrap(),
        mu
    );
    let r = verify_witness(&mu, &c3_to_l1_even(&f), &AlgebraId::L1, false).unwrap();
    assert!(r.exact);
    assert_eq!(r.limit, sv(&f, "231+321"));
}

#[test]
fn c3_to_c1_by_scaling_e2() {
    for f in [common::q(), common::gf(2)] {
        let class = CharClass::of_field(&f);
        let c = known_witness(&AlgebraId::C3, &AlgebraId::C1, class).unwrap();
        assert_eq!(
            c.to_strings(),
            vec![
                vec!["1", "0", "0"],
                vec!["0", "t", "0"],
                vec!["0", "0", "1"]
            ]
        );
        let lam = catalogue::structure_of(&AlgebraId::C3, &f).unwrap();
        assert!(
            verify_witness(&lam, &c, &AlgebraId::C1, false)
                .unwrap()
                .exact
        );
    }
}

#[test]
fn family_to_c1_at_ten_parameters() {
    for f in [common::q(), common::gf16()] {
        let class = CharClass::of_field(&f);
        let deltas = hasse::sample_deltas(&f, 10);
        assert_eq!(deltas.len(), 10);
        for d in deltas {
            let id = AlgebraId::Adelta(d);
            let c = known_witness(&id, &AlgebraId::C1, class).unwrap();
            let lam = catalogue::structure_of(&id, &f).unwrap();
            assert!(
                verify_witness(&lam, &c, &AlgebraId::C1, false)
                    .unwrap()
                    .exact,
                "{id} over {f}"
            );
        }
    }
}

#[test]
fn quarter_to_l1() {
    let f = common::q();
    let a3 = catalogue::structure_of(&AlgebraId::A3kappa(f.from_int(2)), &f).unwrap();
    assert_eq!(limit(&a3, &a3_two_to_l1(&f)).unwrap(), sv(&f, "231-321"));
    let quarter = AlgebraId::Adelta(f.from_ratio(1, 4).unwrap());
    let c = known_witness(&quarter, &AlgebraId::L1, CharClass::NotTwo).unwrap();
    let lam = catalogue::structure_of(&quarter, &f).unwrap();
    assert!(
        verify_witness(&lam, &c, &AlgebraId::L1, false)
            .unwrap()
            .exact
    );
    for p in [5, 7, 11] {
        let fp = common::gf(p);
        let c = c.coerce(&fp).unwrap();
        let lam =
            catalogue::structure_of(&AlgebraId::Adelta(fp.from_ratio(1, 4).unwrap()), &fp).unwrap();
        assert!(
            verify_witness(&lam, &c, &AlgebraId::L1, false)
                .unwrap()
                .exact
        );
    }
}

#[test]
fn everything_scales_to_zero() {
    for f in [common::q(), common::gf(2)] {
        let deltas = hasse::sample_deltas(&f, 2);
        for id in common::table_ids(&deltas) {
            let lam = catalogue::structure_of(&id, &f).unwrap();
            let r = verify_witness(&lam, &Curve::scaling(&f), &AlgebraId::A0, false).unwrap();
            assert!(r.limit.is_zero());
        }
    }
}

#[test]
fn bad_curves_are_refuted() {
    let f = common::q();
    let c5 = catalogue::structure_of(&AlgebraId::C5, &f).unwrap();
    assert!(matches!(
        verify_witness(&c5, &c5_to_c3_odd(&f), &AlgebraId::C1, true),
        Err(DegenError::LimitMismatch { .. })
    ));
    let pole = Curve::parse(
        &f,
        &[
            vec!["1", "0", "0"],
            vec!["0", "1", "0"],
            vec!["0", "0", "t"],
        ],
    )
    .unwrap();
    assert!(matches!(
        verify_witness(&c5, &pole, &AlgebraId::A0, false),
        Err(DegenError::PoleAtZero(_))
    ));
    let singular = Curve::parse(
        &f,
        &[
            vec!["t", "0", "0"],
            vec!["t", "0", "0"],
            vec!["0", "0", "1"],
        ],
    );
    assert!(matches!(singular, Err(DegenError::SingularCurve)));
}

#[test]
fn witness_files_round_trip() {
    let f = common::q();
    let c = c5_to_c3_odd(&f);
    let w = WitnessFile::from_curve(&AlgebraId::C5, &AlgebraId::C3, 0, &c);
    let text = serde_json::to_string(&w).unwrap();
    assert!(text.contains("\"char\":0"));
    let back = WitnessFile::parse(&text).unwrap();
    let (src, dst, curve) = back.resolve().unwrap();
    assert_eq!((src, dst), (AlgebraId::C5, AlgebraId::C3));
    assert_eq!(curve.to_strings(), c.to_strings());
    assert!(WitnessFile::parse("{\"src\":\"c5\"}").is_err());
}

#[test]
fn family_to_c1_with_symbolic_parameter() {
    for base in [common::q(), common::gf(2)] {
        let fd = Field::rational_functions(&base, "d").unwrap();
        let id = AlgebraId::Adelta(fd.parse("d").unwrap());
        let c = known_witness(&id, &AlgebraId::C1, CharClass::of_field(&base)).unwrap();
        let c = c.coerce(&fd).unwrap();
        let lam = catalogue::structure_of(&id, &fd).unwrap();
        assert!(verify_witness(&lam, &c, &AlgebraId::C1, false).unwrap().exact);
    }
}
