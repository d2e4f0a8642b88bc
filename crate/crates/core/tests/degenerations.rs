mod common;

use std::collections::{BTreeMap, BTreeSet};

use nildegen::catalogue::AlgebraId;
use nildegen::degeneration::{
    check_obstruction, degenerates, degenerates_in, verify_lemma_identities, CharClass,
    ObstructionTag,
};
use nildegen::fields::Field;
use nildegen::hasse::{self, Node};

fn node_of(id: &AlgebraId) -> Node {
    match id {
        AlgebraId::A0 => Node::A0,
        AlgebraId::C1 => Node::C1,
        AlgebraId::L1 => Node::L1,
        AlgebraId::C3 => Node::C3,
        AlgebraId::C5 => Node::C5,
        AlgebraId::Adelta(d)
            if d.field().characteristic() != 2 && *d == d.field().from_ratio(1, 4).unwrap() =>
        {
            Node::AQuarter
        }
        AlgebraId::Adelta(_) => Node::ADelta,
        other => panic!("{other} is not a table id"),
    }
}

/// Reflexive-transitive closure of the expected arrow set.
fn closure(class: CharClass) -> BTreeMap<Node, BTreeSet<Node>> {
    let arrows = hasse::expected_edges(class);
    Node::all(class)
        .into_iter()
        .map(|n| {
            let mut seen = BTreeSet::from([n]);
            let mut stack = vec![n];
            while let Some(u) = stack.pop() {
                for &(a, b) in &arrows {
                    if a == u && seen.insert(b) {
                        stack.push(b);
                    }
                }
            }
            (n, seen)
        })
        .collect()
}

fn ids_for(f: &Field) -> Vec<AlgebraId> {
    let mut deltas = hasse::sample_deltas(f, 10);
    if f.characteristic() != 2 {
        deltas.push(f.from_ratio(1, 4).unwrap());
    }
    common::table_ids(&deltas)
}

#[test]
fn relation_agrees_with_the_closure_of_the_pictures() {
    for class in [CharClass::NotTwo, CharClass::Two] {
        let reach = closure(class);
        for f in hasse::case_fields(class) {
            let ids = ids_for(&f);
            for s in &ids {
                for d in &ids {
                    let fact = degenerates_in(s, d, &f).unwrap();
                    let want = s == d
                        || (node_of(s) != node_of(d) && reach[&node_of(s)].contains(&node_of(d)));
                    assert_eq!(fact.holds(), want, "{s} -> {d} over {f}");
                    fact.reverify().unwrap();
                }
            }
        }
    }
}

#[test]
fn no_two_cycles() {
    for class in [CharClass::NotTwo, CharClass::Two] {
        let f = class.base_field();
        let ids = ids_for(&f);
        for (i, s) in ids.iter().enumerate() {
            for d in &ids[..i] {
                let there = degenerates_in(s, d, &f).unwrap().holds();
                let back = degenerates_in(d, s, &f).unwrap().holds();
                assert!(!(there && back), "{s} <-> {d}");
            }
        }
    }
}

#[test]
fn reflexive_pairs_use_the_identity() {
    let f = common::q();
    let fact = degenerates(&AlgebraId::C3, &AlgebraId::C3, CharClass::NotTwo).unwrap();
    assert!(fact.holds());
    assert_eq!(
        fact.curve().unwrap().to_strings(),
        nildegen::degeneration::Curve::identity(&f).to_strings()
    );
}

#[test]
fn transitive_yes_carries_its_chain() {
    let fact = degenerates(&AlgebraId::C5, &AlgebraId::C1, CharClass::NotTwo).unwrap();
    assert!(fact.holds());
    fact.reverify().unwrap();
    match &fact.evidence {
        nildegen::degeneration::Evidence::Witness { chain, .. } => {
            assert_eq!(chain, &vec![AlgebraId::C5, AlgebraId::C3, AlgebraId::C1]);
        }
        _ => unreachable!(),
    }
}

#[test]
fn obstruction_tags() {
    let q = common::q();
    let f2 = common::gf(2);
    let d = q.from_int(3);
    let tag = |s: &AlgebraId, t: &AlgebraId, c| check_obstruction(s, t, c).map(|o| o.tag);
    assert_eq!(
        tag(
            &AlgebraId::Adelta(d.clone()),
            &AlgebraId::C5,
            CharClass::NotTwo
        ),
        Some(ObstructionTag::NilpotencyClass)
    );
    assert_eq!(
        tag(&AlgebraId::C3, &AlgebraId::L1, CharClass::NotTwo),
        Some(ObstructionTag::Commutativity)
    );
    assert_eq!(
        tag(&AlgebraId::L1, &AlgebraId::C1, CharClass::NotTwo),
        Some(ObstructionTag::MStarStarClosure)
    );
    assert_eq!(
        tag(
            &AlgebraId::Adelta(d),
            &AlgebraId::Adelta(q.from_int(5)),
            CharClass::NotTwo
        ),
        Some(ObstructionTag::Lemma31)
    );
    let quarter = AlgebraId::Adelta(q.from_ratio(1, 4).unwrap());
    assert_eq!(
        tag(
            &quarter,
            &AlgebraId::Adelta(q.from_int(2)),
            CharClass::NotTwo
        ),
        Some(ObstructionTag::Lemma32)
    );
    let fact = degenerates(&AlgebraId::Adelta(f2.one()), &AlgebraId::C3, CharClass::Two).unwrap();
    assert!(!fact.holds());
    assert!(fact.obstruction().unwrap().tag.needs_lemma_gate());
}

#[test]
fn lemma_backed_facts_follow_a_clean_identity_run() {
    for f in [common::q(), common::gf(2)] {
        assert!(verify_lemma_identities(&f, None).all_passed());
    }
    assert!(nildegen::degeneration::lemma_gate_passed(CharClass::NotTwo));
    assert!(nildegen::degeneration::lemma_gate_passed(CharClass::Two));
}
