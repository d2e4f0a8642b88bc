use nildegen::degeneration::CharClass;
use nildegen::hasse::{self, build_graph, emit, transitive_reduction, Format, Node};

const CASES: [(CharClass, &str); 2] = [(CharClass::NotTwo, "char0"), (CharClass::Two, "char2")];

fn golden(name: &str) -> String {
    let path = format!("{}/tests/golden/{name}", env!("CARGO_MANIFEST_DIR"));
    std::fs::read_to_string(path).unwrap()
}

#[test]
fn output_matches_golden_files() {
    for (class, tag) in CASES {
        let g =
            transitive_reduction(&build_graph(class, &class.base_field(), 10).unwrap()).unwrap();
        assert_eq!(emit(&g, Format::Dot), golden(&format!("hasse_{tag}.dot")));
        assert_eq!(emit(&g, Format::Json), golden(&format!("hasse_{tag}.json")));
    }
}

#[test]
fn json_output_parses_back() {
    for (class, _) in CASES {
        let g =
            transitive_reduction(&build_graph(class, &class.base_field(), 10).unwrap()).unwrap();
        let v: serde_json::Value = serde_json::from_str(&emit(&g, Format::Json)).unwrap();
        assert_eq!(v["char"], class.code());
        assert_eq!(
            v["edges"].as_array().unwrap().len(),
            hasse::expected_edges(class).len()
        );
        assert_eq!(v["nodes"].as_array().unwrap().len(), Node::all(class).len());
    }
    assert_eq!(Node::all(CharClass::NotTwo).len(), 7);
    assert_eq!(Node::all(CharClass::Two).len(), 6);
}

#[test]
fn dot_has_one_line_per_arrow() {
    let class = CharClass::NotTwo;
    let g = transitive_reduction(&build_graph(class, &class.base_field(), 10).unwrap()).unwrap();
    let text = emit(&g, Format::Dot);
    assert_eq!(text.lines().filter(|l| l.contains("->")).count(), 7);
    assert!(text
        .lines()
        .filter(|l| l.contains("->"))
        .all(|l| l.contains("witness=\"g(t)=")));
}

#[test]
fn every_field_of_each_case_gives_the_same_picture() {
    for (class, _) in CASES {
        for f in hasse::case_fields(class) {
            let g = build_graph(class, &f, 10).unwrap();
            assert_eq!(hasse::compare_expected(&g), Ok(()), "{f}");
            assert!(g.edges.values().all(|e| e.witness.is_some()));
        }
    }
}

#[test]
fn reduction_keeps_reachability() {
    for (class, _) in CASES {
        let full = build_graph(class, &class.base_field(), 10).unwrap();
        let red = transitive_reduction(&full).unwrap();
        for &n in &full.nodes {
            assert_eq!(full.reachable(n), red.reachable(n), "{n}");
        }
        assert_eq!(
            transitive_reduction(&red).unwrap().edge_set(),
            red.edge_set()
        );
        for &n in &full.nodes {
            if n != Node::A0 {
                assert!(full.reachable(n).contains(&Node::A0), "{n}");
            }
            assert!(!full.reachable(n).contains(&Node::C5), "{n}");
        }
    }
}

#[test]
fn composite_arrows_reduce_away() {
    let class = CharClass::NotTwo;
    let mut g = build_graph(class, &class.base_field(), 10).unwrap();
    g.insert_uncertified(Node::C5, Node::C1);
    assert_eq!(hasse::compare_expected(&g), Ok(()));
    let class = CharClass::Two;
    let g = build_graph(class, &class.base_field(), 10).unwrap();
    assert!(g.edge_set().contains(&(Node::C5, Node::L1)));
    assert!(!transitive_reduction(&g)
        .unwrap()
        .edge_set()
        .contains(&(Node::C5, Node::L1)));
}

#[test]
fn injected_edge_is_reported() {
    let class = CharClass::NotTwo;
    let mut g = build_graph(class, &class.base_field(), 10).unwrap();
    g.insert_uncertified(Node::L1, Node::C1);
    let m = hasse::compare_expected(&g).unwrap_err();
    assert!(m.surplus.contains(&(Node::L1, Node::C1)));
    assert!(m.to_string().contains("l1->c1"));
}

#[test]
fn mismatched_field_is_rejected() {
    let f2 = CharClass::Two.base_field();
    assert!(build_graph(CharClass::NotTwo, &f2, 3).is_err());
}
