//! The certified degeneration digraph of one characteristic case, its
//! transitive reduction, and DOT / JSON output.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::catalogue::AlgebraId;
use crate::degeneration::{self, CharClass, Curve, DegenError};
use crate::fields::{Fe, Field};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HasseError {
    #[error("field has characteristic {0}, which is not the {1} case")]
    CharMismatch(u64, CharClass),
    #[error("certification of {0} -> {1} failed: {2}")]
    Certification(String, String, String),
    #[error("family node {0} is not uniform: {1}")]
    NonUniform(String, String),
    #[error("cycle through {0}")]
    Cycle(String),
}

/// Vertices as the pictures draw them; the `a(δ)` family is one node, with
/// `δ = 1/4` split off when the characteristic is not 2.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Node {
    A0,
    C1,
    L1,
    C3,
    ADelta,
    AQuarter,
    C5,
}

impl Node {
    pub fn id(self) -> &'static str {
        match self {
            Node::A0 => "a0",
            Node::C1 => "c1",
            Node::L1 => "l1",
            Node::C3 => "c3",
            Node::ADelta => "a_delta",
            Node::AQuarter => "a_quarter",
            Node::C5 => "c5",
        }
    }

    pub fn label(self, class: CharClass) -> &'static str {
        match (self, class) {
            (Node::ADelta, CharClass::NotTwo) => "a(delta != 1/4)",
            (Node::ADelta, CharClass::Two) => "a(delta)",
            (Node::AQuarter, _) => "a(1/4)",
            (n, _) => n.id(),
        }
    }

    pub fn parse(s: &str) -> Option<Node> {
        [
            Node::A0,
            Node::C1,
            Node::L1,
            Node::C3,
            Node::ADelta,
            Node::AQuarter,
            Node::C5,
        ]
        .into_iter()
        .find(|n| n.id() == s)
    }

    pub fn all(class: CharClass) -> Vec<Node> {
        let mut v = vec![Node::A0, Node::C1, Node::L1, Node::C3, Node::ADelta];
        if class == CharClass::NotTwo {
            v.push(Node::AQuarter);
        }
        v.push(Node::C5);
        v
    }
}

impl fmt::Display for Node {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

#[derive(Debug, Clone)]
pub struct Edge {
    /// Representatives the certificate was produced for.
    pub src_rep: Option<AlgebraId>,
    pub dst_rep: Option<AlgebraId>,
    /// `None` only for edges inserted by hand.
    pub witness: Option<Curve>,
}

impl Edge {
    pub fn witness_id(&self) -> String {
        match &self.witness {
            Some(c) => format!("g(t)={c}"),
            None => "uncertified".into(),
        }
    }
}

#[derive(Debug, Clone)]
pub struct DegenerationGraph {
    pub class: CharClass,
    pub field: Field,
    pub nodes: Vec<Node>,
    pub edges: BTreeMap<(Node, Node), Edge>,
    /// `δ` values certified for the family node.
    pub deltas: Vec<Fe>,
}

/// `n` distinct `δ` values other than `1/4`, deterministic per field.
pub fn sample_deltas(field: &Field, n: usize) -> Vec<Fe> {
    let quarter = (field.characteristic() != 2).then(|| field.from_ratio(1, 4).unwrap());
    let ok = |d: &Fe| quarter.as_ref() != Some(d);
    let mut out: Vec<Fe> = Vec::new();
    if let Some(all) = field.elements() {
        out.extend(all.into_iter().filter(ok).take(n));
        return out;
    }
    // 0, 1, −1, 2, −2, 1/2, −1/2, 3, ... for infinite fields
    'outer: for size in 1i64.. {
        for num in 0..=size {
            for den in 1..=size {
                if num.max(den) != size && !(num == 0 && size == 1) {
                    continue;
                }
                for sign in [1, -1] {
                    if num == 0 && sign == -1 {
                        continue;
                    }
                    let d = field.from_ratio(sign * num, den).unwrap();
                    if ok(&d) && !out.contains(&d) {
                        out.push(d);
                        if out.len() == n {
                            break 'outer;
                        }
                    }
                }
            }
        }
    }
    out
}

fn representatives(node: Node, field: &Field, deltas: &[Fe]) -> Vec<AlgebraId> {
    match node {
        Node::A0 => vec![AlgebraId::A0],
        Node::C1 => vec![AlgebraId::C1],
        Node::L1 => vec![AlgebraId::L1],
        Node::C3 => vec![AlgebraId::C3],
        Node::C5 => vec![AlgebraId::C5],
        Node::ADelta => deltas.iter().cloned().map(AlgebraId::Adelta).collect(),
        Node::AQuarter => vec![AlgebraId::Adelta(field.from_ratio(1, 4).unwrap())],
    }
}

/// The base field of a case followed by the small fields it is
/// spot-checked over.
pub fn case_fields(class: CharClass) -> Vec<Field> {
    match class {
        CharClass::NotTwo => vec![
            Field::rationals(),
            Field::prime(5).unwrap(),
            Field::prime(7).unwrap(),
        ],
        CharClass::Two => {
            let f2 = Field::prime(2).unwrap();
            let gf4 = crate::fields::extend_with_root(&f2, &[f2.one(), f2.one(), f2.one()], "w")
                .unwrap()
                .0;
            vec![f2, gf4]
        }
    }
}

/// Decide every ordered pair of nodes over `field`, keeping the positive
/// facts as edges (the full relation, not yet reduced).
pub fn build_graph(
    class: CharClass,
    field: &Field,
    delta_samples: usize,
) -> Result<DegenerationGraph, HasseError> {
    if CharClass::of_field(field) != class {
        return Err(HasseError::CharMismatch(field.characteristic(), class));
    }
    let deltas = sample_deltas(field, delta_samples);
    let nodes = Node::all(class);
    let reps: BTreeMap<Node, Vec<AlgebraId>> = nodes
        .iter()
        .map(|&n| (n, representatives(n, field, &deltas)))
        .collect();
    let fail = |a: &AlgebraId, b: &AlgebraId, e: DegenError| {
        HasseError::Certification(a.to_string(), b.to_string(), e.to_string())
    };
    let mut edges = BTreeMap::new();
    for &u in &nodes {
        for &v in &nodes {
            let mut verdicts = Vec::new();
            for r in &reps[&u] {
                let mut hit = None;
                for s in &reps[&v] {
                    if r == s {
                        continue;
                    }
                    let fact =
                        degeneration::degenerates_in(r, s, field).map_err(|e| fail(r, s, e))?;
                    if fact.holds() {
                        hit.get_or_insert((s.clone(), fact.curve().cloned()));
                    }
                }
                verdicts.push((r.clone(), hit));
            }
            if u == v {
                // distinct members of one node never degenerate into each other
                if let Some((r, Some((s, _)))) = verdicts.iter().find(|(_, h)| h.is_some()) {
                    return Err(HasseError::NonUniform(u.to_string(), format!("{r} -> {s}")));
                }
                continue;
            }
            let yes = verdicts.iter().filter(|(_, h)| h.is_some()).count();
            if yes != 0 && yes != verdicts.len() {
                return Err(HasseError::NonUniform(
                    u.to_string(),
                    format!("only {yes} of {} reach {v}", verdicts.len()),
                ));
            }
            if let Some((r, Some((s, curve)))) = verdicts.into_iter().next() {
                if yes > 0 {
                    edges.insert(
                        (u, v),
                        Edge {
                            src_rep: Some(r),
                            dst_rep: Some(s),
                            witness: curve,
                        },
                    );
                }
            }
        }
    }
    Ok(DegenerationGraph {
        class,
        field: field.clone(),
        nodes,
        edges,
        deltas,
    })
}

impl DegenerationGraph {
    pub fn empty(class: CharClass) -> DegenerationGraph {
        DegenerationGraph {
            class,
            field: class.base_field(),
            nodes: Vec::new(),
            edges: BTreeMap::new(),
            deltas: Vec::new(),
        }
    }

    pub fn edge_set(&self) -> BTreeSet<(Node, Node)> {
        self.edges.keys().copied().collect()
    }

    /// An edge without a certificate, for exercising the comparison.
    pub fn insert_uncertified(&mut self, src: Node, dst: Node) {
        self.edges.insert(
            (src, dst),
            Edge {
                src_rep: None,
                dst_rep: None,
                witness: None,
            },
        );
    }

    fn successors(&self, u: Node) -> impl Iterator<Item = Node> + '_ {
        self.edges
            .keys()
            .filter(move |(a, _)| *a == u)
            .map(|(_, b)| *b)
    }

    /// All nodes reachable from `u` by a path of length at least one.
    pub fn reachable(&self, u: Node) -> BTreeSet<Node> {
        let mut seen = BTreeSet::new();
        let mut stack: Vec<Node> = self.successors(u).collect();
        while let Some(n) = stack.pop() {
            if seen.insert(n) {
                stack.extend(self.successors(n));
            }
        }
        seen
    }

    pub fn check_acyclic(&self) -> Result<(), HasseError> {
        for &n in self.edges.keys().map(|(a, _)| a) {
            if self.reachable(n).contains(&n) {
                return Err(HasseError::Cycle(n.to_string()));
            }
        }
        Ok(())
    }
}

/// The unique smallest edge set with the same reachability.
pub fn transitive_reduction(g: &DegenerationGraph) -> Result<DegenerationGraph, HasseError> {
    g.check_acyclic()?;
    let mut out = g.clone();
    out.edges.retain(|&(u, v), _| {
        !g.successors(u)
            .any(|w| w != v && (w == v || g.reachable(w).contains(&v)))
    });
    Ok(out)
}

#[derive(Serialize)]
struct JsonEdge<'a> {
    src: &'a str,
    dst: &'a str,
    witness: String,
}

#[derive(Serialize)]
struct JsonNode<'a> {
    id: &'a str,
    label: &'a str,
}

#[derive(Serialize)]
struct JsonGraph<'a> {
    #[serde(rename = "char")]
    characteristic: u64,
    field: String,
    nodes: Vec<JsonNode<'a>>,
    edges: Vec<JsonEdge<'a>>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Dot,
    Json,
}

impl std::str::FromStr for Format {
    type Err = String;

    fn from_str(s: &str) -> Result<Format, String> {
        match s {
            "dot" => Ok(Format::Dot),
            "json" => Ok(Format::Json),
            other => Err(format!("unknown format {other:?}")),
        }
    }
}

pub fn emit(g: &DegenerationGraph, format: Format) -> String {
    let code = g.class.code();
    match format {
        Format::Dot => {
            let mut s = format!("digraph degenerations_char{code} {{\n");
            if !g.nodes.is_empty() {
                s.push_str("  rankdir=TB;\n");
            }
            for n in &g.nodes {
                s.push_str(&format!("  {} [label=\"{}\"];\n", n.id(), n.label(g.class)));
            }
            for ((u, v), e) in &g.edges {
                s.push_str(&format!(
                    "  {} -> {} [witness=\"{}\"];\n",
                    u.id(),
                    v.id(),
                    e.witness_id()
                ));
            }
            s.push_str("}\n");
            s
        }
        Format::Json => {
            let doc = JsonGraph {
                characteristic: code,
                field: g.field.to_string(),
                nodes: g
                    .nodes
                    .iter()
                    .map(|n| JsonNode {
                        id: n.id(),
                        label: n.label(g.class),
                    })
                    .collect(),
                edges: g
                    .edges
                    .iter()
                    .map(|((u, v), e)| JsonEdge {
                        src: u.id(),
                        dst: v.id(),
                        witness: e.witness_id(),
                    })
                    .collect(),
            };
            let mut s = serde_json::to_string_pretty(&doc).expect("serializable");
            s.push('\n');
            s
        }
    }
}

/// The reduced arrows drawn for each characteristic case.
pub fn expected_edges(class: CharClass) -> BTreeSet<(Node, Node)> {
    use Node::*;
    let v: &[(Node, Node)] = match class {
        CharClass::NotTwo => &[
            (C5, C3),
            (C3, C1),
            (ADelta, C1),
            (AQuarter, C1),
            (AQuarter, L1),
            (L1, A0),
            (C1, A0),
        ],
        CharClass::Two => &[
            (C5, C3),
            (C3, L1),
            (C3, C1),
            (ADelta, C1),
            (C1, A0),
            (L1, A0),
        ],
    };
    v.iter().copied().collect()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Mismatch {
    pub surplus: Vec<(Node, Node)>,
    pub missing: Vec<(Node, Node)>,
}

impl fmt::Display for Mismatch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let show = |v: &[(Node, Node)]| {
            v.iter()
                .map(|(a, b)| format!("{a}->{b}"))
                .collect::<Vec<_>>()
                .join(", ")
        };
        write!(
            f,
            "surplus [{}], missing [{}]",
            show(&self.surplus),
            show(&self.missing)
        )
    }
}

/// Exact comparison of the reduced edge set against the expected arrows.
pub fn compare_expected(g: &DegenerationGraph) -> Result<(), Mismatch> {
    let reduced = transitive_reduction(g)
        .map(|r| r.edge_set())
        .unwrap_or_else(|_| g.edge_set());
    let want = expected_edges(g.class);
    let surplus: Vec<_> = reduced.difference(&want).copied().collect();
    let missing: Vec<_> = want.difference(&reduced).copied().collect();
    if surplus.is_empty() && missing.is_empty() {
        Ok(())
    } else {
        Err(Mismatch { surplus, missing })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn delta_samples_avoid_a_quarter() {
        let q = Field::rationals();
        let d = sample_deltas(&q, 10);
        assert_eq!(d.len(), 10);
        assert!(!d.contains(&q.from_ratio(1, 4).unwrap()));
        let set: BTreeSet<String> = d.iter().map(|x| x.to_string()).collect();
        assert_eq!(set.len(), 10);
        let f5 = Field::prime(5).unwrap();
        assert_eq!(sample_deltas(&f5, 10).len(), 4);
    }

    #[test]
    fn reduction_drops_composites() {
        let mut g = DegenerationGraph::empty(CharClass::NotTwo);
        for (a, b) in [
            (Node::C5, Node::C3),
            (Node::C3, Node::C1),
            (Node::C5, Node::C1),
            (Node::C1, Node::A0),
        ] {
            g.insert_uncertified(a, b);
        }
        let r = transitive_reduction(&g).unwrap();
        assert!(!r.edge_set().contains(&(Node::C5, Node::C1)));
        assert_eq!(r.edge_set().len(), 3);
        assert_eq!(transitive_reduction(&r).unwrap().edge_set(), r.edge_set());
        g.insert_uncertified(Node::A0, Node::C5);
        assert!(matches!(
            transitive_reduction(&g),
            Err(HasseError::Cycle(_))
        ));
    }

    #[test]
    fn both_pictures_reduce_to_the_expected_arrows() {
        for class in [CharClass::NotTwo, CharClass::Two] {
            for f in case_fields(class) {
                let g = build_graph(class, &f, 10).unwrap();
                assert_eq!(compare_expected(&g), Ok(()), "{f}");
            }
        }
    }

    #[test]
    fn empty_graph_is_header_only() {
        let g = DegenerationGraph::empty(CharClass::Two);
        assert_eq!(emit(&g, Format::Dot), "digraph degenerations_char2 {\n}\n");
    }
}
