//! Plain-text edge lists.
//!
//! ```text
//! # comment
//! 0 1
//! 1 2
//! node 2 cap=1/2 demand=1
//! edge 0 1 cap=2
//! ```
//!
//! Node labels are arbitrary tokens, renumbered densely: ascending when
//! every label is an integer, otherwise in order of first appearance.
//! Repeated links are merged; self-loops are rejected.

use std::collections::BTreeMap;

use crate::error::{Result, VnxError};
use crate::graph::{format_weight, parse_weight, CapGraph, EdgeAttr, NodeAttr, NodeId, Weight};

#[derive(Default)]
struct PartialAttrs {
    cap: Option<Weight>,
    demand: Option<Weight>,
}

enum Line {
    Link(String, String),
    Node(String, PartialAttrs),
    Edge(String, String, PartialAttrs),
}

fn attrs(tokens: &[&str], line: usize) -> Result<PartialAttrs> {
    let mut out = PartialAttrs::default();
    for t in tokens {
        let (k, v) = t.split_once('=').ok_or_else(|| VnxError::Parse { line, msg: format!("expected key=value, got {t:?}") })?;
        let w = parse_weight(v).map_err(|msg| VnxError::Parse { line, msg })?;
        match k {
            "cap" => out.cap = Some(w),
            "demand" => out.demand = Some(w),
            _ => return Err(VnxError::Parse { line, msg: format!("unknown attribute {k:?}") }),
        }
    }
    Ok(out)
}

fn parse_line(raw: &str, line: usize) -> Result<Option<Line>> {
    let text = raw.split('#').next().unwrap_or("").trim();
    if text.is_empty() {
        return Ok(None);
    }
    let tokens: Vec<&str> = text.split_whitespace().collect();
    let bad = |msg: &str| VnxError::Parse { line, msg: format!("{msg}: {text:?}") };
    Ok(Some(match tokens[0] {
        "node" => {
            let id = tokens.get(1).ok_or_else(|| bad("node needs an id"))?;
            Line::Node(id.to_string(), attrs(&tokens[2..], line)?)
        }
        "edge" => {
            if tokens.len() < 3 {
                return Err(bad("edge needs two endpoints"));
            }
            Line::Edge(tokens[1].to_string(), tokens[2].to_string(), attrs(&tokens[3..], line)?)
        }
        _ => {
            if tokens.len() != 2 {
                return Err(bad("expected `u v`"));
            }
            Line::Link(tokens[0].to_string(), tokens[1].to_string())
        }
    }))
}

/// Parses an edge list, returning the graph and the original label of each
/// node.
pub fn parse_labelled(text: &str) -> Result<(CapGraph, Vec<String>)> {
    let mut lines = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        if let Some(l) = parse_line(raw, i + 1)? {
            lines.push((i + 1, l));
        }
    }
    let mut labels: Vec<String> = Vec::new();
    let mut seen = std::collections::HashSet::new();
    let mut note = |s: &String| {
        if seen.insert(s.clone()) {
            labels.push(s.clone());
        }
    };
    for (_, l) in &lines {
        match l {
            Line::Link(a, b) | Line::Edge(a, b, _) => {
                note(a);
                note(b);
            }
            Line::Node(a, _) => note(a),
        }
    }
    if labels.iter().all(|s| s.parse::<u64>().is_ok()) {
        labels.sort_by_key(|s| s.parse::<u64>().expect("checked numeric"));
    }
    let index: BTreeMap<&str, NodeId> = labels.iter().enumerate().map(|(i, s)| (s.as_str(), i)).collect();
    let mut g = CapGraph::new(labels.len());
    let link = |g: &mut CapGraph, a: &str, b: &str, line: usize| -> Result<(NodeId, NodeId)> {
        let (u, v) = (index[a], index[b]);
        if u == v {
            return Err(VnxError::Parse { line, msg: format!("self-loop at {a}") });
        }
        if !g.has_edge(u, v) {
            g.add_edge(u, v)?;
        }
        Ok((u, v))
    };
    for (line, l) in &lines {
        match l {
            Line::Link(a, b) => {
                link(&mut g, a, b, *line)?;
            }
            Line::Edge(a, b, p) => {
                let (u, v) = link(&mut g, a, b, *line)?;
                let old = g.edge(u, v).expect("just added").clone();
                g.set_edge_attr(u, v, EdgeAttr { cap: p.cap.unwrap_or(old.cap), demand: p.demand.unwrap_or(old.demand) })?;
            }
            Line::Node(a, p) => {
                let u = index[a.as_str()];
                let old = g.node(u).clone();
                g.set_node_attr(u, NodeAttr { cap: p.cap.unwrap_or(old.cap), demand: p.demand.unwrap_or(old.demand) })?;
            }
        }
    }
    g.validate()?;
    Ok((g, labels))
}

pub fn parse(text: &str) -> Result<CapGraph> {
    Ok(parse_labelled(text)?.0)
}

pub fn read(path: &std::path::Path) -> Result<CapGraph> {
    parse(&std::fs::read_to_string(path)?)
}

/// Writes `g` so that [`parse`] gives back the same graph, ids included.
pub fn format(g: &CapGraph) -> String {
    let mut out = String::new();
    let unit_node = NodeAttr::default();
    let unit_edge = EdgeAttr::default();
    let declare = |out: &mut String, v: NodeId| {
        let a = g.node(v);
        let mut line = format!("node {v}");
        if a.cap != unit_node.cap {
            line += &format!(" cap={}", format_weight(&a.cap));
        }
        if a.demand != unit_node.demand {
            line += &format!(" demand={}", format_weight(&a.demand));
        }
        out.push_str(&line);
        out.push('\n');
    };
    for v in g.nodes() {
        if g.degree(v) == 0 || *g.node(v) != unit_node || v + 1 == g.node_count() {
            declare(&mut out, v);
        }
    }
    for ((u, v), a) in g.edge_attrs() {
        if *a == unit_edge {
            out.push_str(&format!("{u} {v}\n"));
        } else {
            let mut line = format!("edge {u} {v}");
            if a.cap != unit_edge.cap {
                line += &format!(" cap={}", format_weight(&a.cap));
            }
            if a.demand != unit_edge.demand {
                line += &format!(" demand={}", format_weight(&a.demand));
            }
            out.push_str(&line);
            out.push('\n');
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::Ratio;

    #[test]
    fn comments_attributes_and_duplicates() {
        let g = parse("# ring\n0 1\n1 2 # inline\n2 0\n1 0\nnode 2 cap=1/2\nedge 0 1 cap=3\n").unwrap();
        assert_eq!((g.node_count(), g.edge_count()), (3, 3));
        assert_eq!(g.node(2).cap, Ratio::new(1, 2));
        assert_eq!(g.edge(0, 1).unwrap().cap, Ratio::from_integer(3));
    }

    #[test]
    fn sparse_and_symbolic_labels_are_renumbered() {
        let (g, labels) = parse_labelled("10 7\n7 30\n").unwrap();
        assert_eq!(labels, vec!["7", "10", "30"]);
        assert!(g.has_edge(0, 1) && g.has_edge(0, 2));
        let (_, labels) = parse_labelled("b a\na c\n").unwrap();
        assert_eq!(labels, vec!["b", "a", "c"]);
    }

    #[test]
    fn rejects_bad_lines() {
        assert!(matches!(parse("0 0\n"), Err(VnxError::Parse { line: 1, .. })));
        assert!(matches!(parse("0 1\n1\n"), Err(VnxError::Parse { line: 2, .. })));
        assert!(matches!(parse("node 1 colour=red\n"), Err(VnxError::Parse { .. })));
        assert!(matches!(parse("edge 0 1 cap=0\n"), Err(VnxError::InvalidGraph(_))));
    }

    #[test]
    fn isolated_nodes_survive_a_round_trip() {
        let mut g = CapGraph::from_edges(4, &[(0, 2)]);
        g.set_node_attr(3, NodeAttr { cap: Ratio::new(3, 2), demand: Ratio::from_integer(1) }).unwrap();
        assert_eq!(parse(&format(&g)).unwrap(), g);
    }
}
