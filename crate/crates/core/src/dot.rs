//! Graphviz output with node categories as attributes and colours.

use crate::edgelist;
use crate::error::{Result, VnxError};
use crate::graph::{format_weight, CapGraph, EdgeAttr, NodeAttr};
use crate::motif::{classify, NodeCategory};

fn colour(c: NodeCategory) -> &'static str {
    match c {
        NodeCategory::TreeFringe => "yellow",
        NodeCategory::Degree2InMotif => "green",
        NodeCategory::LargestMotif => "red",
        NodeCategory::Other => "lightgrey",
    }
}

/// DOT text for `g`; every node carries its category, computed by
/// [`classify`] unless given.
pub fn emit_dot(g: &CapGraph, categories: Option<&[NodeCategory]>) -> String {
    let owned;
    let cats = match categories {
        Some(c) => c,
        None => {
            owned = classify(g);
            &owned
        }
    };
    let mut out = String::from("graph H {\n  node [style=filled];\n");
    for v in g.nodes() {
        let c = cats[v];
        let mut attrs = format!("category=\"{}\", fillcolor={}", c.as_str(), colour(c));
        let a = g.node(v);
        if *a != NodeAttr::default() {
            attrs += &format!(", cap=\"{}\", demand=\"{}\"", format_weight(&a.cap), format_weight(&a.demand));
        }
        out.push_str(&format!("  {v} [{attrs}];\n"));
    }
    for ((u, v), a) in g.edge_attrs() {
        if *a == EdgeAttr::default() {
            out.push_str(&format!("  {u} -- {v};\n"));
        } else {
            out.push_str(&format!("  {u} -- {v} [cap=\"{}\", demand=\"{}\"];\n", format_weight(&a.cap), format_weight(&a.demand)));
        }
    }
    out.push_str("}\n");
    out
}

fn weights(attrs: &str) -> String {
    let mut out = String::new();
    for part in attrs.split(',') {
        if let Some((k, v)) = part.split_once('=') {
            let k = k.trim();
            if k == "cap" || k == "demand" {
                out += &format!(" {k}={}", v.trim().trim_matches('"'));
            }
        }
    }
    out
}

/// Reads back what [`emit_dot`] writes by translating it to an edge list.
/// Categories are dropped; capacities and demands are kept.
pub fn parse_dot(text: &str) -> Result<CapGraph> {
    let mut list = String::new();
    let mut body = false;
    for (i, raw) in text.lines().enumerate() {
        let line = raw.trim().trim_end_matches(';');
        let bad = || VnxError::Parse { line: i + 1, msg: format!("unexpected DOT line {raw:?}") };
        if !body {
            if line.ends_with('{') {
                body = true;
                continue;
            }
            return Err(bad());
        }
        if line.is_empty() || line.starts_with("node ") || line.starts_with("node[") || line.starts_with("//") {
            continue;
        }
        if line == "}" {
            return edgelist::parse(&list);
        }
        let (head, attrs) = match line.split_once('[') {
            Some((h, a)) => (h.trim(), a.trim_end_matches(']')),
            None => (line, ""),
        };
        let w = weights(attrs);
        match head.split_once("--") {
            Some((u, v)) => list += &format!("edge {} {}{w}\n", u.trim(), v.trim()),
            None if !head.contains(char::is_whitespace) => list += &format!("node {head}{w}\n"),
            None => return Err(bad()),
        }
    }
    Err(VnxError::Parse { line: text.lines().count(), msg: "missing closing brace".into() })
}
