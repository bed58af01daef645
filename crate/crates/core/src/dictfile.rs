//! Text serialization of dictionaries.
//!
//! ```text
//! [word 0] nodes=2 edges=0-1 in=0 out=1
//! [word 1] nodes=3 edges=0-1,0-2,1-2 in=0 out=1
//! [word 2] nodes=5 edges=0-1,0-2,1-2,1-3,1-4,3-4 in=0 out=4
//! part nodes=3 edges=0-1,0-2,1-2 in=0 out=1
//! part nodes=3 edges=0-1,0-2,1-2 in=0 out=2
//! [dag]
//! 0 0 1
//! 1 0 2
//! ```
//!
//! Words are numbered densely from 0, which must be the chain. A word with
//! `part` lines is the composition of those parts and its header must match
//! that composition. `[dag]` lines are `<from> <port> <to>`; ports are kept
//! exactly as written.

use std::collections::BTreeMap;

use crate::dictionary::{Atom, Dictionary, Word};
use crate::error::{Result, VnxError};
use crate::graph::{CapGraph, NodeId};
use crate::motif::Motif;

struct Shape {
    graph: CapGraph,
    in_point: NodeId,
    out_point: NodeId,
}

fn format_shape(g: &CapGraph, i: NodeId, o: NodeId) -> String {
    let edges: Vec<String> = g.edges().map(|(a, b)| format!("{a}-{b}")).collect();
    format!("nodes={} edges={} in={i} out={o}", g.node_count(), edges.join(","))
}

fn parse_shape(fields: &[&str], line: usize) -> Result<Shape> {
    let err = |msg: String| VnxError::Parse { line, msg };
    let mut kv = BTreeMap::new();
    for f in fields {
        let (k, v) = f.split_once('=').ok_or_else(|| err(format!("expected key=value, got {f:?}")))?;
        kv.insert(k, v);
    }
    let num = |k: &str| -> Result<usize> {
        kv.get(k).ok_or_else(|| err(format!("missing {k}=")))?.parse().map_err(|e| err(format!("{k}: {e}")))
    };
    let n = num("nodes")?;
    let mut graph = CapGraph::new(n);
    for e in kv.get("edges").copied().unwrap_or("").split(',').filter(|s| !s.is_empty()) {
        let (a, b) = e.split_once('-').ok_or_else(|| err(format!("bad edge {e:?}")))?;
        let a: NodeId = a.parse().map_err(|_| err(format!("bad edge {e:?}")))?;
        let b: NodeId = b.parse().map_err(|_| err(format!("bad edge {e:?}")))?;
        graph.add_edge(a, b).map_err(|x| err(x.to_string()))?;
    }
    let (in_point, out_point) = (num("in")?, num("out")?);
    if in_point >= n || out_point >= n || in_point == out_point {
        return Err(err("in and out must be distinct nodes of the word".into()));
    }
    if !graph.is_connected() {
        return Err(err("word graph must be connected".into()));
    }
    Ok(Shape { graph, in_point, out_point })
}

pub fn format(d: &Dictionary) -> String {
    let mut out = String::new();
    for (i, w) in d.words.iter().enumerate() {
        out += &format!("[word {i}] {}\n", format_shape(&w.graph, w.in_point, w.out_point));
        if w.parts.len() > 1 {
            for p in &w.parts {
                out += &format!("part {}\n", format_shape(&p.motif.graph, p.in_point, p.out_point));
            }
        }
    }
    out += "[dag]\n";
    for (a, port, b) in d.edges() {
        out += &format!("{a} {port} {b}\n");
    }
    out
}

struct Pending {
    line: usize,
    head: Shape,
    parts: Vec<Shape>,
}

fn finish_word(p: Pending) -> Result<Word> {
    let atom = |s: Shape| Atom::new(Motif::from_graph(s.graph), s.in_point, s.out_point);
    if p.parts.is_empty() {
        return Ok(Word::from_atom(atom(p.head)?));
    }
    let atoms = p.parts.into_iter().map(atom).collect::<Result<Vec<_>>>()?;
    let w = Word::compose(&atoms);
    if w.graph != p.head.graph || w.in_point != p.head.in_point || w.out_point != p.head.out_point {
        return Err(VnxError::Parse { line: p.line, msg: "word header does not match the composition of its parts".into() });
    }
    Ok(w)
}

pub fn parse(text: &str) -> Result<Dictionary> {
    let mut words = Vec::new();
    let mut pending: Option<Pending> = None;
    let mut ports: Vec<BTreeMap<usize, usize>> = Vec::new();
    let mut in_dag = false;
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let err = |msg: String| VnxError::Parse { line, msg };
        let text = raw.split('#').next().unwrap_or("").trim();
        if text.is_empty() {
            continue;
        }
        let fields: Vec<&str> = text.split_whitespace().collect();
        if text == "[dag]" {
            if let Some(p) = pending.take() {
                words.push(finish_word(p)?);
            }
            in_dag = true;
            ports = vec![BTreeMap::new(); words.len()];
        } else if in_dag {
            let nums: Vec<usize> = fields.iter().map(|f| f.parse()).collect::<std::result::Result<_, _>>().map_err(|_| err(format!("expected `from port to`, got {text:?}")))?;
            let [a, port, b] = nums[..] else { return Err(err(format!("expected `from port to`, got {text:?}"))) };
            if a >= words.len() || b >= words.len() {
                return Err(err(format!("edge {a}->{b} names an unknown word")));
            }
            if ports[a].insert(port, b).is_some() {
                return Err(err(format!("port {port} of word {a} given twice")));
            }
        } else if fields[0] == "[word" {
            let id = fields.get(1).and_then(|s| s.strip_suffix(']')).ok_or_else(|| err("expected `[word <id>]`".into()))?;
            let id: usize = id.parse().map_err(|_| err(format!("bad word id {id:?}")))?;
            if let Some(p) = pending.take() {
                words.push(finish_word(p)?);
            }
            if id != words.len() {
                return Err(err(format!("word ids must count up from 0, expected {}", words.len())));
            }
            pending = Some(Pending { line, head: parse_shape(&fields[2..], line)?, parts: Vec::new() });
        } else if fields[0] == "part" {
            let p = pending.as_mut().ok_or_else(|| err("part outside a word".into()))?;
            p.parts.push(parse_shape(&fields[1..], line)?);
        } else {
            return Err(err(format!("unexpected line {text:?}")));
        }
    }
    if !in_dag {
        return Err(VnxError::Parse { line: text.lines().count(), msg: "missing [dag] section".into() });
    }
    let mut children = Vec::with_capacity(words.len());
    for (a, p) in ports.into_iter().enumerate() {
        if p.keys().copied().ne(0..p.len()) {
            return Err(VnxError::Parse { line: 0, msg: format!("ports of word {a} must be 0..{}", p.len()) });
        }
        children.push(p.into_values().collect());
    }
    Dictionary::from_ports(words, children)
}

pub fn read(path: &std::path::Path) -> Result<Dictionary> {
    parse(&std::fs::read_to_string(path)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dictionary::{cactus_dictionary, clique_dictionary, five_motif_dictionary, tree_dictionary};

    #[test]
    fn builtins_round_trip() {
        for d in [tree_dictionary(), cactus_dictionary(), clique_dictionary(6), five_motif_dictionary()] {
            let text = format(&d);
            let back = parse(&text).unwrap();
            assert_eq!(back, d);
            assert_eq!(format(&back), text);
        }
    }

    #[test]
    fn composite_words_round_trip() {
        let y = || Atom::new(Motif::named("Y").unwrap(), 0, 1).unwrap();
        let words = vec![Word::chain(), Word::from_atom(y()), Word::compose(&[y(), y()])];
        let d = Dictionary::from_edges(words, vec![vec![1, 2], vec![], vec![]]).unwrap();
        let text = format(&d);
        assert!(text.contains("part nodes=3"));
        assert_eq!(parse(&text).unwrap(), d);
    }

    #[test]
    fn ports_are_kept_as_written() {
        let d = parse("[word 0] nodes=2 edges=0-1 in=0 out=1\n[word 1] nodes=3 edges=0-1,1-2,0-2 in=0 out=1\n[word 2] nodes=4 edges=0-1,1-2,2-3,3-0 in=0 out=2\n[dag]\n0 0 2\n0 1 1\n").unwrap();
        assert_eq!(d.children[0], vec![2, 1]);
    }

    #[test]
    fn rejects_malformed_files() {
        let w0 = "[word 0] nodes=2 edges=0-1 in=0 out=1\n";
        assert!(parse(w0).is_err());
        assert!(parse(&format!("{w0}[word 2] nodes=2 edges=0-1 in=0 out=1\n[dag]\n")).is_err());
        assert!(parse(&format!("{w0}[word 1] nodes=3 edges=0-1 in=0 out=1\n[dag]\n0 0 1\n")).is_err());
        assert!(parse(&format!("{w0}[dag]\n0 0 5\n")).is_err());
        assert!(parse(&format!("{w0}[word 1] nodes=3 edges=0-1,1-2,0-2 in=0 out=1\n[dag]\n0 1 1\n")).is_err());
        assert!(parse(&format!("{w0}[word 1] nodes=3 edges=0-1,1-2,0-2 in=0 out=0\n[dag]\n0 0 1\n")).is_err());
    }
}
