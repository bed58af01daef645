//! Named small graphs used as motifs and dictionary building blocks.

use crate::generate::{clique, complete_bipartite, cycle};
use crate::graph::CapGraph;
use crate::iso::is_isomorphic;

/// K4 minus one edge.
pub fn diamond() -> CapGraph {
    CapGraph::from_edges(4, &[(0, 1), (0, 2), (1, 2), (0, 3), (1, 3)])
}

/// Hub joined to every node of a k-cycle.
pub fn wheel(k: usize) -> CapGraph {
    let mut g = cycle(k);
    let hub = g.add_node();
    for v in 0..k {
        g.add_edge(hub, v).expect("wheel spoke");
    }
    g
}

/// Two triangles joined by a perfect matching.
pub fn prism() -> CapGraph {
    CapGraph::from_edges(6, &[(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3), (0, 3), (1, 4), (2, 5)])
}

pub fn cube() -> CapGraph {
    CapGraph::from_edges(
        8,
        &[(0, 1), (1, 3), (3, 2), (2, 0), (4, 5), (5, 7), (7, 6), (6, 4), (0, 4), (1, 5), (2, 6), (3, 7)],
    )
}

/// Looks up a motif by its short name: `C`, `Y`, `D`, `B` (K2,3), `K<k>`,
/// `W<k>`, `K<a>,<b>`, `prism`, `cube`.
pub fn by_name(name: &str) -> Option<CapGraph> {
    match name {
        "C" => return Some(CapGraph::chain()),
        "Y" => return Some(clique(3)),
        "D" => return Some(diamond()),
        "B" => return Some(complete_bipartite(2, 3)),
        "prism" => return Some(prism()),
        "cube" => return Some(cube()),
        _ => {}
    }
    if let Some(rest) = name.strip_prefix('K') {
        if let Some((a, b)) = rest.split_once(',') {
            let (a, b) = (a.parse().ok()?, b.parse().ok()?);
            return (a >= 1 && b >= 1).then(|| complete_bipartite(a, b));
        }
        let k: usize = rest.parse().ok()?;
        return (k >= 2).then(|| clique(k));
    }
    if let Some(rest) = name.strip_prefix('W') {
        let k: usize = rest.parse().ok()?;
        return (k >= 3).then(|| wheel(k));
    }
    None
}

const KNOWN: &[&str] = &[
    "C", "Y", "D", "K4", "B", "W4", "K5", "prism", "K3,3", "W5", "K2,4", "K6", "W6", "cube", "K7", "K8",
];

/// Short name when `g` matches a catalogue entry, otherwise `M<n>.<m>`.
pub fn name_of(g: &CapGraph) -> String {
    for &name in KNOWN {
        let known = by_name(name).expect("catalogue entry");
        if is_isomorphic(&known, g) {
            return name.to_string();
        }
    }
    format!("M{}.{}", g.node_count(), g.edge_count())
}

/// The twelve small 2-connected motifs shipped as the default survey dictionary.
pub const SURVEY_MOTIFS: &[&str] = &["Y", "D", "K4", "B", "W4", "K5", "prism", "K3,3", "W5", "K2,4", "K6", "W6"];
