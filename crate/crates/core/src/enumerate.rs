//! Every simple graph on a few nodes, one representative per isomorphism class.

use std::collections::HashMap;

use crate::graph::CapGraph;
use crate::iso::is_isomorphic;

/// Cheap isomorphism invariant: sorted (degree, sorted neighbour degrees).
fn invariant(g: &CapGraph) -> Vec<(usize, Vec<usize>)> {
    let mut inv: Vec<(usize, Vec<usize>)> = g
        .nodes()
        .map(|v| {
            let mut nd: Vec<usize> = g.neighbors(v).map(|w| g.degree(w)).collect();
            nd.sort_unstable();
            (g.degree(v), nd)
        })
        .collect();
    inv.sort();
    inv
}

/// All graphs on exactly `n` nodes up to isomorphism, in order of edge count.
/// Practical up to `n = 7`.
pub fn graphs_on(n: usize) -> Vec<CapGraph> {
    assert!(n <= 7, "enumeration is exponential in n");
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
    let mut buckets: HashMap<Vec<(usize, Vec<usize>)>, Vec<usize>> = HashMap::new();
    let mut out: Vec<CapGraph> = Vec::new();
    let mut masks: Vec<u32> = (0..1u32 << pairs.len()).collect();
    masks.sort_by_key(|m| (m.count_ones(), *m));
    for mask in masks {
        let edges: Vec<(usize, usize)> =
            pairs.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &e)| e).collect();
        let g = CapGraph::from_edges(n, &edges);
        let bucket = buckets.entry(invariant(&g)).or_default();
        if bucket.iter().any(|&i| is_isomorphic(&out[i], &g)) {
            continue;
        }
        bucket.push(out.len());
        out.push(g);
    }
    out
}

pub fn connected_graphs_on(n: usize) -> Vec<CapGraph> {
    graphs_on(n).into_iter().filter(CapGraph::is_connected).collect()
}

/// All graphs with `1..=max_n` nodes.
pub fn graphs_up_to(max_n: usize) -> Vec<CapGraph> {
    (1..=max_n).flat_map(graphs_on).collect()
}

pub fn connected_graphs_up_to(max_n: usize) -> Vec<CapGraph> {
    (1..=max_n).flat_map(connected_graphs_on).collect()
}
