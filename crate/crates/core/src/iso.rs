//! Exact isomorphism by backtracking with degree pruning. Intended for the
//! small graphs (tens of nodes) this crate works with.

use crate::graph::{CapGraph, NodeId};

/// True iff a weight-preserving isomorphism between `a` and `b` exists.
pub fn is_isomorphic(a: &CapGraph, b: &CapGraph) -> bool {
    find_isomorphism(a, b).is_some()
}

pub fn find_isomorphism(a: &CapGraph, b: &CapGraph) -> Option<Vec<NodeId>> {
    let ca = vec![0u32; a.node_count()];
    let cb = vec![0u32; b.node_count()];
    find_colored_isomorphism(a, &ca, b, &cb)
}

/// Isomorphism that also maps every node to a node of the same colour.
/// Returns `map` with `map[v_a] = v_b`.
pub fn find_colored_isomorphism(a: &CapGraph, color_a: &[u32], b: &CapGraph, color_b: &[u32]) -> Option<Vec<NodeId>> {
    if a.node_count() != b.node_count() || a.edge_count() != b.edge_count() {
        return None;
    }
    if a.degree_sequence() != b.degree_sequence() {
        return None;
    }
    let sig = |g: &CapGraph, c: &[u32], v: NodeId| (g.degree(v), c[v], g.node(v).clone());
    let mut sa: Vec<_> = a.nodes().map(|v| sig(a, color_a, v)).collect();
    let mut sb: Vec<_> = b.nodes().map(|v| sig(b, color_b, v)).collect();
    let key = |s: &(usize, u32, crate::graph::NodeAttr)| (s.0, s.1, s.2.cap, s.2.demand);
    sa.sort_by_key(key);
    sb.sort_by_key(key);
    if sa != sb {
        return None;
    }
    let mut ea: Vec<_> = a.edge_attrs().map(|(_, x)| (x.cap, x.demand)).collect();
    let mut eb: Vec<_> = b.edge_attrs().map(|(_, x)| (x.cap, x.demand)).collect();
    ea.sort();
    eb.sort();
    if ea != eb {
        return None;
    }

    let order = connectivity_order(a);
    let mut map = vec![usize::MAX; a.node_count()];
    let mut used = vec![false; b.node_count()];
    if extend(a, color_a, b, color_b, &order, 0, &mut map, &mut used) {
        Some(map)
    } else {
        None
    }
}

/// Nodes ordered so that each one (after the first of its component) has an
/// earlier neighbour, preferring high degree.
fn connectivity_order(g: &CapGraph) -> Vec<NodeId> {
    let n = g.node_count();
    let mut placed = vec![false; n];
    let mut links = vec![0usize; n];
    let mut order = Vec::with_capacity(n);
    for _ in 0..n {
        let next = (0..n)
            .filter(|&v| !placed[v])
            .max_by(|&x, &y| (links[x], g.degree(x), std::cmp::Reverse(x)).cmp(&(links[y], g.degree(y), std::cmp::Reverse(y))))
            .expect("unplaced node");
        placed[next] = true;
        order.push(next);
        for w in g.neighbors(next) {
            links[w] += 1;
        }
    }
    order
}

#[allow(clippy::too_many_arguments)]
fn extend(
    a: &CapGraph,
    color_a: &[u32],
    b: &CapGraph,
    color_b: &[u32],
    order: &[NodeId],
    depth: usize,
    map: &mut [NodeId],
    used: &mut [bool],
) -> bool {
    if depth == order.len() {
        return true;
    }
    let u = order[depth];
    for cand in b.nodes() {
        if used[cand]
            || color_a[u] != color_b[cand]
            || a.degree(u) != b.degree(cand)
            || a.node(u) != b.node(cand)
        {
            continue;
        }
        let consistent = order[..depth].iter().all(|&w| {
            let mw = map[w];
            match (a.edge(u, w), b.edge(cand, mw)) {
                (None, None) => true,
                (Some(x), Some(y)) => x == y,
                _ => false,
            }
        });
        if !consistent {
            continue;
        }
        map[u] = cand;
        used[cand] = true;
        if extend(a, color_a, b, color_b, order, depth + 1, map, used) {
            return true;
        }
        used[cand] = false;
        map[u] = usize::MAX;
    }
    false
}

/// All automorphisms, as permutations. Only for motif-sized graphs.
pub fn automorphisms(g: &CapGraph) -> Vec<Vec<NodeId>> {
    let order = connectivity_order(g);
    let mut out = Vec::new();
    let mut map = vec![usize::MAX; g.node_count()];
    let mut used = vec![false; g.node_count()];
    collect_all(g, &order, 0, &mut map, &mut used, &mut out);
    out
}

fn collect_all(g: &CapGraph, order: &[NodeId], depth: usize, map: &mut [NodeId], used: &mut [bool], out: &mut Vec<Vec<NodeId>>) {
    if depth == order.len() {
        out.push(map.to_vec());
        return;
    }
    let u = order[depth];
    for cand in g.nodes() {
        if used[cand] || g.degree(u) != g.degree(cand) || g.node(u) != g.node(cand) {
            continue;
        }
        let ok = order[..depth].iter().all(|&w| match (g.edge(u, w), g.edge(cand, map[w])) {
            (None, None) => true,
            (Some(x), Some(y)) => x == y,
            _ => false,
        });
        if ok {
            map[u] = cand;
            used[cand] = true;
            collect_all(g, order, depth + 1, map, used, out);
            used[cand] = false;
        }
    }
}
