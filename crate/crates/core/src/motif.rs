//! Motif extraction, the three composition rules and topology dissection.

use std::collections::BTreeSet;

use crate::blocks::decompose;
use crate::catalog;
use crate::error::{Result, VnxError};
use crate::graph::{CapGraph, Edge, NodeId};
use crate::iso::is_isomorphic;

/// A building block of a graph family: the chain C, or a contracted block.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Motif {
    pub graph: CapGraph,
    pub is_chain: bool,
    pub name: String,
}

impl Motif {
    pub fn chain() -> Self {
        Self { graph: CapGraph::chain(), is_chain: true, name: "C".into() }
    }

    pub fn from_graph(graph: CapGraph) -> Self {
        let is_chain = graph.node_count() == 2 && graph.edge_count() == 1;
        let name = catalog::name_of(&graph);
        Self { graph, is_chain, name }
    }

    pub fn named(name: &str) -> Option<Self> {
        catalog::by_name(name).map(Self::from_graph)
    }
}

/// Motifs of a graph or family, pairwise non-isomorphic.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct MotifSet {
    pub motifs: Vec<Motif>,
}

impl MotifSet {
    /// Adds `m` unless an isomorphic motif is already present.
    pub fn insert(&mut self, m: Motif) -> bool {
        if self.motifs.iter().any(|x| is_isomorphic(&x.graph, &m.graph)) {
            return false;
        }
        self.motifs.push(m);
        true
    }

    pub fn contains(&self, g: &CapGraph) -> bool {
        self.motifs.iter().any(|x| is_isomorphic(&x.graph, g))
    }

    pub fn has_chain(&self) -> bool {
        self.motifs.iter().any(|m| m.is_chain)
    }

    pub fn names(&self) -> Vec<String> {
        self.motifs.iter().map(|m| m.name.clone()).collect()
    }

    pub fn len(&self) -> usize {
        self.motifs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.motifs.is_empty()
    }

    pub fn union(&mut self, other: &MotifSet) {
        for m in &other.motifs {
            self.insert(m.clone());
        }
    }
}

/// Result of contracting one block: the motif and which original nodes survived.
#[derive(Debug, Clone)]
pub struct Contraction {
    pub motif: CapGraph,
    pub survivors: Vec<NodeId>,
}

/// Repeatedly removes degree-2 nodes of a 2-connected graph, merging their
/// two links, as long as no parallel link would appear. Cycles end as triangles.
pub fn contract(block: &CapGraph) -> Contraction {
    let mut g = block.clone();
    let mut alive = vec![true; g.node_count()];
    loop {
        let mut changed = false;
        for w in g.nodes() {
            if !alive[w] || g.degree(w) != 2 {
                continue;
            }
            let nb: Vec<NodeId> = g.neighbors(w).collect();
            let (a, b) = (nb[0], nb[1]);
            if g.has_edge(a, b) {
                continue;
            }
            g.remove_edge(w, a).expect("edge present");
            g.remove_edge(w, b).expect("edge present");
            g.add_edge(a, b).expect("fresh edge");
            alive[w] = false;
            changed = true;
        }
        if !changed {
            break;
        }
    }
    let survivors: Vec<NodeId> = g.nodes().filter(|&v| alive[v]).collect();
    Contraction { motif: g.induced(&survivors), survivors }
}

/// Motif set of a single connected graph.
pub fn extract_motifs(h: &CapGraph) -> MotifSet {
    let dec = decompose(h);
    let mut set = MotifSet::default();
    if !dec.bridges.is_empty() {
        set.insert(Motif::chain());
    }
    for block in dec.biconnected() {
        let c = contract(&h.induced(block));
        set.insert(Motif::from_graph(unit_weights(&c.motif)));
    }
    set
}

fn unit_weights(g: &CapGraph) -> CapGraph {
    let edges: Vec<Edge> = g.edges().collect();
    CapGraph::from_edges(g.node_count(), &edges)
}

/// Rule 1: a fresh copy of the motif.
pub fn new_motif(m: &Motif) -> CapGraph {
    m.graph.clone()
}

/// Rule 2: the link `e` becomes two links through a new node, which gets the
/// highest id. The new links inherit `e`'s weights.
pub fn insert_node(g: &CapGraph, e: Edge) -> Result<CapGraph> {
    let (u, v) = e;
    let mut out = g.clone();
    let attr = out.remove_edge(u, v).map_err(|_| VnxError::UnknownEdge(u, v))?;
    let w = out.add_node();
    out.add_edge_with(u, w, attr.clone())?;
    out.add_edge_with(w, v, attr)?;
    Ok(out)
}

/// Rule 3: glue `g2` onto `g1` by identifying `v2` with `v1`. Nodes of `g1`
/// keep their ids; the other nodes of `g2` follow in their original order.
pub fn merge(g1: &CapGraph, v1: NodeId, g2: &CapGraph, v2: NodeId) -> Result<CapGraph> {
    Ok(merge_mapped(g1, v1, g2, v2)?.0)
}

/// Like [`merge`], also returning where each node of `g2` ended up.
pub fn merge_mapped(g1: &CapGraph, v1: NodeId, g2: &CapGraph, v2: NodeId) -> Result<(CapGraph, Vec<NodeId>)> {
    if !g1.has_node(v1) {
        return Err(VnxError::UnknownNode(v1));
    }
    if !g2.has_node(v2) {
        return Err(VnxError::UnknownNode(v2));
    }
    let mut out = g1.clone();
    let mut map = vec![usize::MAX; g2.node_count()];
    map[v2] = v1;
    for v in g2.nodes() {
        if v != v2 {
            map[v] = out.add_node_with(g2.node(v).clone());
        }
    }
    for ((a, b), attr) in g2.edge_attrs() {
        out.add_edge_with(map[a], map[b], attr.clone())?;
    }
    Ok((out, map))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum NodeCategory {
    LargestMotif,
    Degree2InMotif,
    TreeFringe,
    Other,
}

impl NodeCategory {
    pub fn as_str(self) -> &'static str {
        match self {
            Self::LargestMotif => "largest_motif",
            Self::Degree2InMotif => "degree2",
            Self::TreeFringe => "tree_fringe",
            Self::Other => "other",
        }
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct DissectionStats {
    pub n: usize,
    pub tree_fringe: usize,
    pub degree2_in_motifs: usize,
    pub largest_motif_nodes: usize,
    pub other: usize,
}

/// Category of every node, with precedence largest motif, then degree-2
/// node in a block, then pendant tree.
pub fn classify(h: &CapGraph) -> Vec<NodeCategory> {
    let n = h.node_count();
    let fringe = pendant_trees(h);
    let dec = decompose(h);
    let mut in_block = vec![false; n];
    let mut largest: Option<(usize, usize, Vec<NodeId>)> = None;
    for block in dec.biconnected() {
        for &v in block {
            in_block[v] = true;
        }
        let c = contract(&h.induced(block));
        let survivors: Vec<NodeId> = c.survivors.iter().map(|&i| block[i]).collect();
        let better = match &largest {
            None => true,
            Some((s, b, _)) => (survivors.len(), block.len()) > (*s, *b),
        };
        if better {
            largest = Some((survivors.len(), block.len(), survivors));
        }
    }
    let core: BTreeSet<NodeId> = largest.map(|(_, _, s)| s.into_iter().collect()).unwrap_or_default();
    h.nodes()
        .map(|v| {
            if core.contains(&v) {
                NodeCategory::LargestMotif
            } else if in_block[v] && h.degree(v) == 2 {
                NodeCategory::Degree2InMotif
            } else if fringe[v] {
                NodeCategory::TreeFringe
            } else {
                NodeCategory::Other
            }
        })
        .collect()
}

/// Nodes removed by repeatedly peeling nodes of degree at most one.
fn pendant_trees(h: &CapGraph) -> Vec<bool> {
    let n = h.node_count();
    let mut deg: Vec<usize> = h.nodes().map(|v| h.degree(v)).collect();
    let mut removed = vec![false; n];
    let mut stack: Vec<NodeId> = h.nodes().filter(|&v| deg[v] <= 1).collect();
    while let Some(v) = stack.pop() {
        if removed[v] {
            continue;
        }
        removed[v] = true;
        for w in h.neighbors(v) {
            if !removed[w] {
                deg[w] -= 1;
                if deg[w] <= 1 {
                    stack.push(w);
                }
            }
        }
    }
    removed
}

pub fn dissect(h: &CapGraph) -> DissectionStats {
    let mut s = DissectionStats { n: h.node_count(), ..Default::default() };
    for c in classify(h) {
        match c {
            NodeCategory::LargestMotif => s.largest_motif_nodes += 1,
            NodeCategory::Degree2InMotif => s.degree2_in_motifs += 1,
            NodeCategory::TreeFringe => s.tree_fringe += 1,
            NodeCategory::Other => s.other += 1,
        }
    }
    s
}
