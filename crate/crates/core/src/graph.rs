//! Undirected capacitated graphs shared by guests (requests) and hosts (substrates).

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;

use num_rational::Ratio;
use num_traits::{One, Zero};

use crate::error::{Result, VnxError};

/// Exact non-negative rational used for every capacity, demand and relay cost.
pub type Weight = Ratio<i64>;

pub type NodeId = usize;

/// Normalised undirected edge, smaller endpoint first.
pub type Edge = (NodeId, NodeId);

pub fn edge_key(u: NodeId, v: NodeId) -> Edge {
    if u < v {
        (u, v)
    } else {
        (v, u)
    }
}

/// Parses `p/q` or a plain integer.
pub fn parse_weight(s: &str) -> std::result::Result<Weight, String> {
    let s = s.trim();
    let parsed = match s.split_once('/') {
        Some((p, q)) => {
            let p: i64 = p.trim().parse().map_err(|_| format!("bad numerator in {s:?}"))?;
            let q: i64 = q.trim().parse().map_err(|_| format!("bad denominator in {s:?}"))?;
            if q == 0 {
                return Err(format!("zero denominator in {s:?}"));
            }
            Ratio::new(p, q)
        }
        None => Ratio::from_integer(s.parse().map_err(|_| format!("bad number {s:?}"))?),
    };
    if parsed < Weight::zero() {
        return Err(format!("negative weight {s:?}"));
    }
    Ok(parsed)
}

pub fn format_weight(w: &Weight) -> String {
    if w.is_integer() {
        w.to_integer().to_string()
    } else {
        format!("{}/{}", w.numer(), w.denom())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct NodeAttr {
    pub cap: Weight,
    pub demand: Weight,
}

impl Default for NodeAttr {
    fn default() -> Self {
        Self { cap: Weight::one(), demand: Weight::one() }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct EdgeAttr {
    pub cap: Weight,
    pub demand: Weight,
}

impl Default for EdgeAttr {
    fn default() -> Self {
        Self { cap: Weight::one(), demand: Weight::one() }
    }
}

/// Simple undirected graph with dense node ids `0..n` and per-element
/// capacity and demand. The same type serves as guest and host.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct CapGraph {
    nodes: Vec<NodeAttr>,
    adj: Vec<BTreeSet<NodeId>>,
    edges: BTreeMap<Edge, EdgeAttr>,
}

impl fmt::Debug for CapGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CapGraph(n={}, edges={:?})", self.node_count(), self.edges.keys().collect::<Vec<_>>())
    }
}

impl CapGraph {
    /// `n` isolated unit-weight nodes.
    pub fn new(n: usize) -> Self {
        Self {
            nodes: vec![NodeAttr::default(); n],
            adj: vec![BTreeSet::new(); n],
            edges: BTreeMap::new(),
        }
    }

    /// Unit-weight graph from an edge list. Panics on self-loops or bad ids;
    /// meant for literals in code and tests.
    pub fn from_edges(n: usize, edges: &[(NodeId, NodeId)]) -> Self {
        let mut g = Self::new(n);
        for &(u, v) in edges {
            g.add_edge(u, v).expect("valid edge literal");
        }
        g
    }

    /// The chain C: two nodes joined by one link.
    pub fn chain() -> Self {
        Self::from_edges(2, &[(0, 1)])
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn nodes(&self) -> std::ops::Range<NodeId> {
        0..self.nodes.len()
    }

    pub fn edges(&self) -> impl Iterator<Item = Edge> + '_ {
        self.edges.keys().copied()
    }

    pub fn edge_attrs(&self) -> impl Iterator<Item = (Edge, &EdgeAttr)> + '_ {
        self.edges.iter().map(|(e, a)| (*e, a))
    }

    pub fn neighbors(&self, v: NodeId) -> impl Iterator<Item = NodeId> + '_ {
        self.adj[v].iter().copied()
    }

    pub fn degree(&self, v: NodeId) -> usize {
        self.adj[v].len()
    }

    pub fn has_node(&self, v: NodeId) -> bool {
        v < self.nodes.len()
    }

    pub fn has_edge(&self, u: NodeId, v: NodeId) -> bool {
        self.edges.contains_key(&edge_key(u, v))
    }

    pub fn node(&self, v: NodeId) -> &NodeAttr {
        &self.nodes[v]
    }

    pub fn edge(&self, u: NodeId, v: NodeId) -> Option<&EdgeAttr> {
        self.edges.get(&edge_key(u, v))
    }

    pub fn add_node(&mut self) -> NodeId {
        self.add_node_with(NodeAttr::default())
    }

    pub fn add_node_with(&mut self, attr: NodeAttr) -> NodeId {
        self.nodes.push(attr);
        self.adj.push(BTreeSet::new());
        self.nodes.len() - 1
    }

    pub fn set_node_attr(&mut self, v: NodeId, attr: NodeAttr) -> Result<()> {
        let slot = self.nodes.get_mut(v).ok_or(VnxError::UnknownNode(v))?;
        *slot = attr;
        Ok(())
    }

    pub fn add_edge(&mut self, u: NodeId, v: NodeId) -> Result<()> {
        self.add_edge_with(u, v, EdgeAttr::default())
    }

    pub fn add_edge_with(&mut self, u: NodeId, v: NodeId, attr: EdgeAttr) -> Result<()> {
        if !self.has_node(u) {
            return Err(VnxError::UnknownNode(u));
        }
        if !self.has_node(v) {
            return Err(VnxError::UnknownNode(v));
        }
        if u == v {
            return Err(VnxError::InvalidGraph(format!("self-loop at {u}")));
        }
        if self.has_edge(u, v) {
            return Err(VnxError::InvalidGraph(format!("parallel edge {u}-{v}")));
        }
        self.edges.insert(edge_key(u, v), attr);
        self.adj[u].insert(v);
        self.adj[v].insert(u);
        Ok(())
    }

    pub fn set_edge_attr(&mut self, u: NodeId, v: NodeId, attr: EdgeAttr) -> Result<()> {
        let slot = self.edges.get_mut(&edge_key(u, v)).ok_or(VnxError::UnknownEdge(u, v))?;
        *slot = attr;
        Ok(())
    }

    pub fn remove_edge(&mut self, u: NodeId, v: NodeId) -> Result<EdgeAttr> {
        let attr = self.edges.remove(&edge_key(u, v)).ok_or(VnxError::UnknownEdge(u, v))?;
        self.adj[u].remove(&v);
        self.adj[v].remove(&u);
        Ok(attr)
    }

    /// Disjoint union; returns the id offset applied to `other`'s nodes.
    pub fn append(&mut self, other: &CapGraph) -> NodeId {
        let offset = self.node_count();
        for v in other.nodes() {
            self.add_node_with(other.node(v).clone());
        }
        for ((u, v), a) in other.edge_attrs() {
            self.add_edge_with(u + offset, v + offset, a.clone()).expect("disjoint copy");
        }
        offset
    }

    pub fn is_connected(&self) -> bool {
        let n = self.node_count();
        if n == 0 {
            return true;
        }
        let mut seen = vec![false; n];
        let mut queue = VecDeque::from([0]);
        seen[0] = true;
        let mut count = 1;
        while let Some(v) = queue.pop_front() {
            for w in self.neighbors(v) {
                if !seen[w] {
                    seen[w] = true;
                    count += 1;
                    queue.push_back(w);
                }
            }
        }
        count == n
    }

    /// True when every weight is unit.
    pub fn is_unit(&self) -> bool {
        let one = Weight::one();
        self.nodes.iter().all(|a| a.cap == one && a.demand == one)
            && self.edges.values().all(|a| a.cap == one && a.demand == one)
    }

    /// Checks the positivity invariant shared by guests and hosts.
    pub fn validate(&self) -> Result<()> {
        let zero = Weight::zero();
        for (v, a) in self.nodes.iter().enumerate() {
            if a.cap <= zero || a.demand <= zero {
                return Err(VnxError::InvalidGraph(format!("node {v} has non-positive weight")));
            }
        }
        for ((u, v), a) in &self.edges {
            if a.cap <= zero || a.demand <= zero {
                return Err(VnxError::InvalidGraph(format!("edge {u}-{v} has non-positive weight")));
            }
        }
        Ok(())
    }

    /// Host graphs must additionally be connected and non-empty.
    pub fn validate_host(&self) -> Result<()> {
        self.validate()?;
        if self.node_count() == 0 {
            return Err(VnxError::InvalidGraph("host has no nodes".into()));
        }
        if !self.is_connected() {
            return Err(VnxError::InvalidGraph("host is not connected".into()));
        }
        Ok(())
    }

    /// Node-induced subgraph; nodes are renumbered in the order given.
    pub fn induced(&self, keep: &[NodeId]) -> CapGraph {
        let index: BTreeMap<NodeId, NodeId> = keep.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let mut g = CapGraph::new(0);
        for &v in keep {
            g.add_node_with(self.node(v).clone());
        }
        for ((u, v), a) in self.edge_attrs() {
            if let (Some(&iu), Some(&iv)) = (index.get(&u), index.get(&v)) {
                g.add_edge_with(iu, iv, a.clone()).expect("induced edge");
            }
        }
        g
    }

    /// Sorted degree sequence, largest first.
    pub fn degree_sequence(&self) -> Vec<usize> {
        let mut d: Vec<usize> = self.nodes().map(|v| self.degree(v)).collect();
        d.sort_unstable_by(|a, b| b.cmp(a));
        d
    }

    /// Stable 64-bit FNV-1a fingerprint of the labelled structure and weights.
    pub fn fingerprint(&self) -> u64 {
        let mut h = Fnv::new();
        h.write_u64(self.node_count() as u64);
        for a in &self.nodes {
            h.write_weight(&a.cap);
            h.write_weight(&a.demand);
        }
        for ((u, v), a) in &self.edges {
            h.write_u64(*u as u64);
            h.write_u64(*v as u64);
            h.write_weight(&a.cap);
            h.write_weight(&a.demand);
        }
        h.finish()
    }
}

struct Fnv(u64);

impl Fnv {
    fn new() -> Self {
        Self(0xcbf2_9ce4_8422_2325)
    }
    fn write_u64(&mut self, x: u64) {
        for b in x.to_le_bytes() {
            self.0 ^= b as u64;
            self.0 = self.0.wrapping_mul(0x0100_0000_01b3);
        }
    }
    fn write_weight(&mut self, w: &Weight) {
        self.write_u64(*w.numer() as u64);
        self.write_u64(*w.denom() as u64);
    }
    fn finish(&self) -> u64 {
        self.0
    }
}

/// A node selected as a gluing point on some graph.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct AttachmentPoint {
    pub node: NodeId,
}

impl AttachmentPoint {
    pub fn new(graph: &CapGraph, node: NodeId) -> Result<Self> {
        if graph.has_node(node) {
            Ok(Self { node })
        } else {
            Err(VnxError::UnknownNode(node))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_loops_and_parallel_edges() {
        let mut g = CapGraph::new(3);
        assert!(g.add_edge(1, 1).is_err());
        g.add_edge(0, 1).unwrap();
        assert!(g.add_edge(1, 0).is_err());
        assert!(g.add_edge(0, 7).is_err());
    }

    #[test]
    fn chain_shape() {
        let c = CapGraph::chain();
        assert_eq!((c.node_count(), c.edge_count()), (2, 1));
    }

    #[test]
    fn weights_parse() {
        assert_eq!(parse_weight("3/6").unwrap(), Ratio::new(1, 2));
        assert_eq!(parse_weight("4").unwrap(), Ratio::from_integer(4));
        assert!(parse_weight("1/0").is_err());
        assert!(parse_weight("-1").is_err());
        assert_eq!(format_weight(&Ratio::new(1, 100)), "1/100");
    }

    #[test]
    fn host_validation() {
        let mut g = CapGraph::from_edges(3, &[(0, 1)]);
        assert!(g.validate_host().is_err());
        g.add_edge(1, 2).unwrap();
        g.validate_host().unwrap();
        g.set_node_attr(0, NodeAttr { cap: Weight::zero(), demand: Weight::one() }).unwrap();
        assert!(g.validate_host().is_err());
    }

    #[test]
    fn fingerprint_tracks_structure() {
        let a = CapGraph::from_edges(3, &[(0, 1), (1, 2)]);
        let b = CapGraph::from_edges(3, &[(0, 1), (0, 2)]);
        assert_ne!(a.fingerprint(), b.fingerprint());
        assert_eq!(a.fingerprint(), a.clone().fingerprint());
    }
}
