//! Reproducible test-instance generators. Random families also record the
//! rule derivation that built them.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Result, VnxError};
use crate::graph::{CapGraph, Edge, NodeId};
use crate::motif::{insert_node, merge_mapped, Motif};

pub fn path(n: usize) -> CapGraph {
    let edges: Vec<Edge> = (1..n).map(|i| (i - 1, i)).collect();
    CapGraph::from_edges(n, &edges)
}

pub fn cycle(n: usize) -> CapGraph {
    assert!(n >= 3, "cycle needs at least 3 nodes");
    let mut edges: Vec<Edge> = (1..n).map(|i| (i - 1, i)).collect();
    edges.push((0, n - 1));
    CapGraph::from_edges(n, &edges)
}

pub fn clique(n: usize) -> CapGraph {
    let mut g = CapGraph::new(n);
    for u in 0..n {
        for v in u + 1..n {
            g.add_edge(u, v).expect("clique edge");
        }
    }
    g
}

pub fn complete_bipartite(a: usize, b: usize) -> CapGraph {
    let mut g = CapGraph::new(a + b);
    for u in 0..a {
        for v in a..a + b {
            g.add_edge(u, v).expect("bipartite edge");
        }
    }
    g
}

/// One application of a composition rule, relative to the graph built so far.
#[derive(Debug, Clone, PartialEq)]
pub enum RuleStep {
    /// Merge a fresh copy of `motif` onto node `at`, identifying it with `motif_node`.
    Attach { motif: Motif, at: NodeId, motif_node: NodeId },
    /// Insert a degree-2 node on an existing link.
    Subdivide { edge: Edge },
}

/// A recorded derivation, applied to a single starting node.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Derivation {
    pub steps: Vec<RuleStep>,
}

impl Derivation {
    pub fn apply(&self) -> Result<CapGraph> {
        let mut g = CapGraph::new(1);
        for step in &self.steps {
            g = apply_step(&g, step)?;
        }
        Ok(g)
    }

    /// Distinct motifs used by the derivation.
    pub fn motifs(&self) -> Vec<&Motif> {
        let mut out: Vec<&Motif> = Vec::new();
        for step in &self.steps {
            if let RuleStep::Attach { motif, .. } = step {
                if !out.iter().any(|m| crate::iso::is_isomorphic(&m.graph, &motif.graph)) {
                    out.push(motif);
                }
            }
        }
        out
    }
}

fn apply_step(g: &CapGraph, step: &RuleStep) -> Result<CapGraph> {
    match step {
        RuleStep::Attach { motif, at, motif_node } => Ok(merge_mapped(g, *at, &motif.graph, *motif_node)?.0),
        RuleStep::Subdivide { edge } => insert_node(g, *edge),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Family {
    Tree,
    Cactus,
    /// Generalised block graph: cliques glued at cut nodes, links possibly subdivided.
    Block,
    Cycle,
    Clique,
    /// Ring core with chords between backbone nodes and a tree fringe.
    Isp,
}

impl std::str::FromStr for Family {
    type Err = VnxError;
    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "tree" => Self::Tree,
            "cactus" => Self::Cactus,
            "block" => Self::Block,
            "cycle" => Self::Cycle,
            "clique" => Self::Clique,
            "isp" => Self::Isp,
            other => return Err(VnxError::Generator(format!("unknown family {other:?}"))),
        })
    }
}

impl Family {
    pub fn as_str(self) -> &'static str {
        match self {
            Self::Tree => "tree",
            Self::Cactus => "cactus",
            Self::Block => "block",
            Self::Cycle => "cycle",
            Self::Clique => "clique",
            Self::Isp => "isp",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GenSpec {
    pub family: Family,
    pub n: usize,
    pub seed: u64,
    /// Largest clique for `Block`, longest cycle for `Cactus`.
    pub max_block: usize,
}

impl GenSpec {
    pub fn new(family: Family, n: usize, seed: u64) -> Self {
        let max_block = match family {
            Family::Block => 5,
            _ => 6,
        };
        Self { family, n, seed, max_block }
    }

    pub fn with_max_block(mut self, k: usize) -> Self {
        self.max_block = k;
        self
    }

    pub fn label(&self) -> String {
        format!("{}-n{}-s{}", self.family.as_str(), self.n, self.seed)
    }
}

/// Generates a graph and, for random families, its derivation.
pub fn generate_with_derivation(spec: &GenSpec) -> Result<(CapGraph, Option<Derivation>)> {
    if spec.n == 0 {
        return Err(VnxError::Generator("n must be at least 1".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    match spec.family {
        Family::Cycle => {
            if spec.n < 3 {
                return Err(VnxError::Generator("cycle needs n >= 3".into()));
            }
            Ok((cycle(spec.n), None))
        }
        Family::Clique => {
            if spec.n < 2 {
                return Err(VnxError::Generator("clique needs n >= 2".into()));
            }
            Ok((clique(spec.n), None))
        }
        Family::Tree => finish(random_tree(spec.n, &mut rng)),
        Family::Cactus => {
            if spec.max_block < 3 {
                return Err(VnxError::Generator("cactus needs cycles of length >= 3".into()));
            }
            finish(random_cactus(spec.n, spec.max_block, &mut rng))
        }
        Family::Block => {
            if spec.max_block < 2 {
                return Err(VnxError::Generator("block graph needs cliques of size >= 2".into()));
            }
            finish(random_block(spec.n, spec.max_block, &mut rng))
        }
        Family::Isp => {
            if spec.n < 4 {
                return Err(VnxError::Generator("isp graph needs n >= 4".into()));
            }
            Ok((random_isp(spec.n, &mut rng), None))
        }
    }
}

pub fn generate(spec: &GenSpec) -> Result<CapGraph> {
    Ok(generate_with_derivation(spec)?.0)
}

/// Builds a graph by replaying rule steps.
pub fn from_rules(d: &Derivation) -> Result<CapGraph> {
    d.apply()
}

fn finish(d: Derivation) -> Result<(CapGraph, Option<Derivation>)> {
    let g = d.apply()?;
    Ok((g, Some(d)))
}

fn random_tree(n: usize, rng: &mut ChaCha8Rng) -> Derivation {
    let steps = (1..n)
        .map(|i| RuleStep::Attach { motif: Motif::chain(), at: rng.gen_range(0..i), motif_node: 0 })
        .collect();
    Derivation { steps }
}

fn random_cactus(n: usize, max_cycle: usize, rng: &mut ChaCha8Rng) -> Derivation {
    let triangle = Motif::named("Y").expect("triangle");
    let mut steps = Vec::new();
    let mut size = 1;
    while size < n {
        let remaining = n - size;
        let at = rng.gen_range(0..size);
        if remaining >= 2 && rng.gen_bool(0.5) {
            let len = rng.gen_range(3..=max_cycle.min(remaining + 1));
            steps.push(RuleStep::Attach { motif: triangle.clone(), at, motif_node: 0 });
            let (a, b) = (size, size + 1);
            let mut cyc = vec![(at.min(a), at.max(a)), (a, b), (at.min(b), at.max(b))];
            size += 2;
            for _ in 3..len {
                let e = cyc[rng.gen_range(0..cyc.len())];
                steps.push(RuleStep::Subdivide { edge: e });
                cyc.retain(|&x| x != e);
                cyc.push((e.0.min(size), e.0.max(size)));
                cyc.push((e.1.min(size), e.1.max(size)));
                size += 1;
            }
        } else {
            steps.push(RuleStep::Attach { motif: Motif::chain(), at, motif_node: 0 });
            size += 1;
        }
    }
    Derivation { steps }
}

/// Cliques glued at clique nodes. Nodes inserted on links of a clique of
/// three or more nodes keep degree 2; nodes inserted on bridges stay
/// available for gluing, since every node of a path is a chain endpoint.
fn random_block(n: usize, max_clique: usize, rng: &mut ChaCha8Rng) -> Derivation {
    let mut steps = Vec::new();
    let mut size = 1;
    // (link, lies in a clique of >= 3 nodes)
    let mut edges: Vec<(Edge, bool)> = Vec::new();
    let mut anchors: Vec<NodeId> = vec![0];
    while size < n {
        let remaining = n - size;
        if !edges.is_empty() && rng.gen_bool(0.25) {
            let (e, inner) = edges.swap_remove(rng.gen_range(0..edges.len()));
            steps.push(RuleStep::Subdivide { edge: e });
            edges.push(((e.0.min(size), e.0.max(size)), inner));
            edges.push(((e.1.min(size), e.1.max(size)), inner));
            if !inner {
                anchors.push(size);
            }
            size += 1;
            continue;
        }
        let k = rng.gen_range(2..=max_clique.min(remaining + 1));
        let at = anchors[rng.gen_range(0..anchors.len())];
        let motif = if k == 2 { Motif::chain() } else { Motif::from_graph(clique(k)) };
        steps.push(RuleStep::Attach { motif, at, motif_node: 0 });
        let ids: Vec<NodeId> = std::iter::once(at).chain(size..size + k - 1).collect();
        for i in 0..k {
            for j in i + 1..k {
                let (a, b) = (ids[i], ids[j]);
                edges.push(((a.min(b), a.max(b)), k >= 3));
            }
        }
        anchors.extend(size..size + k - 1);
        size += k - 1;
    }
    Derivation { steps }
}

/// About two fifths of the nodes form a ring. Every fourth ring node is a
/// backbone node with a chord to another backbone node; the rest of the
/// nodes hang off backbone or fringe nodes as a tree, so ring nodes between
/// backbone nodes keep degree 2.
fn random_isp(n: usize, rng: &mut ChaCha8Rng) -> CapGraph {
    let ring = (2 * n / 5).max(4);
    let mut g = cycle(ring);
    let backbone: Vec<NodeId> = (0..ring).step_by(4).collect();
    if backbone.len() >= 3 {
        for (i, &a) in backbone.iter().enumerate() {
            let others: Vec<NodeId> = backbone.iter().copied().filter(|&b| b != a && b != backbone[(i + 1) % backbone.len()]).collect();
            let b = others[rng.gen_range(0..others.len())];
            if !g.has_edge(a, b) && a.abs_diff(b) != 1 {
                g.add_edge(a, b).expect("fresh chord");
            }
        }
    } else {
        g.add_edge(0, 2).expect("fresh chord");
    }
    let mut hooks = backbone;
    while g.node_count() < n {
        let at = hooks[rng.gen_range(0..hooks.len())];
        let v = g.add_node();
        g.add_edge(at, v).expect("fresh leaf");
        hooks.push(v);
    }
    g
}
