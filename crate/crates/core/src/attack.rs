//! The dictionary attack: grows a request graph `H′` by asking the oracle
//! whether `H′` extended by candidate word sequences still embeds.
//!
//! The attacker never sees the host. Every decision below depends only on
//! the dictionary and on the boolean replies received so far.

use std::collections::BTreeSet;

use crate::dictionary::{glue_onto, Dictionary, Word};
use crate::embed::{find_embedding_with, EmbedConfig};
use crate::error::{Result, VnxError};
use crate::graph::{edge_key, CapGraph, Edge, NodeId};
use crate::iso::is_isomorphic;
use crate::oracle::{HonestOracle, Oracle, Phase, RequestLog};

/// Position in the total order used to pick the maximal match: word rank,
/// then repetitions, then a chain before, then a chain after.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SearchTuple {
    pub i: usize,
    pub j: usize,
    pub bf: bool,
    pub af: bool,
}

/// One discovered sequence and where it hangs in `H′`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SequenceNode {
    /// The `H′` node the sequence was glued to.
    pub attach: NodeId,
    /// Word indices, in order.
    pub words: Vec<usize>,
    /// `H′` nodes introduced by the words and by expanding their links.
    pub nodes: Vec<NodeId>,
    /// Sequence that introduced `attach`, if any.
    pub parent: Option<usize>,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct SequenceTree {
    pub sequences: Vec<SequenceNode>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct AttackState {
    pub h_prime: CapGraph,
    pub frontier: BTreeSet<NodeId>,
    pub sequence_tree: SequenceTree,
    /// Sequence that introduced each `H′` node.
    origin: Vec<Option<usize>>,
}

impl AttackState {
    pub fn new() -> Self {
        Self {
            h_prime: CapGraph::new(1),
            frontier: BTreeSet::from([0]),
            sequence_tree: SequenceTree::default(),
            origin: vec![None],
        }
    }
}

impl AttackState {
    /// Resumes from a known request graph with an empty frontier.
    pub fn from_graph(h_prime: CapGraph) -> Self {
        let n = h_prime.node_count();
        Self { h_prime, frontier: BTreeSet::new(), sequence_tree: SequenceTree::default(), origin: vec![None; n] }
    }
}

impl Default for AttackState {
    fn default() -> Self {
        Self::new()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct AttackOutcome {
    pub h_prime: CapGraph,
    pub sequence_tree: SequenceTree,
    /// The final probe found room for another node.
    pub stalled: bool,
}

/// One run of the attack against one oracle.
pub struct Dict<'a, O: Oracle> {
    oracle: &'a mut O,
    dict: &'a Dictionary,
    pub state: AttackState,
    observer: Option<Box<dyn FnMut(&CapGraph) + 'a>>,
}

impl<'a, O: Oracle> Dict<'a, O> {
    pub fn new(oracle: &'a mut O, dict: &'a Dictionary) -> Self {
        Self { oracle, dict, state: AttackState::new(), observer: None }
    }

    /// Called with `H′` after every committed growth step.
    pub fn observe(mut self, f: impl FnMut(&CapGraph) + 'a) -> Self {
        self.observer = Some(Box::new(f));
        self
    }

    pub fn log(&self) -> &RequestLog {
        self.oracle.log()
    }

    pub fn run(mut self) -> Result<AttackOutcome> {
        while let Some(&v) = self.state.frontier.iter().next() {
            self.explore(v)?;
        }
        let mut probe = self.state.h_prime.clone();
        probe.add_node();
        let stalled = self.oracle.query(&probe, Phase::Termination)?;
        Ok(AttackOutcome { h_prime: self.state.h_prime, sequence_tree: self.state.sequence_tree, stalled })
    }

    fn words(&self, tokens: &[usize]) -> Vec<&'a Word> {
        let d = self.dict;
        tokens.iter().map(|&i| &d.words[i]).collect()
    }

    fn probe(&mut self, v: NodeId, tokens: &[usize], phase: Phase) -> Result<bool> {
        let g = glue_onto(&self.state.h_prime, v, &self.words(tokens))?;
        self.oracle.query(&g.graph, phase)
    }

    /// Tests `H′ v before [C] x^j [C] after` for the given (bf, af) choices
    /// in order and returns the first that embeds.
    fn best_config(
        &mut self,
        v: NodeId,
        before: &[usize],
        x: usize,
        j: usize,
        after: &[usize],
        configs: &[(bool, bool)],
        phase: Phase,
    ) -> Result<Option<(bool, bool)>> {
        let c = self.dict.root;
        let tokens = |bf: bool, af: bool| -> Vec<usize> {
            let mut t = before.to_vec();
            if bf {
                t.push(c);
            }
            t.extend(std::iter::repeat(x).take(j));
            if af {
                t.push(c);
            }
            t.extend_from_slice(after);
            t
        };
        if x == c {
            // C·C^j is C^(j+1): only the bare run needs testing
            let t = tokens(false, false);
            return Ok(self.probe(v, &t, phase)?.then_some((false, false)));
        }
        if after.is_empty() {
            // a trailing chain at a free end only adds requirements
            let mut bfs: Vec<bool> = configs.iter().map(|c| c.0).collect();
            bfs.dedup();
            for bf in bfs {
                let t = tokens(bf, false);
                if self.probe(v, &t, phase)? {
                    let t = tokens(bf, true);
                    let af = self.probe(v, &t, phase)?;
                    return Ok(Some((bf, af)));
                }
            }
            return Ok(None);
        }
        for &(bf, af) in configs {
            let t = tokens(bf, af);
            if self.probe(v, &t, phase)? {
                return Ok(Some((bf, af)));
            }
        }
        Ok(None)
    }

    /// Maximal decomposition of the unexplored sequence between `before`
    /// and `after`, both glued after `v`. Empty when nothing fits.
    pub fn find_motif_sequence(&mut self, v: NodeId, before: &[usize], after: &[usize]) -> Result<Vec<usize>> {
        let Some(t) = self.maximal_tuple(v, before, after)? else {
            return Ok(Vec::new());
        };
        let x = self.dict.by_rank()[t.i];
        let run = vec![x; t.j];
        let mut left = Vec::new();
        if t.bf {
            let mut right_ctx = run.clone();
            if t.af {
                right_ctx.push(self.dict.root);
            }
            right_ctx.extend_from_slice(after);
            left = self.find_motif_sequence(v, before, &right_ctx)?;
        }
        let mut right = Vec::new();
        if t.af {
            let mut left_ctx = before.to_vec();
            left_ctx.extend_from_slice(&left);
            left_ctx.extend_from_slice(&run);
            right = self.find_motif_sequence(v, &left_ctx, after)?;
        }
        left.extend(run);
        left.extend(right);
        Ok(left)
    }

    /// Depth-first descent to the maximal word, then the longest run of it.
    ///
    /// Between two fixed parts the descent is repeated in tiers. Words glued
    /// directly to the part before them come first, then words glued directly
    /// to the part after them, then words with chains on both sides. When the
    /// part before is the lone start node the first two tiers swap. Searching
    /// from a placed node, words glued directly to it come before words
    /// behind a chain. Runs longer than one word are only taken by the very
    /// first search, from a lone node. A word glued to a placed node can
    /// only use that node's own block, whereas chains on both sides may relay
    /// through a cut node into structure that hangs off the sequence.
    fn maximal_tuple(&mut self, v: NodeId, before: &[usize], after: &[usize]) -> Result<Option<SearchTuple>> {
        const ALL: [(bool, bool); 4] = [(true, true), (true, false), (false, true), (false, false)];
        const RIGHT_FIRST: [&[(bool, bool)]; 3] = [&[(true, false), (false, false)], &[(false, true)], &[(true, true)]];
        const LEFT_FIRST: [&[(bool, bool)]; 3] = [&[(false, true), (false, false)], &[(true, false)], &[(true, true)]];
        let d = self.dict;
        if self.best_config(v, before, d.root, 1, after, &ALL, Phase::MotifSearch)?.is_none() {
            return Ok(None);
        }
        const FREE_TIERS: [&[(bool, bool)]; 2] = [&[(false, false)], &[(true, false)]];
        let lone = before.is_empty() && after.is_empty() && self.state.h_prime.node_count() == 1;
        let tiers: &[&[(bool, bool)]] = if !after.is_empty() {
            if before.is_empty() && self.state.h_prime.node_count() == 1 {
                &RIGHT_FIRST
            } else {
                &LEFT_FIRST
            }
        } else if before.is_empty() && !lone {
            &FREE_TIERS
        } else {
            &[&ALL]
        };
        for configs in tiers {
            let (mut x, mut cfg) = (d.root, (false, false));
            'descend: loop {
                for &c in &d.children[x] {
                    if let Some(found) = self.best_config(v, before, c, 1, after, configs, Phase::MotifSearch)? {
                        x = c;
                        cfg = found;
                        continue 'descend;
                    }
                }
                break;
            }
            if x != d.root {
                if lone {
                    return self.longest_run(v, before, x, cfg, after, configs).map(Some);
                }
                // only the copy next to a placed node is pinned; the rest is
                // left to the recursion
                return Ok(Some(SearchTuple { i: d.rank[x], j: 1, bf: cfg.0, af: cfg.1 }));
            }
        }
        self.longest_run(v, before, d.root, (false, false), after, &ALL).map(Some)
    }

    fn longest_run(
        &mut self,
        v: NodeId,
        before: &[usize],
        x: usize,
        mut cfg: (bool, bool),
        after: &[usize],
        configs: &[(bool, bool)],
    ) -> Result<SearchTuple> {
        let mut j = 1;
        while let Some(found) = self.best_config(v, before, x, j + 1, after, configs, Phase::Repetition)? {
            j += 1;
            cfg = found;
        }
        Ok(SearchTuple { i: self.dict.rank[x], j, bf: cfg.0, af: cfg.1 })
    }

    /// Glues `seq` onto `v`. With cyclic words in the dictionary every run of
    /// chains is shortened to a single link first; edge expansion restores
    /// the length one node at a time, exploring each node first, so a run
    /// cannot be stretched around a cycle that hangs off one of its nodes.
    fn commit_sequence(&mut self, v: NodeId, mut seq: Vec<usize>) -> Result<()> {
        let c = self.dict.root;
        if self.dict.len() > 1 {
            seq.dedup_by(|a, b| *a == c && *b == c);
        }
        let before = self.state.h_prime.node_count();
        let glued = glue_onto(&self.state.h_prime, v, &self.words(&seq))?;
        let mut edges: Vec<Edge> = Vec::new();
        for (map, &w) in glued.maps.iter().zip(&seq) {
            edges.extend(self.dict.words[w].graph.edges().map(|(a, b)| edge_key(map[a], map[b])));
        }
        self.state.h_prime = glued.graph;
        let id = self.state.sequence_tree.sequences.len();
        self.state.sequence_tree.sequences.push(SequenceNode {
            attach: v,
            words: seq,
            nodes: Vec::new(),
            parent: self.state.origin[v],
        });
        let grown = self.state.h_prime.node_count();
        self.state.origin.resize(grown, Some(id));
        self.state.sequence_tree.sequences[id].nodes = (before..grown).collect();
        self.state.frontier.extend(before..grown);
        self.notify();
        for x in before..grown {
            if self.state.frontier.contains(&x) {
                self.explore(x)?;
            }
        }
        for e in edges {
            self.edge_expansion(e)?;
        }
        Ok(())
    }

    /// Replaces link `e` by the longest chain the oracle accepts, one node
    /// at a time. Each new node is explored before the two links around it
    /// are expanded further, so that structure hanging off a degree-2 host
    /// node is found before chains could route around it. Every link tried
    /// ends with one rejected request.
    pub fn edge_expansion(&mut self, e: Edge) -> Result<usize> {
        let (u, v) = e;
        if !self.state.h_prime.has_edge(u, v) {
            return Err(VnxError::UnknownEdge(u, v));
        }
        let mut g = self.state.h_prime.clone();
        g.remove_edge(u, v)?;
        let x = g.add_node();
        g.add_edge(u, x)?;
        g.add_edge(x, v)?;
        if !self.oracle.query(&g, Phase::EdgeExpansion)? {
            return Ok(0);
        }
        self.state.h_prime = g;
        let parent = self.state.origin[u].or(self.state.origin[v]);
        self.state.origin.push(parent);
        if let Some(s) = parent {
            self.state.sequence_tree.sequences[s].nodes.push(x);
        }
        self.notify();
        self.explore(x)?;
        Ok(1 + self.edge_expansion(edge_key(u, x))? + self.edge_expansion(edge_key(x, v))?)
    }

    /// Discovers everything hanging off `x` and retires it from the frontier.
    fn explore(&mut self, x: NodeId) -> Result<()> {
        loop {
            let seq = self.find_motif_sequence(x, &[], &[])?;
            if seq.is_empty() {
                self.state.frontier.remove(&x);
                return Ok(());
            }
            self.commit_sequence(x, seq)?;
        }
    }

    fn notify(&mut self) {
        if let Some(f) = self.observer.as_mut() {
            f(&self.state.h_prime);
        }
    }
}

/// Runs the attack to completion. A stall, where the final probe still finds
/// room for another node, is reported as [`VnxError::CoverageStall`].
pub fn run_dict<O: Oracle>(oracle: &mut O, d: &Dictionary) -> Result<(CapGraph, RequestLog)> {
    let out = Dict::new(oracle, d).run()?;
    if out.stalled {
        return Err(VnxError::CoverageStall { discovered: out.h_prime.node_count() });
    }
    Ok((out.h_prime, oracle.log().clone()))
}

/// Number of host nodes, by doubling and then bisecting the size of an
/// edgeless guest.
pub fn estimate_n<O: Oracle>(oracle: &mut O) -> Result<usize> {
    let mut fits = |k: usize| oracle.query(&CapGraph::new(k), Phase::MotifSearch);
    if !fits(1)? {
        return Ok(0);
    }
    let mut lo = 1;
    let mut hi = 2;
    while fits(hi)? {
        lo = hi;
        hi *= 2;
    }
    while hi - lo > 1 {
        let mid = lo + (hi - lo) / 2;
        if fits(mid)? {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(lo)
}

#[derive(Debug, Clone, PartialEq)]
pub struct Coverage {
    pub fraction: f64,
    pub recovered: bool,
    pub outcome: AttackOutcome,
    pub log: RequestLog,
}

/// Runs the attack with full host knowledge for scoring. Recovery scores 1;
/// otherwise the score is the share of host nodes that host a node of `H′`
/// with every host link accounted for (equal degree) under an embedding.
pub fn coverage_report(host: &CapGraph, d: &Dictionary, cfg: &EmbedConfig) -> Result<Coverage> {
    let mut oracle = HonestOracle::with_config(host.clone(), *cfg)?;
    let outcome = Dict::new(&mut oracle, d).run()?;
    let log = oracle.log().clone();
    let recovered = is_isomorphic(&outcome.h_prime, host);
    let fraction = if recovered { 1.0 } else { coverage_fraction(&outcome.h_prime, host, cfg)? };
    Ok(Coverage { fraction, recovered, outcome, log })
}

/// Share of host nodes hosting a node of `h_prime` of the same degree under
/// some embedding of `h_prime`.
pub fn coverage_fraction(h_prime: &CapGraph, host: &CapGraph, cfg: &EmbedConfig) -> Result<f64> {
    let covered = match find_embedding_with(h_prime, host, cfg)? {
        Some(e) => e.node_map.iter().enumerate().filter(|&(u, &h)| h_prime.degree(u) == host.degree(h)).count(),
        None => 0,
    };
    Ok(covered as f64 / host.node_count() as f64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dictionary::{cactus_dictionary, tree_dictionary};
    use crate::embed::default_epsilon;
    use crate::generate::{clique, path};
    use crate::oracle::ReplayOracle;

    fn honest(h: CapGraph) -> HonestOracle {
        HonestOracle::new(h, default_epsilon()).unwrap()
    }

    #[test]
    fn tuple_order() {
        let t = |i, j, bf, af| SearchTuple { i, j, bf, af };
        assert!(t(2, 1, false, false) > t(1, 5, true, true));
        assert!(t(1, 2, false, false) > t(1, 1, true, true));
        assert!(t(1, 1, true, false) > t(1, 1, false, true));
        assert!(t(1, 1, false, true) > t(1, 1, false, false));
    }

    #[test]
    fn single_node_host() {
        let mut o = honest(CapGraph::new(1));
        let (h, log) = run_dict(&mut o, &tree_dictionary()).unwrap();
        assert_eq!(h.node_count(), 1);
        assert_eq!(log.replies(), vec![false, false]);
    }

    #[test]
    fn path_of_five() {
        let mut o = honest(path(5));
        let (h, _) = run_dict(&mut o, &tree_dictionary()).unwrap();
        assert!(is_isomorphic(&h, &path(5)));
    }

    #[test]
    fn expansion_counts_requests() {
        for k in 0..5 {
            let host = path(k + 2);
            let mut o = honest(host.clone());
            let dict = tree_dictionary();
            let mut a = Dict::new(&mut o, &dict);
            a.state = AttackState::from_graph(path(2));
            let added = a.edge_expansion((0, 1)).unwrap();
            assert_eq!(added, k);
            assert_eq!(a.log().count(Phase::EdgeExpansion), 2 * k + 1);
        }
    }

    #[test]
    fn bowtie_from_scratch() {
        let bowtie = CapGraph::from_edges(5, &[(0, 1), (1, 2), (2, 0), (0, 3), (3, 4), (4, 0)]);
        let mut o = honest(bowtie);
        let d = cactus_dictionary();
        let mut a = Dict::new(&mut o, &d);
        assert_eq!(a.find_motif_sequence(0, &[], &[]).unwrap(), vec![1, 1]);
    }

    #[test]
    fn uncovered_host_is_not_recovered() {
        let c = coverage_report(&clique(4), &cactus_dictionary(), &EmbedConfig::default()).unwrap();
        assert!(!c.recovered);
        assert!(c.fraction < 1.0);
        let c = coverage_report(&path(4), &cactus_dictionary(), &EmbedConfig::default()).unwrap();
        assert!(c.recovered);
        assert_eq!(c.fraction, 1.0);
    }

    #[test]
    fn replay_reproduces_control_flow() {
        let host = CapGraph::from_edges(6, &[(0, 1), (1, 2), (2, 0), (2, 3), (3, 4), (3, 5)]);
        let d = cactus_dictionary();
        let mut o = honest(host);
        let (h, log) = run_dict(&mut o, &d).unwrap();
        let mut replay = ReplayOracle::new(log.replies());
        let (h2, log2) = run_dict(&mut replay, &d).unwrap();
        assert_eq!(h, h2);
        assert_eq!(log, log2);
    }

    #[test]
    fn estimate_small_hosts() {
        let mut o = honest(CapGraph::new(1));
        assert_eq!(estimate_n(&mut o).unwrap(), 1);
        let mut o = honest(path(8));
        assert_eq!(estimate_n(&mut o).unwrap(), 8);
        assert!(o.log().len() <= 9);
        let mut o = honest(path(5));
        assert_eq!(estimate_n(&mut o).unwrap(), 5);
    }
}
