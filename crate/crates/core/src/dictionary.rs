//! Dictionaries: DAGs of words ordered by embeddability in a chain context.
//!
//! A word is a sequence of motifs glued at single nodes, with an in point on
//! the first motif and an out point on the last. Word `a` points to word `b`
//! when `C·a·C ↦ C·b·C`, transitively reduced; words whose chain contexts
//! are isomorphic share a position and get no edge between them.

use std::cmp::Reverse;
use std::collections::{BTreeSet, BinaryHeap};

use num_rational::Ratio;

use crate::embed::{is_embeddable_with, EmbedConfig};
use crate::error::{Result, VnxError};
use crate::graph::{CapGraph, NodeId};
use crate::iso::{automorphisms, find_colored_isomorphism};
use crate::motif::{merge_mapped, Motif, MotifSet};
use crate::par::{self, Exec};

/// One motif of a word with its attachment pair.
#[derive(Debug, Clone, PartialEq)]
pub struct Atom {
    pub motif: Motif,
    pub in_point: NodeId,
    pub out_point: NodeId,
}

impl Atom {
    pub fn new(motif: Motif, in_point: NodeId, out_point: NodeId) -> Result<Self> {
        let n = motif.graph.node_count();
        if in_point >= n || out_point >= n {
            return Err(VnxError::UnknownNode(in_point.max(out_point)));
        }
        if in_point == out_point {
            return Err(VnxError::InvalidGraph("attachment points must differ".into()));
        }
        Ok(Self { motif, in_point, out_point })
    }

    fn same_as(&self, other: &Atom) -> bool {
        labelled_iso(&self.motif.graph, self.in_point, self.out_point, &other.motif.graph, other.in_point, other.out_point)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Word {
    pub parts: Vec<Atom>,
    pub graph: CapGraph,
    pub in_point: NodeId,
    pub out_point: NodeId,
    /// Node ids of every part inside `graph`, in the part's own order.
    pub part_nodes: Vec<Vec<NodeId>>,
}

impl Word {
    pub fn from_atom(atom: Atom) -> Self {
        Self::compose(&[atom])
    }

    pub fn chain() -> Self {
        Self::from_atom(Atom { motif: Motif::chain(), in_point: 0, out_point: 1 })
    }

    /// Glues the atoms out-to-in, left to right.
    pub fn compose(atoms: &[Atom]) -> Self {
        assert!(!atoms.is_empty(), "a word needs at least one motif");
        let first = &atoms[0];
        let mut graph = first.motif.graph.clone();
        let mut part_nodes = vec![graph.nodes().collect::<Vec<_>>()];
        let in_point = first.in_point;
        let mut out_point = first.out_point;
        for a in &atoms[1..] {
            let (g, map) = merge_mapped(&graph, out_point, &a.motif.graph, a.in_point).expect("valid attachment");
            graph = g;
            out_point = map[a.out_point];
            part_nodes.push(map);
        }
        Self { parts: atoms.to_vec(), graph, in_point, out_point, part_nodes }
    }

    pub fn node_count(&self) -> usize {
        self.graph.node_count()
    }

    pub fn edge_count(&self) -> usize {
        self.graph.edge_count()
    }

    pub fn is_chain(&self) -> bool {
        self.parts.len() == 1 && self.parts[0].motif.is_chain
    }

    pub fn name(&self) -> String {
        self.parts.iter().map(|a| a.motif.name.as_str()).collect::<Vec<_>>().join("·")
    }

    pub fn motif_names(&self) -> Vec<String> {
        self.parts.iter().map(|a| a.motif.name.clone()).collect()
    }

    /// `C·self·C`.
    pub fn in_chain_context(&self) -> CapGraph {
        chain_context(&self.graph, self.in_point, self.out_point)
    }

    /// Same parts, same attachment points, up to relabelling.
    pub fn same_as(&self, other: &Word) -> bool {
        labelled_iso(&self.graph, self.in_point, self.out_point, &other.graph, other.in_point, other.out_point)
    }
}

fn labelled_iso(a: &CapGraph, ai: NodeId, ao: NodeId, b: &CapGraph, bi: NodeId, bo: NodeId) -> bool {
    let colour = |g: &CapGraph, i: NodeId, o: NodeId| -> Vec<u32> {
        g.nodes().map(|v| if v == i { 1 } else if v == o { 2 } else { 0 }).collect()
    };
    find_colored_isomorphism(a, &colour(a, ai, ao), b, &colour(b, bi, bo)).is_some()
}

fn chain_context(g: &CapGraph, in_point: NodeId, out_point: NodeId) -> CapGraph {
    let mut out = g.clone();
    let a = out.add_node();
    let b = out.add_node();
    out.add_edge(a, in_point).expect("fresh node");
    out.add_edge(out_point, b).expect("fresh node");
    out
}

/// A sequence of words glued into one graph.
#[derive(Debug, Clone, PartialEq)]
pub struct Glued {
    pub graph: CapGraph,
    /// Node where the next word would attach.
    pub tail: NodeId,
    /// For every glued word, where its nodes ended up.
    pub maps: Vec<Vec<NodeId>>,
}

/// Glues `words` onto `base` starting at node `at`.
pub fn glue_onto(base: &CapGraph, at: NodeId, words: &[&Word]) -> Result<Glued> {
    let mut graph = base.clone();
    let mut tail = at;
    let mut maps = Vec::with_capacity(words.len());
    for w in words {
        let (g, map) = merge_mapped(&graph, tail, &w.graph, w.in_point)?;
        graph = g;
        tail = map[w.out_point];
        maps.push(map);
    }
    Ok(Glued { graph, tail, maps })
}

/// The graph of a word sequence with the first word's in point and the last
/// word's out point.
pub fn realize(words: &[&Word]) -> Result<(CapGraph, NodeId, NodeId)> {
    let (first, rest) = words.split_first().ok_or_else(|| VnxError::InvalidGraph("empty word sequence".into()))?;
    let g = glue_onto(&first.graph, first.out_point, rest)?;
    Ok((g.graph, first.in_point, g.tail))
}

/// `C·v1·C ↦ C·v2·C`.
pub fn dict_edge_test(v1: &Word, v2: &Word, cfg: &EmbedConfig) -> Result<bool> {
    is_embeddable_with(&v1.in_chain_context(), &v2.in_chain_context(), cfg)
}

/// Ordered attachment pairs `(in, out)`, `in != out`, one per orbit of the
/// automorphism group acting on pairs; each is the smallest in its orbit.
pub fn attachment_pairs(g: &CapGraph) -> Vec<(NodeId, NodeId)> {
    let autos = automorphisms(g);
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for a in g.nodes() {
        for b in g.nodes() {
            if a == b || seen.contains(&(a, b)) {
                continue;
            }
            out.push((a, b));
            for p in &autos {
                seen.insert((p[a], p[b]));
            }
        }
    }
    out
}

/// One atomic word per attachment-pair orbit of `m`.
pub fn atomic_words(m: &Motif) -> Vec<Word> {
    attachment_pairs(&m.graph)
        .into_iter()
        .map(|(i, o)| Word::from_atom(Atom { motif: m.clone(), in_point: i, out_point: o }))
        .collect()
}

#[derive(Debug, Clone, Copy)]
pub struct DictConfig {
    pub embed: EmbedConfig,
    /// Build fails with a size error instead of producing more words.
    pub max_words: usize,
    /// Robustness audit fails with a size error beyond this many sequences.
    pub max_sequences: usize,
    pub exec: Exec,
}

impl Default for DictConfig {
    fn default() -> Self {
        Self { embed: EmbedConfig::default(), max_words: 2_000, max_sequences: 200_000, exec: Exec::default() }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Dictionary {
    pub words: Vec<Word>,
    pub root: usize,
    /// Outgoing edges of every word in port order.
    pub children: Vec<Vec<usize>>,
    /// Position of every word in the topological order; the root has rank 0.
    pub rank: Vec<usize>,
}

impl Dictionary {
    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    pub fn word(&self, i: usize) -> Result<&Word> {
        self.words.get(i).ok_or(VnxError::UnknownWord(i))
    }

    /// All edges as `(from, port, to)`.
    pub fn edges(&self) -> Vec<(usize, usize, usize)> {
        self.children
            .iter()
            .enumerate()
            .flat_map(|(a, cs)| cs.iter().enumerate().map(move |(p, &b)| (a, p, b)))
            .collect()
    }

    pub fn out_degree(&self, i: usize) -> usize {
        self.children[i].len()
    }

    /// Word indices sorted by rank.
    pub fn by_rank(&self) -> Vec<usize> {
        let mut order: Vec<usize> = (0..self.len()).collect();
        order.sort_by_key(|&i| self.rank[i]);
        order
    }

    /// Words reachable from `v`, `v` included.
    pub fn reachable(&self, v: usize) -> BTreeSet<usize> {
        let mut seen = BTreeSet::from([v]);
        let mut stack = vec![v];
        while let Some(x) = stack.pop() {
            for &c in &self.children[x] {
                if seen.insert(c) {
                    stack.push(c);
                }
            }
        }
        seen
    }

    /// Builds the DAG over `words` from pairwise chain-context tests. The
    /// first word must be the chain.
    pub fn from_words(words: Vec<Word>, cfg: &DictConfig) -> Result<Self> {
        if words.is_empty() || !words[0].is_chain() {
            return Err(VnxError::InvalidGraph("a dictionary starts with the chain word".into()));
        }
        let n = words.len();
        let contexts: Vec<CapGraph> = words.iter().map(Word::in_chain_context).collect();
        let pairs: Vec<(usize, usize)> = (0..n).flat_map(|a| (0..n).filter(move |&b| b != a).map(move |b| (a, b))).collect();
        let results = par::map(cfg.exec, &pairs, |&(a, b)| is_embeddable_with(&contexts[a], &contexts[b], &cfg.embed));
        let results = results.into_iter().collect::<Result<Vec<bool>>>()?;
        let mut rel = vec![vec![false; n]; n];
        for (&(a, b), r) in pairs.iter().zip(results) {
            rel[a][b] = r;
        }
        for (a, row) in rel.iter_mut().enumerate() {
            row[a] = true;
        }
        Self::from_relation(words, &rel)
    }

    /// Builds the DAG from a precomputed reflexive, transitive relation.
    pub fn from_relation(words: Vec<Word>, rel: &[Vec<bool>]) -> Result<Self> {
        let n = words.len();
        // classes of mutually embeddable words
        let mut class = vec![usize::MAX; n];
        let mut reps: Vec<usize> = Vec::new();
        for v in 0..n {
            if let Some(c) = reps.iter().position(|&r| rel[r][v] && rel[v][r]) {
                class[v] = c;
            } else {
                class[v] = reps.len();
                reps.push(v);
            }
        }
        let k = reps.len();
        let below = |x: usize, y: usize| x != y && rel[reps[x]][reps[y]];
        let mut class_edges = vec![Vec::new(); k];
        for x in 0..k {
            for y in 0..k {
                if below(x, y) && !(0..k).any(|z| z != x && z != y && below(x, z) && below(z, y)) {
                    class_edges[x].push(y);
                }
            }
        }
        let mut children = vec![Vec::new(); n];
        for a in 0..n {
            for &y in &class_edges[class[a]] {
                children[a].extend((0..n).filter(|&b| class[b] == y));
            }
        }
        Self::from_edges(words, children)
    }

    /// Assembles a dictionary from explicit edges, ordering ports by rank.
    pub fn from_edges(words: Vec<Word>, children: Vec<Vec<usize>>) -> Result<Self> {
        let mut d = Self::from_ports(words, children)?;
        let rank = d.rank.clone();
        for cs in &mut d.children {
            cs.sort_by_key(|&c| rank[c]);
        }
        Ok(d)
    }

    /// Like [`Dictionary::from_edges`] but keeps every port list as given.
    pub fn from_ports(words: Vec<Word>, children: Vec<Vec<usize>>) -> Result<Self> {
        let n = words.len();
        if children.len() != n {
            return Err(VnxError::InvalidGraph("one port list per word expected".into()));
        }
        for cs in &children {
            let mut seen = BTreeSet::new();
            if !cs.iter().all(|c| seen.insert(c)) {
                return Err(VnxError::InvalidGraph("repeated dictionary edge".into()));
            }
        }
        if n == 0 || !words[0].is_chain() {
            return Err(VnxError::InvalidGraph("a dictionary starts with the chain word".into()));
        }
        let mut indeg = vec![0usize; n];
        for cs in &children {
            for &c in cs {
                if c >= n {
                    return Err(VnxError::UnknownWord(c));
                }
                indeg[c] += 1;
            }
        }
        if (1..n).any(|v| indeg[v] == 0) || indeg[0] != 0 {
            return Err(VnxError::InvalidGraph("dictionary must have the chain as its single root".into()));
        }
        let key = |v: usize| Reverse((words[v].node_count(), words[v].edge_count(), v));
        let mut heap = BinaryHeap::from([key(0)]);
        let mut rank = vec![usize::MAX; n];
        let mut next = 0;
        while let Some(Reverse((_, _, v))) = heap.pop() {
            rank[v] = next;
            next += 1;
            for &c in &children[v] {
                indeg[c] -= 1;
                if indeg[c] == 0 {
                    heap.push(key(c));
                }
            }
        }
        if next != n {
            return Err(VnxError::InvalidGraph("dictionary edges contain a cycle".into()));
        }
        Ok(Self { words, root: 0, children, rank })
    }

    /// Worst-case requests to reach `v` by depth-first descent: the largest
    /// sum of out-degrees along a root-to-`v` path.
    pub fn cost(&self, v: usize) -> Result<usize> {
        if v >= self.len() {
            return Err(VnxError::UnknownWord(v));
        }
        Ok(self.costs()[v])
    }

    pub fn costs(&self) -> Vec<usize> {
        let mut best: Vec<Option<usize>> = vec![None; self.len()];
        best[self.root] = Some(0);
        for v in self.by_rank() {
            let Some(acc) = best[v] else { continue };
            let through = acc + self.out_degree(v);
            best[v] = Some(through);
            for &c in &self.children[v] {
                best[c] = Some(best[c].map_or(through, |x| x.max(through)));
            }
        }
        best.into_iter().map(|b| b.unwrap_or(0)).collect()
    }

    /// `max cost(v) / num_nodes(v)`.
    pub fn delta(&self) -> Ratio<i64> {
        self.costs()
            .iter()
            .zip(&self.words)
            .map(|(&c, w)| Ratio::new(c as i64, w.node_count() as i64))
            .max()
            .unwrap_or_default()
    }

    /// Edge soundness and transitive reduction, re-checked from scratch.
    pub fn verify(&self, cfg: &EmbedConfig) -> Result<Vec<String>> {
        let mut problems = Vec::new();
        for (a, _, b) in self.edges() {
            if !dict_edge_test(&self.words[a], &self.words[b], cfg)? {
                problems.push(format!("edge {a}->{b} fails the chain-context test"));
            }
            if self.rank[a] >= self.rank[b] {
                problems.push(format!("edge {a}->{b} goes against rank"));
            }
            for &c in &self.children[a] {
                if c != b && self.reachable(c).contains(&b) {
                    problems.push(format!("edge {a}->{b} is implied through {c}"));
                }
            }
        }
        Ok(problems)
    }
}

/// The chain word followed by one atomic word per motif and attachment-pair
/// orbit, then every gluing of the 2-connected atomic words with at most
/// `max_word_nodes` nodes.
pub fn build_dictionary(motifs: &MotifSet, max_word_nodes: usize, cfg: &DictConfig) -> Result<Dictionary> {
    if motifs.is_empty() {
        return Err(VnxError::InvalidGraph("empty motif set".into()));
    }
    if max_word_nodes < 2 {
        return Err(VnxError::InvalidGraph("words have at least two nodes".into()));
    }
    let mut words = vec![Word::chain()];
    let mut atoms: Vec<Atom> = Vec::new();
    for m in motifs.motifs.iter().filter(|m| !m.is_chain) {
        for w in atomic_words(m) {
            if w.node_count() <= max_word_nodes {
                atoms.push(w.parts[0].clone());
                push_word(&mut words, w, cfg.max_words)?;
            }
        }
    }
    let mut stack: Vec<Vec<usize>> = (0..atoms.len()).map(|i| vec![i]).collect();
    stack.reverse();
    while let Some(seq) = stack.pop() {
        let nodes: usize = seq.iter().map(|&i| atoms[i].motif.graph.node_count()).sum::<usize>() + 1 - seq.len();
        if seq.len() >= 2 {
            let parts: Vec<Atom> = seq.iter().map(|&i| atoms[i].clone()).collect();
            let w = Word::compose(&parts);
            if !words.iter().any(|x| x.node_count() == w.node_count() && x.same_as(&w)) {
                push_word(&mut words, w, cfg.max_words)?;
            }
        }
        for i in (0..atoms.len()).rev() {
            if nodes + atoms[i].motif.graph.node_count() - 1 <= max_word_nodes {
                let mut next = seq.clone();
                next.push(i);
                stack.push(next);
            }
        }
    }
    Dictionary::from_words(words, cfg)
}

fn push_word(words: &mut Vec<Word>, w: Word, cap: usize) -> Result<()> {
    if words.len() >= cap {
        return Err(VnxError::SizeLimit(format!("dictionary would exceed {cap} words")));
    }
    words.push(w);
    Ok(())
}

/// The dictionary over the given motifs without composite words.
pub fn atomic_dictionary(motifs: &[Motif], cfg: &DictConfig) -> Result<Dictionary> {
    let mut words = vec![Word::chain()];
    for m in motifs.iter().filter(|m| !m.is_chain) {
        words.extend(atomic_words(m));
    }
    Dictionary::from_words(words, cfg)
}

/// `{C}`: trees.
pub fn tree_dictionary() -> Dictionary {
    Dictionary::from_edges(vec![Word::chain()], vec![Vec::new()]).expect("single word")
}

/// `{C, Y}`: cactus graphs.
pub fn cactus_dictionary() -> Dictionary {
    let y = Motif::named("Y").expect("triangle");
    let words = vec![Word::chain(), Word::from_atom(Atom { motif: y, in_point: 0, out_point: 1 })];
    Dictionary::from_edges(words, vec![vec![1], Vec::new()]).expect("two words")
}

/// Chain plus one word per clique `K3..=K<max_k>`, forming a single path.
pub fn clique_dictionary(max_k: usize) -> Dictionary {
    let mut words = vec![Word::chain()];
    for k in 3..=max_k {
        let m = Motif::from_graph(crate::generate::clique(k));
        words.push(Word::from_atom(Atom { motif: m, in_point: 0, out_point: 1 }));
    }
    let n = words.len();
    let children = (0..n).map(|i| if i + 1 < n { vec![i + 1] } else { Vec::new() }).collect();
    Dictionary::from_edges(words, children).expect("clique path")
}

/// `{C, Y, D, B, K5}` with one attachment pair per motif. The diamond and
/// `K2,3` both enter at a degree-2 node and leave at a degree-3 node.
pub fn five_motif_words() -> Vec<Word> {
    let atom = |name: &str, i, o| Word::from_atom(Atom { motif: Motif::named(name).expect("catalog motif"), in_point: i, out_point: o });
    vec![Word::chain(), atom("Y", 0, 1), atom("D", 2, 0), atom("B", 2, 0), atom("K5", 0, 1)]
}

pub fn five_motif_dictionary() -> Dictionary {
    let children = vec![vec![1], vec![2], vec![3], vec![4], Vec::new()];
    Dictionary::from_edges(five_motif_words(), children).expect("five word path")
}

/// A host built from the five-motif words: the sequence `Y C C B D Y D D`
/// with four triangles and three pendant chains hanging off inner nodes.
/// No side word touches a node that an automorphism of its word maps to an
/// attachment point.
pub fn five_motif_host() -> CapGraph {
    let w = five_motif_words();
    let (c, y, d, b) = (&w[0], &w[1], &w[2], &w[3]);
    let main = glue_onto(&y.graph, y.out_point, &[c, c, b, d, y, d, d]).expect("main sequence");
    let mut g = main.graph;
    let at = |word: usize, node: NodeId| main.maps[word][node];
    let hooks = [
        (at(2, 1), y),
        (at(3, 0), y),
        (at(5, 1), y),
        (at(6, 3), y),
        (at(0, 1), c),
        (at(4, 2), c),
        (at(5, 3), c),
    ];
    for (at, word) in hooks {
        g = glue_onto(&g, at, &[word]).expect("side word").graph;
    }
    g
}

#[derive(Debug, Clone, PartialEq)]
pub enum Robustness {
    Ok,
    Counterexample { word: usize, sequence: Vec<usize> },
}

/// Checks `C·v·C ↦̸ C·W·C` for every word `v` and every sequence `W` of
/// words that neither equal nor descend from `v`, up to `compose_bound`
/// nodes, skipping `W` whose motifs contain those of a word reachable from
/// `v` as a contiguous run. Reports the first violation in word order.
pub fn check_robustness(d: &Dictionary, compose_bound: usize, cfg: &DictConfig) -> Result<Robustness> {
    let atom_ids = intern_atoms(d);
    let contexts: Vec<CapGraph> = d.words.iter().map(Word::in_chain_context).collect();
    let per_word = par::map_range(cfg.exec, d.len(), |v| -> Result<Option<Vec<usize>>> {
        let mut reach = d.reachable(v);
        // words with an isomorphic chain context sit beside v, not below it
        for (u, ctx) in contexts.iter().enumerate() {
            if crate::iso::is_isomorphic(ctx, &contexts[v]) {
                reach.extend(d.reachable(u));
            }
        }
        let others: Vec<usize> = (0..d.len()).filter(|u| !reach.contains(u)).collect();
        let forbidden: Vec<&Vec<usize>> = reach.iter().map(|&u| &atom_ids[u]).collect();
        let mut count = 0usize;
        let mut seq: Vec<usize> = Vec::new();
        audit(d, v, &contexts[v], &others, &forbidden, &atom_ids, compose_bound, 0, &mut seq, &mut count, cfg)
    });
    for (v, r) in per_word.into_iter().enumerate() {
        if let Some(sequence) = r? {
            return Ok(Robustness::Counterexample { word: v, sequence });
        }
    }
    Ok(Robustness::Ok)
}

#[allow(clippy::too_many_arguments)]
fn audit(
    d: &Dictionary,
    v: usize,
    v_ctx: &CapGraph,
    others: &[usize],
    forbidden: &[&Vec<usize>],
    atom_ids: &[Vec<usize>],
    bound: usize,
    nodes: usize,
    seq: &mut Vec<usize>,
    count: &mut usize,
    cfg: &DictConfig,
) -> Result<Option<Vec<usize>>> {
    for &u in others {
        let add = d.words[u].node_count() - usize::from(!seq.is_empty());
        if nodes + add > bound {
            continue;
        }
        seq.push(u);
        let flat: Vec<usize> = seq.iter().flat_map(|&w| atom_ids[w].iter().copied()).collect();
        if !forbidden.iter().any(|f| contains_run(&flat, f)) {
            *count += 1;
            if *count > cfg.max_sequences {
                return Err(VnxError::SizeLimit(format!("more than {} sequences to audit", cfg.max_sequences)));
            }
            let words: Vec<&Word> = seq.iter().map(|&w| &d.words[w]).collect();
            let (g, i, o) = realize(&words)?;
            if is_embeddable_with(v_ctx, &chain_context(&g, i, o), &cfg.embed)? {
                return Ok(Some(seq.clone()));
            }
            if let Some(found) = audit(d, v, v_ctx, others, forbidden, atom_ids, bound, nodes + add, seq, count, cfg)? {
                return Ok(Some(found));
            }
        }
        seq.pop();
    }
    Ok(None)
}

fn contains_run(hay: &[usize], needle: &[usize]) -> bool {
    needle.len() <= hay.len() && hay.windows(needle.len()).any(|w| w == needle)
}

/// Atom sequence of every word, atoms identified up to labelled isomorphism.
fn intern_atoms(d: &Dictionary) -> Vec<Vec<usize>> {
    let mut table: Vec<&Atom> = Vec::new();
    d.words
        .iter()
        .map(|w| {
            w.parts
                .iter()
                .map(|a| match table.iter().position(|t| t.same_as(a)) {
                    Some(i) => i,
                    None => {
                        table.push(a);
                        table.len() - 1
                    }
                })
                .collect()
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::embed::default_epsilon;

    fn cfg() -> DictConfig {
        DictConfig::default()
    }

    fn motif_set(names: &[&str]) -> MotifSet {
        let mut s = MotifSet::default();
        for n in names {
            s.insert(Motif::named(n).unwrap());
        }
        s
    }

    #[test]
    fn edge_test_examples() {
        let c = Word::chain();
        let y = &atomic_words(&Motif::named("Y").unwrap())[0];
        let e = EmbedConfig::default();
        assert!(dict_edge_test(&c, y, &e).unwrap());
        assert!(!dict_edge_test(y, &c, &e).unwrap());
        assert!(dict_edge_test(y, y, &e).unwrap());
    }

    #[test]
    fn pair_orbits() {
        assert_eq!(attachment_pairs(&CapGraph::chain()), vec![(0, 1)]);
        assert_eq!(attachment_pairs(&catalog::by_name("Y").unwrap()).len(), 1);
        assert_eq!(attachment_pairs(&catalog::by_name("K5").unwrap()).len(), 1);
        // diamond: hub-hub, hub-rim, rim-hub, rim-rim
        assert_eq!(attachment_pairs(&catalog::diamond()).len(), 4);
        // K2,3: same side of two, mixed both ways, same side of three
        assert_eq!(attachment_pairs(&catalog::by_name("B").unwrap()).len(), 4);
    }

    #[test]
    fn singleton_dictionary() {
        let d = build_dictionary(&motif_set(&["C"]), 10, &cfg()).unwrap();
        assert_eq!(d.len(), 1);
        assert!(d.edges().is_empty());
        assert_eq!(d.delta(), Ratio::from_integer(0));
        assert_eq!(check_robustness(&d, 8, &cfg()).unwrap(), Robustness::Ok);
    }

    #[test]
    fn chain_and_triangle() {
        let d = build_dictionary(&motif_set(&["C", "Y"]), 3, &cfg()).unwrap();
        assert_eq!(d.len(), 2);
        assert_eq!(d.edges(), vec![(0, 0, 1)]);
        assert_eq!(d.cost(0).unwrap(), 1);
        assert_eq!(d.cost(1).unwrap(), 1);
        assert_eq!(d.delta(), Ratio::new(1, 2));
        assert_eq!(d, cactus_dictionary());
        assert_eq!(check_robustness(&d, 9, &cfg()).unwrap(), Robustness::Ok);
    }

    #[test]
    fn bowtie_word_sits_above_triangle() {
        let d = build_dictionary(&motif_set(&["C", "Y"]), 5, &cfg()).unwrap();
        assert_eq!(d.len(), 3);
        assert_eq!(d.words[2].name(), "Y·Y");
        assert_eq!(d.edges(), vec![(0, 0, 1), (1, 0, 2)]);
    }

    #[test]
    fn clique_costs() {
        let d = clique_dictionary(8);
        assert_eq!(d.len(), 7);
        for i in 0..d.len() {
            assert!(d.cost(i).unwrap() < 3 * (i + 2));
        }
        assert!(d.delta() <= Ratio::from_integer(1));
        assert!(d.verify(&EmbedConfig::default()).unwrap().is_empty());
    }

    #[test]
    fn size_cap_is_enforced() {
        let c = DictConfig { max_words: 3, ..cfg() };
        let r = build_dictionary(&motif_set(&["C", "Y", "D"]), 8, &c);
        assert!(matches!(r, Err(VnxError::SizeLimit(_))));
    }

    #[test]
    fn realize_glues_out_to_in() {
        let y = &atomic_words(&Motif::named("Y").unwrap())[0];
        let (g, i, o) = realize(&[y, &Word::chain(), y]).unwrap();
        assert_eq!((g.node_count(), g.edge_count()), (6, 7));
        assert_ne!(i, o);
        assert!(realize(&[]).is_err());
        let _ = default_epsilon();
    }

    #[test]
    fn unknown_word_cost() {
        assert!(matches!(tree_dictionary().cost(3), Err(VnxError::UnknownWord(3))));
    }
}
