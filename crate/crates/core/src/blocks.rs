//! Biconnected components (blocks), articulation points and bridges.

use std::collections::BTreeSet;

use crate::graph::{edge_key, CapGraph, Edge, NodeId};

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct BlockDecomposition {
    /// Node sets of every block, each sorted; blocks sorted by smallest node.
    pub blocks: Vec<Vec<NodeId>>,
    pub articulation_points: BTreeSet<NodeId>,
    pub bridges: BTreeSet<Edge>,
}

impl BlockDecomposition {
    /// Blocks with at least three nodes, i.e. the 2-connected ones.
    pub fn biconnected(&self) -> impl Iterator<Item = &Vec<NodeId>> {
        self.blocks.iter().filter(|b| b.len() >= 3)
    }
}

/// Iterative Hopcroft-Tarjan over every connected component.
pub fn decompose(g: &CapGraph) -> BlockDecomposition {
    let n = g.node_count();
    let adj: Vec<Vec<NodeId>> = g.nodes().map(|v| g.neighbors(v).collect()).collect();
    let mut disc = vec![usize::MAX; n];
    let mut low = vec![0usize; n];
    let mut timer = 0;
    let mut edge_stack: Vec<Edge> = Vec::new();
    let mut out = BlockDecomposition::default();

    for root in 0..n {
        if disc[root] != usize::MAX {
            continue;
        }
        disc[root] = timer;
        low[root] = timer;
        timer += 1;
        let mut root_children = 0;
        // (node, parent, next neighbour index)
        let mut stack: Vec<(NodeId, usize, usize)> = vec![(root, usize::MAX, 0)];
        while let Some(&mut (v, parent, ref mut idx)) = stack.last_mut() {
            if *idx < adj[v].len() {
                let w = adj[v][*idx];
                *idx += 1;
                if w == parent {
                    continue;
                }
                if disc[w] == usize::MAX {
                    disc[w] = timer;
                    low[w] = timer;
                    timer += 1;
                    edge_stack.push((v, w));
                    if v == root {
                        root_children += 1;
                    }
                    stack.push((w, v, 0));
                } else if disc[w] < disc[v] {
                    low[v] = low[v].min(disc[w]);
                    edge_stack.push((v, w));
                }
            } else {
                stack.pop();
                if parent == usize::MAX {
                    continue;
                }
                low[parent] = low[parent].min(low[v]);
                if low[v] >= disc[parent] {
                    if parent != root {
                        out.articulation_points.insert(parent);
                    }
                    let mut nodes = BTreeSet::new();
                    while let Some((a, b)) = edge_stack.pop() {
                        nodes.insert(a);
                        nodes.insert(b);
                        if (a, b) == (parent, v) {
                            break;
                        }
                    }
                    if nodes.len() == 2 {
                        out.bridges.insert(edge_key(parent, v));
                    }
                    out.blocks.push(nodes.into_iter().collect());
                }
            }
        }
        if root_children > 1 {
            out.articulation_points.insert(root);
        }
        if adj[root].is_empty() {
            out.blocks.push(vec![root]);
        }
    }
    out.blocks.sort();
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn triangle_with_pendant() {
        let g = CapGraph::from_edges(4, &[(0, 1), (1, 2), (2, 0), (2, 3)]);
        let d = decompose(&g);
        assert_eq!(d.blocks, vec![vec![0, 1, 2], vec![2, 3]]);
        assert_eq!(d.articulation_points, BTreeSet::from([2]));
        assert_eq!(d.bridges, BTreeSet::from([(2, 3)]));
    }

    #[test]
    fn bowtie_has_no_bridge() {
        let g = CapGraph::from_edges(5, &[(0, 1), (1, 2), (2, 0), (0, 3), (3, 4), (4, 0)]);
        let d = decompose(&g);
        assert_eq!(d.blocks.len(), 2);
        assert!(d.bridges.is_empty());
        assert_eq!(d.articulation_points, BTreeSet::from([0]));
    }

    #[test]
    fn path_is_all_bridges() {
        let g = CapGraph::from_edges(4, &[(0, 1), (1, 2), (2, 3)]);
        let d = decompose(&g);
        assert_eq!(d.bridges.len(), 3);
        assert_eq!(d.articulation_points, BTreeSet::from([1, 2]));
    }

    #[test]
    fn isolated_node_is_its_own_block() {
        let d = decompose(&CapGraph::new(1));
        assert_eq!(d.blocks, vec![vec![0]]);
    }
}
