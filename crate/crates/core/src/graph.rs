//! Undirected multigraphs, unit-capacity max-flow and the connectivity
//! queries built on it.

use std::collections::VecDeque;

use serde::{Deserialize, Serialize};

use crate::error::{AugError, Result};

pub type NodeId = usize;
pub type EdgeId = usize;

/// Undirected multigraph; parallel edges allowed, self-loops are not.
/// An edge's id is its position in `edges`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct MultiGraph {
    n: usize,
    edges: Vec<(NodeId, NodeId)>,
}

impl MultiGraph {
    pub fn new(n: usize, edges: Vec<(NodeId, NodeId)>) -> Result<Self> {
        for (i, &(u, v)) in edges.iter().enumerate() {
            if u >= n || v >= n {
                return Err(AugError::InvalidArgument(format!(
                    "edge {i} ({u},{v}) has an endpoint outside 0..{n}"
                )));
            }
            if u == v {
                return Err(AugError::InvalidArgument(format!(
                    "edge {i} is a self-loop at {u}"
                )));
            }
        }
        Ok(MultiGraph { n, edges })
    }

    pub fn empty(n: usize) -> Self {
        MultiGraph {
            n,
            edges: Vec::new(),
        }
    }

    pub fn path(n: usize) -> Self {
        MultiGraph {
            n,
            edges: (1..n).map(|i| (i - 1, i)).collect(),
        }
    }

    pub fn cycle(n: usize) -> Self {
        let mut g = Self::path(n);
        if n >= 2 {
            g.edges.push((n - 1, 0));
        }
        g
    }

    pub fn complete(n: usize) -> Self {
        let mut edges = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                edges.push((u, v));
            }
        }
        MultiGraph { n, edges }
    }

    pub fn node_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(NodeId, NodeId)] {
        &self.edges
    }

    /// Adds an edge, dropping it silently if it would be a self-loop.
    pub fn push_edge(&mut self, u: NodeId, v: NodeId) {
        assert!(u < self.n && v < self.n, "endpoint out of range");
        if u != v {
            self.edges.push((u, v));
        }
    }

    pub fn add_node(&mut self) -> NodeId {
        self.n += 1;
        self.n - 1
    }

    /// Neighbour lists as `(neighbour, edge id)`, ordered by edge id.
    pub fn adjacency(&self) -> Vec<Vec<(NodeId, EdgeId)>> {
        let mut adj = vec![Vec::new(); self.n];
        for (i, &(u, v)) in self.edges.iter().enumerate() {
            adj[u].push((v, i));
            adj[v].push((u, i));
        }
        adj
    }

    pub fn degrees(&self) -> Vec<usize> {
        let mut d = vec![0; self.n];
        for &(u, v) in &self.edges {
            d[u] += 1;
            d[v] += 1;
        }
        d
    }

    /// Image of the graph under `node_map` (old -> new) onto `new_n` nodes.
    /// Edges that collapse to a loop are dropped.
    pub fn contract(&self, node_map: &[NodeId], new_n: usize) -> MultiGraph {
        let edges = self
            .edges
            .iter()
            .map(|&(u, v)| (node_map[u], node_map[v]))
            .filter(|(u, v)| u != v)
            .collect();
        MultiGraph { n: new_n, edges }
    }

    /// Component index per node; components are numbered by their smallest node.
    pub fn components(&self) -> (usize, Vec<usize>) {
        self.components_avoiding(None)
    }

    /// Components of the graph with `removed` deleted. The removed node gets
    /// `usize::MAX`.
    pub fn components_avoiding(&self, removed: Option<NodeId>) -> (usize, Vec<usize>) {
        let adj = self.adjacency();
        let mut comp = vec![usize::MAX; self.n];
        let mut count = 0;
        for s in 0..self.n {
            if comp[s] != usize::MAX || Some(s) == removed {
                continue;
            }
            comp[s] = count;
            let mut stack = vec![s];
            while let Some(u) = stack.pop() {
                for &(v, _) in &adj[u] {
                    if comp[v] == usize::MAX && Some(v) != removed {
                        comp[v] = count;
                        stack.push(v);
                    }
                }
            }
            count += 1;
        }
        (count, comp)
    }

    pub fn is_connected(&self) -> bool {
        self.n <= 1 || self.components().0 == 1
    }

    /// Number of edges with exactly one endpoint in `side`.
    pub fn cut_value(&self, side: &[bool]) -> usize {
        self.edges
            .iter()
            .filter(|&&(u, v)| side[u] != side[v])
            .count()
    }

    /// Maximum number of edge-disjoint `s`-`t` paths, stopping early once
    /// `limit` is reached. Also returns the source side of a minimum cut
    /// (meaningful when the limit was not hit).
    pub fn max_flow(&self, s: NodeId, t: NodeId, limit: Option<usize>) -> (usize, Vec<bool>) {
        assert_ne!(s, t);
        let adj = self.adjacency();
        // flow[e] > 0 means one unit from edges[e].0 to edges[e].1
        let mut flow = vec![0i8; self.edges.len()];
        let mut value = 0;
        let residual = |flow: &[i8], e: EdgeId, from: NodeId| -> bool {
            let forward = self.edges[e].0 == from;
            if forward {
                flow[e] < 1
            } else {
                flow[e] > -1
            }
        };
        loop {
            if limit.is_some_and(|l| value >= l) {
                return (value, vec![false; self.n]);
            }
            let mut pred: Vec<Option<(NodeId, EdgeId)>> = vec![None; self.n];
            let mut seen = vec![false; self.n];
            seen[s] = true;
            let mut queue = VecDeque::from([s]);
            while let Some(u) = queue.pop_front() {
                if u == t {
                    break;
                }
                for &(v, e) in &adj[u] {
                    if !seen[v] && residual(&flow, e, u) {
                        seen[v] = true;
                        pred[v] = Some((u, e));
                        queue.push_back(v);
                    }
                }
            }
            if !seen[t] {
                return (value, seen);
            }
            let mut v = t;
            while let Some((u, e)) = pred[v] {
                if self.edges[e].0 == u {
                    flow[e] += 1;
                } else {
                    flow[e] -= 1;
                }
                v = u;
            }
            value += 1;
        }
    }

    /// Minimum over all cuts of the boundary size. `None` when the graph has
    /// fewer than two nodes (no cut exists). Zero iff disconnected.
    pub fn edge_connectivity(&self) -> Option<usize> {
        self.min_cut().map(|(v, _)| v)
    }

    /// A minimum cut value together with a witness side containing node 0.
    pub fn min_cut(&self) -> Option<(usize, Vec<bool>)> {
        if self.n < 2 {
            return None;
        }
        let (count, comp) = self.components();
        if count > 1 {
            let side = comp.iter().map(|&c| c == comp[0]).collect();
            return Some((0, side));
        }
        let mut best: Option<(usize, Vec<bool>)> = None;
        for t in 1..self.n {
            let limit = best.as_ref().map(|b| b.0);
            let (value, side) = self.max_flow(0, t, limit);
            if best.as_ref().is_none_or(|b| value < b.0) {
                best = Some((value, side));
            }
        }
        best
    }

    pub fn is_k_edge_connected(&self, k: usize) -> bool {
        match self.edge_connectivity() {
            None => true,
            Some(lambda) => lambda >= k,
        }
    }

    /// Cut nodes (articulation points) in increasing order.
    pub fn cut_nodes(&self) -> Vec<NodeId> {
        let blocks = self.blocks();
        let mut count = vec![0usize; self.n];
        for block in &blocks {
            let mut nodes: Vec<NodeId> = block
                .iter()
                .flat_map(|&e| [self.edges[e].0, self.edges[e].1])
                .collect();
            nodes.sort_unstable();
            nodes.dedup();
            for v in nodes {
                count[v] += 1;
            }
        }
        (0..self.n).filter(|&v| count[v] >= 2).collect()
    }

    /// Blocks (maximal 2-node-connected pieces, bridges included) as edge id
    /// lists. Two parallel edges between the same pair form one block.
    pub fn blocks(&self) -> Vec<Vec<EdgeId>> {
        let adj = self.adjacency();
        let mut disc = vec![usize::MAX; self.n];
        let mut low = vec![0usize; self.n];
        let mut timer = 0;
        let mut edge_stack: Vec<EdgeId> = Vec::new();
        let mut blocks = Vec::new();

        for root in 0..self.n {
            if disc[root] != usize::MAX {
                continue;
            }
            disc[root] = timer;
            low[root] = timer;
            timer += 1;
            // (node, parent edge, next adjacency index)
            let mut stack: Vec<(NodeId, Option<EdgeId>, usize)> = vec![(root, None, 0)];
            while let Some(&mut (u, parent_edge, ref mut idx)) = stack.last_mut() {
                if *idx < adj[u].len() {
                    let (v, e) = adj[u][*idx];
                    *idx += 1;
                    if Some(e) == parent_edge {
                        continue;
                    }
                    if disc[v] == usize::MAX {
                        edge_stack.push(e);
                        disc[v] = timer;
                        low[v] = timer;
                        timer += 1;
                        stack.push((v, Some(e), 0));
                    } else if disc[v] < disc[u] {
                        edge_stack.push(e);
                        low[u] = low[u].min(disc[v]);
                    }
                } else {
                    stack.pop();
                    if let (Some(e), Some(&(p, _, _))) = (parent_edge, stack.last()) {
                        low[p] = low[p].min(low[u]);
                        if low[u] >= disc[p] {
                            let mut block = Vec::new();
                            while let Some(f) = edge_stack.pop() {
                                block.push(f);
                                if f == e {
                                    break;
                                }
                            }
                            block.sort_unstable();
                            blocks.push(block);
                        }
                    }
                }
            }
        }
        blocks.sort();
        blocks
    }

    /// Bridges (edges on no circuit), by id.
    pub fn bridges(&self) -> Vec<EdgeId> {
        let mut b: Vec<EdgeId> = self
            .blocks()
            .into_iter()
            .filter(|blk| blk.len() == 1)
            .map(|blk| blk[0])
            .collect();
        b.sort_unstable();
        b
    }

    /// Connected, and no node whose removal disconnects the rest. On two
    /// nodes this additionally asks for two parallel edges, so that the
    /// notion coincides with 2-edge-connectivity plus absence of cut nodes.
    pub fn is_two_node_connected(&self) -> bool {
        if self.n <= 1 {
            return true;
        }
        self.is_k_edge_connected(2) && self.cut_nodes().is_empty()
    }
}

/// `separates(b, a, c)`: every `a`-`c` path visits `b` (`b == a` or `b == c`
/// allowed). Precomputed from the components of `G - b` for every `b`.
#[derive(Clone, Debug)]
pub struct SeparatorTable {
    comp_without: Vec<Vec<usize>>,
}

impl SeparatorTable {
    pub fn new(g: &MultiGraph) -> Self {
        let comp_without = (0..g.node_count())
            .map(|b| g.components_avoiding(Some(b)).1)
            .collect();
        SeparatorTable { comp_without }
    }

    pub fn separates(&self, b: NodeId, a: NodeId, c: NodeId) -> bool {
        b == a || b == c || self.comp_without[b][a] != self.comp_without[b][c]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn brute_connectivity(g: &MultiGraph) -> usize {
        let n = g.node_count();
        (1u64..(1 << (n - 1)))
            .map(|mask| {
                let side: Vec<bool> = (0..n).map(|v| v == 0 || mask >> (v - 1) & 1 == 1).collect();
                side
            })
            .filter(|side| side.iter().any(|&b| !b))
            .map(|side| g.cut_value(&side))
            .min()
            .unwrap()
    }

    #[test]
    fn connectivity_examples() {
        assert_eq!(MultiGraph::path(3).edge_connectivity(), Some(1));
        assert_eq!(MultiGraph::cycle(4).edge_connectivity(), Some(2));
        assert_eq!(MultiGraph::complete(4).edge_connectivity(), Some(3));
        assert_eq!(brute_connectivity(&MultiGraph::complete(4)), 3);
        assert_eq!(MultiGraph::empty(1).edge_connectivity(), None);
        assert_eq!(MultiGraph::empty(3).edge_connectivity(), Some(0));
    }

    #[test]
    fn k_connectivity_examples() {
        assert!(MultiGraph::cycle(4).is_k_edge_connected(2));
        assert!(!MultiGraph::path(3).is_k_edge_connected(2));
        assert!(MultiGraph::complete(4).is_k_edge_connected(3));
        assert!(!MultiGraph::complete(4).is_k_edge_connected(4));
    }

    #[test]
    fn rejects_loops_and_bad_ids() {
        assert!(MultiGraph::new(2, vec![(0, 0)]).is_err());
        assert!(MultiGraph::new(2, vec![(0, 2)]).is_err());
    }

    #[test]
    fn blocks_and_cut_nodes() {
        // triangle 0-1-2 with pendant 3 on node 2, and a doubled edge 3=4
        let g = MultiGraph::new(5, vec![(0, 1), (1, 2), (2, 0), (2, 3), (3, 4), (3, 4)]).unwrap();
        assert_eq!(g.blocks(), vec![vec![0, 1, 2], vec![3], vec![4, 5]]);
        assert_eq!(g.cut_nodes(), vec![2, 3]);
        assert_eq!(g.bridges(), vec![3]);
    }

    #[test]
    fn two_node_connectivity() {
        assert!(MultiGraph::cycle(3).is_two_node_connected());
        assert!(!MultiGraph::path(3).is_two_node_connected());
        assert!(!MultiGraph::path(2).is_two_node_connected());
        let bowtie =
            MultiGraph::new(5, vec![(0, 1), (1, 2), (2, 0), (2, 3), (3, 4), (4, 2)]).unwrap();
        assert!(bowtie.is_k_edge_connected(2));
        assert!(!bowtie.is_two_node_connected());
    }

    #[test]
    fn separator_table_on_cycle() {
        let g = MultiGraph::cycle(4);
        let sep = SeparatorTable::new(&g);
        assert!(!sep.separates(1, 0, 2));
        assert!(sep.separates(0, 0, 2));
        let p = MultiGraph::path(4);
        let sep = SeparatorTable::new(&p);
        assert!(sep.separates(1, 0, 3));
        assert!(!sep.separates(3, 0, 2));
    }

    #[test]
    fn flow_matches_brute_force_on_small_multigraphs() {
        let g = MultiGraph::new(
            5,
            vec![
                (0, 1),
                (0, 1),
                (1, 2),
                (2, 3),
                (3, 4),
                (4, 0),
                (1, 3),
                (2, 4),
            ],
        )
        .unwrap();
        assert_eq!(g.edge_connectivity().unwrap(), brute_connectivity(&g));
    }
}
