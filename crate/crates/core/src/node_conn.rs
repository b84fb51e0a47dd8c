//! Node-connectivity augmentation from 1 to 2.
//!
//! Every cut node `v` of the input is split: with `V_1, .., V_r` the
//! components of `G - v` (ordered by smallest node id), new nodes
//! `v_1, .., v_r` are joined to `v` by special edges, and every edge or link
//! from `V_i` to `v` is moved to `v_i`. The split graph plus the moved links
//! is 2-edge-connected whenever the original graph plus the links is
//! 2-node-connected. The converse needs one more condition once a cut node
//! has four or more sides: links may pair the sides up without joining the
//! pairs (the star `K_{1,4}` with links `(1,3)` and `(2,4)` around centre
//! `0`). [`side_group_cuts`] lists the extra cuts, and [`solve_node_1_2`]
//! falls back to covering them when the edge pipeline's answer leaves a cut
//! node.

use crate::cuts::Cut;
use crate::error::{AugError, Result};
use crate::graph::{MultiGraph, NodeId};
use crate::instance::{Instance, LinkKey};
use crate::solution::Solution;
use crate::solver::{min_cost_cover, solve};

/// Correspondence between a split instance and its original.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SplitMap {
    /// Original node of every split node; nodes below the original count
    /// map to themselves.
    pub original_of: Vec<NodeId>,
    /// Split cut nodes, in splitting order.
    pub cut_nodes: Vec<NodeId>,
    /// Special edges `(v, v_i)`.
    pub special: Vec<(NodeId, NodeId)>,
}

impl SplitMap {
    pub fn original_key(&self, key: &LinkKey) -> LinkKey {
        LinkKey::new(self.original_of[key.u], self.original_of[key.v], key.t)
    }
}

/// Image of `key` under the splitting recorded in `map`.
pub fn split_key(map: &SplitMap, split: &MultiGraph, key: &LinkKey) -> LinkKey {
    // a moved endpoint goes to the satellite of the side the other end is on
    let mut ends = [key.u, key.v];
    for &v in &map.cut_nodes {
        for i in 0..2 {
            if ends[i] == v {
                ends[i] = satellite(map, split, v, ends[1 - i]);
            }
        }
    }
    LinkKey::new(ends[0], ends[1], key.t)
}

/// The satellite of cut node `v` whose side contains `x`.
fn satellite(map: &SplitMap, split: &MultiGraph, v: NodeId, x: NodeId) -> NodeId {
    let (_, comp) = split.components_avoiding(Some(v));
    map.special
        .iter()
        .filter(|&&(c, _)| c == v)
        .map(|&(_, s)| s)
        .find(|&s| comp[s] == comp[x])
        .expect("every side of a split node has a satellite")
}

pub fn split_cut_nodes(inst: &Instance) -> Result<(Instance, SplitMap)> {
    let g = inst.graph();
    if !g.is_connected() {
        return Err(AugError::Precondition(
            "node-connectivity augmentation needs a connected graph".into(),
        ));
    }
    let n = g.node_count();
    let cut_nodes = g.cut_nodes();
    let mut edges: Vec<(NodeId, NodeId)> = g.edges().to_vec();
    let mut links: Vec<(LinkKey, crate::cost::Cost)> =
        inst.links().iter().map(|l| (l.key, l.cost)).collect();
    let mut original_of: Vec<NodeId> = (0..n).collect();
    let mut special = Vec::new();
    for &v in &cut_nodes {
        let current = MultiGraph::new(original_of.len(), edges.clone())?;
        let (r, comp) = current.components_avoiding(Some(v));
        // components are numbered by smallest member
        let sat: Vec<NodeId> = (0..r).map(|i| original_of.len() + i).collect();
        for &s in &sat {
            original_of.push(v);
            special.push((v, s));
        }
        let moved = |x: NodeId, other: NodeId| if x == v { sat[comp[other]] } else { x };
        for e in edges.iter_mut() {
            *e = (moved(e.0, e.1), moved(e.1, e.0));
        }
        for (k, _) in links.iter_mut() {
            *k = LinkKey::new(moved(k.u, k.v), moved(k.v, k.u), k.t);
        }
        for &(a, b) in &special {
            if a == v {
                edges.push((a, b));
            }
        }
    }
    let graph = MultiGraph::new(original_of.len(), edges)?;
    let split = Instance::new(graph, links, 2, inst.p())?;
    Ok((
        split,
        SplitMap {
            original_of,
            cut_nodes,
            special,
        },
    ))
}

/// Bridge cuts of the split graph.
pub fn bridge_cuts(split: &MultiGraph) -> Vec<Cut> {
    let n = split.node_count();
    split
        .bridges()
        .into_iter()
        .filter_map(|b| {
            let rest: Vec<_> = split
                .edges()
                .iter()
                .enumerate()
                .filter(|&(i, _)| i != b)
                .map(|(_, &e)| e)
                .collect();
            let g = MultiGraph::new(n, rest).expect("same node set");
            let (_, comp) = g.components();
            let flags: Vec<bool> = comp
                .iter()
                .map(|&c| c == comp[split.edges()[b].0])
                .collect();
            Cut::from_flags(&flags)
        })
        .collect()
}

/// For every split node `v` and every grouping of its sides into two groups
/// of at least two sides each, the cut formed by one group (satellites
/// included). `G + F` is 2-node-connected exactly when the image of `F`
/// covers these cuts and the bridge cuts.
pub fn side_group_cuts(split: &MultiGraph, map: &SplitMap) -> Vec<Cut> {
    let n = split.node_count();
    let mut out = Vec::new();
    for &v in &map.cut_nodes {
        let (r, comp) = split.components_avoiding(Some(v));
        // side 0 stays outside so each grouping is listed once
        for mask in 1u64..(1 << (r - 1)) {
            let group = |c: usize| c > 0 && mask >> (c - 1) & 1 == 1;
            let inside = (0..r).filter(|&c| group(c)).count();
            if inside < 2 || r - inside < 2 {
                continue;
            }
            let flags: Vec<bool> = (0..n).map(|x| x != v && group(comp[x])).collect();
            out.extend(Cut::from_flags(&flags));
        }
    }
    out
}

/// Cheapest links making the graph 2-node-connected.
pub fn solve_node_1_2(inst: &Instance) -> Result<Solution> {
    if inst.k() != 2 {
        return Err(AugError::InvalidArgument(
            "node-connectivity augmentation supports target 2 only".into(),
        ));
    }
    let (split, map) = split_cut_nodes(inst)?;
    let sol = solve(&split)?;
    if !sol.is_optimal() {
        return Ok(sol);
    }
    let to_original =
        |keys: Vec<LinkKey>| Solution::from_keys(inst, keys.iter().map(|k| map.original_key(k)));
    let out = to_original(sol.keys())?;
    if node_connected(inst, &out) {
        return Ok(out);
    }
    log::debug!("edge optimum leaves a cut node; covering side groups");
    let mut cuts = bridge_cuts(split.graph());
    cuts.extend(side_group_cuts(split.graph(), &map));
    let Some(keys) = min_cost_cover(&split, &cuts) else {
        return Ok(Solution::infeasible());
    };
    let out = to_original(keys)?;
    if !node_connected(inst, &out) {
        return Err(AugError::Integrity(
            "mapped solution is not 2-node-connected".into(),
        ));
    }
    Ok(out)
}

fn node_connected(inst: &Instance, sol: &Solution) -> bool {
    crate::oracle::augmented_graph(inst.graph(), &sol.keys()).is_two_node_connected()
}
