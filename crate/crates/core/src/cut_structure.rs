//! Tree and cactus graphs carrying the same minimum-cut family as an
//! augmentation input.
//!
//! With `k - 1` odd the minimum cuts are cross-free and form a tree; with
//! `k - 1` even they form a cactus. For `k = 2` and `k = 3` the contracted
//! input already has that shape. For larger `k` the family is enumerated and
//! the representation rebuilt from it: the non-crossing cuts give a laminar
//! tree, and every class of mutually crossing cuts is a circular partition
//! whose parts hang off one empty tree node, which is replaced by a circuit.
//!
//! The representation may need nodes carrying no input node (for instance
//! `K_4` at `k = 4` maps to a star with an empty centre). Input nodes keep
//! their ids `0..n`; empty nodes are appended after them.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::cuts::{enumerate_min_cuts, Cut};
use crate::error::{AugError, Result};
use crate::graph::{MultiGraph, NodeId};
use crate::instance::{inseparable_partition_of, Instance};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RepKind {
    Tree,
    Cactus,
}

impl RepKind {
    pub fn for_target(k: u32) -> RepKind {
        if k.is_multiple_of(2) {
            RepKind::Tree
        } else {
            RepKind::Cactus
        }
    }

    /// Connectivity target of the equivalent instance on the representation.
    pub fn target(self) -> u32 {
        match self {
            RepKind::Tree => 2,
            RepKind::Cactus => 3,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CutRepresentation {
    pub h: MultiGraph,
    pub kind: RepKind,
    /// Nodes `0..original_nodes` are the input nodes; the rest are empty.
    pub original_nodes: usize,
}

impl CutRepresentation {
    pub fn empty_nodes(&self) -> usize {
        self.h.node_count() - self.original_nodes
    }

    /// Minimum cuts of `h`, read off its structure.
    pub fn min_cuts(&self) -> BTreeSet<Cut> {
        structural_min_cuts(&self.h, self.kind)
    }

    /// Minimum cuts of `h` restricted to the input nodes.
    pub fn original_cut_family(&self) -> BTreeSet<Cut> {
        let total = self.h.node_count();
        self.min_cuts()
            .iter()
            .filter_map(|c| c.restrict(total, self.original_nodes))
            .collect()
    }
}

/// 2-edge-connected with every edge on exactly one circuit (every block is
/// a circuit, 2-circuits included). A single node counts as a cactus.
pub fn is_cactus(g: &MultiGraph) -> bool {
    if g.node_count() <= 1 {
        return g.edge_count() == 0;
    }
    if !g.is_connected() {
        return false;
    }
    g.blocks().iter().all(|block| {
        if block.len() < 2 {
            return false;
        }
        let mut nodes: Vec<NodeId> = block
            .iter()
            .flat_map(|&e| [g.edges()[e].0, g.edges()[e].1])
            .collect();
        nodes.sort_unstable();
        nodes.dedup();
        nodes.len() == block.len()
    })
}

pub fn is_tree(g: &MultiGraph) -> bool {
    g.is_connected() && g.edge_count() + 1 == g.node_count()
}

/// Minimum cuts of a tree (one per edge) or a cactus (one per pair of edges
/// on a common circuit), canonicalized.
pub fn structural_min_cuts(h: &MultiGraph, kind: RepKind) -> BTreeSet<Cut> {
    let n = h.node_count();
    let mut out = BTreeSet::new();
    if n < 2 {
        return out;
    }
    let side_without = |removed: &[usize]| -> Vec<bool> {
        let kept: Vec<(NodeId, NodeId)> = h
            .edges()
            .iter()
            .enumerate()
            .filter(|(i, _)| !removed.contains(i))
            .map(|(_, &e)| e)
            .collect();
        let g = MultiGraph::new(n, kept).expect("subgraph of a valid graph");
        let (_, comp) = g.components();
        comp.iter().map(|&c| c == comp[0]).collect()
    };
    match kind {
        RepKind::Tree => {
            for e in 0..h.edge_count() {
                out.extend(Cut::from_flags(&side_without(&[e])));
            }
        }
        RepKind::Cactus => {
            for block in h.blocks() {
                for (i, &a) in block.iter().enumerate() {
                    for &b in &block[i + 1..] {
                        out.extend(Cut::from_flags(&side_without(&[a, b])));
                    }
                }
            }
        }
    }
    out
}

/// Builds the tree (even `k`) or cactus (odd `k`) with the same minimum cuts
/// as `inst`'s graph. The graph must be `(k-1)`-edge-connected and free of
/// `k`-inseparable pairs; for `k >= 4` it must have at most `threshold` nodes.
pub fn build_representation(inst: &Instance, threshold: usize) -> Result<CutRepresentation> {
    let g = inst.graph();
    let k = inst.k();
    let kind = RepKind::for_target(k);
    let n = g.node_count();
    if k < 2 {
        return Err(AugError::InvalidArgument(
            "cut representations need a target of at least 2".into(),
        ));
    }
    if n == 1 {
        return Ok(CutRepresentation {
            h: g.clone(),
            kind,
            original_nodes: 1,
        });
    }
    let lambda = g.edge_connectivity().unwrap_or(usize::MAX);
    if lambda + 1 < k as usize {
        return Err(AugError::Precondition(format!(
            "graph is only {lambda}-edge-connected, target {k} needs {}",
            k - 1
        )));
    }
    if lambda >= k as usize {
        return Err(AugError::Precondition(
            "graph is already k-edge-connected, so its nodes are k-inseparable".into(),
        ));
    }
    match k {
        2 => {
            if !is_tree(g) {
                return Err(AugError::Precondition(
                    "2-inseparable pair present (graph is not a tree)".into(),
                ));
            }
            Ok(CutRepresentation {
                h: g.clone(),
                kind,
                original_nodes: n,
            })
        }
        3 => {
            if !is_cactus(g) {
                return Err(AugError::Precondition(
                    "3-inseparable pair present (graph is not a cactus)".into(),
                ));
            }
            Ok(CutRepresentation {
                h: g.clone(),
                kind,
                original_nodes: n,
            })
        }
        _ => {
            if n > threshold.min(63) {
                return Err(AugError::SizeLimit {
                    what: "node count for cut enumeration",
                    actual: n as u64,
                    limit: threshold.min(63) as u64,
                });
            }
            if !inseparable_partition_of(g, k as usize).is_trivial() {
                return Err(AugError::Precondition(format!(
                    "{k}-inseparable pair present"
                )));
            }
            let family = enumerate_min_cuts(g, threshold)?;
            debug_assert_eq!(family.value + 1, k as usize);
            if kind == RepKind::Cactus && family.value % 2 == 1 {
                return Err(AugError::Integrity("odd cut value with odd target".into()));
            }
            let masks: Vec<u64> = family
                .cuts
                .iter()
                .map(|c| c.side().iter().fold(0u64, |m, &v| m | 1 << v))
                .collect();
            rebuild(n, &masks, kind)
        }
    }
}

fn canonical(mask: u64, full: u64) -> u64 {
    if mask & 1 == 1 {
        mask
    } else {
        full & !mask
    }
}

fn crossing(a: u64, b: u64, full: u64) -> bool {
    a & b != 0 && a & !b != 0 && b & !a != 0 && (a | b) != full
}

/// Rebuilds a tree or cactus on `n` input nodes (plus empty nodes) from the
/// canonical cut masks of a minimum-cut family.
fn rebuild(n: usize, cuts: &[u64], kind: RepKind) -> Result<CutRepresentation> {
    let full = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    let m = cuts.len();

    // crossing classes via union-find
    let mut parent: Vec<usize> = (0..m).collect();
    fn find(p: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while p[r] != r {
            r = p[r];
        }
        let mut y = x;
        while p[y] != r {
            let next = p[y];
            p[y] = r;
            y = next;
        }
        r
    }
    let mut crosses_any = vec![false; m];
    for i in 0..m {
        for j in i + 1..m {
            if crossing(cuts[i], cuts[j], full) {
                crosses_any[i] = true;
                crosses_any[j] = true;
                let (a, b) = (find(&mut parent, i), find(&mut parent, j));
                parent[a] = b;
            }
        }
    }
    if kind == RepKind::Tree && crosses_any.iter().any(|&c| c) {
        return Err(AugError::Integrity(
            "crossing minimum cuts although the cut value is odd".into(),
        ));
    }

    // laminar tree over the non-crossing cuts, by their side without node 0
    let mut subtrees: Vec<u64> = (0..m)
        .filter(|&i| !crosses_any[i])
        .map(|i| full & !cuts[i])
        .collect();
    subtrees.sort_by_key(|&y| (y.count_ones(), y.trailing_zeros(), y));
    // tree node 0 is the root; tree node i + 1 carries subtrees[i]
    let nodes = subtrees.len() + 1;
    let mut tree_parent = vec![0usize; nodes];
    for (i, &y) in subtrees.iter().enumerate() {
        tree_parent[i + 1] = subtrees[i + 1..]
            .iter()
            .position(|&z| z & y == y)
            .map_or(0, |off| i + 1 + off + 1);
    }
    let mut owner = vec![0usize; n];
    let mut occupant: Vec<Option<NodeId>> = vec![None; nodes];
    for (v, slot) in owner.iter_mut().enumerate() {
        *slot = subtrees
            .iter()
            .position(|&y| y >> v & 1 == 1)
            .map_or(0, |i| i + 1);
        if occupant[*slot].replace(v).is_some() {
            return Err(AugError::Precondition(format!(
                "node {v} is not separated from another node by any minimum cut"
            )));
        }
    }
    let node_of_subtree: BTreeMap<u64, usize> = subtrees
        .iter()
        .enumerate()
        .map(|(i, &y)| (y, i + 1))
        .collect();

    // each crossing class becomes a circuit around an empty centre
    let mut classes: BTreeMap<usize, Vec<u64>> = BTreeMap::new();
    for i in (0..m).filter(|&i| crosses_any[i]) {
        let r = find(&mut parent, i);
        classes.entry(r).or_default().push(cuts[i]);
    }
    let mut centre_cycles: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for class in classes.values() {
        let (centre, cycle) = circular_class(n, full, class, &tree_parent, &node_of_subtree)?;
        if occupant[centre].is_some() {
            return Err(AugError::Integrity(
                "circuit centre carries an input node".into(),
            ));
        }
        if centre_cycles.insert(centre, cycle).is_some() {
            return Err(AugError::Integrity(
                "two crossing classes share a centre".into(),
            ));
        }
    }

    // number representation nodes: input nodes keep ids, empty ones follow
    let mut id = vec![usize::MAX; nodes];
    let mut next = n;
    for t in 0..nodes {
        if centre_cycles.contains_key(&t) {
            continue;
        }
        id[t] = match occupant[t] {
            Some(v) => v,
            None => {
                next += 1;
                next - 1
            }
        };
    }
    let mut h = MultiGraph::empty(next);
    for t in 1..nodes {
        let p = tree_parent[t];
        if centre_cycles.contains_key(&t) || centre_cycles.contains_key(&p) {
            continue;
        }
        h.push_edge(id[p], id[t]);
        if kind == RepKind::Cactus {
            h.push_edge(id[p], id[t]);
        }
    }
    for cycle in centre_cycles.values() {
        for (i, &a) in cycle.iter().enumerate() {
            let b = cycle[(i + 1) % cycle.len()];
            h.push_edge(id[a], id[b]);
        }
    }
    Ok(CutRepresentation {
        h,
        kind,
        original_nodes: n,
    })
}

/// For one class of mutually crossing cuts: returns the laminar-tree node
/// acting as its centre and the tree nodes of its parts in circular order.
fn circular_class(
    n: usize,
    full: u64,
    class: &[u64],
    tree_parent: &[usize],
    node_of_subtree: &BTreeMap<u64, usize>,
) -> Result<(usize, Vec<usize>)> {
    let bad = |msg: &str| AugError::Integrity(format!("crossing class is not circular: {msg}"));
    // atoms: nodes with identical membership across the class
    let mut atoms: BTreeMap<Vec<bool>, u64> = BTreeMap::new();
    for v in 0..n {
        let sig: Vec<bool> = class.iter().map(|&c| c >> v & 1 == 1).collect();
        *atoms.entry(sig).or_default() |= 1 << v;
    }
    let mut atoms: Vec<u64> = atoms.into_values().collect();
    atoms.sort_by_key(|a| a.trailing_zeros());
    let m = atoms.len();
    if m < 4 || class.len() != m * (m - 3) / 2 {
        return Err(bad("unexpected number of parts"));
    }
    let members: BTreeSet<u64> = class.iter().copied().collect();
    let mut adj = vec![Vec::new(); m];
    for i in 0..m {
        for j in i + 1..m {
            if members.contains(&canonical(atoms[i] | atoms[j], full)) {
                adj[i].push(j);
                adj[j].push(i);
            }
        }
    }
    if adj.iter().any(|a| a.len() != 2) {
        return Err(bad("parts do not form a single circuit"));
    }
    // atoms[0] holds node 0; walk towards the neighbour with the smaller node
    let mut order = vec![0usize];
    let mut prev = 0;
    let mut cur = adj[0][0].min(adj[0][1]);
    while cur != 0 {
        order.push(cur);
        let next = if adj[cur][0] == prev {
            adj[cur][1]
        } else {
            adj[cur][0]
        };
        prev = cur;
        cur = next;
        if order.len() > m {
            return Err(bad("walk did not close"));
        }
    }
    if order.len() != m {
        return Err(bad("parts do not form a single circuit"));
    }

    let mut centre = None;
    let mut tree_nodes = vec![0usize; m];
    for (i, &atom) in atoms.iter().enumerate().skip(1) {
        let t = *node_of_subtree
            .get(&atom)
            .ok_or_else(|| bad("part is not a laminar cut"))?;
        let p = tree_parent[t];
        if *centre.get_or_insert(p) != p {
            return Err(bad("parts hang off different tree nodes"));
        }
        tree_nodes[i] = t;
    }
    let centre = centre.expect("at least four parts");
    if centre == 0 || node_of_subtree.get(&(full & !atoms[0])) != Some(&centre) {
        return Err(bad("part holding node 0 does not meet the centre"));
    }
    tree_nodes[0] = tree_parent[centre];
    Ok((centre, order.into_iter().map(|i| tree_nodes[i]).collect()))
}
