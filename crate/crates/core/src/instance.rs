//! Augmentation instances: a multigraph, a link table with weights and
//! costs, the connectivity target `k` and the weight budget `p`.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::cost::Cost;
use crate::error::{AugError, Result};
use crate::graph::{MultiGraph, NodeId};
use crate::trace::TraceStep;

/// Identifies the `t`-link between two nodes. Endpoints are stored with
/// `u < v`; an instance holds at most one link per key.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct LinkKey {
    pub u: NodeId,
    pub v: NodeId,
    pub t: u32,
}

impl LinkKey {
    pub fn new(a: NodeId, b: NodeId, t: u32) -> Self {
        assert_ne!(a, b, "link endpoints must differ");
        let (u, v) = if a < b { (a, b) } else { (b, a) };
        LinkKey { u, v, t }
    }

    pub fn other(&self, x: NodeId) -> NodeId {
        if x == self.u {
            self.v
        } else {
            self.u
        }
    }

    pub fn has_endpoint(&self, x: NodeId) -> bool {
        self.u == x || self.v == x
    }

    pub fn same_pair(&self, other: &LinkKey) -> bool {
        self.u == other.u && self.v == other.v
    }
}

impl fmt::Display for LinkKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},t={})", self.u, self.v, self.t)
    }
}

pub type LinkId = usize;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Link {
    pub id: LinkId,
    pub key: LinkKey,
    pub cost: Cost,
}

impl Link {
    pub fn weight(&self) -> u32 {
        self.key.t
    }
}

/// Disjoint node classes covering every node; classes are sorted and
/// ordered by their smallest member.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Partition {
    pub classes: Vec<Vec<NodeId>>,
}

impl Partition {
    pub fn new(mut classes: Vec<Vec<NodeId>>) -> Self {
        for c in &mut classes {
            c.sort_unstable();
        }
        classes.retain(|c| !c.is_empty());
        classes.sort();
        Partition { classes }
    }

    pub fn singletons(n: usize) -> Self {
        Partition {
            classes: (0..n).map(|v| vec![v]).collect(),
        }
    }

    /// Old node -> class index.
    pub fn node_map(&self, n: usize) -> Vec<NodeId> {
        let mut map = vec![usize::MAX; n];
        for (i, c) in self.classes.iter().enumerate() {
            for &v in c {
                map[v] = i;
            }
        }
        map
    }

    pub fn is_trivial(&self) -> bool {
        self.classes.iter().all(|c| c.len() == 1)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Instance {
    graph: MultiGraph,
    links: Vec<Link>,
    k: u32,
    p: u32,
    index: BTreeMap<LinkKey, LinkId>,
}

/// Collapses candidate links to one per key: the cheapest, ties going to the
/// earlier candidate. Returns the winners in key order together with the
/// index of the winning candidate.
pub(crate) fn cheapest_per_key(
    candidates: impl IntoIterator<Item = (LinkKey, Cost)>,
) -> Vec<(LinkKey, Cost, usize)> {
    let mut best: BTreeMap<LinkKey, (Cost, usize)> = BTreeMap::new();
    for (i, (key, cost)) in candidates.into_iter().enumerate() {
        match best.get(&key) {
            Some(&(c, _)) if c <= cost => {}
            _ => {
                best.insert(key, (cost, i));
            }
        }
    }
    best.into_iter().map(|(k, (c, i))| (k, c, i)).collect()
}

impl Instance {
    /// Builds an instance, rejecting duplicate keys, weights outside `1..=p`
    /// and endpoints outside the graph.
    pub fn new(
        graph: MultiGraph,
        links: impl IntoIterator<Item = (LinkKey, Cost)>,
        k: u32,
        p: u32,
    ) -> Result<Self> {
        let mut index = BTreeMap::new();
        let mut out = Vec::new();
        let n = graph.node_count();
        for (key, cost) in links {
            if key.v >= n {
                return Err(AugError::InvalidArgument(format!(
                    "link {key} leaves the graph"
                )));
            }
            if key.t == 0 || key.t > p {
                return Err(AugError::InvalidArgument(format!(
                    "link {key} has weight outside 1..={p}"
                )));
            }
            if index.insert(key, out.len()).is_some() {
                return Err(AugError::InvalidArgument(format!("duplicate link {key}")));
            }
            out.push(Link {
                id: out.len(),
                key,
                cost,
            });
        }
        if k == 0 {
            return Err(AugError::InvalidArgument(
                "connectivity target must be at least 1".into(),
            ));
        }
        Ok(Instance {
            graph,
            links: out,
            k,
            p,
            index,
        })
    }

    pub fn graph(&self) -> &MultiGraph {
        &self.graph
    }

    pub fn links(&self) -> &[Link] {
        &self.links
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn node_count(&self) -> usize {
        self.graph.node_count()
    }

    pub fn link(&self, key: &LinkKey) -> Option<&Link> {
        self.index.get(key).map(|&i| &self.links[i])
    }

    /// Cost of the `t`-link; absent links cost `Infinite`.
    pub fn cost(&self, key: &LinkKey) -> Cost {
        self.link(key).map_or(Cost::Infinite, |l| l.cost)
    }

    pub fn finite_links(&self) -> impl Iterator<Item = &Link> {
        self.links.iter().filter(|l| l.cost.is_finite())
    }

    pub fn with_target(&self, k: u32) -> Instance {
        let mut c = self.clone();
        c.k = k;
        c
    }

    pub fn with_budget(&self, p: u32) -> Result<Instance> {
        Instance::new(
            self.graph.clone(),
            self.links
                .iter()
                .filter(|l| l.key.t <= p)
                .map(|l| (l.key, l.cost)),
            self.k,
            p,
        )
    }

    pub fn with_graph(&self, graph: MultiGraph) -> Result<Instance> {
        Instance::new(
            graph,
            self.links.iter().map(|l| (l.key, l.cost)),
            self.k,
            self.p,
        )
    }
}

/// Maximal classes of pairwise `k`-inseparable nodes (`k` edge-disjoint
/// paths between any two members), for `k = inst.k()`.
pub fn inseparable_partition(inst: &Instance) -> Partition {
    inseparable_partition_of(inst.graph(), inst.k() as usize)
}

pub fn inseparable_partition_of(g: &MultiGraph, k: usize) -> Partition {
    let n = g.node_count();
    if k == 0 {
        return Partition::new(vec![(0..n).collect()]);
    }
    let mut class = vec![usize::MAX; n];
    let mut classes: Vec<Vec<NodeId>> = Vec::new();
    let (_, comp) = g.components();
    for x in 0..n {
        if class[x] != usize::MAX {
            continue;
        }
        class[x] = classes.len();
        let mut members = vec![x];
        for y in x + 1..n {
            if class[y] != usize::MAX || comp[x] != comp[y] {
                continue;
            }
            if g.max_flow(x, y, Some(k)).0 >= k {
                class[y] = classes.len();
                members.push(y);
            }
        }
        classes.push(members);
    }
    Partition::new(classes)
}

/// Contracts every class of `partition` to one node. Node ids follow the
/// class order; for each `(pair, t)` only a cheapest link survives (ties to
/// the smaller old key). The trace step maps surviving keys back.
pub fn contract_partition(inst: &Instance, partition: &Partition) -> (Instance, TraceStep) {
    let n = inst.node_count();
    let new_n = partition.classes.len();
    let node_map = partition.node_map(n);
    let graph = inst.graph().contract(&node_map, new_n);
    let mapped: Vec<(LinkKey, Cost, LinkKey)> = inst
        .links()
        .iter()
        .filter(|l| node_map[l.key.u] != node_map[l.key.v])
        .map(|l| {
            (
                LinkKey::new(node_map[l.key.u], node_map[l.key.v], l.key.t),
                l.cost,
                l.key,
            )
        })
        .collect();
    let winners = cheapest_per_key(mapped.iter().map(|&(k, c, _)| (k, c)));
    let survivors: Vec<(LinkKey, LinkKey)> =
        winners.iter().map(|&(k, _, i)| (k, mapped[i].2)).collect();
    let contracted = Instance::new(
        graph,
        winners.iter().map(|&(k, c, _)| (k, c)),
        inst.k(),
        inst.p(),
    )
    .expect("contraction preserves link validity");
    (
        contracted,
        TraceStep::Contracted {
            node_map,
            survivors,
        },
    )
}

/// Contracts a single node set `s` (non-empty) to one node.
pub fn contract_instance(inst: &Instance, s: &[NodeId]) -> Result<(Instance, TraceStep)> {
    if s.is_empty() {
        return Err(AugError::InvalidArgument(
            "cannot contract an empty set".into(),
        ));
    }
    if let Some(&bad) = s.iter().find(|&&v| v >= inst.node_count()) {
        return Err(AugError::InvalidArgument(format!(
            "node {bad} out of range"
        )));
    }
    let mut in_s = vec![false; inst.node_count()];
    for &v in s {
        in_s[v] = true;
    }
    let mut classes = vec![s.to_vec()];
    classes.extend(
        (0..inst.node_count())
            .filter(|&v| !in_s[v])
            .map(|v| vec![v]),
    );
    Ok(contract_partition(inst, &Partition::new(classes)))
}
