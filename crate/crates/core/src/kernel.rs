//! Kernels for augmentation by one: corner nodes, chain contraction, link
//! restriction, and emulation of weighted kernel links by unit links.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::cost::Cost;
use crate::cut_structure::{build_representation, CutRepresentation, RepKind};
use crate::cuts::DEFAULT_ENUM_THRESHOLD;
use crate::error::{AugError, Result};
use crate::graph::{MultiGraph, NodeId};
use crate::instance::{contract_partition, inseparable_partition, Instance, LinkKey};
use crate::metric::metric_completion;
use crate::solution::{Solution, Status};
use crate::trace::{ReductionTrace, TraceStep};

/// Corner classification of a representation's nodes.
///
/// Trees: `r1` are the leaves, `r2` the nodes of degree at least 3 (and an
/// isolated single node), `t` the degree-2 nodes. Cacti: `r1` are the nodes
/// on exactly one circuit, `t` the nodes on exactly two circuits that are
/// both 2-circuits, `r2` the rest.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CornerSets {
    pub kind: RepKind,
    pub r1: Vec<NodeId>,
    pub r2: Vec<NodeId>,
    pub t: Vec<NodeId>,
}

impl CornerSets {
    /// Corner nodes `R = r1 ∪ r2`, sorted.
    pub fn corners(&self) -> Vec<NodeId> {
        let mut r: Vec<NodeId> = self.r1.iter().chain(&self.r2).copied().collect();
        r.sort_unstable();
        r
    }
}

pub fn corner_nodes(rep: &CutRepresentation) -> CornerSets {
    let h = &rep.h;
    let n = h.node_count();
    let deg = h.degrees();
    let mut sets = CornerSets {
        kind: rep.kind,
        r1: Vec::new(),
        r2: Vec::new(),
        t: Vec::new(),
    };
    match rep.kind {
        RepKind::Tree => {
            for (v, &d) in deg.iter().enumerate() {
                match d {
                    1 => sets.r1.push(v),
                    2 => sets.t.push(v),
                    _ => sets.r2.push(v),
                }
            }
        }
        RepKind::Cactus => {
            // circuit lengths at each node
            let mut circuits: Vec<Vec<usize>> = vec![Vec::new(); n];
            for block in h.blocks() {
                let mut nodes: BTreeSet<NodeId> = BTreeSet::new();
                for &e in &block {
                    let (a, b) = h.edges()[e];
                    nodes.insert(a);
                    nodes.insert(b);
                }
                for v in nodes {
                    circuits[v].push(block.len());
                }
            }
            for (v, lengths) in circuits.iter().enumerate() {
                match lengths.as_slice() {
                    [_] => sets.r1.push(v),
                    [2, 2] => sets.t.push(v),
                    _ => sets.r2.push(v),
                }
            }
        }
    }
    sets
}

#[derive(Clone, Debug)]
struct Stages {
    rep: CutRepresentation,
    /// Instance on the representation before metric completion.
    h_instance: Instance,
    contraction_steps: usize,
}

/// An equivalent small instance with the trace mapping its solutions back.
///
/// The instance's target is 2 (tree kernels) or 3 (cactus kernels). An
/// infeasible kernel carries a single edge with no links as its instance.
#[derive(Clone, Debug)]
pub struct Kernel {
    pub instance: Instance,
    pub trace: ReductionTrace,
    pub infeasible: bool,
    pub kind: RepKind,
    pub corners: Option<CornerSets>,
    /// For unweighted kernels: each weighted kernel link with the unit
    /// links (in kernel numbering) that emulate it.
    pub emulation: Vec<(LinkKey, Vec<LinkKey>)>,
    stages: Option<Stages>,
}

impl Kernel {
    fn sentinel(kind: RepKind, p: u32, trace: ReductionTrace) -> Kernel {
        let instance = Instance::new(MultiGraph::path(2), std::iter::empty(), 2, p)
            .expect("sentinel instance is valid");
        Kernel {
            instance,
            trace,
            infeasible: true,
            kind,
            corners: None,
            emulation: Vec::new(),
            stages: None,
        }
    }

    pub fn representation(&self) -> Option<&CutRepresentation> {
        self.stages.as_ref().map(|s| &s.rep)
    }

    /// Lifts a link set of the kernel instance to the original instance.
    pub fn lift(&self, links: &BTreeSet<LinkKey>) -> Result<BTreeSet<LinkKey>> {
        self.trace.lift(links)
    }
}

/// Fails with the side of a cut smaller than `k - 1` if there is one.
pub fn check_by_one_precondition(inst: &Instance) -> Result<()> {
    let k = inst.k() as usize;
    if k < 2 {
        return Err(AugError::InvalidArgument(
            "augmentation by one needs a target of at least 2".into(),
        ));
    }
    if let Some((lambda, side)) = inst.graph().min_cut() {
        if lambda + 1 < k {
            let nodes: Vec<String> = (0..side.len())
                .filter(|&v| side[v])
                .map(|v| v.to_string())
                .collect();
            return Err(AugError::Precondition(format!(
                "cut {{{}}} has {lambda} edges, fewer than k-1 = {}",
                nodes.join(","),
                k - 1
            )));
        }
    }
    Ok(())
}

pub fn kernelize_by_one(inst: &Instance) -> Result<Kernel> {
    kernelize_by_one_with(inst, DEFAULT_ENUM_THRESHOLD)
}

/// As [`kernelize_by_one`], with an explicit node limit for cut enumeration
/// (only consulted for targets of 4 and more).
pub fn kernelize_by_one_with(inst: &Instance, threshold: usize) -> Result<Kernel> {
    check_by_one_precondition(inst)?;
    let kind = RepKind::for_target(inst.k());
    let p = inst.p();
    let mut trace = ReductionTrace::new();

    let (contracted, step) = contract_partition(inst, &inseparable_partition(inst));
    trace.push(step);
    let contraction_steps = trace.len();
    log::debug!(
        "contracted {} nodes to {}",
        inst.node_count(),
        contracted.node_count()
    );

    let rep = build_representation(&contracted, threshold)?;
    let h_instance = Instance::new(
        rep.h.clone(),
        contracted.links().iter().map(|l| (l.key, l.cost)),
        kind.target(),
        p,
    )?;
    let (completed, completion) = metric_completion(&h_instance, &rep)?;
    trace.extend(completion);

    let corners = corner_nodes(&rep);
    if corners.r1.len() > 2 * p as usize {
        log::debug!("{} leaves exceed 2p = {}", corners.r1.len(), 2 * p);
        return Ok(Kernel::sentinel(kind, p, trace));
    }

    let keep = corners.corners();
    let (instance, tail) = restrict_and_contract(&completed, &keep)?;
    trace.extend(tail);
    Ok(Kernel {
        instance,
        trace,
        infeasible: false,
        kind,
        corners: Some(corners),
        emulation: Vec::new(),
        stages: Some(Stages {
            rep,
            h_instance,
            contraction_steps,
        }),
    })
}

/// Merges every component of nodes outside `keep` into its smallest-id
/// neighbour in `keep`. Kept nodes are renumbered in increasing order.
fn contract_chains(g: &MultiGraph, keep: &[NodeId]) -> Vec<NodeId> {
    let n = g.node_count();
    let mut kept = vec![false; n];
    for &v in keep {
        kept[v] = true;
    }
    let mut target = vec![usize::MAX; n];
    for (i, &v) in keep.iter().enumerate() {
        target[v] = i;
    }
    let adj = g.adjacency();
    for s in 0..n {
        if kept[s] || target[s] != usize::MAX {
            continue;
        }
        let mut comp = vec![s];
        let mut anchor = usize::MAX;
        let mut seen = BTreeSet::from([s]);
        let mut i = 0;
        while i < comp.len() {
            let u = comp[i];
            i += 1;
            for &(v, _) in &adj[u] {
                if kept[v] {
                    anchor = anchor.min(v);
                } else if seen.insert(v) {
                    comp.push(v);
                }
            }
        }
        // a graph with no kept node at all collapses onto node 0
        let to = if anchor == usize::MAX {
            0
        } else {
            target[anchor]
        };
        for v in comp {
            target[v] = to;
        }
    }
    target
}

/// Drops links with an endpoint outside `keep`, then contracts chains of
/// the remaining nodes. Returns the new instance and its trace steps.
fn restrict_and_contract(inst: &Instance, keep: &[NodeId]) -> Result<(Instance, ReductionTrace)> {
    let mut trace = ReductionTrace::new();
    let kept: BTreeSet<NodeId> = keep.iter().copied().collect();
    let (inside, dropped): (Vec<_>, Vec<_>) = inst
        .links()
        .iter()
        .partition(|l| kept.contains(&l.key.u) && kept.contains(&l.key.v));
    if !dropped.is_empty() {
        trace.push(TraceStep::LinkRestricted {
            dropped: dropped.iter().map(|l| l.key).collect(),
        });
    }
    let node_map = contract_chains(inst.graph(), keep);
    let graph = inst.graph().contract(&node_map, keep.len().max(1));
    let mut survivors = Vec::new();
    let mut links = Vec::new();
    for l in inside {
        let key = LinkKey::new(node_map[l.key.u], node_map[l.key.v], l.key.t);
        survivors.push((key, l.key));
        links.push((key, l.cost));
    }
    let out = Instance::new(graph, links, inst.k(), inst.p())?;
    trace.push(TraceStep::PathContracted {
        node_map,
        survivors,
    });
    Ok((out, trace))
}

/// Maps a kernel solution back to `original`, pricing it with the original
/// costs.
pub fn lift_kernel_solution(
    sol: &Solution,
    trace: &ReductionTrace,
    original: &Instance,
) -> Result<Solution> {
    if sol.status == Status::Infeasible {
        return Ok(Solution::infeasible());
    }
    let lifted = trace.lift(&sol.key_set())?;
    let out = Solution::from_keys(original, lifted)?;
    if out.weight > original.p() {
        return Err(AugError::Integrity(format!(
            "lifted solution weighs {} > p = {}",
            out.weight,
            original.p()
        )));
    }
    Ok(out)
}

/// Replaces every link `f` of a kernel built from a unit-weight instance by
/// its emulation set: the unit links `f` lifts to on the representation.
/// Nodes hosting emulation links are kept as well as the corners.
pub fn unweight_kernel(kern: &Kernel, original: &Instance) -> Result<Kernel> {
    if original.links().iter().any(|l| l.key.t != 1) {
        return Err(AugError::InvalidArgument(
            "unweighted kernels need an input with unit link weights".into(),
        ));
    }
    if kern.infeasible {
        return Ok(kern.clone());
    }
    let stages = kern
        .stages
        .as_ref()
        .ok_or_else(|| AugError::Integrity("kernel lacks emulation data".into()))?;
    let start = stages.contraction_steps;
    let below = ReductionTrace {
        steps: kern.trace.steps[start..].to_vec(),
    };
    let corners = kern
        .corners
        .as_ref()
        .ok_or_else(|| AugError::Integrity("kernel lacks corner sets".into()))?;

    let mut sets: Vec<(LinkKey, BTreeSet<LinkKey>)> = Vec::new();
    let mut keep: BTreeSet<NodeId> = corners.corners().into_iter().collect();
    for l in kern.instance.links() {
        let set = below.lift(&BTreeSet::from([l.key]))?;
        let used: u32 = set.iter().map(|k| k.t).sum();
        if used > l.key.t {
            return Err(AugError::Integrity(format!(
                "emulation of {} uses weight {used}",
                l.key
            )));
        }
        for k in &set {
            if !stages.h_instance.cost(k).is_finite() {
                return Err(AugError::Integrity(format!(
                    "emulation link {k} is unavailable"
                )));
            }
            keep.insert(k.u);
            keep.insert(k.v);
        }
        sets.push((l.key, set));
    }

    let keep: Vec<NodeId> = keep.into_iter().collect();
    let unit_links: BTreeMap<LinkKey, Cost> = sets
        .iter()
        .flat_map(|(_, s)| s.iter())
        .map(|k| (*k, stages.h_instance.cost(k)))
        .collect();
    let restricted = Instance::new(
        stages.rep.h.clone(),
        unit_links.iter().map(|(&k, &c)| (k, c)),
        stages.h_instance.k(),
        original.p(),
    )?;
    let (instance, tail) = restrict_and_contract(&restricted, &keep)?;
    let node_map = match tail.steps.last() {
        Some(TraceStep::PathContracted { node_map, .. }) => node_map.clone(),
        _ => unreachable!("restrict_and_contract ends with a path contraction"),
    };
    let mut trace = ReductionTrace {
        steps: kern.trace.steps[..start].to_vec(),
    };
    trace.extend(tail);
    let emulation = sets
        .into_iter()
        .map(|(f, s)| {
            let mapped = s
                .iter()
                .map(|k| LinkKey::new(node_map[k.u], node_map[k.v], k.t))
                .collect();
            (f, mapped)
        })
        .collect();
    Ok(Kernel {
        instance,
        trace,
        infeasible: false,
        kind: kern.kind,
        corners: kern.corners.clone(),
        emulation,
        stages: None,
    })
}
