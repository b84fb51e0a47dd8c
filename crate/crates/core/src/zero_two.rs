//! Augmenting an arbitrary graph to 2-edge-connectivity.
//!
//! After contracting 2-edge-connected pieces the graph is a forest. Links
//! inside one tree are internal, the others external; an external link is
//! foliate when one endpoint is a leaf (isolated nodes count as leaves).
//! For a leaf `u`, another component `V_j` and a weight `t`, `S_t(u, V_j)`
//! is the endpoint of a cheapest link of weight at most `t` from `u` into
//! `V_j`. Shadows extend to foliate links sharing their leaf: `f = (u, y)`
//! is a shadow of `e = (u, x)` when `w(f) >= w(e)`, `x` and `y` lie in the
//! same component `V_j` and `y` lies between `x` and `S_{w(f)}(u, V_j)`.
//!
//! [`branch_solve`] allows a link to be taken more than once;
//! [`solve_no_duplicates`] forbids that.

use std::collections::{BTreeMap, BTreeSet};

use crate::cost::Cost;
use crate::error::{AugError, Result};
use crate::graph::{MultiGraph, NodeId};
use crate::instance::{contract_partition, inseparable_partition_of, Instance, LinkKey};
use crate::metric::{triangle_phase, triangle_violations, CostTable, Violation};
use crate::oracle::augmented_graph;
use crate::solution::Solution;
use crate::trace::{relabel_key, ReductionTrace, TraceStep};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LinkClass {
    Internal,
    External { foliate: bool },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ShadowKind {
    Internal,
    /// Foliate shadow through the shared leaf.
    Foliate {
        leaf: NodeId,
    },
}

/// Component structure, distances and the `S` table of a forest instance.
#[derive(Clone, Debug)]
pub struct ForestView {
    pub component: Vec<usize>,
    pub components: usize,
    pub degree: Vec<usize>,
    n: usize,
    p: u32,
    dist: Vec<usize>,
    /// `(leaf, component, t) -> S_t(leaf, component)`, for pairs with a
    /// finite link of weight at most `t`.
    pub s_table: BTreeMap<(NodeId, usize, u32), NodeId>,
}

impl ForestView {
    fn new(inst: &Instance) -> Self {
        let g = inst.graph();
        let n = g.node_count();
        let (components, component) = g.components();
        let adj = g.adjacency();
        let mut dist = vec![usize::MAX; n * n];
        for s in 0..n {
            dist[s * n + s] = 0;
            let mut queue = std::collections::VecDeque::from([s]);
            while let Some(x) = queue.pop_front() {
                for &(y, _) in &adj[x] {
                    if dist[s * n + y] == usize::MAX {
                        dist[s * n + y] = dist[s * n + x] + 1;
                        queue.push_back(y);
                    }
                }
            }
        }
        let mut view = ForestView {
            component,
            components,
            degree: g.degrees(),
            n,
            p: inst.p(),
            dist,
            s_table: BTreeMap::new(),
        };
        let table = CostTable::from_instance(inst);
        for t in 1..=view.p {
            view.refresh_s(&table, t);
        }
        view
    }

    pub fn is_leaf(&self, v: NodeId) -> bool {
        self.degree[v] <= 1
    }

    /// Nodes of degree other than 2.
    pub fn corners(&self) -> Vec<NodeId> {
        (0..self.n).filter(|&v| self.degree[v] != 2).collect()
    }

    pub fn leaves(&self) -> Vec<NodeId> {
        (0..self.n).filter(|&v| self.is_leaf(v)).collect()
    }

    /// `y` is on the tree path from `x` to `z` (ends included).
    pub fn lies_between(&self, x: NodeId, y: NodeId, z: NodeId) -> bool {
        let d = |a: NodeId, b: NodeId| self.dist[a * self.n + b];
        let xz = d(x, z);
        xz != usize::MAX && d(x, y) != usize::MAX && d(x, y) + d(y, z) == xz
    }

    pub fn classify(&self, key: &LinkKey) -> LinkClass {
        if self.component[key.u] == self.component[key.v] {
            LinkClass::Internal
        } else {
            LinkClass::External {
                foliate: self.is_leaf(key.u) || self.is_leaf(key.v),
            }
        }
    }

    pub fn s(&self, u: NodeId, j: usize, t: u32) -> Option<NodeId> {
        self.s_table.get(&(u, j, t)).copied()
    }

    /// `S_u`: every `S_t(u, V_j)` over weights and other components.
    pub fn s_set(&self, u: NodeId) -> BTreeSet<NodeId> {
        self.s_table
            .iter()
            .filter(|((leaf, _, _), _)| *leaf == u)
            .map(|(_, &z)| z)
            .collect()
    }

    /// Cheapest cost of a link of weight at most `t` from `u` into
    /// component `j`, with every endpoint attaining it (ascending).
    fn cheapest_into(&self, table: &CostTable, u: NodeId, j: usize, t: u32) -> (Cost, Vec<NodeId>) {
        let mut best = Cost::Infinite;
        let mut at = Vec::new();
        for z in (0..self.n).filter(|&z| self.component[z] == j) {
            let c = (1..=t)
                .map(|w| table.get_uv(u, z, w))
                .min()
                .unwrap_or(Cost::Infinite);
            if !c.is_finite() {
                continue;
            }
            if c < best {
                best = c;
                at.clear();
            }
            if c == best {
                at.push(z);
            }
        }
        (best, at)
    }

    /// Re-derives `S_t` for weight `t`, keeping the current choice while it
    /// is still among the cheapest and otherwise taking the smallest id.
    fn refresh_s(&mut self, table: &CostTable, t: u32) {
        for u in 0..self.n {
            if !self.is_leaf(u) {
                continue;
            }
            for j in (0..self.components).filter(|&j| j != self.component[u]) {
                let (_, at) = self.cheapest_into(table, u, j, t);
                let slot = (u, j, t);
                match at.first() {
                    None => {
                        self.s_table.remove(&slot);
                    }
                    Some(&first) => {
                        let keep = self.s_table.get(&slot).is_some_and(|z| at.contains(z));
                        if !keep {
                            self.s_table.insert(slot, first);
                        }
                    }
                }
            }
        }
    }

    /// Whether `f` is a shadow of `e` (`f != e`), and through which rule.
    pub fn shadow(&self, f: &LinkKey, e: &LinkKey) -> Option<ShadowKind> {
        if f == e || f.t < e.t {
            return None;
        }
        match (self.classify(f), self.classify(e)) {
            (LinkClass::Internal, LinkClass::Internal) => {
                let same = self.component[f.u] == self.component[e.u];
                (same && self.lies_between(e.u, f.u, e.v) && self.lies_between(e.u, f.v, e.v))
                    .then_some(ShadowKind::Internal)
            }
            (LinkClass::External { foliate: true }, LinkClass::External { foliate: true }) => {
                for leaf in [f.u, f.v] {
                    if !self.is_leaf(leaf) || !e.has_endpoint(leaf) {
                        continue;
                    }
                    let x = e.other(leaf);
                    let y = f.other(leaf);
                    let j = self.component[y];
                    if self.component[x] != j {
                        continue;
                    }
                    if let Some(z) = self.s(leaf, j, f.t) {
                        if self.lies_between(x, y, z) {
                            return Some(ShadowKind::Foliate { leaf });
                        }
                    }
                }
                None
            }
            _ => None,
        }
    }
}

/// Contracts 2-edge-connected pieces, returning the forest instance, the
/// contraction step and the forest's view.
pub fn prepare_forest(inst: &Instance) -> Result<(Instance, ReductionTrace, ForestView)> {
    if inst.k() != 2 {
        return Err(AugError::InvalidArgument(
            "disconnected augmentation supports target 2 only".into(),
        ));
    }
    let partition = inseparable_partition_of(inst.graph(), 2);
    let (forest, step) = contract_partition(inst, &partition);
    let mut trace = ReductionTrace::new();
    trace.push(step);
    let view = ForestView::new(&forest);
    Ok((forest, trace, view))
}

/// Metric completion under the generalized shadows. Foliate fixes record a
/// fallback: the cheapest link of weight at most `t` from the leaf to the
/// target component, used when swapping in `e` alone breaks the solution.
pub fn metric_completion_general(
    inst: &Instance,
    view: &ForestView,
) -> Result<(Instance, ReductionTrace, ForestView)> {
    let n = inst.node_count();
    let p = inst.p();
    let mut view = view.clone();
    let mut table = CostTable::from_instance(inst);
    let mut trace = ReductionTrace::new();
    for t in 1..=p {
        triangle_phase(&mut table, t, &mut trace);
        view.refresh_s(&table, t);
        for x in 0..n {
            for y in x + 1..n {
                let f = LinkKey::new(x, y, t);
                let old = table.get(&f);
                let mut best = old;
                let mut source = None;
                for a in 0..n {
                    for b in a + 1..n {
                        for te in 1..=t {
                            let e = LinkKey::new(a, b, te);
                            let c = table.get(&e);
                            if c < best {
                                if let Some(kind) = view.shadow(&f, &e) {
                                    best = c;
                                    source = Some((e, kind));
                                }
                            }
                        }
                    }
                }
                match source {
                    None => {}
                    Some((e, ShadowKind::Internal)) => {
                        table.set(&f, best);
                        trace.push(TraceStep::ShadowFix {
                            f,
                            e,
                            old,
                            new: best,
                        });
                    }
                    Some((e, ShadowKind::Foliate { leaf })) => {
                        let j = view.component[f.other(leaf)];
                        let z = view.s(leaf, j, t).expect("foliate shadow has an S entry");
                        let w = (1..=t)
                            .min_by_key(|&w| (table.get_uv(leaf, z, w), w))
                            .expect("t >= 1");
                        table.set(&f, best);
                        trace.push(TraceStep::FoliateShadowFix {
                            f,
                            e,
                            fallback: LinkKey::new(leaf, z, w),
                            old,
                            new: best,
                        });
                    }
                }
            }
        }
    }
    let completed = Instance::new(inst.graph().clone(), table.finite_links(), 2, p)?;
    Ok((completed, trace, view))
}

/// Every violated generalized shadow or triangle inequality, by exhaustive
/// enumeration against `view`'s `S` table.
pub fn general_metric_violations(inst: &Instance, view: &ForestView) -> Vec<Violation> {
    let n = inst.node_count();
    let p = inst.p();
    let table = CostTable::from_instance(inst);
    let mut out = Vec::new();
    for x in 0..n {
        for y in x + 1..n {
            for a in 0..n {
                for b in a + 1..n {
                    for tf in 1..=p {
                        for te in 1..=tf {
                            let f = LinkKey::new(x, y, tf);
                            let e = LinkKey::new(a, b, te);
                            if table.get(&f) > table.get(&e) && view.shadow(&f, &e).is_some() {
                                out.push(Violation::Shadow { f, e });
                            }
                        }
                    }
                }
            }
        }
    }
    out.extend(triangle_violations(&table));
    out
}

fn two_edge_connected(g: &MultiGraph, links: &[LinkKey]) -> bool {
    augmented_graph(g, links).is_k_edge_connected(2)
}

/// Lifts a link multiset through `steps` (last to first). Foliate fixes
/// are replayed against `graph`, the graph the fixes were computed on.
fn lift_multiset(
    steps: &[TraceStep],
    graph: &MultiGraph,
    links: Vec<LinkKey>,
) -> Result<Vec<LinkKey>> {
    let mut current = links;
    for step in steps.iter().rev() {
        match step {
            TraceStep::Contracted { .. } | TraceStep::PathContracted { .. } => {
                current = current
                    .iter()
                    .map(|k| relabel_key(step, k))
                    .collect::<Result<_>>()?;
            }
            TraceStep::TriangleFix { h, e, f, .. } => {
                let copies = current.iter().filter(|k| *k == h).count();
                current.retain(|k| k != h);
                for _ in 0..copies {
                    current.push(*e);
                    current.push(*f);
                }
            }
            TraceStep::ShadowFix { f, e, .. } => {
                for k in current.iter_mut().filter(|k| **k == *f) {
                    *k = *e;
                }
            }
            TraceStep::FoliateShadowFix { f, e, fallback, .. } => {
                while let Some(pos) = current.iter().position(|k| k == f) {
                    current[pos] = *e;
                    if two_edge_connected(graph, &current) {
                        continue;
                    }
                    current[pos] = *fallback;
                    if !two_edge_connected(graph, &current) {
                        return Err(AugError::Integrity(format!(
                            "neither {e} nor {fallback} can replace {f}"
                        )));
                    }
                }
            }
            TraceStep::LinkRestricted { dropped } => {
                if let Some(k) = dropped.iter().find(|k| current.contains(k)) {
                    return Err(AugError::Integrity(format!(
                        "solution uses dropped link {k}"
                    )));
                }
            }
        }
    }
    Ok(current)
}

fn price(inst: &Instance, links: &[LinkKey]) -> Cost {
    links.iter().map(|k| inst.cost(k)).sum()
}

/// Optimum of `inst` in multiset mode, if at most `bound` (when given).
fn solve_level(inst: &Instance, bound: Option<Cost>) -> Result<Option<(Cost, Vec<LinkKey>)>> {
    let (forest, contraction, view) = prepare_forest(inst)?;
    if forest.node_count() == 1 {
        return Ok(Some((Cost::ZERO, Vec::new())));
    }
    let budget = inst.p();
    let deficiency: usize = view.degree.iter().map(|&d| 2usize.saturating_sub(d)).sum();
    if deficiency > 2 * budget as usize {
        return Ok(None);
    }
    let (done, completion, view) = metric_completion_general(&forest, &view)?;
    let u = view.leaves()[0];
    let mut targets: BTreeSet<NodeId> = view.corners().into_iter().collect();
    targets.extend(view.s_set(u));
    let mut candidates: Vec<(Cost, LinkKey)> = done
        .finite_links()
        .filter(|l| l.key.has_endpoint(u) && targets.contains(&l.key.other(u)))
        .map(|l| (l.cost, l.key))
        .collect();
    candidates.sort();

    let mut best: Option<(Cost, Vec<LinkKey>)> = None;
    for (c, g) in candidates {
        let limit = match (&best, bound) {
            (Some((b, _)), _) => Some(*b),
            (None, b) => b,
        };
        if limit.is_some_and(|b| c > b) {
            break;
        }
        let rest = budget - g.t;
        let mut graph = forest.graph().clone();
        graph.push_edge(g.u, g.v);
        let links = done
            .finite_links()
            .filter(|l| l.key.t <= rest)
            .map(|l| (l.key, l.cost));
        let sub = if rest == 0 {
            Instance::new(graph, std::iter::empty(), 2, 1)?
        } else {
            Instance::new(graph, links, 2, rest)?
        };
        if rest == 0 && !sub.graph().is_k_edge_connected(2) {
            continue;
        }
        let sub_bound = limit.map(|b| sub_limit(b, c));
        if let Some((sc, mut chosen)) = solve_level(&sub, sub_bound)? {
            let total = sc + c;
            if best.as_ref().is_none_or(|(b, _)| total < *b) {
                chosen.push(g);
                best = Some((total, chosen));
            }
        }
    }
    let Some((_, chosen)) = best else {
        return Ok(None);
    };
    let lifted = lift_multiset(&completion.steps, forest.graph(), chosen)?;
    let lifted = lift_multiset(&contraction.steps, inst.graph(), lifted)?;
    Ok(Some((price(inst, &lifted), lifted)))
}

/// `b - c` for finite costs; the caller only asks when `c <= b`.
fn sub_limit(b: Cost, c: Cost) -> Cost {
    match (b, c) {
        (Cost::Finite(b), Cost::Finite(c)) => Cost::Finite(b - c),
        _ => Cost::Infinite,
    }
}

/// Exact optimum when links may be used repeatedly.
pub fn branch_solve(inst: &Instance) -> Result<Solution> {
    match solve_level(inst, None)? {
        None => Ok(Solution::infeasible()),
        Some((_, mut links)) => {
            if !two_edge_connected(inst.graph(), &links) {
                return Err(AugError::Integrity(
                    "branching result is not 2-edge-connected".into(),
                ));
            }
            links.sort();
            Solution::from_keys(inst, links)
        }
    }
}

/// For every pair of components of `inst`'s graph and weight `t`, the
/// unique cheapest finite `t`-link between them, when it is unique.
pub fn seed_links(inst: &Instance) -> Vec<LinkKey> {
    let (_, comp) = inst.graph().components();
    let mut groups: BTreeMap<(usize, usize, u32), Vec<(Cost, LinkKey)>> = BTreeMap::new();
    for l in inst.finite_links() {
        let (a, b) = (comp[l.key.u], comp[l.key.v]);
        if a != b {
            groups
                .entry((a.min(b), a.max(b), l.key.t))
                .or_default()
                .push((l.cost, l.key));
        }
    }
    let mut out = Vec::new();
    for mut links in groups.into_values() {
        links.sort();
        if links.len() == 1 || links[0].0 < links[1].0 {
            out.push(links[0].1);
        }
    }
    out.sort();
    out
}

/// Removes repeated links from a 2-edge-connecting multiset without
/// raising its cost: a copy inside one component of `base` is dropped;
/// across components it is dropped when another link joins the same two
/// components of `g`, and otherwise swapped for the cheapest other link of
/// its weight between them.
fn remove_duplicates(
    inst: &Instance,
    base: &MultiGraph,
    mut links: Vec<LinkKey>,
) -> Result<Vec<LinkKey>> {
    let (_, comp_g) = inst.graph().components();
    let (_, comp_base) = base.components();
    let pair = |k: &LinkKey| {
        let (a, b) = (comp_g[k.u], comp_g[k.v]);
        (a.min(b), a.max(b))
    };
    loop {
        links.sort();
        let Some(pos) = links.windows(2).position(|w| w[0] == w[1]) else {
            return Ok(links);
        };
        let e1 = links[pos];
        links.remove(pos);
        if comp_base[e1.u] == comp_base[e1.v] {
            continue;
        }
        // another link between the same two components (the remaining copy
        // of e1 excluded)
        let mut others = links.iter().filter(|k| pair(k) == pair(&e1)).count();
        others -= 1;
        if others > 0 {
            continue;
        }
        let replacement = inst
            .finite_links()
            .filter(|l| l.key != e1 && l.key.t == e1.t && pair(&l.key) == pair(&e1))
            .min_by_key(|l| (l.cost, l.id))
            .ok_or_else(|| {
                AugError::Integrity(format!("no alternative link for duplicated {e1}"))
            })?;
        if replacement.cost > inst.cost(&e1) {
            return Err(AugError::Integrity(format!(
                "duplicated {e1} is the unique cheapest link of its kind"
            )));
        }
        links.push(replacement.key);
    }
}

/// Exact optimum when no link may be used twice (links of different
/// weights between the same nodes are still allowed together).
pub fn solve_no_duplicates(inst: &Instance) -> Result<Solution> {
    if inst.k() != 2 {
        return Err(AugError::InvalidArgument(
            "disconnected augmentation supports target 2 only".into(),
        ));
    }
    let p = inst.p();
    let (r, _) = inst.graph().components();
    if r >= 2 && r > p as usize {
        return Ok(Solution::infeasible());
    }
    let seeds = seed_links(inst);
    let mut best: Option<(Cost, Vec<usize>, Vec<LinkKey>)> = None;
    let mut subset = Vec::new();
    visit_subsets(&seeds, 0, p, &mut subset, &mut |chosen| {
        let weight: u32 = chosen.iter().map(|k| k.t).sum();
        let mut graph = inst.graph().clone();
        for k in chosen {
            graph.push_edge(k.u, k.v);
        }
        let rest = p - weight;
        let banned: BTreeSet<LinkKey> = seeds.iter().copied().collect();
        let links: Vec<(LinkKey, Cost)> = inst
            .finite_links()
            .filter(|l| !banned.contains(&l.key) && l.key.t <= rest)
            .map(|l| (l.key, l.cost))
            .collect();
        let found = if rest == 0 {
            graph
                .is_k_edge_connected(2)
                .then(|| (Cost::ZERO, Vec::new()))
        } else {
            let sub = Instance::new(graph.clone(), links, 2, rest)?;
            solve_level(&sub, None)?
        };
        let Some((_, extra)) = found else {
            return Ok(());
        };
        let mut all: Vec<LinkKey> = chosen.to_vec();
        all.extend(extra);
        let all = remove_duplicates(inst, &graph, all)?;
        let cost = price(inst, &all);
        let mut ids: Vec<usize> = all
            .iter()
            .map(|k| inst.link(k).expect("known link").id)
            .collect();
        ids.sort_unstable();
        let better = match &best {
            None => true,
            Some((c, b, _)) => cost < *c || (cost == *c && ids < *b),
        };
        if better {
            best = Some((cost, ids, all));
        }
        Ok(())
    })?;
    match best {
        None => Ok(Solution::infeasible()),
        Some((_, _, links)) => {
            if !two_edge_connected(inst.graph(), &links) {
                return Err(AugError::Integrity("result is not 2-edge-connected".into()));
            }
            Solution::from_keys(inst, links)
        }
    }
}

fn visit_subsets(
    items: &[LinkKey],
    from: usize,
    budget: u32,
    chosen: &mut Vec<LinkKey>,
    visit: &mut impl FnMut(&[LinkKey]) -> Result<()>,
) -> Result<()> {
    visit(chosen)?;
    for i in from..items.len() {
        if items[i].t <= budget {
            chosen.push(items[i]);
            visit_subsets(items, i + 1, budget - items[i].t, chosen, visit)?;
            chosen.pop();
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::solution::Status;

    fn key(u: usize, v: usize, t: u32) -> LinkKey {
        LinkKey::new(u, v, t)
    }

    fn two_k2() -> MultiGraph {
        MultiGraph::new(4, vec![(0, 1), (2, 3)]).unwrap()
    }

    #[test]
    fn classification_and_s_table() {
        let inst = Instance::new(
            two_k2(),
            [
                (key(0, 1, 1), Cost::integer(1)),
                (key(0, 2, 1), Cost::integer(3)),
                (key(0, 3, 1), Cost::integer(1)),
            ],
            2,
            1,
        )
        .unwrap();
        let (forest, _, view) = prepare_forest(&inst).unwrap();
        assert_eq!(forest.node_count(), 4);
        assert_eq!(view.classify(&key(0, 1, 1)), LinkClass::Internal);
        assert_eq!(
            view.classify(&key(0, 2, 1)),
            LinkClass::External { foliate: true }
        );
        assert_eq!(view.s(0, view.component[2], 1), Some(3));
    }

    #[test]
    fn foliate_shadow_between() {
        // component 1: leaf 0 attached to node 1; component 2: path 2-3-4
        let g = MultiGraph::new(5, vec![(0, 1), (2, 3), (3, 4)]).unwrap();
        let inst = Instance::new(
            g,
            [
                (key(0, 2, 1), Cost::integer(1)),
                (key(0, 4, 1), Cost::integer(0)),
            ],
            2,
            1,
        )
        .unwrap();
        let (forest, _, view) = prepare_forest(&inst).unwrap();
        // S_1(0, V_2) = 4 and 3 lies between 2 and 4, so (0,3) shadows (0,2)
        let (done, trace, view) = metric_completion_general(&forest, &view).unwrap();
        assert_eq!(done.cost(&key(0, 3, 1)), Cost::integer(1));
        assert!(matches!(trace.steps[0], TraceStep::FoliateShadowFix { .. }));
        assert!(general_metric_violations(&done, &view).is_empty());
    }

    #[test]
    fn triangle_across_components() {
        let g = MultiGraph::new(3, vec![]).unwrap();
        let inst = Instance::new(
            g,
            [
                (key(0, 1, 1), Cost::integer(1)),
                (key(1, 2, 1), Cost::integer(1)),
                (key(0, 2, 2), Cost::integer(9)),
            ],
            2,
            2,
        )
        .unwrap();
        let (forest, _, view) = prepare_forest(&inst).unwrap();
        let (done, _, view) = metric_completion_general(&forest, &view).unwrap();
        assert_eq!(done.cost(&key(0, 2, 2)), Cost::integer(2));
        assert!(general_metric_violations(&done, &view).is_empty());
    }

    #[test]
    fn multiset_takes_a_link_twice() {
        let inst = Instance::new(
            MultiGraph::empty(2),
            [(key(0, 1, 1), Cost::integer(1))],
            2,
            2,
        )
        .unwrap();
        let sol = branch_solve(&inst).unwrap();
        assert_eq!(sol.keys(), vec![key(0, 1, 1), key(0, 1, 1)]);
        assert_eq!(sol.cost, Cost::integer(2));
    }

    #[test]
    fn two_edges_closed_by_two_links() {
        let links: Vec<_> = [(0, 2), (0, 3), (1, 2), (1, 3)]
            .iter()
            .map(|&(u, v)| (key(u, v, 1), Cost::integer(1)))
            .collect();
        let inst = Instance::new(two_k2(), links, 2, 2).unwrap();
        let sol = branch_solve(&inst).unwrap();
        assert_eq!(sol.cost, Cost::integer(2));
        assert!(two_edge_connected(inst.graph(), &sol.keys()));
    }

    #[test]
    fn no_duplicates_uses_both_weights() {
        let links = [
            (key(0, 1, 1), Cost::integer(1)),
            (key(0, 1, 2), Cost::integer(3)),
        ];
        let inst = Instance::new(MultiGraph::empty(2), links, 2, 3).unwrap();
        let sol = solve_no_duplicates(&inst).unwrap();
        assert_eq!(sol.keys(), vec![key(0, 1, 1), key(0, 1, 2)]);
        assert_eq!(sol.cost, Cost::integer(4));
        let tight = Instance::new(MultiGraph::empty(2), links, 2, 2).unwrap();
        assert_eq!(
            solve_no_duplicates(&tight).unwrap().status,
            Status::Infeasible
        );
    }

    #[test]
    fn too_many_components() {
        let links = [
            (key(0, 1, 1), Cost::integer(1)),
            (key(1, 2, 1), Cost::integer(1)),
        ];
        let inst = Instance::new(MultiGraph::empty(3), links, 2, 2).unwrap();
        assert_eq!(
            solve_no_duplicates(&inst).unwrap().status,
            Status::Infeasible
        );
    }
}
