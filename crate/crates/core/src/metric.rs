//! Shadows and the metric completion of link costs on a tree or cactus.
//!
//! Link `f` is a shadow of link `e` when `w(f) >= w(e)` and every minimum
//! cut covered by `f` is covered by `e`. On trees and cacti that holds iff
//! both endpoints of `f` separate the endpoints of `e`, which is how it is
//! computed here. Completion lowers costs until every shadow inequality
//! `c(f) <= c(e)` and every triangle inequality `c(h) <= c(e) + c(f)`
//! (`w(h) >= w(e) + w(f)`) holds, logging each fix so that solutions can be
//! mapped back to the original costs.

use std::collections::BTreeSet;

use crate::cost::Cost;
use crate::cut_structure::CutRepresentation;
use crate::cuts::covers;
use crate::error::{AugError, Result};
use crate::graph::{NodeId, SeparatorTable};
use crate::instance::{Instance, LinkKey};
use crate::trace::{ReductionTrace, TraceStep};

/// Dense cost table over every `(pair, t)` of an `n`-node instance.
#[derive(Clone, Debug)]
pub(crate) struct CostTable {
    pub(crate) n: usize,
    pub(crate) p: u32,
    costs: Vec<Cost>,
}

impl CostTable {
    pub(crate) fn from_instance(inst: &Instance) -> Self {
        let n = inst.node_count();
        let p = inst.p();
        let mut table = CostTable {
            n,
            p,
            costs: vec![Cost::Infinite; n * n * p as usize],
        };
        for l in inst.links() {
            table.set(&l.key, l.cost);
        }
        table
    }

    fn slot(&self, u: NodeId, v: NodeId, t: u32) -> usize {
        ((t - 1) as usize * self.n + u) * self.n + v
    }

    pub(crate) fn get(&self, key: &LinkKey) -> Cost {
        self.costs[self.slot(key.u, key.v, key.t)]
    }

    pub(crate) fn get_uv(&self, u: NodeId, v: NodeId, t: u32) -> Cost {
        self.costs[self.slot(u, v, t)]
    }

    pub(crate) fn set(&mut self, key: &LinkKey, c: Cost) {
        let a = self.slot(key.u, key.v, key.t);
        let b = self.slot(key.v, key.u, key.t);
        self.costs[a] = c;
        self.costs[b] = c;
    }

    /// Finite entries as links, in key order.
    pub(crate) fn finite_links(&self) -> Vec<(LinkKey, Cost)> {
        let mut out = Vec::new();
        for u in 0..self.n {
            for v in u + 1..self.n {
                for t in 1..=self.p {
                    let c = self.get_uv(u, v, t);
                    if c.is_finite() {
                        out.push((LinkKey::new(u, v, t), c));
                    }
                }
            }
        }
        out
    }
}

/// Fixes every triangle inequality whose long side has weight `t`, taking
/// for each `h = (u, z)` the cheapest split over middle nodes and weight
/// splits in increasing order. Links of weight below `t` must be final.
pub(crate) fn triangle_phase(table: &mut CostTable, t: u32, trace: &mut ReductionTrace) {
    let n = table.n;
    for u in 0..n {
        for z in u + 1..n {
            let h = LinkKey::new(u, z, t);
            let old = table.get(&h);
            let mut best = old;
            let mut pair = None;
            for v in (0..n).filter(|&v| v != u && v != z) {
                for t1 in 1..t {
                    for t2 in 1..=t - t1 {
                        let s = table.get_uv(u, v, t1) + table.get_uv(v, z, t2);
                        if s < best {
                            best = s;
                            pair = Some((LinkKey::new(u, v, t1), LinkKey::new(v, z, t2)));
                        }
                    }
                }
            }
            if let Some((e, f)) = pair {
                table.set(&h, best);
                trace.push(TraceStep::TriangleFix {
                    h,
                    e,
                    f,
                    old,
                    new: best,
                });
            }
        }
    }
}

/// Shadow test on a tree or cactus representation.
pub struct ShadowRelation {
    sep: SeparatorTable,
}

impl ShadowRelation {
    pub fn new(rep: &CutRepresentation) -> Self {
        ShadowRelation {
            sep: SeparatorTable::new(&rep.h),
        }
    }

    /// Both endpoints of `f` separate the endpoints of `e`; weights ignored.
    pub fn covers_subset(&self, f: (NodeId, NodeId), e: (NodeId, NodeId)) -> bool {
        self.sep.separates(f.0, e.0, e.1) && self.sep.separates(f.1, e.0, e.1)
    }

    pub fn is_shadow(&self, f: &LinkKey, e: &LinkKey) -> bool {
        f.t >= e.t && self.covers_subset((f.u, f.v), (e.u, e.v))
    }
}

/// True iff `f` is a shadow of `e` on `rep`.
pub fn shadow_of(f: &LinkKey, e: &LinkKey, rep: &CutRepresentation) -> bool {
    ShadowRelation::new(rep).is_shadow(f, e)
}

/// Runs the completion on an instance whose graph is `rep.h`. Returns the
/// completed instance (finite links only, target 2 or 3 by `rep.kind`) and
/// the fixes in application order.
///
/// Iteration `t` first fixes all rank-`t` triangle inequalities (each
/// `h = (u, z)` taking its cheapest split, scanning middle nodes and weight
/// splits in increasing order), then lowers every `t`-link to the cheapest
/// link it is a shadow of.
pub fn metric_completion(
    inst: &Instance,
    rep: &CutRepresentation,
) -> Result<(Instance, ReductionTrace)> {
    if inst.graph() != &rep.h {
        return Err(AugError::InvalidArgument(
            "instance graph differs from the representation".into(),
        ));
    }
    let n = inst.node_count();
    let p = inst.p();
    let mut table = CostTable::from_instance(inst);
    let mut trace = ReductionTrace::new();
    let shadows = ShadowRelation::new(rep);

    // pairs (u, v) whose links have the pair (x, y) as a shadow, for every x < y
    let mut dominating: Vec<Vec<(NodeId, NodeId)>> = vec![Vec::new(); n * n];
    for x in 0..n {
        for y in x + 1..n {
            for u in 0..n {
                for v in u + 1..n {
                    if shadows.covers_subset((x, y), (u, v)) {
                        dominating[x * n + y].push((u, v));
                    }
                }
            }
        }
    }

    for t in 1..=p {
        triangle_phase(&mut table, t, &mut trace);
        for x in 0..n {
            for y in x + 1..n {
                let f = LinkKey::new(x, y, t);
                let old = table.get(&f);
                let mut best = old;
                let mut source = None;
                for &(u, v) in &dominating[x * n + y] {
                    for te in 1..=t {
                        let e = LinkKey::new(u, v, te);
                        if e == f {
                            continue;
                        }
                        let c = table.get(&e);
                        if c < best {
                            best = c;
                            source = Some(e);
                        }
                    }
                }
                if let Some(e) = source {
                    table.set(&f, best);
                    trace.push(TraceStep::ShadowFix {
                        f,
                        e,
                        old,
                        new: best,
                    });
                }
            }
        }
    }

    let completed = Instance::new(rep.h.clone(), table.finite_links(), rep.kind.target(), p)?;
    Ok((completed, trace))
}

/// Maps a solution of the completed instance back to the pre-completion
/// costs by replaying the fixes in reverse.
pub fn lift_metric_solution(
    solution: &BTreeSet<LinkKey>,
    trace: &ReductionTrace,
) -> Result<BTreeSet<LinkKey>> {
    trace.lift(solution)
}

/// A violated metric inequality found by [`metric_violations`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    Shadow { f: LinkKey, e: LinkKey },
    Triangle { h: LinkKey, e: LinkKey, f: LinkKey },
}

/// Exhaustively checks every shadow and triangle inequality of rank at most
/// `inst.p()`, with shadows decided from explicit covered-cut sets of `rep`
/// rather than from separators.
pub fn metric_violations(inst: &Instance, rep: &CutRepresentation) -> Vec<Violation> {
    let n = inst.node_count();
    let p = inst.p();
    let table = CostTable::from_instance(inst);
    let cuts: Vec<_> = rep.min_cuts().into_iter().collect();
    let covered: Vec<Vec<bool>> = (0..n * n)
        .map(|i| {
            let (u, v) = (i / n, i % n);
            if u >= v {
                return Vec::new();
            }
            let key = LinkKey::new(u, v, 1);
            cuts.iter().map(|c| covers(&key, c)).collect()
        })
        .collect();
    let subset = |f: (NodeId, NodeId), e: (NodeId, NodeId)| {
        let a = &covered[f.0 * n + f.1];
        let b = &covered[e.0 * n + e.1];
        a.iter().zip(b).all(|(&x, &y)| !x || y)
    };
    let mut out = Vec::new();
    let pairs: Vec<(NodeId, NodeId)> = (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .collect();
    for &(x, y) in &pairs {
        for &(u, v) in &pairs {
            if !subset((x, y), (u, v)) {
                continue;
            }
            for tf in 1..=p {
                for te in 1..=tf {
                    let f = LinkKey::new(x, y, tf);
                    let e = LinkKey::new(u, v, te);
                    if table.get(&f) > table.get(&e) {
                        out.push(Violation::Shadow { f, e });
                    }
                }
            }
        }
    }
    out.extend(triangle_violations(&table));
    out
}

/// Every violated triangle inequality `c(h) <= c(e) + c(f)` with
/// `w(h) >= w(e) + w(f)`.
pub(crate) fn triangle_violations(table: &CostTable) -> Vec<Violation> {
    let (n, p) = (table.n, table.p);
    let mut out = Vec::new();
    for u in 0..n {
        for z in u + 1..n {
            for v in (0..n).filter(|&v| v != u && v != z) {
                for th in 1..=p {
                    for t1 in 1..th {
                        for t2 in 1..=th - t1 {
                            let h = LinkKey::new(u, z, th);
                            let e = LinkKey::new(u, v, t1);
                            let f = LinkKey::new(v, z, t2);
                            if table.get(&h) > table.get(&e) + table.get(&f) {
                                out.push(Violation::Triangle { h, e, f });
                            }
                        }
                    }
                }
            }
        }
    }
    out
}
