//! Exact search on kernels, the end-to-end pipeline, and verification.

use crate::cost::{Cost, Rational};
use crate::cut_structure::structural_min_cuts;
use crate::cuts::{covers, enumerate_cuts_below, Cut, DEFAULT_ENUM_THRESHOLD};
use crate::error::{AugError, Result};
use crate::instance::{Instance, LinkKey};
use crate::kernel::{kernelize_by_one_with, lift_kernel_solution, Kernel};
use crate::oracle::{augmented_graph, Target};
use crate::solution::{Solution, Status};

struct Candidate {
    key: LinkKey,
    cost: Cost,
    id: usize,
    covers: Vec<u64>,
}

struct BranchAndBound<'a> {
    links: &'a [Candidate],
    /// Candidate indices covering each cut, in candidate order.
    by_cut: Vec<Vec<usize>>,
    p: u32,
    excluded: Vec<bool>,
    chosen: Vec<usize>,
    best: Option<(Cost, Vec<usize>)>,
}

fn bit(set: &[u64], i: usize) -> bool {
    set[i / 64] >> (i % 64) & 1 == 1
}

impl BranchAndBound<'_> {
    fn usable(&self, j: usize, budget: u32) -> bool {
        !self.excluded[j] && self.links[j].key.t <= budget
    }

    fn search(&mut self, covered: &[u64], weight: u32, cost: Cost) {
        let budget = self.p - weight;
        // the open cut with the fewest usable candidates, and the bound
        let mut pick: Option<(usize, usize)> = None;
        let mut bound = Cost::ZERO;
        for (c, cands) in self.by_cut.iter().enumerate() {
            if bit(covered, c) {
                continue;
            }
            let mut count = 0;
            let mut cheapest = Cost::Infinite;
            for &j in cands {
                if self.usable(j, budget) {
                    count += 1;
                    cheapest = cheapest.min(self.links[j].cost);
                }
            }
            if count == 0 {
                return;
            }
            bound = bound.max(cheapest);
            if pick.is_none_or(|(_, best)| count < best) {
                pick = Some((c, count));
            }
        }
        let Some((cut, _)) = pick else {
            self.offer(cost);
            return;
        };
        if let Some((b, _)) = &self.best {
            if cost + bound > *b {
                return;
            }
        }
        let cands: Vec<usize> = self.by_cut[cut]
            .iter()
            .copied()
            .filter(|&j| self.usable(j, budget))
            .collect();
        let mut newly_excluded = Vec::new();
        for j in cands {
            let link = &self.links[j];
            let next: Vec<u64> = covered
                .iter()
                .zip(&link.covers)
                .map(|(a, b)| a | b)
                .collect();
            self.chosen.push(j);
            self.search(&next, weight + link.key.t, cost + link.cost);
            self.chosen.pop();
            self.excluded[j] = true;
            newly_excluded.push(j);
        }
        for j in newly_excluded {
            self.excluded[j] = false;
        }
    }

    fn offer(&mut self, cost: Cost) {
        let mut ids: Vec<usize> = self.chosen.iter().map(|&j| self.links[j].id).collect();
        ids.sort_unstable();
        let better = match &self.best {
            None => true,
            Some((c, b)) => cost < *c || (cost == *c && ids < *b),
        };
        if better {
            self.best = Some((cost, ids));
        }
    }
}

/// Cheapest link set of weight at most `p` covering every cut in `cuts`.
/// Links are tried in order of cost per unit weight; among equally cheap
/// inclusion-minimal covers the smallest sorted id list wins.
pub fn min_cost_cover(inst: &Instance, cuts: &[Cut]) -> Option<Vec<LinkKey>> {
    let words = cuts.len().div_ceil(64).max(1);
    let mut links: Vec<Candidate> = inst
        .finite_links()
        .map(|l| {
            let mut set = vec![0u64; words];
            for (i, c) in cuts.iter().enumerate() {
                if covers(&l.key, c) {
                    set[i / 64] |= 1 << (i % 64);
                }
            }
            Candidate {
                key: l.key,
                cost: l.cost,
                id: l.id,
                covers: set,
            }
        })
        .filter(|c| c.covers.iter().any(|&w| w != 0))
        .collect();
    let ratio = |c: &Candidate| -> Rational {
        c.cost.finite().expect("finite link") / Rational::from_integer(c.key.t as i128)
    };
    links.sort_by(|a, b| ratio(a).cmp(&ratio(b)).then(a.id.cmp(&b.id)));
    let by_cut = (0..cuts.len())
        .map(|i| {
            (0..links.len())
                .filter(|&j| bit(&links[j].covers, i))
                .collect()
        })
        .collect();
    let mut bb = BranchAndBound {
        links: &links,
        by_cut,
        p: inst.p(),
        excluded: vec![false; links.len()],
        chosen: Vec::new(),
        best: None,
    };
    bb.search(&vec![0u64; words], 0, Cost::ZERO);
    bb.best
        .map(|(_, ids)| ids.iter().map(|&id| inst.links()[id].key).collect())
}

pub fn solve_kernel(kern: &Kernel) -> Result<Solution> {
    if kern.infeasible {
        return Ok(Solution::infeasible());
    }
    let cuts: Vec<Cut> = structural_min_cuts(kern.instance.graph(), kern.kind)
        .into_iter()
        .collect();
    match min_cost_cover(&kern.instance, &cuts) {
        Some(keys) => Solution::from_keys(&kern.instance, keys),
        None => Ok(Solution::infeasible()),
    }
}

pub fn solve(inst: &Instance) -> Result<Solution> {
    solve_with(inst, DEFAULT_ENUM_THRESHOLD)
}

/// Kernelizes, solves the kernel and lifts the result back to `inst`.
pub fn solve_with(inst: &Instance, threshold: usize) -> Result<Solution> {
    let kern = kernelize_by_one_with(inst, threshold)?;
    log::debug!(
        "kernel: {} nodes, {} links, infeasible={}",
        kern.instance.node_count(),
        kern.instance.links().len(),
        kern.infeasible
    );
    let sol = solve_kernel(&kern)?;
    let lifted = lift_kernel_solution(&sol, &kern.trace, inst)?;
    if lifted.status == Status::Optimal {
        let g = augmented_graph(inst.graph(), &lifted.keys());
        if !g.is_k_edge_connected(inst.k() as usize) {
            return Err(AugError::Integrity(
                "lifted solution does not reach the target".into(),
            ));
        }
    }
    Ok(lifted)
}

/// Outcome of [`verify_solution`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerifyReport {
    /// Cuts still below target after augmentation (all of them on graphs
    /// small enough to enumerate, otherwise one witness).
    pub violated_cuts: Vec<Cut>,
    /// Cut nodes left, for the 2-node-connectivity target.
    pub cut_nodes: Vec<usize>,
    pub weight_excess: u32,
    /// Cost recomputed from the instance.
    pub cost: Cost,
    pub cost_mismatch: bool,
}

impl VerifyReport {
    pub fn is_valid(&self) -> bool {
        self.violated_cuts.is_empty()
            && self.cut_nodes.is_empty()
            && self.weight_excess == 0
            && !self.cost_mismatch
    }

    /// Human-readable violation list.
    pub fn violations(&self) -> Vec<String> {
        let mut out: Vec<String> = self
            .violated_cuts
            .iter()
            .map(|c| {
                let side: Vec<String> = c.side().iter().map(|v| v.to_string()).collect();
                format!("cut {{{}}} below target", side.join(","))
            })
            .collect();
        out.extend(self.cut_nodes.iter().map(|v| format!("cut node {v}")));
        if self.weight_excess > 0 {
            out.push(format!("weight exceeds p by {}", self.weight_excess));
        }
        if self.cost_mismatch {
            out.push(format!(
                "stated cost differs from recomputed cost {}",
                self.cost
            ));
        }
        out
    }
}

/// Checks an optimal-status solution against the instance's edge target.
pub fn verify_solution(inst: &Instance, sol: &Solution) -> Result<VerifyReport> {
    verify_solution_for(inst, sol, Target::EdgeConn(inst.k()))
}

pub fn verify_solution_for(
    inst: &Instance,
    sol: &Solution,
    target: Target,
) -> Result<VerifyReport> {
    if sol.status != Status::Optimal {
        return Err(AugError::InvalidArgument(
            "only solutions with optimal status can be verified".into(),
        ));
    }
    let keys = sol.keys();
    let mut cost = Cost::ZERO;
    for k in &keys {
        let link = inst
            .link(k)
            .ok_or_else(|| AugError::Integrity(format!("unknown link {k}")))?;
        cost = cost + link.cost;
    }
    let weight: u32 = keys.iter().map(|k| k.t).sum();
    let g = augmented_graph(inst.graph(), &keys);
    let mut violated_cuts = Vec::new();
    let mut cut_nodes = Vec::new();
    let need = match target {
        Target::EdgeConn(k) => k as usize,
        Target::NodeConn2 => 2,
    };
    if !g.is_k_edge_connected(need) {
        if g.node_count() <= DEFAULT_ENUM_THRESHOLD {
            violated_cuts = enumerate_cuts_below(&g, need, DEFAULT_ENUM_THRESHOLD)?;
        } else if let Some((_, side)) = g.min_cut() {
            violated_cuts.extend(Cut::from_flags(&side));
        }
    }
    if target == Target::NodeConn2 && g.node_count() > 2 {
        cut_nodes = g.cut_nodes();
    }
    Ok(VerifyReport {
        violated_cuts,
        cut_nodes,
        weight_excess: weight.saturating_sub(inst.p()),
        cost,
        cost_mismatch: cost != sol.cost,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::MultiGraph;
    use crate::oracle::{brute_force_solve, Mode};

    fn key(u: usize, v: usize, t: u32) -> LinkKey {
        LinkKey::new(u, v, t)
    }

    fn star() -> MultiGraph {
        MultiGraph::new(4, vec![(0, 1), (0, 2), (0, 3)]).unwrap()
    }

    #[test]
    fn star_needs_two_links() {
        let links = [(1, 2), (1, 3), (2, 3)].map(|(u, v)| (key(u, v, 1), Cost::integer(1)));
        let inst = Instance::new(star(), links, 2, 2).unwrap();
        let sol = solve(&inst).unwrap();
        assert_eq!(sol.cost, Cost::integer(2));
        assert_eq!(sol.links.len(), 2);
        assert!(verify_solution(&inst, &sol).unwrap().is_valid());
        let tight = Instance::new(star(), links, 2, 1).unwrap();
        assert_eq!(solve(&tight).unwrap().status, Status::Infeasible);
    }

    #[test]
    fn single_edge_kernel() {
        let inst = Instance::new(
            MultiGraph::path(2),
            [(key(0, 1, 1), Cost::integer(5))],
            2,
            1,
        )
        .unwrap();
        let kern = crate::kernel::kernelize_by_one(&inst).unwrap();
        let sol = solve_kernel(&kern).unwrap();
        assert_eq!(sol.keys(), vec![key(0, 1, 1)]);
        assert_eq!(sol.cost, Cost::integer(5));
    }

    #[test]
    fn connected_input_needs_nothing() {
        let inst = Instance::new(
            MultiGraph::cycle(5),
            [(key(0, 2, 1), Cost::integer(1))],
            2,
            1,
        )
        .unwrap();
        let sol = solve(&inst).unwrap();
        assert!(sol.is_optimal() && sol.links.is_empty());
        assert_eq!(sol.cost, Cost::ZERO);
    }

    #[test]
    fn long_path_takes_the_endpoint_link() {
        let inst = Instance::new(
            MultiGraph::path(10),
            [
                (key(0, 9, 1), Cost::integer(4)),
                (key(0, 5, 1), Cost::integer(1)),
            ],
            2,
            2,
        )
        .unwrap();
        let sol = solve(&inst).unwrap();
        let oracle = brute_force_solve(&inst, Mode::Set, Target::EdgeConn(2)).unwrap();
        assert_eq!(sol.keys(), vec![key(0, 9, 1)]);
        assert_eq!(sol.cost, oracle.cost);
    }

    #[test]
    fn verify_reports_problems() {
        let links = [(1, 2), (1, 3), (2, 3)].map(|(u, v)| (key(u, v, 1), Cost::integer(1)));
        let inst = Instance::new(star(), links, 2, 1).unwrap();
        let partial = Solution::from_keys(&inst, [key(1, 2, 1)]).unwrap();
        let report = verify_solution(&inst, &partial).unwrap();
        assert_eq!(
            report.violated_cuts,
            vec![Cut::from_nodes(4, &[3]).unwrap()]
        );
        let heavy = Solution::from_keys(&inst, [key(1, 2, 1), key(1, 3, 1)]).unwrap();
        let report = verify_solution(&inst, &heavy).unwrap();
        assert!(report.violated_cuts.is_empty());
        assert_eq!(report.weight_excess, 1);
        let mut foreign = heavy.clone();
        foreign.links[0].u = 0;
        assert!(matches!(
            verify_solution(&inst, &foreign),
            Err(AugError::Integrity(_))
        ));
    }
}
