//! Exhaustive reference solver.
//!
//! Enumerates link sets (or multisets) of total weight at most `p` and keeps
//! the cheapest one whose addition satisfies the connectivity target. Ties
//! go to the lexicographically smallest sorted id list.

use crate::cost::Cost;
use crate::error::{AugError, Result};
use crate::graph::MultiGraph;
use crate::instance::{Instance, LinkKey};
use crate::solution::Solution;

/// Default cap on the number of candidate sets visited.
pub const DEFAULT_SEARCH_CAP: u64 = 20_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    /// Each link at most once.
    Set,
    /// Links may be repeated; each copy pays cost and weight again.
    Multiset,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Target {
    EdgeConn(u32),
    NodeConn2,
}

impl Target {
    fn min_degree(self) -> usize {
        match self {
            Target::EdgeConn(k) => k as usize,
            Target::NodeConn2 => 2,
        }
    }

    pub fn holds(self, g: &MultiGraph) -> bool {
        match self {
            Target::EdgeConn(k) => g.is_k_edge_connected(k as usize),
            Target::NodeConn2 => g.is_two_node_connected(),
        }
    }
}

/// Adds one edge per link (repeated links give parallel edges); weights
/// play no part.
pub fn augmented_graph<'a>(
    g: &MultiGraph,
    links: impl IntoIterator<Item = &'a LinkKey>,
) -> MultiGraph {
    let mut out = g.clone();
    for l in links {
        out.push_edge(l.u, l.v);
    }
    out
}

pub fn brute_force_solve(inst: &Instance, mode: Mode, target: Target) -> Result<Solution> {
    brute_force_solve_with(inst, mode, target, DEFAULT_SEARCH_CAP)
}

struct Search<'a> {
    inst: &'a Instance,
    items: Vec<(LinkKey, Cost, usize)>,
    mode: Mode,
    target: Target,
    cap: u64,
    visited: u64,
    deg: Vec<usize>,
    chosen: Vec<usize>,
    best: Option<(Cost, Vec<usize>)>,
}

impl Search<'_> {
    fn deficiency(&self) -> usize {
        let need = self.target.min_degree();
        self.deg.iter().map(|&d| need.saturating_sub(d)).sum()
    }

    fn feasible(&self) -> bool {
        let keys: Vec<LinkKey> = self.chosen.iter().map(|&i| self.items[i].0).collect();
        self.target
            .holds(&augmented_graph(self.inst.graph(), &keys))
    }

    fn offer(&mut self, cost: Cost) {
        let mut ids: Vec<usize> = self.chosen.iter().map(|&i| self.items[i].2).collect();
        ids.sort_unstable();
        let better = match &self.best {
            None => true,
            Some((c, b)) => cost < *c || (cost == *c && ids < *b),
        };
        if better {
            self.best = Some((cost, ids));
        }
    }

    fn dfs(&mut self, from: usize, weight: u32, cost: Cost) -> Result<()> {
        self.visited += 1;
        if self.visited > self.cap {
            return Err(AugError::SizeLimit {
                what: "oracle candidate sets",
                actual: self.visited,
                limit: self.cap,
            });
        }
        let budget = self.inst.p() - weight;
        // every further link weighs at least 1 and adds 2 to the degree sum
        let deficiency = self.deficiency();
        if deficiency > 2 * budget as usize {
            return Ok(());
        }
        if deficiency == 0 && self.feasible() {
            self.offer(cost);
        }
        for j in from..self.items.len() {
            let (key, c, _) = self.items[j];
            let next = cost + c;
            if let Some((b, _)) = &self.best {
                // items are sorted by cost, so later ones are no cheaper
                if next > *b {
                    break;
                }
            }
            if key.t > budget {
                continue;
            }
            self.chosen.push(j);
            self.deg[key.u] += 1;
            self.deg[key.v] += 1;
            let resume = if self.mode == Mode::Multiset {
                j
            } else {
                j + 1
            };
            let r = self.dfs(resume, weight + key.t, next);
            self.deg[key.u] -= 1;
            self.deg[key.v] -= 1;
            self.chosen.pop();
            r?;
        }
        Ok(())
    }
}

/// As [`brute_force_solve`] with an explicit cap on visited candidates.
pub fn brute_force_solve_with(
    inst: &Instance,
    mode: Mode,
    target: Target,
    cap: u64,
) -> Result<Solution> {
    let mut items: Vec<(LinkKey, Cost, usize)> =
        inst.finite_links().map(|l| (l.key, l.cost, l.id)).collect();
    items.sort_by(|a, b| a.1.cmp(&b.1).then(a.2.cmp(&b.2)));
    let mut search = Search {
        inst,
        items,
        mode,
        target,
        cap,
        visited: 0,
        deg: inst.graph().degrees(),
        chosen: Vec::new(),
        best: None,
    };
    search.dfs(0, 0, Cost::ZERO)?;
    match search.best {
        None => Ok(Solution::infeasible()),
        Some((_, ids)) => {
            let keys = ids.iter().map(|&id| inst.links()[id].key);
            Solution::from_keys(inst, keys)
        }
    }
}
