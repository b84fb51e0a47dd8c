//! Seeded random instances.
//!
//! All randomness comes from one SplitMix64 stream seeded with the given
//! 64-bit seed: each draw advances `state += 0x9e3779b97f4a7c15` and mixes
//! it with the two multiply-xorshift rounds
//! `(z ^ z >> 30) * 0xbf58476d1ce4e5b9`, `(z ^ z >> 27) * 0x94d049bb133111eb`,
//! `z ^ z >> 31`. A draw below `m` is `next % m`. The draw order is part of
//! the format: graph first (in the order documented on each kind), then one
//! presence draw per `(u, v, t)` slot in increasing `u`, `v`, `t` order, and
//! for a present slot a numerator and a denominator draw.

use rand_xoshiro::rand_core::{Rng, SeedableRng};
use rand_xoshiro::SplitMix64;
use serde::{Deserialize, Serialize};

use crate::cost::Cost;
use crate::error::{AugError, Result};
use crate::graph::MultiGraph;
use crate::instance::{Instance, LinkKey};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum GenKind {
    /// Random tree, every edge repeated `k - 1` times.
    Tree,
    /// Random cactus of circuits of length 2 to 4, every edge repeated
    /// `(k - 1) / 2` times. Needs odd `k`.
    Cactus,
    /// `components` random trees; used with `k = 2` for the 0→2 problem.
    Forest,
    /// Random tree plus random edges until `(k - 1)`-edge-connected.
    General,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GenParams {
    pub kind: GenKind,
    pub n: usize,
    pub p: u32,
    pub k: u32,
    pub seed: u64,
    /// Costs are `a / b` with `a` in `0..=max_num` and `b` in `1..=max_den`.
    pub max_num: u32,
    pub max_den: u32,
    /// Per-mille chance that a `(pair, t)` slot carries a link.
    pub density_per_mille: u32,
    /// Forest components.
    pub components: usize,
}

impl Default for GenParams {
    fn default() -> Self {
        GenParams {
            kind: GenKind::Tree,
            n: 6,
            p: 2,
            k: 2,
            seed: 0,
            max_num: 9,
            max_den: 1,
            density_per_mille: 400,
            components: 2,
        }
    }
}

/// Thin wrapper fixing how draws are mapped to ranges.
pub struct Draws(SplitMix64);

impl Draws {
    pub fn new(seed: u64) -> Self {
        Draws(SplitMix64::seed_from_u64(seed))
    }

    pub fn next_u64(&mut self) -> u64 {
        self.0.next_u64()
    }

    /// A draw in `0..m`; `m` must be positive.
    pub fn below(&mut self, m: u64) -> u64 {
        self.next_u64() % m
    }

    pub fn index(&mut self, m: usize) -> usize {
        self.below(m as u64) as usize
    }
}

fn repeat_edges(edges: &[(usize, usize)], times: u32) -> Vec<(usize, usize)> {
    edges
        .iter()
        .flat_map(|&e| std::iter::repeat_n(e, times as usize))
        .collect()
}

/// Node `i >= 1` hangs off a uniformly drawn earlier node.
fn random_tree(d: &mut Draws, n: usize) -> Vec<(usize, usize)> {
    (1..n).map(|i| (d.index(i), i)).collect()
}

/// Circuits are attached one at a time: draw the attachment node among the
/// nodes so far, then the length in `2..=4` (clipped to the nodes left).
fn random_cactus(d: &mut Draws, n: usize) -> Vec<(usize, usize)> {
    let mut edges = Vec::new();
    let mut count = 1;
    while count < n {
        let at = d.index(count);
        let len = (2 + d.index(3)).min(n - count + 1);
        let mut prev = at;
        for _ in 1..len {
            edges.push((prev, count));
            prev = count;
            count += 1;
        }
        if len == 2 {
            edges.push((at, prev));
        } else {
            edges.push((prev, at));
        }
    }
    edges
}

/// Nodes `0..r` root the components; each later node draws a component and
/// then a parent among that component's nodes so far.
fn random_forest(d: &mut Draws, n: usize, r: usize) -> Vec<(usize, usize)> {
    let mut members: Vec<Vec<usize>> = (0..r).map(|c| vec![c]).collect();
    let mut edges = Vec::new();
    for v in r..n {
        let c = d.index(r);
        let parent = members[c][d.index(members[c].len())];
        edges.push((parent, v));
        members[c].push(v);
    }
    edges
}

/// A random tree, then uniformly drawn extra edges (distinct endpoints)
/// until the edge connectivity reaches `need`.
fn random_general(d: &mut Draws, n: usize, need: usize) -> Result<MultiGraph> {
    let mut g = MultiGraph::new(n, random_tree(d, n))?;
    let mut guard = 0usize;
    while n > 1 && g.edge_connectivity().unwrap_or(0) < need {
        let u = d.index(n);
        let v = d.index(n);
        if u != v {
            g.push_edge(u, v);
        }
        guard += 1;
        if guard > 100 * n * n * need.max(1) {
            return Err(AugError::InvalidArgument(
                "could not reach the connectivity".into(),
            ));
        }
    }
    Ok(g)
}

pub fn generate_random(params: &GenParams) -> Result<Instance> {
    let GenParams { kind, n, p, k, .. } = *params;
    if n == 0 || p == 0 || k == 0 {
        return Err(AugError::InvalidArgument(
            "n, p and k must be positive".into(),
        ));
    }
    if params.max_den == 0 {
        return Err(AugError::InvalidArgument("max_den must be positive".into()));
    }
    let mut d = Draws::new(params.seed);
    let graph = match kind {
        GenKind::Tree => {
            if k < 2 {
                return Err(AugError::InvalidArgument(
                    "tree instances need k >= 2".into(),
                ));
            }
            MultiGraph::new(n, repeat_edges(&random_tree(&mut d, n), k - 1))?
        }
        GenKind::Cactus => {
            if k < 3 || k % 2 == 0 {
                return Err(AugError::InvalidArgument(
                    "cactus instances need an odd k >= 3".into(),
                ));
            }
            MultiGraph::new(n, repeat_edges(&random_cactus(&mut d, n), (k - 1) / 2))?
        }
        GenKind::Forest => {
            let r = params.components;
            if r == 0 || r > n {
                return Err(AugError::InvalidArgument(format!(
                    "cannot split {n} nodes into {r} components"
                )));
            }
            MultiGraph::new(n, random_forest(&mut d, n, r))?
        }
        GenKind::General => random_general(&mut d, n, k as usize - 1)?,
    };
    let mut links = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            for t in 1..=p {
                if d.below(1000) < params.density_per_mille as u64 {
                    let num = d.below(params.max_num as u64 + 1) as i128;
                    let den = 1 + d.below(params.max_den as u64) as i128;
                    links.push((LinkKey::new(u, v, t), Cost::ratio(num, den)));
                }
            }
        }
    }
    Instance::new(graph, links, k, p)
}
