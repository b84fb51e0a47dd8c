//! Canonical cuts and exhaustive minimum-cut enumeration for small graphs.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::error::{AugError, Result};
use crate::graph::{MultiGraph, NodeId};
use crate::instance::LinkKey;

/// Node-count limit for exhaustive cut enumeration.
pub const DEFAULT_ENUM_THRESHOLD: usize = 20;

/// A cut, stored as its side containing the smallest node id (node 0).
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Cut {
    side: Vec<NodeId>,
}

impl Cut {
    /// Canonicalizes `side` (given as membership flags over all nodes).
    /// Returns `None` for the empty set and for the whole node set.
    pub fn from_flags(flags: &[bool]) -> Option<Cut> {
        let inside = flags.iter().filter(|&&b| b).count();
        if inside == 0 || inside == flags.len() {
            return None;
        }
        let keep = flags[0];
        Some(Cut {
            side: (0..flags.len()).filter(|&v| flags[v] == keep).collect(),
        })
    }

    pub fn from_nodes(n: usize, nodes: &[NodeId]) -> Option<Cut> {
        let mut flags = vec![false; n];
        for &v in nodes {
            flags[v] = true;
        }
        Cut::from_flags(&flags)
    }

    pub fn side(&self) -> &[NodeId] {
        &self.side
    }

    pub fn contains(&self, v: NodeId) -> bool {
        self.side.binary_search(&v).is_ok()
    }

    pub fn flags(&self, n: usize) -> Vec<bool> {
        let mut f = vec![false; n];
        for &v in &self.side {
            f[v] = true;
        }
        f
    }

    /// Restriction to nodes `0..n` (dropping any nodes beyond), re-canonicalized.
    pub fn restrict(&self, total: usize, n: usize) -> Option<Cut> {
        let f = self.flags(total);
        Cut::from_flags(&f[..n])
    }
}

/// True iff exactly one endpoint of the link lies in the cut's side.
pub fn covers(link: &LinkKey, cut: &Cut) -> bool {
    cut.contains(link.u) != cut.contains(link.v)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CutFamily {
    pub value: usize,
    pub cuts: BTreeSet<Cut>,
}

impl CutFamily {
    pub fn len(&self) -> usize {
        self.cuts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cuts.is_empty()
    }
}

fn check_threshold(g: &MultiGraph, threshold: usize) -> Result<()> {
    let n = g.node_count();
    if n > threshold.min(63) {
        return Err(AugError::SizeLimit {
            what: "node count for cut enumeration",
            actual: n as u64,
            limit: threshold.min(63) as u64,
        });
    }
    Ok(())
}

/// Visits every canonical cut with its boundary size.
fn for_each_cut(g: &MultiGraph, mut visit: impl FnMut(u64, usize)) {
    let n = g.node_count();
    if n < 2 {
        return;
    }
    let edges: Vec<(u64, u64)> = g
        .edges()
        .iter()
        .map(|&(u, v)| (1u64 << u, 1u64 << v))
        .collect();
    let full = (1u64 << n) - 1;
    // side = {0} plus a subset of the remaining nodes, never all of them
    for rest in 0..(1u64 << (n - 1)) {
        let side = 1 | (rest << 1);
        if side == full {
            continue;
        }
        let d = edges
            .iter()
            .filter(|&&(a, b)| (side & a == 0) != (side & b == 0))
            .count();
        visit(side, d);
    }
}

fn mask_to_cut(mask: u64, n: usize) -> Cut {
    Cut {
        side: (0..n).filter(|&v| mask >> v & 1 == 1).collect(),
    }
}

/// All canonical minimum cuts by exhaustive scan. Fails with a size error
/// above `threshold` nodes.
pub fn enumerate_min_cuts(g: &MultiGraph, threshold: usize) -> Result<CutFamily> {
    check_threshold(g, threshold)?;
    let n = g.node_count();
    let mut best = usize::MAX;
    let mut masks = Vec::new();
    for_each_cut(g, |mask, d| {
        if d < best {
            best = d;
            masks.clear();
        }
        if d == best {
            masks.push(mask);
        }
    });
    Ok(CutFamily {
        value: if best == usize::MAX { 0 } else { best },
        cuts: masks.into_iter().map(|m| mask_to_cut(m, n)).collect(),
    })
}

/// All canonical cuts with boundary size below `k`.
pub fn enumerate_cuts_below(g: &MultiGraph, k: usize, threshold: usize) -> Result<Vec<Cut>> {
    check_threshold(g, threshold)?;
    let n = g.node_count();
    let mut out = Vec::new();
    for_each_cut(g, |mask, d| {
        if d < k {
            out.push(mask_to_cut(mask, n));
        }
    });
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn path_has_one_cut_per_edge() {
        let f = enumerate_min_cuts(&MultiGraph::path(3), 20).unwrap();
        assert_eq!(f.value, 1);
        assert_eq!(f.len(), 2);
    }

    #[test]
    fn cycle_and_complete_graph() {
        let c4 = enumerate_min_cuts(&MultiGraph::cycle(4), 20).unwrap();
        assert_eq!((c4.value, c4.len()), (2, 6));
        let k4 = enumerate_min_cuts(&MultiGraph::complete(4), 20).unwrap();
        assert_eq!((k4.value, k4.len()), (3, 4));
        // the singletons; {0} directly, the rest by their complements
        assert!(k4.cuts.contains(&Cut::from_nodes(4, &[0]).unwrap()));
        assert!(k4.cuts.contains(&Cut::from_nodes(4, &[3]).unwrap()));
    }

    #[test]
    fn threshold_is_enforced() {
        let err = enumerate_min_cuts(&MultiGraph::path(6), 5).unwrap_err();
        assert!(matches!(err, AugError::SizeLimit { .. }));
    }

    #[test]
    fn canonical_side_contains_node_zero() {
        let c = Cut::from_nodes(4, &[2, 3]).unwrap();
        assert_eq!(c.side(), &[0, 1]);
        assert!(Cut::from_nodes(3, &[]).is_none());
        assert!(Cut::from_nodes(3, &[0, 1, 2]).is_none());
    }

    #[test]
    fn coverage() {
        // path a-b-c as 0-1-2
        let a = Cut::from_nodes(3, &[0]).unwrap();
        let ab = Cut::from_nodes(3, &[0, 1]).unwrap();
        assert!(covers(&LinkKey::new(0, 2, 1), &a));
        assert!(covers(&LinkKey::new(0, 2, 1), &ab));
        // C_4, link (a,b) = (0,1), cut {c} = {2}
        let c = Cut::from_nodes(4, &[2]).unwrap();
        assert!(!covers(&LinkKey::new(0, 1, 1), &c));
    }
}
