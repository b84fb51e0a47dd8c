//! Augmentation results.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::cost::Cost;
use crate::error::{AugError, Result};
use crate::instance::{Instance, LinkKey};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Optimal,
    Infeasible,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SolutionLink {
    pub u: usize,
    pub v: usize,
    pub t: u32,
    pub cost: Cost,
}

impl SolutionLink {
    pub fn key(&self) -> LinkKey {
        LinkKey::new(self.u, self.v, self.t)
    }
}

/// A chosen link multiset. Links are sorted by key; a key appears more than
/// once only in multiset mode.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Solution {
    pub status: Status,
    pub links: Vec<SolutionLink>,
    pub weight: u32,
    pub cost: Cost,
}

impl Solution {
    pub fn infeasible() -> Self {
        Solution {
            status: Status::Infeasible,
            links: Vec::new(),
            weight: 0,
            cost: Cost::ZERO,
        }
    }

    /// Builds an optimal-status solution from keys of `inst`, pricing each
    /// key with its cost there. Unknown or infinite-cost keys are integrity
    /// errors.
    pub fn from_keys(inst: &Instance, keys: impl IntoIterator<Item = LinkKey>) -> Result<Self> {
        let mut links = Vec::new();
        for key in keys {
            let cost = match inst.link(&key) {
                Some(l) if l.cost.is_finite() => l.cost,
                _ => {
                    return Err(AugError::Integrity(format!(
                        "link {key} is not an available link of the instance"
                    )))
                }
            };
            links.push(SolutionLink {
                u: key.u,
                v: key.v,
                t: key.t,
                cost,
            });
        }
        links.sort();
        let weight = links.iter().map(|l| l.t).sum();
        let cost = links.iter().map(|l| l.cost).sum();
        Ok(Solution {
            status: Status::Optimal,
            links,
            weight,
            cost,
        })
    }

    pub fn is_optimal(&self) -> bool {
        self.status == Status::Optimal
    }

    pub fn keys(&self) -> Vec<LinkKey> {
        self.links.iter().map(SolutionLink::key).collect()
    }

    pub fn key_set(&self) -> BTreeSet<LinkKey> {
        self.links.iter().map(SolutionLink::key).collect()
    }

    /// Link ids of the chosen links in `inst`, with repetitions.
    pub fn ids(&self, inst: &Instance) -> Result<Vec<usize>> {
        self.keys()
            .iter()
            .map(|k| {
                inst.link(k)
                    .map(|l| l.id)
                    .ok_or_else(|| AugError::Integrity(format!("unknown link {k}")))
            })
            .collect()
    }
}
