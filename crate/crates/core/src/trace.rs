//! Replayable log of the reductions applied to an instance.
//!
//! Every step maps a solution of the instance after the step to a solution
//! of the instance before it, with cost and weight no larger. Replaying the
//! steps last-to-first lifts a kernel solution back to the input.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::cost::Cost;
use crate::error::{AugError, Result};
use crate::graph::NodeId;
use crate::instance::LinkKey;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "step", rename_all = "snake_case")]
pub enum TraceStep {
    /// Node classes merged; `survivors` maps each new link to the old link it came from.
    Contracted {
        node_map: Vec<NodeId>,
        survivors: Vec<(LinkKey, LinkKey)>,
    },
    /// `c(h)` lowered to `c(e) + c(f)`.
    TriangleFix {
        h: LinkKey,
        e: LinkKey,
        f: LinkKey,
        old: Cost,
        new: Cost,
    },
    /// `c(f)` lowered to `c(e)`, `f` being a shadow of `e`.
    ShadowFix {
        f: LinkKey,
        e: LinkKey,
        old: Cost,
        new: Cost,
    },
    /// Foliate shadow fix for disconnected inputs: `f` is replaced by `e`
    /// or, if that breaks 2-edge-connectivity, by `fallback`.
    FoliateShadowFix {
        f: LinkKey,
        e: LinkKey,
        fallback: LinkKey,
        old: Cost,
        new: Cost,
    },
    /// Chains of non-corner nodes merged into an endpoint.
    PathContracted {
        node_map: Vec<NodeId>,
        survivors: Vec<(LinkKey, LinkKey)>,
    },
    /// Links dropped from the instance; lifting is the identity.
    LinkRestricted { dropped: Vec<LinkKey> },
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReductionTrace {
    pub steps: Vec<TraceStep>,
}

fn relabel(survivors: &[(LinkKey, LinkKey)], key: &LinkKey) -> Result<LinkKey> {
    survivors
        .iter()
        .find(|(new, _)| new == key)
        .map(|&(_, old)| old)
        .ok_or_else(|| AugError::Integrity(format!("link {key} has no pre-image in the trace")))
}

impl ReductionTrace {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn push(&mut self, step: TraceStep) {
        self.steps.push(step);
    }

    pub fn extend(&mut self, other: ReductionTrace) {
        self.steps.extend(other.steps);
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    /// Lifts a link set through all steps, last to first. Replacement links
    /// already present are merged, as augmentation only needs a set.
    pub fn lift(&self, solution: &BTreeSet<LinkKey>) -> Result<BTreeSet<LinkKey>> {
        let mut current = solution.clone();
        for step in self.steps.iter().rev() {
            current = lift_step(step, current)?;
        }
        Ok(current)
    }
}

fn lift_step(step: &TraceStep, mut current: BTreeSet<LinkKey>) -> Result<BTreeSet<LinkKey>> {
    match step {
        TraceStep::Contracted { survivors, .. } | TraceStep::PathContracted { survivors, .. } => {
            let map: BTreeMap<LinkKey, LinkKey> = survivors.iter().copied().collect();
            current
                .iter()
                .map(|k| {
                    map.get(k).copied().ok_or_else(|| {
                        AugError::Integrity(format!("link {k} has no pre-image in the trace"))
                    })
                })
                .collect()
        }
        TraceStep::TriangleFix { h, e, f, .. } => {
            if current.remove(h) {
                current.insert(*e);
                current.insert(*f);
            }
            Ok(current)
        }
        TraceStep::ShadowFix { f, e, .. } => {
            if current.remove(f) {
                current.insert(*e);
            }
            Ok(current)
        }
        TraceStep::LinkRestricted { dropped } => {
            if let Some(k) = dropped.iter().find(|k| current.contains(k)) {
                return Err(AugError::Integrity(format!(
                    "solution uses dropped link {k}"
                )));
            }
            Ok(current)
        }
        TraceStep::FoliateShadowFix { f, .. } => {
            if current.contains(f) {
                Err(AugError::Integrity(format!(
                    "foliate shadow fix of {f} needs the graph to replay"
                )))
            } else {
                Ok(current)
            }
        }
    }
}

/// Single-step relabelling used by multiset lifts elsewhere in the crate.
pub(crate) fn relabel_key(step: &TraceStep, key: &LinkKey) -> Result<LinkKey> {
    match step {
        TraceStep::Contracted { survivors, .. } | TraceStep::PathContracted { survivors, .. } => {
            relabel(survivors, key)
        }
        _ => Ok(*key),
    }
}
