//! Instance text format and solution output.
//!
//! ```text
//! c comment lines anywhere
//! p aug <n> <m> <L> <k> <p>
//! e <u> <v>                 (m lines)
//! l <u> <v> <t> <cost>      (L lines; cost is num/den, an integer or inf)
//! ```

use serde::{Deserialize, Serialize};

use crate::cost::Cost;
use crate::error::{AugError, Result};
use crate::graph::MultiGraph;
use crate::instance::{cheapest_per_key, Instance, LinkKey};
use crate::solution::{Solution, SolutionLink, Status};
use crate::trace::ReductionTrace;

struct Header {
    n: usize,
    m: usize,
    links: usize,
    k: u32,
    p: u32,
}

fn field<T: std::str::FromStr>(line: usize, what: &str, s: Option<&str>) -> Result<T> {
    let s = s.ok_or_else(|| AugError::parse(line, format!("missing {what}")))?;
    s.parse()
        .map_err(|_| AugError::parse(line, format!("invalid {what} `{s}`")))
}

fn node(line: usize, s: Option<&str>, n: usize) -> Result<usize> {
    let v: usize = field(line, "node id", s)?;
    if v >= n {
        return Err(AugError::parse(
            line,
            format!("node {v} out of range 0..{n}"),
        ));
    }
    Ok(v)
}

fn no_trailing<'a>(line: usize, mut rest: impl Iterator<Item = &'a str>) -> Result<()> {
    match rest.next() {
        Some(extra) => Err(AugError::parse(line, format!("unexpected `{extra}`"))),
        None => Ok(()),
    }
}

pub fn parse_instance(text: &str) -> Result<Instance> {
    let mut header: Option<Header> = None;
    let mut edges = Vec::new();
    let mut links: Vec<(LinkKey, Cost)> = Vec::new();
    let mut link_lines = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let mut words = raw.split_whitespace();
        let Some(tag) = words.next() else { continue };
        match tag {
            "c" => continue,
            "p" => {
                if header.is_some() {
                    return Err(AugError::parse(line, "second problem line"));
                }
                if words.next() != Some("aug") {
                    return Err(AugError::parse(line, "expected `p aug`"));
                }
                let h = Header {
                    n: field(line, "node count", words.next())?,
                    m: field(line, "edge count", words.next())?,
                    links: field(line, "link count", words.next())?,
                    k: field(line, "target", words.next())?,
                    p: field(line, "budget", words.next())?,
                };
                no_trailing(line, words)?;
                if h.n == 0 || h.k == 0 || h.p == 0 {
                    return Err(AugError::parse(line, "n, k and p must be positive"));
                }
                header = Some(h);
            }
            "e" | "l" => {
                let h = header
                    .as_ref()
                    .ok_or_else(|| AugError::parse(line, "data before the problem line"))?;
                let u = node(line, words.next(), h.n)?;
                let v = node(line, words.next(), h.n)?;
                if u == v {
                    return Err(AugError::parse(line, format!("self-loop at {u}")));
                }
                if tag == "e" {
                    no_trailing(line, words)?;
                    edges.push((u, v));
                } else {
                    let t: u32 = field(line, "weight", words.next())?;
                    if t == 0 || t > h.p {
                        return Err(AugError::parse(
                            line,
                            format!("weight {t} outside 1..={}", h.p),
                        ));
                    }
                    let word = words.next();
                    let cost: Cost = word
                        .ok_or_else(|| AugError::parse(line, "missing cost"))?
                        .parse()
                        .map_err(|e| AugError::parse(line, format!("{e}")))?;
                    no_trailing(line, words)?;
                    links.push((LinkKey::new(u, v, t), cost));
                    link_lines.push(line);
                }
            }
            other => {
                return Err(AugError::parse(
                    line,
                    format!("unknown line type `{other}`"),
                ))
            }
        }
    }
    let h = header.ok_or_else(|| AugError::parse(1, "missing problem line"))?;
    let last = text.lines().count().max(1);
    if edges.len() != h.m {
        return Err(AugError::parse(
            last,
            format!("expected {} edges, found {}", h.m, edges.len()),
        ));
    }
    if links.len() != h.links {
        return Err(AugError::parse(
            last,
            format!("expected {} links, found {}", h.links, links.len()),
        ));
    }
    let kept = cheapest_per_key(links.iter().copied());
    if kept.len() < links.len() {
        let mut winners: Vec<usize> = kept.iter().map(|&(_, _, i)| i).collect();
        winners.sort_unstable();
        for (i, (key, _)) in links.iter().enumerate() {
            if winners.binary_search(&i).is_err() {
                log::warn!(
                    "line {}: duplicate link {key}, keeping the cheaper one",
                    link_lines[i]
                );
            }
        }
        // keep first-appearance order among the survivors
        links = winners.iter().map(|&i| links[i]).collect();
    }
    let graph = MultiGraph::new(h.n, edges)?;
    Instance::new(graph, links, h.k, h.p)
}

pub fn serialize_instance(inst: &Instance) -> String {
    let g = inst.graph();
    let mut out = format!(
        "p aug {} {} {} {} {}\n",
        g.node_count(),
        g.edge_count(),
        inst.links().len(),
        inst.k(),
        inst.p()
    );
    for &(u, v) in g.edges() {
        out.push_str(&format!("e {u} {v}\n"));
    }
    for l in inst.links() {
        out.push_str(&format!(
            "l {} {} {} {}\n",
            l.key.u, l.key.v, l.key.t, l.cost
        ));
    }
    out
}

#[derive(Serialize, Deserialize)]
struct SolutionDoc {
    status: Status,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    cost: Option<Cost>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    weight: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    links: Option<Vec<SolutionLink>>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    violations: Vec<String>,
}

pub fn serialize_solution(sol: &Solution) -> String {
    serialize_solution_with(sol, &[])
}

/// JSON with an extra `violations` list (omitted when empty).
pub fn serialize_solution_with(sol: &Solution, violations: &[String]) -> String {
    let doc = match sol.status {
        Status::Infeasible => SolutionDoc {
            status: Status::Infeasible,
            cost: None,
            weight: None,
            links: None,
            violations: violations.to_vec(),
        },
        Status::Optimal => SolutionDoc {
            status: Status::Optimal,
            cost: Some(sol.cost),
            weight: Some(sol.weight),
            links: Some(sol.links.clone()),
            violations: violations.to_vec(),
        },
    };
    serde_json::to_string(&doc).expect("solution serializes")
}

pub fn parse_solution(text: &str) -> Result<Solution> {
    let doc: SolutionDoc = serde_json::from_str(text)
        .map_err(|e| AugError::parse(e.line(), format!("bad solution JSON: {e}")))?;
    match doc.status {
        Status::Infeasible => Ok(Solution::infeasible()),
        Status::Optimal => {
            let mut links = doc.links.unwrap_or_default();
            links.sort();
            let weight = links.iter().map(|l| l.t).sum();
            let cost = links.iter().map(|l| l.cost).sum();
            if doc.weight.is_some_and(|w| w != weight) || doc.cost.is_some_and(|c| c != cost) {
                return Err(AugError::parse(
                    1,
                    "weight or cost disagrees with the links",
                ));
            }
            Ok(Solution {
                status: Status::Optimal,
                links,
                weight,
                cost,
            })
        }
    }
}

/// Line-oriented rendering for `--format text`.
pub fn solution_to_text(sol: &Solution, violations: &[String]) -> String {
    let mut out = String::new();
    match sol.status {
        Status::Infeasible => out.push_str("status infeasible\n"),
        Status::Optimal => {
            out.push_str(&format!(
                "status optimal\ncost {}\nweight {}\n",
                sol.cost, sol.weight
            ));
            for l in &sol.links {
                out.push_str(&format!("link {} {} {} {}\n", l.u, l.v, l.t, l.cost));
            }
        }
    }
    for v in violations {
        out.push_str(&format!("violation {v}\n"));
    }
    out
}

pub fn trace_to_json(trace: &ReductionTrace) -> String {
    serde_json::to_string_pretty(trace).expect("trace serializes")
}

pub fn trace_from_json(text: &str) -> Result<ReductionTrace> {
    serde_json::from_str(text)
        .map_err(|e| AugError::parse(e.line(), format!("bad trace JSON: {e}")))
}
