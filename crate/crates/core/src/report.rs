//! Rendering of Sylow graphs: the stable JSON schema, canonical DOT, and
//! a plain table. JSON round-trips back into a `SylowGraph`.

use crate::graph::{Arrow, SylowGraph};
use crate::{Error, Result};
use num_bigint::BigUint;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::str::FromStr;

/// The stable JSON schema: orders are decimal strings, vertices and arrows
/// sorted, diameter null exactly when the graph is disconnected.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct GraphReport {
    pub group: String,
    pub order: String,
    pub vertices: Vec<u64>,
    pub arrows: Vec<ArrowReport>,
    pub connected: bool,
    pub diameter: Option<u32>,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct ArrowReport {
    pub from: u64,
    pub to: u64,
    pub automiser_order: String,
}

impl GraphReport {
    pub fn from_graph(graph: &SylowGraph) -> GraphReport {
        GraphReport {
            group: graph.group_label.clone(),
            order: graph.group_order.to_string(),
            vertices: graph.vertices.clone(),
            arrows: graph
                .arrows
                .iter()
                .map(|a| ArrowReport {
                    from: a.from,
                    to: a.to,
                    automiser_order: a.automiser_order.to_string(),
                })
                .collect(),
            connected: graph.is_connected(),
            diameter: graph.diameter(),
        }
    }

    /// Inverse of `from_graph`, recovering the automiser-order map from the
    /// arrow annotations (primes without arrows fall back to order 1, which
    /// is what a missing entry means for the graph's metric content).
    pub fn to_graph(&self) -> Result<SylowGraph> {
        let order = BigUint::from_str(&self.order)
            .map_err(|_| Error::Invalid(format!("invalid order string '{}'", self.order)))?;
        let mut arrows = Vec::new();
        let mut automisers: BTreeMap<u64, BigUint> = BTreeMap::new();
        for a in &self.arrows {
            let ao = BigUint::from_str(&a.automiser_order).map_err(|_| {
                Error::Invalid(format!("invalid automiser order '{}'", a.automiser_order))
            })?;
            automisers.insert(a.from, ao.clone());
            arrows.push(Arrow {
                from: a.from,
                to: a.to,
                automiser_order: ao,
            });
        }
        Ok(SylowGraph {
            group_label: self.group.clone(),
            group_order: order,
            vertices: self.vertices.clone(),
            arrows,
            automiser_orders: automisers,
        })
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn parse_json(text: &str) -> Result<GraphReport> {
        serde_json::from_str(text).map_err(|e| Error::Invalid(format!("invalid JSON report: {}", e)))
    }
}

/// Canonical DOT rendering: sorted vertices, one edge per arrow.
pub fn to_dot(graph: &SylowGraph) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "digraph sylow {{");
    let _ = writeln!(out, "  label=\"{}\";", graph.group_label);
    for v in &graph.vertices {
        let _ = writeln!(out, "  p{} [label=\"{}\"];", v, v);
    }
    for a in &graph.arrows {
        let _ = writeln!(
            out,
            "  p{} -> p{} [label=\"{}\"];",
            a.from, a.to, a.automiser_order
        );
    }
    let _ = writeln!(out, "}}");
    out
}

/// Human-readable table.
pub fn to_table(graph: &SylowGraph) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "group:     {}", graph.group_label);
    let _ = writeln!(out, "order:     {}", graph.group_order);
    let _ = writeln!(
        out,
        "vertices:  {}",
        graph
            .vertices
            .iter()
            .map(|v| v.to_string())
            .collect::<Vec<_>>()
            .join(" ")
    );
    if graph.arrows.is_empty() {
        let _ = writeln!(out, "arrows:    (none)");
    } else {
        let _ = writeln!(out, "arrows:");
        for a in &graph.arrows {
            let _ = writeln!(
                out,
                "  {} -> {}   (automiser order {})",
                a.from, a.to, a.automiser_order
            );
        }
    }
    for (p, a) in &graph.automiser_orders {
        let _ = writeln!(out, "automiser at {}: order {}", p, a);
    }
    let _ = writeln!(out, "connected: {}", graph.is_connected());
    match graph.diameter() {
        Some(d) => {
            let _ = writeln!(out, "diameter:  {}", d);
        }
        None => {
            let _ = writeln!(out, "diameter:  infinite (disconnected)");
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{catalog, graph, Ctx};

    #[test]
    fn json_round_trips() {
        let ctx = Ctx::default();
        let g = catalog::alternating(8).unwrap();
        let sg = graph::sylow_graph(&g, "A8", &ctx).unwrap();
        let report = GraphReport::from_graph(&sg);
        let parsed = GraphReport::parse_json(&report.to_json()).unwrap();
        assert_eq!(parsed, report);
        let back = parsed.to_graph().unwrap();
        assert_eq!(back.arrow_pairs(), sg.arrow_pairs());
        assert_eq!(back.vertices, sg.vertices);
        assert_eq!(back.group_order, sg.group_order);
        assert_eq!(back.diameter(), sg.diameter());
    }

    #[test]
    fn dot_is_canonical() {
        let ctx = Ctx::default();
        let g = catalog::symmetric(4).unwrap();
        let sg = graph::sylow_graph(&g, "S4", &ctx).unwrap();
        let dot = to_dot(&sg);
        assert!(dot.starts_with("digraph sylow {"));
        assert!(dot.contains("p3 -> p2"));
        assert_eq!(to_dot(&sg), dot);
    }
}
