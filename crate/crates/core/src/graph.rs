//! The Sylow graph: automiser orders, the directed arrow set, and the
//! undirected metric view (distance, diameter, connectivity).
//!
//! An arrow `p -> q` records that q divides the automiser order
//! `|N_G(G_p)| / |G_p C_G(G_p)|`; the automiser order itself is computed
//! purely from the four subgroup orders, never from a quotient group.
//! Edges of the metric are arrows read undirected.

use crate::arith;
use crate::perm::Permutation;
use crate::subgrp;
use crate::{Ctx, Error, PermGroup, Result, Subgroup};
use num_bigint::BigUint;
use num_traits::{One, Zero};
use std::collections::{BTreeMap, VecDeque};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Arrow {
    pub from: u64,
    pub to: u64,
    /// The full automiser order at `from` (not just its q-part).
    pub automiser_order: BigUint,
}

/// The Sylow graph of one group: vertices are the prime divisors of the
/// order, arrows are annotated with the automiser order witnessing them.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SylowGraph {
    pub group_label: String,
    pub group_order: BigUint,
    pub vertices: Vec<u64>,
    pub arrows: Vec<Arrow>,
    pub automiser_orders: BTreeMap<u64, BigUint>,
}

/// `|A_p(G)| = |N_G(G_p)| |Z(G_p)| / (|G_p| |C_G(G_p)|)`, using
/// `|G_p C_G(G_p)| = |G_p| |C_G(G_p)| / |Z(G_p)|`. Coprime to p.
pub fn automiser_order(g: &PermGroup, p: u64, ctx: &Ctx) -> Result<BigUint> {
    if subgrp::valuation(g.order(), p) == 0 {
        return Err(Error::Invalid(format!(
            "{} does not divide the group order {}",
            p,
            g.order()
        )));
    }
    let syl = subgrp::sylow(g, p, ctx)?;
    automiser_order_at(g, &syl, ctx)
}

fn automiser_order_at(g: &PermGroup, syl: &Subgroup, ctx: &Ctx) -> Result<BigUint> {
    let p_group = syl.group();
    if p_group.order() == g.order() {
        return Ok(BigUint::one()); // G is a p-group
    }
    let n = subgrp::normalizer(g, syl, ctx)?;
    // C_G(P) = C_N(P) since the centralizer normalizes.
    let inside = Subgroup::new_unchecked(n.group().clone(), p_group.clone());
    let c = subgrp::centralizer(n.group(), &inside, ctx)?;
    let z = subgrp::center(p_group, ctx)?;
    let numerator = n.group().order() * z.group().order();
    let denominator = p_group.order() * c.group().order();
    if !(&numerator % &denominator).is_zero() {
        return Err(Error::Invalid(format!(
            "automiser order is not integral: {} / {}",
            numerator, denominator
        )));
    }
    Ok(numerator / denominator)
}

/// Builds the full Sylow graph of `g`.
pub fn sylow_graph(g: &PermGroup, label: &str, ctx: &Ctx) -> Result<SylowGraph> {
    let order_fac = arith::factorize(g.order(), ctx)?;
    let vertices = order_fac.primes_u64()?;
    let mut arrows = Vec::new();
    let mut automisers = BTreeMap::new();
    for &p in &vertices {
        let a = automiser_order(g, p, ctx)?;
        if subgrp::valuation(&a, p) != 0 {
            return Err(Error::Invalid(format!(
                "automiser at {} has order {} divisible by {}",
                p, a, p
            )));
        }
        for q in arith::factorize(&a, ctx)?.primes_u64()? {
            arrows.push(Arrow {
                from: p,
                to: q,
                automiser_order: a.clone(),
            });
        }
        automisers.insert(p, a);
    }
    arrows.sort_by_key(|a| (a.from, a.to));
    Ok(SylowGraph {
        group_label: label.to_string(),
        group_order: g.order().clone(),
        vertices,
        arrows,
        automiser_orders: automisers,
    })
}

impl SylowGraph {
    pub fn arrow_pairs(&self) -> Vec<(u64, u64)> {
        self.arrows.iter().map(|a| (a.from, a.to)).collect()
    }

    pub fn has_arrow(&self, from: u64, to: u64) -> bool {
        self.arrows.iter().any(|a| a.from == from && a.to == to)
    }

    fn neighbors(&self) -> BTreeMap<u64, Vec<u64>> {
        let mut adj: BTreeMap<u64, Vec<u64>> = BTreeMap::new();
        for &v in &self.vertices {
            adj.entry(v).or_default();
        }
        for a in &self.arrows {
            adj.entry(a.from).or_default().push(a.to);
            adj.entry(a.to).or_default().push(a.from);
        }
        adj
    }

    /// Shortest chain length between vertices in the undirected view;
    /// `None` when no chain exists; 0 on equal vertices.
    pub fn distance(&self, p: u64, q: u64) -> Result<Option<u32>> {
        if !self.vertices.contains(&p) || !self.vertices.contains(&q) {
            return Err(Error::Invalid(format!(
                "{} or {} is not a vertex of the graph",
                p, q
            )));
        }
        if p == q {
            return Ok(Some(0));
        }
        let adj = self.neighbors();
        let mut dist: BTreeMap<u64, u32> = BTreeMap::new();
        dist.insert(p, 0);
        let mut queue = VecDeque::from([p]);
        while let Some(v) = queue.pop_front() {
            let d = dist[&v];
            for &w in &adj[&v] {
                if let std::collections::btree_map::Entry::Vacant(e) = dist.entry(w) {
                    if w == q {
                        return Ok(Some(d + 1));
                    }
                    e.insert(d + 1);
                    queue.push_back(w);
                }
            }
        }
        Ok(None)
    }

    /// Largest pairwise distance over distinct vertices; `None` when the
    /// graph is disconnected. Graphs with at most one vertex have
    /// diameter 0 by convention.
    pub fn diameter(&self) -> Option<u32> {
        if self.vertices.len() <= 1 {
            return Some(0);
        }
        let mut best = 0;
        for (i, &p) in self.vertices.iter().enumerate() {
            for &q in &self.vertices[i + 1..] {
                {
                    let d = self.distance(p, q).expect("vertices present")?;
                    best = best.max(d)
                }
            }
        }
        Some(best)
    }

    pub fn is_connected(&self) -> bool {
        self.diameter().is_some()
    }
}

/// A certificate that the arrow `p -> 2` lies in the Sylow graph: a
/// nontrivial element of the center of a Sylow p-subgroup together with a
/// conjugator carrying it to its inverse.
pub fn real_central_edge_certificate(
    g: &PermGroup,
    p: u64,
    ctx: &Ctx,
) -> Result<Option<(Permutation, Permutation)>> {
    if p == 2 {
        return Err(Error::Invalid("the certificate requires an odd prime".into()));
    }
    if subgrp::valuation(g.order(), p) == 0 {
        return Err(Error::Invalid(format!(
            "{} does not divide the group order",
            p
        )));
    }
    let syl = subgrp::sylow(g, p, ctx)?;
    let z_sub = subgrp::center(syl.group(), ctx)?;
    for z in z_sub.group().elements(ctx)? {
        if z.is_identity() {
            continue;
        }
        if let Some(u) = subgrp::real_witness(g, &z, ctx)? {
            return Ok(Some((z, u)));
        }
    }
    Ok(None)
}

/// An arrow known to lie in the graph together with what proved it.
#[derive(Debug, Clone)]
pub struct CertifiedArrow {
    pub from: u64,
    pub to: u64,
    pub via: String,
}

/// A sound under-approximation of a Sylow graph, assembled from
/// certificates and exactly computed automisers of selected primes. Any
/// connectivity or diameter bound it satisfies also holds for the full
/// graph, whose edge set is a superset.
#[derive(Debug, Clone)]
pub struct CertifiedEdges {
    pub group_label: String,
    pub vertices: Vec<u64>,
    pub arrows: Vec<CertifiedArrow>,
}

impl CertifiedEdges {
    pub fn to_graph(&self) -> SylowGraph {
        SylowGraph {
            group_label: self.group_label.clone(),
            group_order: BigUint::one(),
            vertices: self.vertices.clone(),
            arrows: self
                .arrows
                .iter()
                .map(|a| Arrow {
                    from: a.from,
                    to: a.to,
                    automiser_order: BigUint::one(),
                })
                .collect(),
            automiser_orders: BTreeMap::new(),
        }
    }
}

/// Certificate route for groups too large to scan: establishes `p -> 2`
/// for every odd prime with a real central Sylow element, and computes
/// the automiser exactly (through the transporter machinery) for the
/// primes in `exact_primes`.
pub fn certified_edges(
    g: &PermGroup,
    label: &str,
    exact_primes: &[u64],
    ctx: &Ctx,
) -> Result<CertifiedEdges> {
    let vertices = arith::factorize(g.order(), ctx)?.primes_u64()?;
    let mut arrows = Vec::new();
    for &p in &vertices {
        if p == 2 {
            continue;
        }
        if exact_primes.contains(&p) {
            let a = automiser_order(g, p, ctx)?;
            for q in arith::factorize(&a, ctx)?.primes_u64()? {
                arrows.push(CertifiedArrow {
                    from: p,
                    to: q,
                    via: format!("automiser order {}", a),
                });
            }
        } else if let Some((z, _)) = real_central_edge_certificate(g, p, ctx)? {
            arrows.push(CertifiedArrow {
                from: p,
                to: 2,
                via: format!("real central element {}", z),
            });
        }
    }
    Ok(CertifiedEdges {
        group_label: label.to_string(),
        vertices,
        arrows,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    fn ctx() -> Ctx {
        Ctx::default()
    }

    #[test]
    fn a8_graph_matches_the_expected_arrow_set() {
        let c = ctx();
        let a8 = catalog::alternating(8).unwrap();
        let graph = sylow_graph(&a8, "A8", &c).unwrap();
        assert_eq!(graph.vertices, vec![2, 3, 5, 7]);
        assert_eq!(graph.arrow_pairs(), vec![(3, 2), (5, 2), (7, 3)]);
        assert_eq!(graph.diameter(), Some(3));
        assert!(graph.is_connected());
        // p = 7: automiser order with prime set exactly {3}.
        assert_eq!(graph.automiser_orders[&7], BigUint::from(3u32));
        // p = 2: no outgoing arrow.
        assert_eq!(graph.automiser_orders[&2], BigUint::one());
    }

    #[test]
    fn abelian_graphs_have_no_arrows() {
        let c = ctx();
        let c30 = catalog::cyclic(30).unwrap();
        let graph = sylow_graph(&c30, "C30", &c).unwrap();
        assert_eq!(graph.vertices, vec![2, 3, 5]);
        assert!(graph.arrows.is_empty());
        assert!(!graph.is_connected());
        assert_eq!(graph.diameter(), None);
        assert_eq!(graph.distance(2, 3).unwrap(), None);
    }

    #[test]
    fn s4_graph_has_3_to_2() {
        let c = ctx();
        let s4 = catalog::symmetric(4).unwrap();
        let graph = sylow_graph(&s4, "S4", &c).unwrap();
        assert!(graph.has_arrow(3, 2));
        assert_eq!(graph.diameter(), Some(1));
    }

    #[test]
    fn single_vertex_conventions() {
        let c = ctx();
        let c7 = catalog::cyclic(7).unwrap();
        let graph = sylow_graph(&c7, "C7", &c).unwrap();
        assert_eq!(graph.diameter(), Some(0));
        assert!(graph.is_connected());
        assert_eq!(graph.distance(7, 7).unwrap(), Some(0));
        let trivial = crate::PermGroup::trivial(1);
        let graph = sylow_graph(&trivial, "1", &c).unwrap();
        assert!(graph.vertices.is_empty());
        assert_eq!(graph.diameter(), Some(0));
        assert!(graph.is_connected());
    }

    #[test]
    fn distance_in_a8() {
        let c = ctx();
        let a8 = catalog::alternating(8).unwrap();
        let graph = sylow_graph(&a8, "A8", &c).unwrap();
        assert_eq!(graph.distance(7, 2).unwrap(), Some(2));
        assert_eq!(graph.distance(7, 5).unwrap(), Some(3));
        assert!(graph.distance(11, 2).is_err());
    }

    #[test]
    fn certificates_in_a8() {
        let c = ctx();
        let a8 = catalog::alternating(8).unwrap();
        let (z, u) = real_central_edge_certificate(&a8, 5, &c)
            .unwrap()
            .expect("5 -> 2 is certified");
        assert_eq!(z.conjugate_by(&u).unwrap(), z.inverse());
        // And the arrow is indeed present.
        let graph = sylow_graph(&a8, "A8", &c).unwrap();
        assert!(graph.has_arrow(5, 2));
        // A_7 at p = 7: no real central element.
        let a7 = catalog::alternating(7).unwrap();
        assert!(real_central_edge_certificate(&a7, 7, &c).unwrap().is_none());
    }

    #[test]
    fn automiser_orders_are_coprime_to_p() {
        let c = ctx();
        for spec in ["A5", "S5", "S6", "PSL3(2)", "M11"] {
            let (label, g) = catalog::parse_group(spec, &c).unwrap();
            let graph = sylow_graph(&g, &label, &c).unwrap();
            for (&p, a) in &graph.automiser_orders {
                assert_eq!(subgrp::valuation(a, p), 0, "{} at {}", label, p);
            }
            for arrow in &graph.arrows {
                assert_ne!(arrow.from, arrow.to);
                assert!(subgrp::valuation(&arrow.automiser_order, arrow.to) > 0);
            }
        }
    }

    #[test]
    fn nilpotent_groups_have_trivial_automisers() {
        let c = ctx();
        let c12 = catalog::cyclic(12).unwrap();
        assert_eq!(automiser_order(&c12, 2, &c).unwrap(), BigUint::one());
        assert_eq!(automiser_order(&c12, 3, &c).unwrap(), BigUint::one());
    }

    #[test]
    fn graphs_are_deterministic() {
        let c = ctx();
        let g = catalog::psl2(7, &c).unwrap();
        let g1 = sylow_graph(&g, "PSL2(7)", &c).unwrap();
        let g2 = sylow_graph(&g, "PSL2(7)", &c).unwrap();
        assert_eq!(g1, g2);
        assert_eq!(g1.arrow_pairs(), vec![(3, 2), (7, 3)]);
    }
}
