//! Gadget composition: places a copy of the gadget on the neighborhood of
//! each right vertex of the outer graph.
//!
//! For outer graph `X` and gadget `G₀` with `|L(G₀)|` equal to the right
//! degree of `X`, the result `G` has `L(G) = L(X)` and
//! `R(G) = R(X) × R(G₀)`, flattened as `v·|R(G₀)| + v₀`. The neighborhood
//! `N_X(v)` is identified with `L(G₀)` through the canonical port order (the
//! stored adjacency order at `v`); an optional seeded shuffle probes the
//! sensitivity of downstream measurements to that choice.

use crate::error::{Error, Result};
use crate::graph::{BipartiteGraph, Side, VertexSet};
use crate::seed::{derive, rng_from_seed};
use rand::seq::SliceRandom;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

/// A composed graph together with its ingredients and the port assignment
/// that produced it.
#[derive(Debug, Clone)]
pub struct Composition {
    pub outer: BipartiteGraph,
    pub gadget: BipartiteGraph,
    pub result: BipartiteGraph,
    /// For each `v ∈ R(outer)`, the left vertices of the outer graph in port
    /// order: `port_order[v][i]` is the left vertex playing gadget-left `i`.
    pub port_order: Vec<Vec<u32>>,
    /// Outer left degree `k`.
    pub k: usize,
    /// Gadget left degree `d₀`.
    pub d0: usize,
    /// Outer right degree `D₀ = |L(gadget)|`.
    pub outer_right_degree: usize,
}

/// Balance check against a target interval `(beta1, beta2)`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct BalanceReport {
    pub ratio: f64,
    pub ratio_num: u64,
    pub ratio_den: u64,
    pub beta1: f64,
    pub beta2: f64,
    pub in_open_interval: bool,
    /// The hypothesis `D₀ ≥ k/(β⁽²⁾−β⁽¹⁾)`.
    pub hypothesis_d0_large_enough: bool,
    /// Set when the ratio lands exactly on an interval endpoint (happens
    /// when `D₀·β⁽²⁾/k` is an integer); the open-interval test is then
    /// false by a hair rather than by substance.
    pub boundary_case: bool,
}

/// Composes with the canonical port order.
pub fn compose(outer: &BipartiteGraph, gadget: &BipartiteGraph) -> Result<Composition> {
    compose_with_ports(outer, gadget, None)
}

/// Composes with a seeded random permutation of each vertex's ports.
pub fn compose_with_ports(
    outer: &BipartiteGraph,
    gadget: &BipartiteGraph,
    port_shuffle_seed: Option<u64>,
) -> Result<Composition> {
    let k = outer.require_left_regular()?;
    let d0 = gadget.require_left_regular()?;
    let big_d0 = gadget.left_count();
    let r0 = gadget.right_count();

    let mut port_order = outer.right_adjacency();
    for (v, ports) in port_order.iter_mut().enumerate() {
        if ports.len() != big_d0 {
            return Err(Error::CompositionMismatch {
                vertex: v,
                found: ports.len(),
                expected: big_d0,
            });
        }
        if let Some(seed) = port_shuffle_seed {
            ports.shuffle(&mut rng_from_seed(derive(seed, v as u64)));
        }
    }

    let mut adjacency: Vec<Vec<u32>> = vec![Vec::with_capacity(d0 * k); outer.left_count()];
    for (v, ports) in port_order.iter().enumerate() {
        let base = (v * r0) as u32;
        for (port, list) in gadget.adjacency().iter().enumerate() {
            let w = ports[port] as usize;
            for &v0 in list {
                adjacency[w].push(base + v0);
            }
        }
    }
    // clusters are disjoint and the gadget is simple, so the result must be
    // simple; the constructor asserts rather than assumes this
    let result = BipartiteGraph::new(outer.left_count(), outer.right_count() * r0, adjacency)?;
    debug_assert_eq!(result.left_degree(), Some(d0 * k));

    Ok(Composition {
        outer: outer.clone(),
        gadget: gadget.clone(),
        result,
        port_order,
        k,
        d0,
        outer_right_degree: big_d0,
    })
}

/// Reports whether `|R(G)|/|L(G)|` lies in the open interval and whether the
/// sufficient hypothesis on `D₀` held.
pub fn check_balance(comp: &Composition, beta1: f64, beta2: f64) -> BalanceReport {
    let num = comp.result.right_count() as u64;
    let den = comp.result.left_count() as u64;
    let ratio = num as f64 / den as f64;
    let on_edge = (ratio - beta1).abs() <= 1e-12 * beta1.abs().max(1.0)
        || (ratio - beta2).abs() <= 1e-12 * beta2.abs().max(1.0);
    BalanceReport {
        ratio,
        ratio_num: num,
        ratio_den: den,
        beta1,
        beta2,
        in_open_interval: beta1 < ratio && ratio < beta2,
        hypothesis_d0_large_enough: comp.outer_right_degree as f64
            >= comp.k as f64 / (beta2 - beta1) - 1e-12,
        boundary_case: on_edge,
    }
}

/// Per-cluster neighborhoods `v ↦ N_{G₀ᵛ}(N_X(v) ∩ S)` (flattened indices),
/// for the clusters that S touches. Clusters are disjoint, so the disjoint
/// union equals `N_G(S)` exactly.
pub fn neighborhood_decomposition(
    comp: &Composition,
    s: &VertexSet,
) -> Result<BTreeMap<usize, Vec<usize>>> {
    if s.side() != Side::Left {
        return Err(Error::InvalidSpec("expected a left-side vertex set".into()));
    }
    if let Some(max) = s.max_index() {
        if max >= comp.outer.left_count() {
            return Err(Error::IndexOutOfRange {
                side: Side::Left,
                index: max,
                count: comp.outer.left_count(),
            });
        }
    }
    let r0 = comp.gadget.right_count();
    let in_s = s.mask(comp.outer.left_count());
    let mut touched: Vec<usize> = s
        .iter()
        .flat_map(|w| comp.outer.neighbors(w).iter().map(|&v| v as usize))
        .collect();
    touched.sort_unstable();
    touched.dedup();

    let mut out = BTreeMap::new();
    let mut seen = vec![false; r0];
    for v in touched {
        seen.iter_mut().for_each(|x| *x = false);
        let mut cluster = Vec::new();
        for (port, &w) in comp.port_order[v].iter().enumerate() {
            if in_s[w as usize] {
                for &v0 in comp.gadget.neighbors(port) {
                    if !seen[v0 as usize] {
                        seen[v0 as usize] = true;
                        cluster.push(v * r0 + v0 as usize);
                    }
                }
            }
        }
        if !cluster.is_empty() {
            cluster.sort_unstable();
            out.insert(v, cluster);
        }
    }
    Ok(out)
}
