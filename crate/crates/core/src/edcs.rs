//! Edge-degree constrained subgraphs.
//!
//! A subgraph `H` of `G` is an EDCS with parameters `beta > beta_minus` when
//!
//! - (P1) every edge `(u, v)` of `H` has `deg_H(u) + deg_H(v) <= beta`, and
//! - (P2) every edge `(u, v)` of `G` missing from `H` has
//!   `deg_H(u) + deg_H(v) >= beta_minus`.
//!
//! [`build_edcs`] finds one by local search from the empty subgraph: any
//! violating edge is fixed (removed for P1, inserted for P2) until none is
//! left. Each fix raises the potential
//!
//! ```text
//! Phi(H) = (beta - 1/2) * sum_v deg_H(v) - sum_{(u,v) in H} (deg_H(u) + deg_H(v))
//! ```
//!
//! by at least one, which bounds the number of fixes. `Phi` is a half-integer,
//! so everything here works with `2 * Phi`.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::graph::{Edge, Graph};
use crate::params::whole_graph_beta;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EdcsParams {
    beta: u64,
    beta_minus: u64,
}

impl EdcsParams {
    /// Requires `beta >= 1` and `beta > beta_minus`.
    pub fn new(beta: u64, beta_minus: u64) -> Result<Self> {
        if beta == 0 || beta_minus >= beta {
            return Err(Error::InvalidParams { beta, beta_minus });
        }
        Ok(EdcsParams { beta, beta_minus })
    }

    /// The `(beta, beta - 1)` pair used by all three applications.
    pub fn tight(beta: u64) -> Result<Self> {
        Self::new(beta, beta.saturating_sub(1))
    }

    pub fn beta(&self) -> u64 {
        self.beta
    }

    pub fn beta_minus(&self) -> u64 {
        self.beta_minus
    }

    /// `lambda = 1 - beta_minus / beta`.
    pub fn lambda(&self) -> f64 {
        1.0 - self.beta_minus as f64 / self.beta as f64
    }
}

/// A subgraph of `host` together with its parameters and degree table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Edcs<'g> {
    host: &'g Graph,
    params: EdcsParams,
    in_sub: Vec<bool>,
    deg: Vec<u64>,
}

impl<'g> Edcs<'g> {
    /// Wraps an explicit edge set; every edge must belong to `host`. Nothing
    /// is checked about P1/P2, see [`verify_edcs`].
    pub fn from_edges(host: &'g Graph, params: EdcsParams, edges: &[Edge]) -> Result<Self> {
        let mut in_sub = vec![false; host.m()];
        for e in edges {
            let i = host
                .edge_index(e.0, e.1)
                .ok_or(Error::NotSubgraph(e.0, e.1))?;
            in_sub[i] = true;
        }
        Ok(Self::from_mask(host, params, in_sub))
    }

    /// `in_sub[i]` selects `host.edges()[i]`.
    pub fn from_mask(host: &'g Graph, params: EdcsParams, in_sub: Vec<bool>) -> Self {
        assert_eq!(in_sub.len(), host.m(), "mask length must equal host edge count");
        let mut deg = vec![0u64; host.n()];
        for (e, _) in host.edges().iter().zip(&in_sub).filter(|(_, &k)| k) {
            deg[e.0] += 1;
            deg[e.1] += 1;
        }
        Edcs {
            host,
            params,
            in_sub,
            deg,
        }
    }

    pub fn host(&self) -> &'g Graph {
        self.host
    }

    pub fn params(&self) -> EdcsParams {
        self.params
    }

    pub fn degree(&self, v: usize) -> u64 {
        self.deg[v]
    }

    pub fn degrees(&self) -> &[u64] {
        &self.deg
    }

    pub fn max_degree(&self) -> u64 {
        self.deg.iter().copied().max().unwrap_or(0)
    }

    /// Membership mask aligned with `host().edges()`.
    pub fn mask(&self) -> &[bool] {
        &self.in_sub
    }

    pub fn contains(&self, e: Edge) -> bool {
        self.host
            .edge_index(e.0, e.1)
            .is_some_and(|i| self.in_sub[i])
    }

    pub fn edges(&self) -> impl Iterator<Item = Edge> + '_ {
        self.host
            .edges()
            .iter()
            .zip(&self.in_sub)
            .filter_map(|(&e, &k)| k.then_some(e))
    }

    pub fn size(&self) -> usize {
        self.in_sub.iter().filter(|&&k| k).count()
    }

    /// The subgraph as a standalone graph (keeps the host's bipartition).
    pub fn to_graph(&self) -> Graph {
        self.host.edge_subgraph(&self.in_sub)
    }

    pub fn is_whole_graph(&self) -> bool {
        self.in_sub.iter().all(|&k| k)
    }

    fn edge_degree(&self, e: Edge) -> u64 {
        self.deg[e.0] + self.deg[e.1]
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Property {
    /// A kept edge whose degree sum exceeds `beta`.
    P1,
    /// A dropped edge whose degree sum is below `beta_minus`.
    P2,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Violation {
    pub edge: Edge,
    pub property: Property,
    pub degree_sum: u64,
}

/// All P1/P2 violations, in edge order. Empty iff `e` is an EDCS of its host.
pub fn verify_edcs(e: &Edcs<'_>) -> Vec<Violation> {
    let EdcsParams { beta, beta_minus } = e.params;
    e.host
        .edges()
        .iter()
        .zip(&e.in_sub)
        .filter_map(|(&edge, &kept)| {
            let degree_sum = e.edge_degree(edge);
            let property = match kept {
                true if degree_sum > beta => Property::P1,
                false if degree_sum < beta_minus => Property::P2,
                _ => return None,
            };
            Some(Violation {
                edge,
                property,
                degree_sum,
            })
        })
        .collect()
}

/// `2 * Phi(H) = (2 beta - 1) * sum_v deg(v) - 2 * sum_{(u,v) in H} (deg(u) + deg(v))`.
pub fn potential(e: &Edcs<'_>) -> i64 {
    let total_degree: i64 = e.deg.iter().map(|&d| d as i64).sum();
    let edge_sums: i64 = e.edges().map(|edge| e.edge_degree(edge) as i64).sum();
    (2 * e.params.beta as i64 - 1) * total_degree - 2 * edge_sums
}

/// Record of a local-search run.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct PotentialTrace {
    pub p1_fixes: usize,
    pub p2_fixes: usize,
    /// `2 * Phi` after each fix.
    pub phi_series: Vec<i64>,
    /// Set when `beta >= 2(n - 1)` and the whole graph was returned directly.
    pub short_circuit: bool,
}

impl PotentialTrace {
    pub fn fixes(&self) -> usize {
        self.p1_fixes + self.p2_fixes
    }

    /// Each step of `2 * Phi` (starting from 0) is at least 2.
    pub fn strictly_increasing(&self) -> bool {
        let mut prev = 0i64;
        self.phi_series.iter().all(|&phi| {
            let ok = phi - prev >= 2;
            prev = phi;
            ok
        })
    }
}

/// Local-search construction of an EDCS of `g`.
///
/// Starts from the empty subgraph and repeatedly sweeps the edges in
/// lexicographic order, fixing every violating edge it meets; after a fix the
/// edges at both endpoints are re-queued. When `beta >= 2(n - 1)` no edge can
/// break P1 and the whole graph is returned without searching.
pub fn build_edcs(g: &Graph, params: EdcsParams) -> (Edcs<'_>, PotentialTrace) {
    if params.beta >= whole_graph_beta(g.n()) {
        let e = Edcs::from_mask(g, params, vec![true; g.m()]);
        let trace = PotentialTrace {
            short_circuit: true,
            ..PotentialTrace::default()
        };
        return (e, trace);
    }

    let m = g.m();
    let mut incident: Vec<Vec<usize>> = vec![Vec::new(); g.n()];
    for (i, e) in g.edges().iter().enumerate() {
        incident[e.0].push(i);
        incident[e.1].push(i);
    }

    let beta = params.beta;
    let beta_minus = params.beta_minus;
    let mut in_sub = vec![false; m];
    let mut deg = vec![0u64; g.n()];
    let mut dirty = vec![true; m];
    let mut pending = m;
    let mut trace = PotentialTrace::default();
    // Running sums for 2*Phi = (2 beta - 1) * S1 - 2 * S2 with
    // S1 = sum deg and S2 = sum deg^2 (= sum over H-edges of degree sums).
    let mut s1: i64 = 0;
    let mut s2: i64 = 0;

    while pending > 0 {
        for i in 0..m {
            if !dirty[i] {
                continue;
            }
            dirty[i] = false;
            pending -= 1;
            let Edge(u, v) = g.edges()[i];
            let sum = deg[u] + deg[v];
            let insert = if in_sub[i] && sum > beta {
                trace.p1_fixes += 1;
                false
            } else if !in_sub[i] && sum < beta_minus {
                trace.p2_fixes += 1;
                true
            } else {
                continue;
            };
            for w in [u, v] {
                let d = deg[w] as i64;
                if insert {
                    s2 += 2 * d + 1;
                    deg[w] += 1;
                } else {
                    s2 -= 2 * d - 1;
                    deg[w] -= 1;
                }
            }
            s1 += if insert { 2 } else { -2 };
            in_sub[i] = insert;
            trace.phi_series.push((2 * beta as i64 - 1) * s1 - 2 * s2);
            for &j in incident[u].iter().chain(&incident[v]) {
                if !dirty[j] {
                    dirty[j] = true;
                    pending += 1;
                }
            }
        }
    }

    let e = Edcs {
        host: g,
        params,
        in_sub,
        deg,
    };
    (e, trace)
}

/// Outcome of the degree-balance probe for a vertex set `U`.
#[derive(Debug, Clone, PartialEq)]
pub struct BalanceReport {
    /// Members of `U` with positive degree that were kept.
    pub u_size: usize,
    /// Zero-degree members that were dropped.
    pub dropped: usize,
    /// `|N_H(U)|`.
    pub neighborhood_size: usize,
    /// `sum_{u in U} deg_H(u)`, which also counts the edges from `U` into
    /// `N_H(U)` with multiplicity.
    pub incident_edges: u64,
    /// Average degree of `U`.
    pub avg_deg_u: f64,
    /// Average number of `U`-neighbours of a vertex of `N_H(U)`.
    pub avg_incident_deg_nu: f64,
    /// Whether `avg_incident_deg_nu <= beta - avg_deg_u`, checked exactly.
    pub holds: bool,
}

/// Degree balance of an EDCS: if `U` has average degree `d` in `H`, the
/// vertices of `N_H(U)` see on average at most `beta - d` edges from `U`.
pub fn balance_report(e: &Edcs<'_>, u_set: &[usize]) -> Result<BalanceReport> {
    let n = e.host.n();
    let mut in_u = vec![false; n];
    let mut dropped = 0;
    for &u in u_set {
        if u >= n {
            return Err(Error::InvalidGraph(alloc::format!("vertex {u} out of range")));
        }
        if e.deg[u] == 0 {
            dropped += usize::from(!in_u[u]);
        } else {
            in_u[u] = true;
        }
    }
    let u_size = in_u.iter().filter(|&&x| x).count();
    if u_size == 0 {
        return Err(Error::EmptyVertexSet);
    }
    let mut in_nbhd = vec![false; n];
    let mut incident_edges = 0u64;
    for edge in e.edges() {
        for (a, b) in [(edge.0, edge.1), (edge.1, edge.0)] {
            if in_u[a] {
                in_nbhd[b] = true;
                incident_edges += 1;
            }
        }
    }
    let neighborhood_size = in_nbhd.iter().filter(|&&x| x).count();
    // incident/|W| <= beta - S/|U|  <=>  incident * |U| + S * |W| <= beta * |U| * |W|,
    // and here S = incident.
    let (uu, ww) = (u_size as u128, neighborhood_size as u128);
    let lhs = incident_edges as u128 * uu + incident_edges as u128 * ww;
    let holds = lhs <= e.params.beta as u128 * uu * ww;
    Ok(BalanceReport {
        u_size,
        dropped,
        neighborhood_size,
        incident_edges,
        avg_deg_u: incident_edges as f64 / u_size as f64,
        avg_incident_deg_nu: incident_edges as f64 / neighborhood_size as f64,
        holds,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn triangle() -> Graph {
        Graph::new(3, [(0, 1), (1, 2), (0, 2)]).unwrap()
    }

    #[test]
    fn params_validation() {
        assert!(EdcsParams::new(2, 2).is_err());
        assert!(EdcsParams::new(0, 0).is_err());
        assert!(EdcsParams::new(1, 0).is_ok());
        assert_eq!(EdcsParams::new(32, 31).unwrap().lambda(), 1.0 / 32.0);
    }

    #[test]
    fn triangle_beta_two_keeps_one_edge() {
        let g = triangle();
        let (h, trace) = build_edcs(&g, EdcsParams::new(2, 1).unwrap());
        assert_eq!(h.size(), 1);
        assert!(verify_edcs(&h).is_empty());
        assert!(trace.strictly_increasing());
    }

    #[test]
    fn path_beta_two_keeps_one_edge() {
        let g = Graph::new(3, [(0, 1), (1, 2)]).unwrap();
        let (h, _) = build_edcs(&g, EdcsParams::new(2, 1).unwrap());
        assert_eq!(h.size(), 1);
        assert!(verify_edcs(&h).is_empty());
    }

    #[test]
    fn triangle_beta_four_keeps_everything() {
        let g = triangle();
        let (h, _) = build_edcs(&g, EdcsParams::new(4, 3).unwrap());
        assert!(h.is_whole_graph());
        assert!(verify_edcs(&h).is_empty());
    }

    #[test]
    fn verify_reports_each_violation() {
        let g = triangle();
        let p = EdcsParams::new(2, 1).unwrap();
        let full = Edcs::from_mask(&g, p, vec![true; 3]);
        let v = verify_edcs(&full);
        assert_eq!(v.len(), 3);
        assert!(v.iter().all(|x| x.property == Property::P1 && x.degree_sum == 4));
        let empty = Edcs::from_mask(&g, p, vec![false; 3]);
        let v = verify_edcs(&empty);
        assert_eq!(v.len(), 3);
        assert!(v.iter().all(|x| x.property == Property::P2 && x.degree_sum == 0));
    }

    #[test]
    fn potential_values() {
        let g = Graph::new(2, [(0, 1)]).unwrap();
        let p = EdcsParams::new(2, 1).unwrap();
        assert_eq!(potential(&Edcs::from_mask(&g, p, vec![false])), 0);
        assert_eq!(potential(&Edcs::from_mask(&g, p, vec![true])), 2);
    }

    #[test]
    fn trace_tracks_potential() {
        let g = Graph::new(6, [(0, 1), (0, 2), (0, 3), (1, 2), (3, 4), (4, 5), (2, 5)]).unwrap();
        let (h, trace) = build_edcs(&g, EdcsParams::new(3, 2).unwrap());
        assert!(verify_edcs(&h).is_empty());
        assert_eq!(trace.phi_series.last().copied().unwrap_or(0), potential(&h));
    }

    #[test]
    fn balance_star() {
        // Star with 3 leaves inside H, beta = 4: d = 3, each leaf sees 1.
        let g = Graph::new(4, [(0, 1), (0, 2), (0, 3)]).unwrap();
        let h = Edcs::from_mask(&g, EdcsParams::new(4, 3).unwrap(), vec![true; 3]);
        let r = balance_report(&h, &[0]).unwrap();
        assert_eq!(r.avg_deg_u, 3.0);
        assert_eq!(r.avg_incident_deg_nu, 1.0);
        assert!(r.holds);
    }

    #[test]
    fn balance_drops_isolated_members() {
        let g = Graph::new(3, [(0, 1)]).unwrap();
        let h = Edcs::from_mask(&g, EdcsParams::new(2, 1).unwrap(), vec![true]);
        let r = balance_report(&h, &[0, 2]).unwrap();
        assert_eq!(r.dropped, 1);
        assert_eq!(r.u_size, 1);
        assert_eq!(balance_report(&h, &[2]), Err(Error::EmptyVertexSet));
    }
}
