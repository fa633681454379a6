//! One-way communication protocol for matching.
//!
//! Alice holds `G_A`, Bob holds `G_B` on the same vertex set. Alice sends an
//! EDCS of `G_A` with `beta = ceil(32 eps^-2 ln(1/eps))` and
//! `beta_minus = beta - 1`; Bob outputs a maximum matching of the union of the
//! message with `G_B`. The output is a `(3/2 + eps)`-approximation of the
//! maximum matching of `G_A ∪ G_B`.

use alloc::vec::Vec;

use rand::Rng;

use crate::edcs::{build_edcs, Edcs, EdcsParams};
use crate::error::{Error, Result};
use crate::graph::{Graph, Matching};
use crate::matching::{matching_number, maximum_matching};
use crate::params::protocol_beta;
use crate::ratio::Ratio;
use crate::seed::rng;

#[derive(Debug, Clone)]
pub struct ProtocolInstance {
    pub g_alice: Graph,
    pub g_bob: Graph,
    pub epsilon: f64,
}

impl ProtocolInstance {
    pub fn new(g_alice: Graph, g_bob: Graph, epsilon: f64) -> Result<Self> {
        if g_alice.n() != g_bob.n() {
            return Err(Error::VertexCountMismatch(g_alice.n(), g_bob.n()));
        }
        protocol_beta(epsilon)?;
        Ok(ProtocolInstance {
            g_alice,
            g_bob,
            epsilon,
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ProtocolReport {
    pub beta_used: u64,
    pub message_edges: usize,
    pub mu_union: usize,
    pub mu_output: usize,
    pub ratio: Ratio,
    pub epsilon: f64,
}

impl ProtocolReport {
    /// `ratio <= 3/2 + eps`.
    pub fn within_guarantee(&self) -> bool {
        self.ratio.value() <= 1.5 + self.epsilon
    }
}

/// Alice's message: an EDCS of her graph.
pub fn alice_message(g_a: &Graph, epsilon: f64) -> Result<Edcs<'_>> {
    let beta = protocol_beta(epsilon)?;
    let (h, _) = build_edcs(g_a, EdcsParams::tight(beta)?);
    Ok(h)
}

/// Bob's answer: a maximum matching of `H ∪ G_B`.
pub fn bob_output(h: &Edcs<'_>, g_b: &Graph) -> Result<Matching> {
    let union = h.to_graph().union(g_b)?;
    Ok(maximum_matching(&union))
}

pub fn run_protocol(inst: &ProtocolInstance) -> Result<ProtocolReport> {
    let h = alice_message(&inst.g_alice, inst.epsilon)?;
    let output = bob_output(&h, &inst.g_bob)?;
    let mu_union = matching_number(&inst.g_alice.union(&inst.g_bob)?);
    Ok(ProtocolReport {
        beta_used: h.params().beta(),
        message_edges: h.size(),
        mu_union,
        mu_output: output.size(),
        ratio: Ratio::new(mu_union, output.size()),
        epsilon: inst.epsilon,
    })
}

/// Splits `g` into Alice's and Bob's graphs: each edge goes to Alice with
/// probability `q`, one uniform variate per edge in lexicographic order.
pub fn split_edges(g: &Graph, q: f64, seed: u64) -> (Graph, Graph) {
    let mut r = rng(seed);
    let to_alice: Vec<bool> = g.edges().iter().map(|_| r.gen::<f64>() < q).collect();
    let to_bob: Vec<bool> = to_alice.iter().map(|&a| !a).collect();
    (g.edge_subgraph(&to_alice), g.edge_subgraph(&to_bob))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matching::verify_matching;

    fn perfect_matching(k: usize) -> Graph {
        Graph::new(2 * k, (0..k).map(|i| (2 * i, 2 * i + 1))).unwrap()
    }

    #[test]
    fn empty_alice_sends_nothing() {
        let g = Graph::empty(5);
        let h = alice_message(&g, 0.1).unwrap();
        assert_eq!(h.size(), 0);
    }

    #[test]
    fn perfect_matching_is_sent_whole() {
        let g = perfect_matching(4);
        let h = alice_message(&g, 0.3).unwrap();
        assert_eq!(h.size(), 4);
    }

    #[test]
    fn empty_message_gives_bobs_optimum() {
        let g_b = Graph::new(4, [(0, 1), (1, 2), (2, 3)]).unwrap();
        let inst = ProtocolInstance::new(Graph::empty(4), g_b.clone(), 0.1).unwrap();
        let r = run_protocol(&inst).unwrap();
        assert_eq!(r.mu_output, 2);
        assert_eq!(r.ratio, Ratio::ONE);
        let h = alice_message(&inst.g_alice, 0.1).unwrap();
        let m = bob_output(&h, &g_b).unwrap();
        assert!(verify_matching(&g_b, &m));
    }

    #[test]
    fn same_graph_on_both_sides() {
        let g = Graph::new(5, [(0, 1), (1, 2), (2, 3), (3, 4), (0, 4)]).unwrap();
        let r = run_protocol(&ProtocolInstance::new(g.clone(), g, 0.2).unwrap()).unwrap();
        assert_eq!(r.ratio, Ratio::ONE);
        assert!(r.within_guarantee());
    }

    #[test]
    fn split_partitions_edges() {
        let g = Graph::new(6, [(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (0, 5), (1, 4)]).unwrap();
        let (a, b) = split_edges(&g, 0.5, 3);
        assert_eq!(a.m() + b.m(), g.m());
        assert_eq!(a.union(&b).unwrap(), g);
        assert_eq!(a.intersection(&b).unwrap().m(), 0);
        assert_eq!(split_edges(&g, 1.0, 3).0, g);
    }

    #[test]
    fn rejects_bad_instances() {
        assert!(ProtocolInstance::new(Graph::empty(3), Graph::empty(4), 0.1).is_err());
        assert!(ProtocolInstance::new(Graph::empty(3), Graph::empty(3), 0.5).is_err());
        assert!(alice_message(&Graph::empty(3), -0.1).is_err());
    }
}
