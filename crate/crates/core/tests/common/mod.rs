#![allow(dead_code)]

use edcs_core::Graph;
use proptest::prelude::*;

/// Largest matching by enumerating every edge subset that is a matching.
pub fn brute_matching_number(g: &Graph) -> usize {
    fn go(edges: &[edcs_core::Edge], i: usize, used: &mut Vec<bool>) -> usize {
        if i == edges.len() {
            return 0;
        }
        let skip = go(edges, i + 1, used);
        let e = edges[i];
        if used[e.0] || used[e.1] {
            return skip;
        }
        used[e.0] = true;
        used[e.1] = true;
        let take = 1 + go(edges, i + 1, used);
        used[e.0] = false;
        used[e.1] = false;
        skip.max(take)
    }
    go(g.edges(), 0, &mut vec![false; g.n()])
}

pub fn graph_strategy(max_n: usize) -> impl Strategy<Value = Graph> {
    (1..=max_n).prop_flat_map(|n| {
        let pairs = n * (n - 1) / 2;
        proptest::collection::vec(any::<bool>(), pairs).prop_map(move |bits| {
            let mut edges = Vec::new();
            let mut k = 0;
            for u in 0..n {
                for v in u + 1..n {
                    if bits[k] {
                        edges.push((u, v));
                    }
                    k += 1;
                }
            }
            Graph::new(n, edges).unwrap()
        })
    })
}

/// Random bipartite graph with `1..=max_side` vertices per side and edge
/// density drawn per case.
pub fn bipartite_strategy(max_side: usize) -> impl Strategy<Value = Graph> {
    (1..=max_side, 1..=max_side, 0.0f64..1.0, any::<u64>()).prop_map(|(a, b, p, seed)| {
        edcs_core::generate::generate(&edcs_core::generate::GenSpec::RandomBipartite {
            left: a,
            right: b,
            p,
            seed,
        })
        .unwrap()
    })
}
