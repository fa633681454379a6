//! Exhaustive small-graph corpora, enumerated once per process.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use edcs_core::enumerate::{canonical_codes, extensions, from_code, is_connected};
use edcs_core::Graph;
use rayon::prelude::*;

type Key = (usize, Option<usize>);

fn cache() -> &'static Mutex<HashMap<Key, Arc<Vec<u128>>>> {
    static CACHE: OnceLock<Mutex<HashMap<Key, Arc<Vec<u128>>>>> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

/// Sorted canonical codes of all graphs on `n` vertices with at most
/// `max_edges` edges. Layers are built from the cached previous layer, with
/// parents extended in parallel.
pub fn codes(n: usize, max_edges: Option<usize>) -> Arc<Vec<u128>> {
    if let Some(hit) = cache().lock().unwrap().get(&(n, max_edges)) {
        return Arc::clone(hit);
    }
    let layer = if n <= 1 {
        canonical_codes(n, max_edges)
    } else {
        let parents = codes(n - 1, max_edges);
        let mut all: Vec<u128> = parents
            .par_iter()
            .flat_map_iter(|&p| {
                let mut out = Vec::new();
                extensions(n - 1, p, max_edges, &mut out);
                out
            })
            .collect();
        all.par_sort_unstable();
        all.dedup();
        all
    };
    let layer = Arc::new(layer);
    cache().lock().unwrap().insert((n, max_edges), Arc::clone(&layer));
    layer
}

/// One graph per isomorphism class on `n` vertices (at most `max_edges`
/// edges), in code order.
pub fn graphs(n: usize, max_edges: Option<usize>) -> Vec<Graph> {
    codes(n, max_edges).par_iter().map(|&c| from_code(n, c)).collect()
}

pub fn connected_graphs(n: usize) -> Vec<Graph> {
    graphs(n, None).into_par_iter().filter(is_connected).collect()
}
