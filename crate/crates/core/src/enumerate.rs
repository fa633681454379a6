//! Exhaustive small-graph corpora.
//!
//! Unlabeled graphs are enumerated layer by layer: every graph on `n`
//! vertices is some graph on `n - 1` vertices plus one vertex, so extending
//! each canonical parent by every neighbour subset and deduplicating by
//! canonical code yields each isomorphism class exactly once.
//!
//! Canonical codes come from individualization-refinement: refine the vertex
//! partition to an equitable one, branch on the vertices of the first
//! non-singleton cell, and keep the largest adjacency code over all discrete
//! leaves. Twins (`N(v) \ {w} = N(w) \ {v}`) are swapped by an automorphism,
//! so only one twin per cell is branched on.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::graph::Graph;

/// Largest vertex count with a canonical code (`16 * 15 / 2 <= 128` bits).
pub const MAX_VERTICES: usize = 16;

type Adj = [u16; MAX_VERTICES];

fn bits(mask: u16) -> impl Iterator<Item = usize> {
    let mut rest = mask;
    core::iter::from_fn(move || {
        if rest == 0 {
            return None;
        }
        let v = rest.trailing_zeros() as usize;
        rest &= rest - 1;
        Some(v)
    })
}

fn twins(adj: &Adj, v: usize, w: usize) -> bool {
    adj[v] & !(1 << w) == adj[w] & !(1 << v)
}

/// Ordered partition of the vertex set as bitmask cells.
#[derive(Clone, Copy)]
struct Partition {
    cells: [u16; MAX_VERTICES],
    len: usize,
}

impl Partition {
    fn unit(n: usize) -> Self {
        let mut cells = [0; MAX_VERTICES];
        let len = if n == 0 {
            0
        } else {
            cells[0] = ((1u32 << n) - 1) as u16;
            1
        };
        Partition { cells, len }
    }

    /// Replaces cell `at` with `parts` (in order).
    fn split(&mut self, at: usize, parts: &[u16]) {
        let extra = parts.len() - 1;
        self.cells.copy_within(at + 1..self.len, at + 1 + extra);
        self.cells[at..at + parts.len()].copy_from_slice(parts);
        self.len += extra;
    }

    /// Splits cells by neighbour counts into splitter cells until nothing
    /// changes. Parts are ordered by count, which keeps the result
    /// isomorphism-invariant.
    fn refine(&mut self, adj: &Adj) {
        'outer: loop {
            for s in 0..self.len {
                let splitter = self.cells[s];
                for c in 0..self.len {
                    let cell = self.cells[c];
                    if cell.count_ones() == 1 {
                        continue;
                    }
                    let mut by_count = [0u16; MAX_VERTICES + 1];
                    let mut distinct = 0;
                    for v in bits(cell) {
                        let k = (adj[v] & splitter).count_ones() as usize;
                        if by_count[k] == 0 {
                            distinct += 1;
                        }
                        by_count[k] |= 1 << v;
                    }
                    if distinct > 1 {
                        let mut parts = [0u16; MAX_VERTICES];
                        let mut p = 0;
                        for &group in by_count.iter().filter(|&&g| g != 0) {
                            parts[p] = group;
                            p += 1;
                        }
                        self.split(c, &parts[..p]);
                        continue 'outer;
                    }
                }
            }
            return;
        }
    }
}

fn leaf_code(adj: &Adj, part: &Partition) -> u128 {
    let mut perm = [0usize; MAX_VERTICES];
    for (pos, &cell) in part.cells[..part.len].iter().enumerate() {
        perm[pos] = cell.trailing_zeros() as usize;
    }
    let mut code = 0u128;
    for i in 0..part.len {
        let row = adj[perm[i]];
        for &pj in &perm[i + 1..part.len] {
            code = (code << 1) | ((row >> pj) & 1) as u128;
        }
    }
    code
}

fn search(adj: &Adj, n: usize, mut part: Partition, best: &mut u128) {
    part.refine(adj);
    if part.len == n {
        *best = (*best).max(leaf_code(adj, &part));
        return;
    }
    let target = (0..part.len).find(|&c| part.cells[c].count_ones() > 1).unwrap();
    let cell = part.cells[target];
    let mut tried: u16 = 0;
    for v in bits(cell) {
        if bits(tried).any(|w| twins(adj, v, w)) {
            continue;
        }
        tried |= 1 << v;
        let mut child = part;
        child.split(target, &[1 << v, cell & !(1 << v)]);
        search(adj, n, child, best);
    }
}

fn canonical_adj(adj: &Adj, n: usize) -> u128 {
    let mut best = 0;
    search(adj, n, Partition::unit(n), &mut best);
    best
}

fn to_adj(g: &Graph) -> Result<Adj> {
    if g.n() > MAX_VERTICES {
        return Err(Error::InvalidGraph(format!(
            "canonical forms need at most {MAX_VERTICES} vertices, got {}",
            g.n()
        )));
    }
    let mut adj = [0u16; MAX_VERTICES];
    for e in g.edges() {
        adj[e.0] |= 1 << e.1;
        adj[e.1] |= 1 << e.0;
    }
    Ok(adj)
}

fn code_adj(n: usize, code: u128) -> Adj {
    let mut adj = [0u16; MAX_VERTICES];
    let mut bit = (n * n.saturating_sub(1) / 2) as u32;
    for i in 0..n {
        for j in i + 1..n {
            bit -= 1;
            if (code >> bit) & 1 == 1 {
                adj[i] |= 1 << j;
                adj[j] |= 1 << i;
            }
        }
    }
    adj
}

/// Canonical code of `g`: equal for two graphs iff they are isomorphism.
pub fn canonical_code(g: &Graph) -> Result<u128> {
    Ok(canonical_adj(&to_adj(g)?, g.n()))
}

/// The graph whose upper-triangle adjacency bits (row-major, first pair most
/// significant) are `code`.
pub fn from_code(n: usize, code: u128) -> Graph {
    let adj = code_adj(n, code);
    let edges = (0..n).flat_map(|u| bits(adj[u] & !((2u32 << u) - 1) as u16).map(move |v| (u, v)));
    Graph::new(n, edges).expect("code fits n vertices")
}

/// Canonical codes of all one-vertex extensions of the `n_parent`-vertex
/// graph with code `parent`, keeping those with at most `max_edges` edges.
/// Appends to `out`; duplicates are possible.
pub fn extensions(n_parent: usize, parent: u128, max_edges: Option<usize>, out: &mut Vec<u128>) {
    assert!(n_parent < MAX_VERTICES);
    let base = code_adj(n_parent, parent);
    let m = parent.count_ones() as usize;
    let n = n_parent + 1;
    for subset in 0..(1u32 << n_parent) {
        if max_edges.is_some_and(|cap| m + subset.count_ones() as usize > cap) {
            continue;
        }
        let mut adj = base;
        for v in bits(subset as u16) {
            adj[v] |= 1 << n_parent;
        }
        adj[n_parent] = subset as u16;
        out.push(canonical_adj(&adj, n));
    }
}

/// Sorted canonical codes of every graph on `n` vertices with at most
/// `max_edges` edges, one per isomorphism class.
pub fn canonical_codes(n: usize, max_edges: Option<usize>) -> Vec<u128> {
    assert!(n <= MAX_VERTICES);
    let mut layer: Vec<u128> = alloc::vec![0];
    let mut scratch = Vec::new();
    for k in 0..n {
        let mut next = BTreeSet::new();
        for &code in &layer {
            scratch.clear();
            extensions(k, code, max_edges, &mut scratch);
            next.extend(scratch.iter().copied());
        }
        layer = next.into_iter().collect();
    }
    layer
}

/// One representative of every isomorphism class on `n` vertices.
pub fn all_graphs(n: usize) -> Vec<Graph> {
    canonical_codes(n, None).into_iter().map(|c| from_code(n, c)).collect()
}

/// One representative of every connected isomorphism class on `n` vertices.
pub fn connected_graphs(n: usize) -> Vec<Graph> {
    all_graphs(n).into_iter().filter(is_connected).collect()
}

pub fn is_connected(g: &Graph) -> bool {
    if g.n() == 0 {
        return true;
    }
    let mut seen = alloc::vec![false; g.n()];
    let mut stack = alloc::vec![0];
    seen[0] = true;
    let mut count = 1;
    while let Some(u) = stack.pop() {
        for &w in g.neighbors(u) {
            if !seen[w] {
                seen[w] = true;
                count += 1;
                stack.push(w);
            }
        }
    }
    count == g.n()
}

/// Labeled bipartite graph on `left + right` vertices (left side first):
/// bit `i * right + j` of `mask` is the pair `(i, left + j)`.
pub fn bipartite_from_mask(left: usize, right: usize, mask: u64) -> Graph {
    assert!(left * right <= 64);
    let edges = (0..left)
        .flat_map(|i| (0..right).map(move |j| (i, j)))
        .filter(|&(i, j)| (mask >> (i * right + j)) & 1 == 1)
        .map(|(i, j)| (i, left + j));
    Graph::new(left + right, edges)
        .and_then(|g| g.with_left_prefix(left))
        .expect("pairs cross the bipartition")
}
