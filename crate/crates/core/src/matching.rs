//! Exact maximum-cardinality matching.
//!
//! General graphs go through Edmonds' augmenting-path search with blossom
//! contraction (cubic time). Graphs that carry a declared bipartition use
//! Hopcroft-Karp. Both start from a greedy lowest-id matching and scan roots
//! and neighbours in ascending id order, so the result is a deterministic
//! function of the graph.

use alloc::collections::VecDeque;
use alloc::vec;
use alloc::vec::Vec;

use crate::graph::{Graph, Matching};

const FREE: usize = usize::MAX;

/// Maximum matching of `g`, dispatching on whether a bipartition is declared.
pub fn maximum_matching(g: &Graph) -> Matching {
    match g.bipartition() {
        Some(left) => Matching::from_mates(&hopcroft_karp_mates(g, left)),
        None => Matching::from_mates(&blossom_mates(g)),
    }
}

/// Size of a maximum matching.
pub fn matching_number(g: &Graph) -> usize {
    maximum_matching(g).size()
}

/// True iff every pair is an edge of `g` and no vertex is used twice.
pub fn verify_matching(g: &Graph, m: &Matching) -> bool {
    let mut used = vec![false; g.n()];
    for e in m.pairs() {
        if !g.has_edge(e.0, e.1) || used[e.0] || used[e.1] {
            return false;
        }
        used[e.0] = true;
        used[e.1] = true;
    }
    true
}

fn greedy(g: &Graph, mate: &mut [usize]) {
    for v in 0..g.n() {
        if mate[v] != FREE {
            continue;
        }
        if let Some(&w) = g.neighbors(v).iter().find(|&&w| mate[w] == FREE) {
            mate[v] = w;
            mate[w] = v;
        }
    }
}

/// Mate array of a maximum matching in an arbitrary graph.
pub fn blossom_mates(g: &Graph) -> Vec<usize> {
    let n = g.n();
    let mut mate = vec![FREE; n];
    greedy(g, &mut mate);
    let mut search = BlossomSearch::new(n);
    for root in 0..n {
        if mate[root] != FREE {
            continue;
        }
        if let Some(end) = search.find_augmenting_path(g, &mate, root) {
            let mut v = end;
            while v != FREE {
                let pv = search.parent[v];
                let next = mate[pv];
                mate[v] = pv;
                mate[pv] = v;
                v = next;
            }
        }
    }
    mate
}

struct BlossomSearch {
    used: Vec<bool>,
    parent: Vec<usize>,
    base: Vec<usize>,
    in_blossom: Vec<bool>,
    seen: Vec<bool>,
    queue: VecDeque<usize>,
}

impl BlossomSearch {
    fn new(n: usize) -> Self {
        BlossomSearch {
            used: vec![false; n],
            parent: vec![FREE; n],
            base: (0..n).collect(),
            in_blossom: vec![false; n],
            seen: vec![false; n],
            queue: VecDeque::with_capacity(n),
        }
    }

    fn lca(&mut self, mate: &[usize], mut a: usize, mut b: usize) -> usize {
        self.seen.fill(false);
        loop {
            a = self.base[a];
            self.seen[a] = true;
            if mate[a] == FREE {
                break;
            }
            a = self.parent[mate[a]];
        }
        loop {
            b = self.base[b];
            if self.seen[b] {
                return b;
            }
            b = self.parent[mate[b]];
        }
    }

    fn mark_path(&mut self, mate: &[usize], mut v: usize, b: usize, mut child: usize) {
        while self.base[v] != b {
            self.in_blossom[self.base[v]] = true;
            self.in_blossom[self.base[mate[v]]] = true;
            self.parent[v] = child;
            child = mate[v];
            v = self.parent[mate[v]];
        }
    }

    /// Returns the free endpoint of an augmenting path from `root`; the path
    /// is recorded in `parent` / `mate`.
    fn find_augmenting_path(&mut self, g: &Graph, mate: &[usize], root: usize) -> Option<usize> {
        let n = g.n();
        self.used.fill(false);
        self.parent.fill(FREE);
        for (i, b) in self.base.iter_mut().enumerate() {
            *b = i;
        }
        self.queue.clear();
        self.used[root] = true;
        self.queue.push_back(root);
        while let Some(v) = self.queue.pop_front() {
            for &to in g.neighbors(v) {
                if self.base[v] == self.base[to] || mate[v] == to {
                    continue;
                }
                if to == root || (mate[to] != FREE && self.parent[mate[to]] != FREE) {
                    let cur = self.lca(mate, v, to);
                    self.in_blossom.fill(false);
                    self.mark_path(mate, v, cur, to);
                    self.mark_path(mate, to, cur, v);
                    for i in 0..n {
                        if self.in_blossom[self.base[i]] {
                            self.base[i] = cur;
                            if !self.used[i] {
                                self.used[i] = true;
                                self.queue.push_back(i);
                            }
                        }
                    }
                } else if self.parent[to] == FREE {
                    self.parent[to] = v;
                    if mate[to] == FREE {
                        return Some(to);
                    }
                    let next = mate[to];
                    self.used[next] = true;
                    self.queue.push_back(next);
                }
            }
        }
        None
    }
}

/// Mate array of a maximum matching in a bipartite graph with `left[v]`
/// marking the left side.
pub fn hopcroft_karp_mates(g: &Graph, left: &[bool]) -> Vec<usize> {
    let n = g.n();
    let mut mate = vec![FREE; n];
    greedy(g, &mut mate);
    let lefts: Vec<usize> = (0..n).filter(|&v| left[v]).collect();
    let mut dist = vec![usize::MAX; n];
    let mut queue = VecDeque::new();
    loop {
        // Layer the left vertices by alternating distance from the free ones.
        queue.clear();
        for &u in &lefts {
            if mate[u] == FREE {
                dist[u] = 0;
                queue.push_back(u);
            } else {
                dist[u] = usize::MAX;
            }
        }
        let mut reachable_free = false;
        while let Some(u) = queue.pop_front() {
            for &w in g.neighbors(u) {
                match mate[w] {
                    FREE => reachable_free = true,
                    x if dist[x] == usize::MAX => {
                        dist[x] = dist[u] + 1;
                        queue.push_back(x);
                    }
                    _ => {}
                }
            }
        }
        if !reachable_free {
            break;
        }
        let mut augmented = false;
        for &u in &lefts {
            if mate[u] == FREE && hk_dfs(g, u, &mut mate, &mut dist) {
                augmented = true;
            }
        }
        if !augmented {
            break;
        }
    }
    mate
}

fn hk_dfs(g: &Graph, u: usize, mate: &mut [usize], dist: &mut [usize]) -> bool {
    for &w in g.neighbors(u) {
        let x = mate[w];
        let ok = x == FREE || (dist[x] == dist[u].wrapping_add(1) && hk_dfs(g, x, mate, dist));
        if ok {
            mate[u] = w;
            mate[w] = u;
            return true;
        }
    }
    dist[u] = usize::MAX;
    false
}
