//! Simple undirected graphs over dense vertex ids `0..n`.

use alloc::collections::VecDeque;
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};

/// An undirected edge stored with its smaller endpoint first.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Edge(pub usize, pub usize);

impl Edge {
    /// Normalizes the endpoint order.
    pub fn new(u: usize, v: usize) -> Self {
        if u <= v {
            Edge(u, v)
        } else {
            Edge(v, u)
        }
    }

    pub fn touches(self, v: usize) -> bool {
        self.0 == v || self.1 == v
    }

    pub fn other(self, v: usize) -> usize {
        if self.0 == v {
            self.1
        } else {
            self.0
        }
    }
}

impl fmt::Display for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.0, self.1)
    }
}

/// Immutable simple graph. Edges are kept sorted lexicographically and every
/// adjacency list is sorted ascending, which is what makes the lowest-id-first
/// tie-breaking of the algorithms in this crate reproducible.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    edges: Vec<Edge>,
    adj: Vec<Vec<usize>>,
    left: Option<Vec<bool>>,
}

impl Graph {
    /// Builds a graph, rejecting self-loops and out-of-range endpoints.
    /// Duplicate edges are collapsed.
    pub fn new<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        Self::with_duplicates(n, edges).map(|(g, _)| g)
    }

    /// Like [`Graph::new`], also returning how many duplicate edges were dropped.
    pub fn with_duplicates<I>(n: usize, edges: I) -> Result<(Self, usize)>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut list = Vec::new();
        for (u, v) in edges {
            if u == v {
                return Err(Error::InvalidGraph(format!("self-loop at vertex {u}")));
            }
            if u >= n || v >= n {
                return Err(Error::InvalidGraph(format!(
                    "edge ({u}, {v}) has an endpoint >= n = {n}"
                )));
            }
            list.push(Edge::new(u, v));
        }
        list.sort_unstable();
        let before = list.len();
        list.dedup();
        let dups = before - list.len();
        Ok((Self::from_sorted(n, list), dups))
    }

    /// `edges` must be normalized, sorted, deduplicated and in range.
    pub(crate) fn from_sorted(n: usize, edges: Vec<Edge>) -> Self {
        debug_assert!(edges.windows(2).all(|w| w[0] < w[1]));
        let mut adj = vec![Vec::new(); n];
        for &Edge(u, v) in &edges {
            adj[u].push(v);
            adj[v].push(u);
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        Graph {
            n,
            edges,
            adj,
            left: None,
        }
    }

    pub fn empty(n: usize) -> Self {
        Self::from_sorted(n, Vec::new())
    }

    /// Attaches a bipartition; `left[v]` is true for vertices of `L`.
    pub fn with_bipartition(mut self, left: Vec<bool>) -> Result<Self> {
        if left.len() != self.n {
            return Err(Error::InvalidGraph(format!(
                "bipartition covers {} vertices, graph has {}",
                left.len(),
                self.n
            )));
        }
        if let Some(e) = self.edges.iter().find(|e| left[e.0] == left[e.1]) {
            return Err(Error::InvalidGraph(format!(
                "edge {e} does not cross the bipartition"
            )));
        }
        self.left = Some(left);
        Ok(self)
    }

    /// Declares `L = {0..k}` and `R = {k..n}`.
    pub fn with_left_prefix(self, k: usize) -> Result<Self> {
        if k > self.n {
            return Err(Error::InvalidGraph(format!(
                "bipartite prefix {k} exceeds n = {}",
                self.n
            )));
        }
        let n = self.n;
        self.with_bipartition((0..n).map(|v| v < k).collect())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).max().unwrap_or(0)
    }

    /// Largest `deg(u) + deg(v)` over the edges, 0 for an edgeless graph.
    pub fn max_edge_degree_sum(&self) -> usize {
        self.edges
            .iter()
            .map(|e| self.degree(e.0) + self.degree(e.1))
            .max()
            .unwrap_or(0)
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && v < self.n && self.adj[u].binary_search(&v).is_ok()
    }

    /// Position of the edge in [`Graph::edges`].
    pub fn edge_index(&self, u: usize, v: usize) -> Option<usize> {
        self.edges.binary_search(&Edge::new(u, v)).ok()
    }

    pub fn bipartition(&self) -> Option<&[bool]> {
        self.left.as_deref()
    }

    /// When the left side is exactly a prefix `0..k`, returns `k`.
    pub fn left_prefix(&self) -> Option<usize> {
        let left = self.left.as_ref()?;
        let k = left.iter().take_while(|&&l| l).count();
        left[k..].iter().all(|&l| !l).then_some(k)
    }

    /// Declared bipartition, or else a BFS 2-colouring that starts every
    /// component at its lowest vertex on the left. `None` when an odd cycle
    /// exists.
    pub fn two_coloring(&self) -> Option<Vec<bool>> {
        if let Some(left) = &self.left {
            return Some(left.clone());
        }
        let mut color: Vec<Option<bool>> = vec![None; self.n];
        let mut queue = VecDeque::new();
        for s in 0..self.n {
            if color[s].is_some() {
                continue;
            }
            color[s] = Some(true);
            queue.push_back(s);
            while let Some(v) = queue.pop_front() {
                let cv = color[v].unwrap();
                for &w in &self.adj[v] {
                    match color[w] {
                        None => {
                            color[w] = Some(!cv);
                            queue.push_back(w);
                        }
                        Some(cw) if cw == cv => return None,
                        Some(_) => {}
                    }
                }
            }
        }
        Some(color.into_iter().map(|c| c.unwrap()).collect())
    }

    /// Subgraph on the same vertex set keeping the edges whose mask bit is set.
    pub fn edge_subgraph(&self, keep: &[bool]) -> Graph {
        debug_assert_eq!(keep.len(), self.edges.len());
        let edges = self
            .edges
            .iter()
            .zip(keep)
            .filter_map(|(&e, &k)| k.then_some(e))
            .collect();
        self.derive(edges)
    }

    /// Removes every listed edge that is present.
    pub fn without_edges(&self, removed: &[Edge]) -> Graph {
        let mut gone = removed.to_vec();
        gone.sort_unstable();
        let edges = self
            .edges
            .iter()
            .copied()
            .filter(|e| gone.binary_search(e).is_err())
            .collect();
        self.derive(edges)
    }

    /// Edge union of two graphs on the same vertex set. The bipartition of
    /// `self` is kept only if `other` respects it.
    pub fn union(&self, other: &Graph) -> Result<Graph> {
        if self.n != other.n {
            return Err(Error::VertexCountMismatch(self.n, other.n));
        }
        let mut edges = Vec::with_capacity(self.m() + other.m());
        let (mut i, mut j) = (0, 0);
        while i < self.edges.len() || j < other.edges.len() {
            let next = match (self.edges.get(i), other.edges.get(j)) {
                (Some(a), Some(b)) if a == b => {
                    i += 1;
                    j += 1;
                    *a
                }
                (Some(a), Some(b)) if a < b => {
                    i += 1;
                    *a
                }
                (Some(_), Some(b)) => {
                    j += 1;
                    *b
                }
                (Some(a), None) => {
                    i += 1;
                    *a
                }
                (None, Some(b)) => {
                    j += 1;
                    *b
                }
                (None, None) => unreachable!(),
            };
            edges.push(next);
        }
        let mut g = Graph::from_sorted(self.n, edges);
        if let Some(left) = &self.left {
            if g.edges.iter().all(|e| left[e.0] != left[e.1]) {
                g.left = Some(left.clone());
            }
        }
        Ok(g)
    }

    /// Edge intersection on the same vertex set.
    pub fn intersection(&self, other: &Graph) -> Result<Graph> {
        if self.n != other.n {
            return Err(Error::VertexCountMismatch(self.n, other.n));
        }
        let edges = self
            .edges
            .iter()
            .copied()
            .filter(|e| other.edges.binary_search(e).is_ok())
            .collect();
        Ok(self.derive(edges))
    }

    /// True when every edge of `self` is an edge of `host`.
    pub fn is_subgraph_of(&self, host: &Graph) -> bool {
        self.n == host.n && self.edges.iter().all(|e| host.edges.binary_search(e).is_ok())
    }

    fn derive(&self, edges: Vec<Edge>) -> Graph {
        let mut g = Graph::from_sorted(self.n, edges);
        g.left = self.left.clone();
        g
    }
}

/// A set of pairwise vertex-disjoint edges, sorted lexicographically.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Matching {
    pairs: Vec<Edge>,
}

impl Matching {
    pub fn new(mut pairs: Vec<Edge>) -> Self {
        for e in &mut pairs {
            *e = Edge::new(e.0, e.1);
        }
        pairs.sort_unstable();
        Matching { pairs }
    }

    /// Reads a matching off a mate array (`mate[v] == usize::MAX` for free).
    pub fn from_mates(mate: &[usize]) -> Self {
        let pairs = mate
            .iter()
            .enumerate()
            .filter(|&(v, &w)| w != usize::MAX && v < w)
            .map(|(v, &w)| Edge(v, w))
            .collect();
        Matching { pairs }
    }

    pub fn pairs(&self) -> &[Edge] {
        &self.pairs
    }

    pub fn size(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    /// The matching as a graph on `n` vertices.
    pub fn to_graph(&self, n: usize) -> Result<Graph> {
        Graph::new(n, self.pairs.iter().map(|e| (e.0, e.1)))
    }
}
