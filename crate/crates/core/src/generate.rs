//! Deterministic instance generators.
//!
//! Random families draw one uniform variate per candidate pair, in
//! lexicographic pair order, from a ChaCha8 stream seeded with the spec's
//! seed. Every generator is a pure function of its [`GenSpec`].

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::ops::Range;

use rand::Rng;

use crate::error::{Error, Result};
use crate::graph::{Edge, Graph};
use crate::seed::rng;

#[derive(Debug, Clone, PartialEq)]
pub enum GenSpec {
    /// `G(n, p)`.
    ErdosRenyi { n: usize, p: f64, seed: u64 },
    /// Each of the `left * right` cross pairs kept with probability `p`;
    /// `L = 0..left`.
    RandomBipartite {
        left: usize,
        right: usize,
        p: f64,
        seed: u64,
    },
    /// `k` disjoint edges `(2i, 2i + 1)`.
    PerfectMatching { k: usize },
    /// Path on `n >= 1` vertices.
    Path { n: usize },
    /// Cycle on `n >= 3` vertices.
    Cycle { n: usize },
    CompleteBipartite { left: usize, right: usize },
    /// Five parts of size `k`, see [`A3Layout`].
    A3Counterexample { k: usize },
}

impl GenSpec {
    pub fn family(&self) -> &'static str {
        match self {
            GenSpec::ErdosRenyi { .. } => "erdos_renyi",
            GenSpec::RandomBipartite { .. } => "random_bipartite",
            GenSpec::PerfectMatching { .. } => "perfect_matching",
            GenSpec::Path { .. } => "path",
            GenSpec::Cycle { .. } => "cycle",
            GenSpec::CompleteBipartite { .. } => "complete_bipartite",
            GenSpec::A3Counterexample { .. } => "a3_counterexample",
        }
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidGenSpec(msg));
        match *self {
            GenSpec::ErdosRenyi { p, .. } | GenSpec::RandomBipartite { p, .. }
                if !(0.0..=1.0).contains(&p) =>
            {
                bad(format!("p = {p} must lie in [0, 1]"))
            }
            GenSpec::Path { n: 0 } => bad("path needs n >= 1".into()),
            GenSpec::Cycle { n } if n < 3 => bad(format!("cycle needs n >= 3, got {n}")),
            GenSpec::A3Counterexample { k: 0 } => bad("a3_counterexample needs k >= 1".into()),
            _ => Ok(()),
        }
    }
}

/// Vertex layout of the five-part instance on which iterated matchings and
/// b-matchings lose a factor of 2 under edge faults.
///
/// Parts have `k` vertices each and are laid out as `X | Y' | Z' | Y | Z`, so
/// the left side `X ∪ Y' ∪ Z'` is the prefix `0..3k`. Edges: `X-Y` and `X-Z`
/// complete bipartite, `Y_i - Y'_i` and `Z_i - Z'_i` perfect matchings.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct A3Layout {
    pub k: usize,
}

impl A3Layout {
    pub fn x(&self) -> Range<usize> {
        0..self.k
    }
    pub fn y_prime(&self) -> Range<usize> {
        self.k..2 * self.k
    }
    pub fn z_prime(&self) -> Range<usize> {
        2 * self.k..3 * self.k
    }
    pub fn y(&self) -> Range<usize> {
        3 * self.k..4 * self.k
    }
    pub fn z(&self) -> Range<usize> {
        4 * self.k..5 * self.k
    }
    pub fn n(&self) -> usize {
        5 * self.k
    }

    /// The `Y_i - Y'_i` matching.
    pub fn y_matching(&self) -> Vec<Edge> {
        (0..self.k).map(|i| Edge::new(self.y().start + i, self.y_prime().start + i)).collect()
    }

    /// The `Z_i - Z'_i` matching.
    pub fn z_matching(&self) -> Vec<Edge> {
        (0..self.k).map(|i| Edge::new(self.z().start + i, self.z_prime().start + i)).collect()
    }

    /// Perfect matching `X_i - Y_{(i + shift) mod k}`.
    pub fn xy_matching(&self, shift: usize) -> Vec<Edge> {
        (0..self.k)
            .map(|i| Edge::new(self.x().start + i, self.y().start + (i + shift) % self.k))
            .collect()
    }

    /// Perfect matching `X_i - Z_{(i + shift) mod k}`.
    pub fn xz_matching(&self, shift: usize) -> Vec<Edge> {
        (0..self.k)
            .map(|i| Edge::new(self.x().start + i, self.z().start + (i + shift) % self.k))
            .collect()
    }

    pub fn graph(&self) -> Graph {
        let mut edges = Vec::new();
        for x in self.x() {
            for w in self.y().chain(self.z()) {
                edges.push((x, w));
            }
        }
        edges.extend(self.y_matching().iter().chain(&self.z_matching()).map(|e| (e.0, e.1)));
        Graph::new(self.n(), edges)
            .and_then(|g| g.with_left_prefix(3 * self.k))
            .expect("layout is a valid bipartite graph")
    }
}

pub fn generate(spec: &GenSpec) -> Result<Graph> {
    spec.validate()?;
    let g = match *spec {
        GenSpec::ErdosRenyi { n, p, seed } => {
            let mut r = rng(seed);
            let mut edges = Vec::new();
            for u in 0..n {
                for v in u + 1..n {
                    if r.gen::<f64>() < p {
                        edges.push((u, v));
                    }
                }
            }
            Graph::new(n, edges)?
        }
        GenSpec::RandomBipartite {
            left,
            right,
            p,
            seed,
        } => {
            let mut r = rng(seed);
            let mut edges = Vec::new();
            for u in 0..left {
                for v in 0..right {
                    if r.gen::<f64>() < p {
                        edges.push((u, left + v));
                    }
                }
            }
            Graph::new(left + right, edges)?.with_left_prefix(left)?
        }
        GenSpec::PerfectMatching { k } => Graph::new(2 * k, (0..k).map(|i| (2 * i, 2 * i + 1)))?,
        GenSpec::Path { n } => Graph::new(n, (1..n).map(|i| (i - 1, i)))?,
        GenSpec::Cycle { n } => Graph::new(n, (0..n).map(|i| (i, (i + 1) % n)))?,
        GenSpec::CompleteBipartite { left, right } => {
            let edges = (0..left).flat_map(|u| (0..right).map(move |v| (u, left + v)));
            Graph::new(left + right, edges)?.with_left_prefix(left)?
        }
        GenSpec::A3Counterexample { k } => A3Layout { k }.graph(),
    };
    Ok(g)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matching::matching_number;

    #[test]
    fn path_four() {
        let g = generate(&GenSpec::Path { n: 4 }).unwrap();
        assert_eq!((g.n(), g.m()), (4, 3));
        assert_eq!(matching_number(&g), 2);
    }

    #[test]
    fn erdos_renyi_is_deterministic() {
        let spec = GenSpec::ErdosRenyi {
            n: 50,
            p: 0.1,
            seed: 7,
        };
        assert_eq!(generate(&spec).unwrap(), generate(&spec).unwrap());
        let other = GenSpec::ErdosRenyi {
            n: 50,
            p: 0.1,
            seed: 8,
        };
        assert_ne!(generate(&spec).unwrap(), generate(&other).unwrap());
    }

    #[test]
    fn a3_structure() {
        let layout = A3Layout { k: 5 };
        let g = layout.graph();
        assert_eq!((g.n(), g.m()), (25, 60));
        for x in layout.x() {
            for w in layout.y().chain(layout.z()) {
                assert!(g.has_edge(x, w));
            }
        }
        for e in layout.y_matching().iter().chain(&layout.z_matching()) {
            assert!(g.has_edge(e.0, e.1));
        }
        // Y ∪ Z is a vertex cover of size 2k, and Y-Y' plus X-Z is a matching
        // of that size.
        assert_eq!(matching_number(&g), 10);
    }

    #[test]
    fn invalid_specs() {
        assert!(generate(&GenSpec::Cycle { n: 2 }).is_err());
        assert!(generate(&GenSpec::A3Counterexample { k: 0 }).is_err());
        assert!(generate(&GenSpec::ErdosRenyi {
            n: 3,
            p: 1.5,
            seed: 0
        })
        .is_err());
    }
}
