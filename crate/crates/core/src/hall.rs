//! Deficiency witnesses for bipartite graphs.
//!
//! For a bipartite graph with sides of equal size `s`, the largest value of
//! `|A| - |N(A)|` over sets `A` inside one side equals `s - mu(G)`. Unequal
//! sides are padded with isolated vertices up to the larger size; padded
//! vertices are counted in [`WitnessSet::padding`] rather than listed.

use alloc::collections::VecDeque;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::matching::hopcroft_karp_mates;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WitnessSet {
    pub side: Side,
    /// Real vertices of `A`, ascending.
    pub members: Vec<usize>,
    /// Padding vertices that also belong to `A`.
    pub padding: usize,
    /// `N(A)`, ascending.
    pub neighborhood: Vec<usize>,
    pub neighborhood_size: usize,
    pub deficiency: i64,
}

impl WitnessSet {
    pub fn size(&self) -> usize {
        self.members.len() + self.padding
    }
}

/// Maximum-deficiency witness. Uses the declared bipartition when present,
/// otherwise a lowest-id 2-colouring. The left side wins ties.
pub fn hall_witness(g: &Graph) -> Result<WitnessSet> {
    let left = g.two_coloring().ok_or(Error::NotBipartite)?;
    let mate = hopcroft_karp_mates(g, &left);
    let left_count = left.iter().filter(|&&l| l).count();
    let side_size = left_count.max(g.n() - left_count);

    let from_left = witness_from(g, &mate, &left, true, side_size - left_count);
    let from_right = witness_from(
        g,
        &mate,
        &left,
        false,
        side_size - (g.n() - left_count),
    );
    Ok(if from_right.deficiency > from_left.deficiency {
        from_right
    } else {
        from_left
    })
}

/// Vertices of `side` reachable from its free vertices by alternating paths,
/// which is a maximum-deficiency set on that side (Konig's construction).
fn witness_from(g: &Graph, mate: &[usize], left: &[bool], on_left: bool, padding: usize) -> WitnessSet {
    let n = g.n();
    let mut reached = vec![false; n];
    let mut queue = VecDeque::new();
    for v in 0..n {
        if left[v] == on_left && mate[v] == usize::MAX {
            reached[v] = true;
            queue.push_back(v);
        }
    }
    while let Some(v) = queue.pop_front() {
        for &w in g.neighbors(v) {
            if reached[w] {
                continue;
            }
            reached[w] = true;
            // A reached vertex on the far side is always matched, otherwise
            // the matching would not be maximum.
            let back = mate[w];
            if back != usize::MAX && !reached[back] {
                reached[back] = true;
                queue.push_back(back);
            }
        }
    }
    let members: Vec<usize> = (0..n).filter(|&v| reached[v] && left[v] == on_left).collect();
    let neighborhood: Vec<usize> = (0..n).filter(|&v| reached[v] && left[v] != on_left).collect();
    let neighborhood_size = neighborhood.len();
    WitnessSet {
        side: if on_left { Side::Left } else { Side::Right },
        deficiency: (members.len() + padding) as i64 - neighborhood_size as i64,
        members,
        padding,
        neighborhood,
        neighborhood_size,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn perfect_matching_has_zero_deficiency() {
        let g = Graph::new(6, [(0, 3), (1, 4), (2, 5)])
            .unwrap()
            .with_left_prefix(3)
            .unwrap();
        let w = hall_witness(&g).unwrap();
        assert_eq!(w.deficiency, 0);
        assert!(w.members.is_empty());
    }

    #[test]
    fn star_into_one_right_vertex() {
        // L = {a,b,c} = {0,1,2}, R = {x,y,z} = {3,4,5}; a-x, b-x, c-x.
        let g = Graph::new(6, [(0, 3), (1, 3), (2, 3)])
            .unwrap()
            .with_left_prefix(3)
            .unwrap();
        let w = hall_witness(&g).unwrap();
        assert_eq!(w.side, Side::Left);
        assert_eq!(w.members, vec![0, 1, 2]);
        assert_eq!(w.neighborhood_size, 1);
        assert_eq!(w.deficiency, 2);
    }

    #[test]
    fn empty_graph() {
        let g = Graph::empty(4).with_left_prefix(2).unwrap();
        let w = hall_witness(&g).unwrap();
        assert_eq!(w.deficiency, 2);
        assert_eq!(w.members, vec![0, 1]);
        assert_eq!(w.neighborhood_size, 0);
    }

    #[test]
    fn unbalanced_sides_are_padded() {
        // L = {0}, R = {1, 2}: padded L has size 2, mu = 1.
        let g = Graph::new(3, [(0, 1), (0, 2)])
            .unwrap()
            .with_left_prefix(1)
            .unwrap();
        let w = hall_witness(&g).unwrap();
        assert_eq!(w.deficiency, 1);
        assert_eq!(w.padding, 1);
    }

    #[test]
    fn odd_cycle_rejected() {
        let tri = Graph::new(3, [(0, 1), (1, 2), (0, 2)]).unwrap();
        assert_eq!(hall_witness(&tri), Err(Error::NotBipartite));
    }
}
