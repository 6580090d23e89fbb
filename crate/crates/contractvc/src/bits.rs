//! Bitmask graphs for exhaustive enumeration on small instances (≤ 64 vertices).
//!
//! Deliberately independent of the main [`crate::graph`] routines so that the
//! brute-force oracles do not share code paths with the solver they check.

use crate::graph::Graph;

/// Adjacency as one `u64` mask per vertex.
#[derive(Clone, Debug)]
pub struct BitGraph {
    pub adj: Vec<u64>,
}

impl BitGraph {
    pub fn from_graph(g: &Graph) -> Self {
        assert!(g.n() <= 64, "bit graphs hold at most 64 vertices");
        let adj = (0..g.n())
            .map(|v| g.neighbors(v).iter().fold(0u64, |acc, &w| acc | (1 << w)))
            .collect();
        Self { adj }
    }

    pub fn n(&self) -> usize {
        self.adj.len()
    }

    pub fn full(&self) -> u64 {
        mask_below(self.n())
    }

    /// Number of connected components of `G[mask]`.
    pub fn components(&self, mask: u64) -> u32 {
        let mut rest = mask;
        let mut count = 0;
        while rest != 0 {
            let mut comp = rest & rest.wrapping_neg();
            loop {
                let mut grown = comp;
                let mut it = comp;
                while it != 0 {
                    let v = it.trailing_zeros() as usize;
                    it &= it - 1;
                    grown |= self.adj[v] & mask;
                }
                if grown == comp {
                    break;
                }
                comp = grown;
            }
            rest &= !comp;
            count += 1;
        }
        count
    }

    /// Rank of the induced subgraph `G[mask]`.
    pub fn rank(&self, mask: u64) -> u32 {
        mask.count_ones() - self.components(mask)
    }

    /// Whether `mask` meets every edge of the graph.
    pub fn is_cover(&self, mask: u64) -> bool {
        let outside = self.full() & !mask;
        let mut it = outside;
        while it != 0 {
            let v = it.trailing_zeros() as usize;
            it &= it - 1;
            if self.adj[v] & outside != 0 {
                return false;
            }
        }
        true
    }

    pub fn is_independent(&self, mask: u64) -> bool {
        let mut it = mask;
        while it != 0 {
            let v = it.trailing_zeros() as usize;
            it &= it - 1;
            if self.adj[v] & mask != 0 {
                return false;
            }
        }
        true
    }

    /// Union of neighbourhoods of the vertices in `mask` (may intersect `mask`).
    pub fn neighbors_of(&self, mask: u64) -> u64 {
        let mut out = 0;
        let mut it = mask;
        while it != 0 {
            let v = it.trailing_zeros() as usize;
            it &= it - 1;
            out |= self.adj[v];
        }
        out
    }

    /// Minimum vertex cover size of `G[mask]`, by plain branching on an edge.
    pub fn min_cover_size(&self, mask: u64) -> u32 {
        let mut best = mask.count_ones();
        self.cover_rec(mask, 0, &mut best);
        best
    }

    fn cover_rec(&self, mask: u64, taken: u32, best: &mut u32) {
        if taken >= *best {
            return;
        }
        // Find a vertex of maximum degree inside `mask`.
        let mut pick = None;
        let mut pick_deg = 0;
        let mut it = mask;
        while it != 0 {
            let v = it.trailing_zeros() as usize;
            it &= it - 1;
            let deg = (self.adj[v] & mask).count_ones();
            if deg > pick_deg {
                pick_deg = deg;
                pick = Some(v);
            }
        }
        let Some(v) = pick else {
            *best = taken;
            return;
        };
        if pick_deg <= 2 {
            // Paths and cycles: each component needs floor/ceil of half its size.
            *best = (*best).min(taken + self.paths_and_cycles_cover(mask));
            return;
        }
        let nb = self.adj[v] & mask;
        self.cover_rec(mask & !(1 << v), taken + 1, best);
        self.cover_rec(mask & !nb & !(1 << v), taken + nb.count_ones(), best);
    }

    /// Exact cover size when every vertex of `G[mask]` has degree ≤ 2.
    fn paths_and_cycles_cover(&self, mask: u64) -> u32 {
        let mut rest = mask;
        let mut total = 0;
        while rest != 0 {
            let start = rest.trailing_zeros() as usize;
            let mut comp = 1u64 << start;
            loop {
                let grown = comp | (self.neighbors_of(comp) & mask);
                if grown == comp {
                    break;
                }
                comp = grown;
            }
            rest &= !comp;
            let verts = comp.count_ones();
            let mut edges2 = 0;
            let mut it = comp;
            while it != 0 {
                let v = it.trailing_zeros() as usize;
                it &= it - 1;
                edges2 += (self.adj[v] & comp).count_ones();
            }
            let edges = edges2 / 2;
            total += if edges == verts { verts.div_ceil(2) } else { verts / 2 };
        }
        total
    }
}

/// The mask with the lowest `n` bits set.
pub fn mask_below(n: usize) -> u64 {
    if n >= 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

/// Iterates the vertex indices of a mask in increasing order.
pub fn members(mask: u64) -> impl Iterator<Item = usize> {
    let mut it = mask;
    std::iter::from_fn(move || {
        if it == 0 {
            None
        } else {
            let v = it.trailing_zeros() as usize;
            it &= it - 1;
            Some(v)
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rank_and_cover_on_small_graphs() {
        let c5 = Graph::new(5, &[(0, 1), (1, 2), (2, 3), (3, 4), (0, 4)]).unwrap();
        let b = BitGraph::from_graph(&c5);
        assert_eq!(b.rank(b.full()), 4);
        assert_eq!(b.components(0b00101), 2);
        assert_eq!(b.min_cover_size(b.full()), 3);
        assert!(b.is_cover(0b01011));
        assert!(!b.is_cover(0b00011));
        let k4 = Graph::new(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap();
        assert_eq!(BitGraph::from_graph(&k4).min_cover_size(0b1111), 3);
    }
}
