//! Undirected simple graphs in compressed adjacency form, exact searches, and
//! the degree-based edge filters used by every approximation routine.

mod dist;
pub(crate) mod search;

pub use dist::{dist_add, Dist, DistanceMatrix, INF};
pub use search::{bfs_from, dijkstra_overlay, multi_bfs, VirtualEdgeList, WeightedGraph};

use crate::error::{Error, Result};

/// Immutable undirected simple graph.
///
/// Neighbor lists are sorted, duplicate free and symmetric; self-loops are
/// dropped at construction. Vertex ids are `0..n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    offsets: Vec<usize>,
    targets: Vec<u32>,
}

impl Graph {
    /// Graph with `n` vertices and no edges.
    pub fn empty(n: usize) -> Self {
        Graph {
            offsets: vec![0; n + 1],
            targets: Vec::new(),
        }
    }

    /// Builds a graph from an arbitrary edge list. Edges are symmetrized and
    /// deduplicated, self-loops are dropped.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        assert!(n <= u32::MAX as usize, "vertex count exceeds u32 ids");
        let mut pairs: Vec<(u32, u32)> = Vec::new();
        for (u, v) in edges {
            for x in [u, v] {
                if x >= n {
                    return Err(Error::InvalidVertex { vertex: x, n });
                }
            }
            if u != v {
                pairs.push((u as u32, v as u32));
                pairs.push((v as u32, u as u32));
            }
        }
        pairs.sort_unstable();
        pairs.dedup();

        let mut offsets = vec![0usize; n + 1];
        for &(u, _) in &pairs {
            offsets[u as usize + 1] += 1;
        }
        for i in 0..n {
            offsets[i + 1] += offsets[i];
        }
        let targets = pairs.into_iter().map(|(_, v)| v).collect();
        Ok(Graph { offsets, targets })
    }

    pub fn n(&self) -> usize {
        self.offsets.len() - 1
    }

    /// Number of undirected edges.
    pub fn m(&self) -> usize {
        self.targets.len() / 2
    }

    #[inline]
    pub fn neighbors(&self, v: usize) -> &[u32] {
        &self.targets[self.offsets[v]..self.offsets[v + 1]]
    }

    #[inline]
    pub fn degree(&self, v: usize) -> usize {
        self.offsets[v + 1] - self.offsets[v]
    }

    pub fn degrees(&self) -> Vec<usize> {
        (0..self.n()).map(|v| self.degree(v)).collect()
    }

    pub fn max_degree(&self) -> usize {
        (0..self.n()).map(|v| self.degree(v)).max().unwrap_or(0)
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n() && v < self.n() && self.neighbors(u).binary_search(&(v as u32)).is_ok()
    }

    /// Each undirected edge once, as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.n()).flat_map(move |u| {
            self.neighbors(u)
                .iter()
                .map(move |&v| (u, v as usize))
                .filter(|&(u, v)| u < v)
        })
    }

    pub(crate) fn check_vertex(&self, v: usize) -> Result<()> {
        if v < self.n() {
            Ok(())
        } else {
            Err(Error::InvalidVertex {
                vertex: v,
                n: self.n(),
            })
        }
    }

    /// Keeps the edges for which `keep(u, v)` holds. `keep` must be symmetric.
    pub fn filter_edges<F>(&self, mut keep: F) -> Graph
    where
        F: FnMut(usize, usize) -> bool,
    {
        let n = self.n();
        let mut offsets = Vec::with_capacity(n + 1);
        let mut targets = Vec::new();
        offsets.push(0);
        for u in 0..n {
            for &v in self.neighbors(u) {
                if keep(u, v as usize) {
                    targets.push(v);
                }
            }
            offsets.push(targets.len());
        }
        Graph { offsets, targets }
    }

    /// Induced subgraph on the vertices of degree at most `cap`. Vertex ids
    /// are preserved; removed vertices stay behind as isolated vertices.
    pub fn restrict_to_max_degree(&self, cap: usize) -> Graph {
        let deg = self.degrees();
        self.filter_edges(|u, v| deg[u] <= cap && deg[v] <= cap)
    }

    /// Keeps exactly the edges with at least one endpoint of degree `<= d`.
    pub fn low_degree_edge_subgraph(&self, d: usize) -> Graph {
        let deg = self.degrees();
        self.filter_edges(|u, v| deg[u] <= d || deg[v] <= d)
    }

    /// Exact all-pairs distances from `n` breadth-first searches.
    pub fn exact_apsp(&self) -> DistanceMatrix {
        let all: Vec<usize> = (0..self.n()).collect();
        multi_bfs(self, &all).expect("all vertices are valid")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn star(leaves: usize) -> Graph {
        Graph::from_edges(leaves + 1, (1..=leaves).map(|v| (0, v))).unwrap()
    }

    #[test]
    fn construction_symmetrizes_and_drops_loops() {
        let g = Graph::from_edges(3, [(0, 1), (1, 0), (1, 1), (2, 1), (1, 2)]).unwrap();
        assert_eq!(g.m(), 2);
        assert_eq!(g.neighbors(1), &[0, 2]);
        assert_eq!(g.neighbors(0), &[1]);
        assert!(g.has_edge(2, 1));
        assert!(!g.has_edge(0, 2));
        assert_eq!(g.edges().collect::<Vec<_>>(), vec![(0, 1), (1, 2)]);
    }

    #[test]
    fn out_of_range_endpoint_is_rejected() {
        assert!(matches!(
            Graph::from_edges(2, [(0, 2)]),
            Err(Error::InvalidVertex { vertex: 2, n: 2 })
        ));
    }

    #[test]
    fn star_restriction_isolates_center() {
        let g = star(5);
        let r = g.restrict_to_max_degree(2);
        assert_eq!(r.n(), 6);
        assert_eq!(r.m(), 0);
    }

    #[test]
    fn restriction_is_noop_below_cap() {
        let g = Graph::from_edges(4, [(0, 1), (1, 2), (2, 3)]).unwrap();
        assert_eq!(g.restrict_to_max_degree(2), g);
        assert_eq!(g.low_degree_edge_subgraph(2), g);
    }

    #[test]
    fn clique_loses_every_edge_above_threshold() {
        let edges = (0..10).flat_map(|u| (u + 1..10).map(move |v| (u, v)));
        let g = Graph::from_edges(10, edges).unwrap();
        assert_eq!(g.m(), 45);
        assert_eq!(g.low_degree_edge_subgraph(3).m(), 0);
    }

    #[test]
    fn low_degree_subgraph_keeps_edges_touching_leaves() {
        // hub 0 (degree 5) joined to hub 6 (degree 5), each with leaves.
        let mut edges = vec![(0, 6)];
        edges.extend((1..=4).map(|v| (0, v)));
        edges.extend((7..=10).map(|v| (6, v)));
        let g = Graph::from_edges(11, edges).unwrap();
        let h = g.low_degree_edge_subgraph(1);
        assert_eq!(h.m(), 8);
        assert!(!h.has_edge(0, 6));
    }
}
