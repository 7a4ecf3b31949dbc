use std::cmp::Reverse;
use std::collections::{BinaryHeap, VecDeque};

use rayon::prelude::*;

use super::dist::{Dist, DistanceMatrix, INF};
use super::Graph;
use crate::error::{Error, Result};

/// Exact hop distances from `s`; `INF` for unreachable vertices.
pub fn bfs_from(g: &Graph, s: usize) -> Result<Vec<Dist>> {
    g.check_vertex(s)?;
    Ok(bfs_unchecked(g, s))
}

pub(crate) fn bfs_unchecked(g: &Graph, s: usize) -> Vec<Dist> {
    let mut dist = vec![INF; g.n()];
    let mut queue = VecDeque::new();
    dist[s] = 0;
    queue.push_back(s as u32);
    while let Some(u) = queue.pop_front() {
        let du = dist[u as usize];
        for &v in g.neighbors(u as usize) {
            if dist[v as usize] == INF {
                dist[v as usize] = du + 1;
                queue.push_back(v);
            }
        }
    }
    dist
}

/// One BFS row per source: a `|sources| x n` matrix.
pub fn multi_bfs(g: &Graph, sources: &[usize]) -> Result<DistanceMatrix> {
    let mut seen = vec![false; g.n()];
    for &s in sources {
        g.check_vertex(s)?;
        if std::mem::replace(&mut seen[s], true) {
            return Err(Error::InvalidParameter(format!("duplicate source {s}")));
        }
    }
    let data: Vec<Dist> = sources
        .par_iter()
        .flat_map_iter(|&s| bfs_unchecked(g, s))
        .collect();
    Ok(DistanceMatrix::from_rows(
        sources.to_vec(),
        (0..g.n()).collect(),
        data,
    ))
}

/// Undirected graph with nonnegative integer edge weights.
#[derive(Clone, Debug)]
pub struct WeightedGraph {
    offsets: Vec<usize>,
    arcs: Vec<(u32, Dist)>,
}

impl WeightedGraph {
    /// Builds from `(u, v, w)` triples; each triple is an undirected edge.
    pub fn from_edges(n: usize, edges: &[(usize, usize, i64)]) -> Result<Self> {
        let mut checked = Vec::with_capacity(edges.len());
        for &(u, v, w) in edges {
            for x in [u, v] {
                if x >= n {
                    return Err(Error::InvalidVertex { vertex: x, n });
                }
            }
            if w < 0 {
                return Err(Error::NegativeWeight { u, v, weight: w });
            }
            let w = Dist::try_from(w)
                .ok()
                .filter(|&w| w != INF)
                .ok_or_else(|| Error::InvalidParameter(format!("edge weight {w} too large")))?;
            checked.push((u, v, w));
        }
        Ok(Self::build(n, checked))
    }

    /// Unit-weight copy of an unweighted graph.
    pub fn unit(g: &Graph) -> Self {
        Self::build(g.n(), g.edges().map(|(u, v)| (u, v, 1)).collect())
    }

    /// Unit-weight edges given as pairs; ids must already be valid.
    pub(crate) fn unit_from_pairs(
        n: usize,
        pairs: impl IntoIterator<Item = (usize, usize)>,
    ) -> Self {
        Self::build(n, pairs.into_iter().map(|(u, v)| (u, v, 1)).collect())
    }

    fn build(n: usize, edges: Vec<(usize, usize, Dist)>) -> Self {
        let mut offsets = vec![0usize; n + 1];
        for &(u, v, _) in &edges {
            offsets[u + 1] += 1;
            if u != v {
                offsets[v + 1] += 1;
            }
        }
        for i in 0..n {
            offsets[i + 1] += offsets[i];
        }
        let mut fill = offsets.clone();
        let mut arcs = vec![(0u32, 0 as Dist); offsets[n]];
        for (u, v, w) in edges {
            arcs[fill[u]] = (v as u32, w);
            fill[u] += 1;
            if u != v {
                arcs[fill[v]] = (u as u32, w);
                fill[v] += 1;
            }
        }
        WeightedGraph { offsets, arcs }
    }

    pub fn n(&self) -> usize {
        self.offsets.len() - 1
    }

    /// Number of stored undirected edges.
    pub fn edge_count(&self) -> usize {
        self.arcs.len() / 2
    }

    #[inline]
    pub fn arcs(&self, v: usize) -> &[(u32, Dist)] {
        &self.arcs[self.offsets[v]..self.offsets[v + 1]]
    }
}

/// Weighted shortcut edges leaving a single source vertex.
#[derive(Clone, Debug, Default)]
pub struct VirtualEdgeList {
    source: usize,
    edges: Vec<(u32, Dist)>,
}

impl VirtualEdgeList {
    pub fn new(source: usize) -> Self {
        VirtualEdgeList {
            source,
            edges: Vec::new(),
        }
    }

    pub fn source(&self) -> usize {
        self.source
    }

    /// Adds `source -> target` with `weight`; `INF` weights are skipped.
    pub fn push(&mut self, target: usize, weight: Dist) {
        if weight != INF {
            self.edges.push((target as u32, weight));
        }
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn edges(&self) -> &[(u32, Dist)] {
        &self.edges
    }
}

/// Single-source shortest distances from `overlay.source()` in `graph`
/// augmented with the overlay's virtual edges.
pub fn dijkstra_overlay(graph: &WeightedGraph, overlay: &VirtualEdgeList) -> Result<Vec<Dist>> {
    let n = graph.n();
    if overlay.source >= n {
        return Err(Error::InvalidVertex {
            vertex: overlay.source,
            n,
        });
    }
    if let Some(&(t, _)) = overlay.edges.iter().find(|&&(t, _)| t as usize >= n) {
        return Err(Error::InvalidVertex {
            vertex: t as usize,
            n,
        });
    }
    Ok(dijkstra_unchecked(graph, overlay))
}

pub(crate) fn dijkstra_unchecked(graph: &WeightedGraph, overlay: &VirtualEdgeList) -> Vec<Dist> {
    let n = graph.n();
    let mut dist = vec![INF; n];
    let mut heap = BinaryHeap::with_capacity(overlay.edges.len() + 1);
    dist[overlay.source] = 0;
    heap.push(Reverse((0 as Dist, overlay.source as u32)));
    for &(t, w) in &overlay.edges {
        if w < dist[t as usize] {
            dist[t as usize] = w;
            heap.push(Reverse((w, t)));
        }
    }
    while let Some(Reverse((du, u))) = heap.pop() {
        if du > dist[u as usize] {
            continue;
        }
        for &(v, w) in graph.arcs(u as usize) {
            let cand = du.saturating_add(w);
            if cand < dist[v as usize] {
                dist[v as usize] = cand;
                heap.push(Reverse((cand, v)));
            }
        }
    }
    dist
}
