//! Deterministic hitting sets and the bounded-diameter cluster decomposition.

use std::cmp::Reverse;
use std::collections::BinaryHeap;

use crate::error::{Error, Result};
use crate::graph::Graph;

/// Vertex set dominating every vertex whose degree reaches `threshold`.
///
/// Coverage is by closed neighborhood: a target is covered when it is in the
/// set or has a neighbor in it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HittingSet {
    vertices: Vec<usize>,
    threshold: usize,
}

impl HittingSet {
    /// Sorted member list.
    pub fn vertices(&self) -> &[usize] {
        &self.vertices
    }

    pub fn threshold(&self) -> usize {
        self.threshold
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn membership(&self, n: usize) -> Vec<bool> {
        Self::mask(&self.vertices, n)
    }

    pub(crate) fn mask(vertices: &[usize], n: usize) -> Vec<bool> {
        let mut mask = vec![false; n];
        for &v in vertices {
            mask[v] = true;
        }
        mask
    }

    pub(crate) fn from_sorted(vertices: Vec<usize>, threshold: usize) -> Self {
        debug_assert!(vertices.windows(2).all(|w| w[0] < w[1]));
        HittingSet {
            vertices,
            threshold,
        }
    }

    /// Every `v` with `degrees[v] >= threshold` is in the set or adjacent to it in `g`.
    pub fn covers(&self, g: &Graph, degrees: &[usize]) -> bool {
        let member = self.membership(g.n());
        (0..g.n()).all(|v| {
            degrees[v] < self.threshold
                || member[v]
                || g.neighbors(v).iter().any(|&w| member[w as usize])
        })
    }

    /// Smallest-id member in the closed neighborhood of `v`, if any.
    pub(crate) fn hitter_of(member: &[bool], g: &Graph, v: usize) -> Option<usize> {
        let nb = g
            .neighbors(v)
            .iter()
            .map(|&w| w as usize)
            .find(|&w| member[w]);
        match (member[v], nb) {
            (true, Some(w)) => Some(v.min(w)),
            (true, None) => Some(v),
            (false, nb) => nb,
        }
    }
}

/// Greedy hitting set for the vertices of degree `>= d` in `g`.
pub fn greedy_hitting_set(g: &Graph, d: usize) -> Result<HittingSet> {
    if d == 0 || d > g.n() {
        return Err(Error::InvalidParameter(format!(
            "hitting-set threshold {d} outside [1, {}]",
            g.n()
        )));
    }
    Ok(hitting_set_within(g, &g.degrees(), d))
}

/// Greedy hitting set where targets are chosen by an external degree table
/// (`degrees[v] >= d`) and coverage uses the adjacency of `g`.
///
/// Repeatedly takes the vertex whose closed neighborhood holds the most
/// uncovered targets, smallest id first on ties.
pub fn hitting_set_within(g: &Graph, degrees: &[usize], d: usize) -> HittingSet {
    let n = g.n();
    let is_target: Vec<bool> = (0..n).map(|v| degrees[v] >= d).collect();
    let mut remaining = is_target.iter().filter(|&&t| t).count();
    let mut covered = vec![false; n];
    let mut gain: Vec<usize> = (0..n)
        .map(|v| {
            usize::from(is_target[v])
                + g.neighbors(v)
                    .iter()
                    .filter(|&&w| is_target[w as usize])
                    .count()
        })
        .collect();

    let mut heap: BinaryHeap<(usize, Reverse<usize>)> = (0..n)
        .filter(|&v| gain[v] > 0)
        .map(|v| (gain[v], Reverse(v)))
        .collect();
    let mut chosen = Vec::new();

    while remaining > 0 {
        let (stored, Reverse(v)) = heap.pop().expect("uncovered targets imply positive gain");
        if stored != gain[v] {
            if gain[v] > 0 {
                heap.push((gain[v], Reverse(v)));
            }
            continue;
        }
        chosen.push(v);
        let closed = std::iter::once(v).chain(g.neighbors(v).iter().map(|&w| w as usize));
        for t in closed {
            if is_target[t] && !covered[t] {
                covered[t] = true;
                remaining -= 1;
                gain[t] -= 1;
                for &w in g.neighbors(t) {
                    gain[w as usize] -= 1;
                }
            }
        }
    }
    chosen.sort_unstable();
    HittingSet {
        vertices: chosen,
        threshold: d,
    }
}

/// Partition of the vertex set into bounded-diameter clusters and a
/// low-degree remainder.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Decomposition {
    clusters: Vec<Vec<usize>>,
    remainder: Vec<usize>,
    threshold: usize,
}

impl Decomposition {
    pub fn clusters(&self) -> &[Vec<usize>] {
        &self.clusters
    }

    /// Sorted remainder vertices.
    pub fn remainder(&self) -> &[usize] {
        &self.remainder
    }

    pub fn threshold(&self) -> usize {
        self.threshold
    }

    pub fn in_remainder(&self, n: usize) -> Vec<bool> {
        let mut mask = vec![false; n];
        for &r in &self.remainder {
            mask[r] = true;
        }
        mask
    }

    /// Clustered vertices, cluster by cluster.
    pub fn clustered(&self) -> Vec<usize> {
        self.clusters.iter().flatten().copied().collect()
    }
}

/// Two-phase cluster decomposition with threshold `d`.
///
/// Phase one repeatedly removes the closed residual neighborhood of the
/// smallest-id vertex whose residual degree is at least `d`. Phase two lets
/// each cluster, in creation order, absorb its remaining neighbors. The
/// leftover vertices form the remainder and all have degree `< d` in `g`.
pub fn decompose(g: &Graph, d: usize) -> Decomposition {
    let n = g.n();
    let mut alive = vec![true; n];
    let mut residual = g.degrees();
    let mut cores: Vec<Vec<usize>> = Vec::new();

    // Residual degrees only decrease, so one ascending sweep finds every pivot.
    for u in 0..n {
        if !alive[u] || residual[u] < d {
            continue;
        }
        let mut core = vec![u];
        core.extend(
            g.neighbors(u)
                .iter()
                .map(|&w| w as usize)
                .filter(|&w| alive[w]),
        );
        for &x in &core {
            alive[x] = false;
        }
        for &x in &core {
            for &y in g.neighbors(x) {
                if alive[y as usize] {
                    residual[y as usize] -= 1;
                }
            }
        }
        cores.push(core);
    }

    let clusters = cores
        .into_iter()
        .map(|core| {
            let mut cluster = core.clone();
            for &x in &core {
                for &y in g.neighbors(x) {
                    let y = y as usize;
                    if alive[y] {
                        alive[y] = false;
                        cluster.push(y);
                    }
                }
            }
            cluster
        })
        .collect();

    Decomposition {
        clusters,
        remainder: (0..n).filter(|&v| alive[v]).collect(),
        threshold: d,
    }
}

/// Splits every cluster larger than `2(d + 1)` into `floor(s / (d + 1))`
/// balanced contiguous parts, so all sizes land in `(d, 2(d + 1)]`.
pub fn split_clusters(dec: &Decomposition, d: usize) -> Decomposition {
    let cap = 2 * (d + 1);
    let mut clusters = Vec::with_capacity(dec.clusters.len());
    for cluster in &dec.clusters {
        let s = cluster.len();
        if s <= cap {
            clusters.push(cluster.clone());
            continue;
        }
        let parts = s / (d + 1);
        let (base, extra) = (s / parts, s % parts);
        let mut start = 0;
        for p in 0..parts {
            let len = base + usize::from(p < extra);
            clusters.push(cluster[start..start + len].to_vec());
            start += len;
        }
    }
    Decomposition {
        clusters,
        remainder: dec.remainder.clone(),
        threshold: dec.threshold,
    }
}
