use rayon::prelude::*;

use super::DegreeClass;
use crate::error::{Error, Result};
use crate::graph::search::{bfs_unchecked, dijkstra_unchecked};
use crate::graph::{Dist, DistanceMatrix, Graph, VirtualEdgeList, WeightedGraph, INF};
use crate::sampling::{hitting_set_within, HittingSet};

/// `ceil(base^exp)` for a nonnegative base, at least 1, tolerant of float noise.
pub(crate) fn ceil_pow(base: f64, exp: f64) -> usize {
    let x = base.max(0.0).powf(exp);
    ((x - 1e-9).ceil() as usize).max(1)
}

/// Default thresholds `d_1..d_k` with `d_i = ceil((m/n)^(i/(k+1)))`.
pub fn dhz_thresholds(g: &Graph, k: usize) -> Vec<usize> {
    let avg = if g.n() == 0 {
        0.0
    } else {
        g.m() as f64 / g.n() as f64
    };
    (1..=k)
        .map(|i| ceil_pow(avg, i as f64 / (k + 1) as f64))
        .collect()
}

/// Search hierarchy: `levels[0] = V` and `levels[i]` dominates the vertices
/// with `degrees >= thresholds[i]`.
struct Hierarchy<'a> {
    graph: &'a Graph,
    degrees: &'a [usize],
    levels: Vec<Vec<usize>>,
    thresholds: Vec<usize>,
}

impl Hierarchy<'_> {
    /// Round `i`: edges with an endpoint of degree `< d_{i+1}`, plus the edge
    /// from every other vertex to its smallest-id hitter in `levels[i+1]`.
    fn round_graph(&self, i: usize) -> WeightedGraph {
        let g = self.graph;
        let t = self.thresholds[i + 1];
        let member = HittingSet::mask(&self.levels[i + 1], g.n());
        let mut pairs: Vec<(usize, usize)> = g
            .edges()
            .filter(|&(u, v)| self.degrees[u] < t || self.degrees[v] < t)
            .collect();
        for x in 0..g.n() {
            if self.degrees[x] >= t {
                if let Some(s) = HittingSet::hitter_of(&member, g, x) {
                    if s != x {
                        pairs.push((x, s));
                    }
                }
            }
        }
        WeightedGraph::unit_from_pairs(g.n(), pairs)
    }

    /// Rounds `top - 1` down to `0`. Each source of a round searches the
    /// round graph plus shortcuts to the next level, weighted by the current
    /// estimates; results are folded in symmetrically.
    fn descend(&self, est: &mut DistanceMatrix, top: usize) {
        for i in (0..top).rev() {
            let wg = self.round_graph(i);
            let hubs = &self.levels[i + 1];
            let snapshot = &*est;
            let rows: Vec<(usize, Vec<Dist>)> = self.levels[i]
                .par_iter()
                .map(|&u| {
                    let mut overlay = VirtualEdgeList::new(u);
                    for &s in hubs {
                        overlay.push(s, snapshot.get(u, s));
                    }
                    (u, dijkstra_unchecked(&wg, &overlay))
                })
                .collect();
            fold_rows(est, rows);
        }
    }
}

pub(crate) fn fold_rows(est: &mut DistanceMatrix, rows: Vec<(usize, Vec<Dist>)>) {
    for (u, row) in rows {
        for (v, &x) in row.iter().enumerate() {
            if x != INF {
                est.lower(u, v, x);
                est.lower(v, u, x);
            }
        }
    }
}

/// Sparse `+2k` APSP: exact searches from the top hitting set, then
/// descending rounds over sparser edge sets with estimate shortcuts.
///
/// `thresholds` holds `d_1..d_k`; by default `d_i = ceil((m/n)^(i/(k+1)))`.
pub fn dhz_sparse_apsp(
    g: &Graph,
    k: usize,
    thresholds: Option<&[usize]>,
) -> Result<DistanceMatrix> {
    if k == 0 {
        return Err(Error::InvalidParameter(
            "approximation level k must be at least 1".into(),
        ));
    }
    let upper = match thresholds {
        Some(t) if t.len() != k || t.contains(&0) => {
            return Err(Error::InvalidParameter(format!(
                "expected {k} positive thresholds, got {t:?}"
            )))
        }
        Some(t) => t.to_vec(),
        None => dhz_thresholds(g, k),
    };
    let n = g.n();
    let degrees = g.degrees();
    let mut thresholds = vec![1];
    thresholds.extend(upper);
    let mut levels = vec![(0..n).collect::<Vec<_>>()];
    for &t in &thresholds[1..] {
        levels.push(hitting_set_within(g, &degrees, t).vertices().to_vec());
    }

    let mut est = DistanceMatrix::square_inf(n);
    let exact: Vec<(usize, Vec<Dist>)> = levels[k]
        .par_iter()
        .map(|&s| (s, bfs_unchecked(g, s)))
        .collect();
    fold_rows(&mut est, exact);

    let hierarchy = Hierarchy {
        graph: g,
        degrees: &degrees,
        levels,
        thresholds,
    };
    hierarchy.descend(&mut est, k);
    est.set_diagonal_zero();
    Ok(est)
}

/// Sparse `+2k` APSP restricted to the edges touching a vertex of degree `<= d`.
pub fn sparse_restricted_apsp(g: &Graph, d: usize, k: usize) -> Result<DistanceMatrix> {
    if d == 0 {
        return Err(Error::InvalidParameter(
            "degree cap must be at least 1".into(),
        ));
    }
    dhz_sparse_apsp(&g.low_degree_edge_subgraph(d), k, None)
}

/// Thresholds `d_0..d_{k-1}` with `d_i = ceil(delta^(i/(k-1)))`, `d_0 = 1`, `d_{k-1} = delta`.
pub fn generalize_thresholds(delta: usize, k: usize) -> Vec<usize> {
    (0..k)
        .map(|i| match i {
            0 => 1,
            i if i == k - 1 => delta,
            i => ceil_pow(delta as f64, i as f64 / (k - 1) as f64),
        })
        .collect()
}

/// Lifts `+2` estimates on `U x V` to `+2k` estimates on `V x V` within a
/// degree class. `U` must dominate the class vertices of degree `>= delta`.
pub fn generalize_to_k(
    class: &DegreeClass,
    subset: &[usize],
    delta: usize,
    estimates: &DistanceMatrix,
    k: usize,
) -> Result<DistanceMatrix> {
    if k < 2 {
        return Err(Error::InvalidParameter(format!(
            "generalize_to_k needs k >= 2, got {k}"
        )));
    }
    if delta == 0 || delta > class.degree() {
        return Err(Error::InvalidParameter(format!(
            "delta {delta} outside [1, {}]",
            class.degree()
        )));
    }
    let g = class.graph();
    let n = g.n();
    if estimates.row_labels() != subset || estimates.ncols() != n {
        return Err(Error::dims(
            (estimates.nrows(), estimates.ncols()),
            (subset.len(), n),
        ));
    }
    for &u in subset {
        g.check_vertex(u)?;
    }
    let degrees = class.degrees();
    let mut sorted = subset.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    let u_set = HittingSet::from_sorted(sorted, delta);
    if !u_set.covers(g, degrees) {
        return Err(Error::InvalidParameter(format!(
            "subset does not dominate the vertices of degree >= {delta}"
        )));
    }

    let thresholds = generalize_thresholds(delta, k);
    let mut levels = vec![(0..n).collect::<Vec<_>>()];
    for &t in &thresholds[1..k - 1] {
        levels.push(hitting_set_within(g, degrees, t).vertices().to_vec());
    }
    levels.push(u_set.vertices().to_vec());

    let mut est = DistanceMatrix::square_inf(n);
    let rows = subset
        .iter()
        .enumerate()
        .map(|(r, &u)| (u, estimates.row(r).to_vec()))
        .collect();
    fold_rows(&mut est, rows);

    let hierarchy = Hierarchy {
        graph: g,
        degrees,
        levels,
        thresholds,
    };
    hierarchy.descend(&mut est, k - 1);
    est.set_diagonal_zero();
    Ok(est)
}
