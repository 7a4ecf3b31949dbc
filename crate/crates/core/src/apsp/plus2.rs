use rayon::prelude::*;

use super::hierarchy::fold_rows;
use super::DegreeClass;
use crate::error::{Error, Result};
use crate::graph::search::dijkstra_unchecked;
use crate::graph::{multi_bfs, Dist, DistanceMatrix, Graph, VirtualEdgeList, WeightedGraph, INF};
use crate::minplus::{minplus_grouped, minplus_shifted, GroupedInstance, MinPlusMatrix};
use crate::sampling::{decompose, split_clusters, Decomposition, HittingSet};

/// Weak diameter bound of a cluster, hence the row range of `d[S, H]`.
const CLUSTER_RANGE: i64 = 4;

/// Search graph for extending estimates to a low-degree remainder `R`: the
/// edges of `g` incident to `R`, with unit weights.
#[derive(Clone, Debug)]
pub struct RemainderOverlay {
    graph: WeightedGraph,
    in_remainder: Vec<bool>,
}

impl RemainderOverlay {
    pub fn new(g: &Graph, remainder: &[usize]) -> Result<Self> {
        let n = g.n();
        for &r in remainder {
            g.check_vertex(r)?;
        }
        let in_remainder = HittingSet::mask(remainder, n);
        let pairs = g
            .edges()
            .filter(|&(u, v)| in_remainder[u] || in_remainder[v]);
        Ok(RemainderOverlay {
            graph: WeightedGraph::unit_from_pairs(n, pairs),
            in_remainder,
        })
    }

    /// Distances from `v` in the overlay graph plus shortcuts `v -> h` of
    /// weight `known[h]` for every `h` outside the remainder, and `v -> a` of
    /// weight `w` for every `(a, w)` in `anchors`. Entries of `known` at
    /// remainder vertices are ignored.
    pub fn extend(
        &self,
        v: usize,
        known: &[Dist],
        anchors: impl IntoIterator<Item = (usize, Dist)>,
    ) -> Vec<Dist> {
        let mut overlay = VirtualEdgeList::new(v);
        for (h, &w) in known.iter().enumerate() {
            if h != v && !self.in_remainder[h] {
                overlay.push(h, w);
            }
        }
        for (a, w) in anchors {
            overlay.push(a, w);
        }
        dijkstra_unchecked(&self.graph, &overlay)
    }
}

/// Extends a source's estimates from `V \ R` to all of `V`.
///
/// `known` has length `n`; only its entries outside `remainder` are read.
/// `anchors` are further exact or upper-bound distances from `v`.
pub fn extend_to_all(
    g: &Graph,
    v: usize,
    remainder: &[usize],
    known: &[Dist],
    anchors: &[(usize, Dist)],
) -> Result<Vec<Dist>> {
    g.check_vertex(v)?;
    if known.len() != g.n() {
        return Err(Error::dims((1, known.len()), (1, g.n())));
    }
    for &(a, _) in anchors {
        g.check_vertex(a)?;
    }
    Ok(RemainderOverlay::new(g, remainder)?.extend(v, known, anchors.iter().copied()))
}

/// Shared state of the `+2` pipelines within one degree class.
struct ClassSetup {
    hubs: Vec<usize>,
    /// Exact class-graph distances, `hubs x V`.
    hub_dist: DistanceMatrix,
    decomposition: Decomposition,
    overlay: RemainderOverlay,
}

impl ClassSetup {
    fn new(class: &DegreeClass, d: usize) -> Result<Self> {
        if d == 0 || d >= class.degree() {
            return Err(Error::InvalidParameter(format!(
                "cluster threshold d = {d} must satisfy 1 <= d < D = {}",
                class.degree()
            )));
        }
        let g = class.graph();
        let hubs = class.hitting_set(class.degree()).vertices().to_vec();
        let hub_dist = multi_bfs(g, &hubs)?;
        let decomposition = split_clusters(&decompose(g, d), d);
        let overlay = RemainderOverlay::new(g, decomposition.remainder())?;
        Ok(ClassSetup {
            hubs,
            hub_dist,
            decomposition,
            overlay,
        })
    }

    fn anchors(&self, v: usize) -> impl Iterator<Item = (usize, Dist)> + '_ {
        self.hubs
            .iter()
            .enumerate()
            .map(move |(i, &s)| (s, self.hub_dist.get(i, v)))
    }

    /// `d[rows, S]` as a tropical matrix.
    fn to_hubs(&self, rows: &[usize]) -> MinPlusMatrix {
        let s = self.hubs.len();
        MinPlusMatrix::from_fn(rows.len(), s, |r, k| to_i64(self.hub_dist.get(k, rows[r])))
    }
}

fn to_i64(d: Dist) -> i64 {
    if d == INF {
        MinPlusMatrix::INF
    } else {
        i64::from(d)
    }
}

fn to_dist(x: i64) -> Dist {
    if x == MinPlusMatrix::INF {
        INF
    } else {
        Dist::try_from(x).expect("distance sums fit")
    }
}

/// `+2` estimates relative to the class on `subset x V`: hub distances
/// combined per cluster through a shifted `(min, +)` product, then extended
/// to the remainder.
pub fn plus2_from_subset(
    class: &DegreeClass,
    subset: &[usize],
    d: usize,
) -> Result<DistanceMatrix> {
    let g = class.graph();
    for &u in subset {
        g.check_vertex(u)?;
    }
    let setup = ClassSetup::new(class, d)?;
    let n = g.n();
    let left = setup.to_hubs(subset);

    let products: Vec<(usize, MinPlusMatrix)> = setup
        .decomposition
        .clusters()
        .par_iter()
        .enumerate()
        .map(|(c, cluster)| {
            let right = setup.to_hubs(cluster).transpose();
            minplus_shifted(&left, &right, CLUSTER_RANGE).map(|prod| (c, prod))
        })
        .collect::<Result<_>>()?;

    let mut est = DistanceMatrix::filled(subset.to_vec(), (0..n).collect(), INF);
    for (c, prod) in products {
        for (j, &h) in setup.decomposition.clusters()[c].iter().enumerate() {
            for r in 0..subset.len() {
                est.set(r, h, to_dist(prod.get(r, j)));
            }
        }
    }

    let rows: Vec<Vec<Dist>> = (0..subset.len())
        .into_par_iter()
        .map(|r| {
            setup
                .overlay
                .extend(subset[r], est.row(r), setup.anchors(subset[r]))
        })
        .collect();
    for (r, row) in rows.into_iter().enumerate() {
        est.row_mut(r).copy_from_slice(&row);
    }
    Ok(est)
}

/// Warm-up `+2` within a degree class: [`plus2_from_subset`] over all of `V`.
pub fn plus2_percluster(class: &DegreeClass, d: usize) -> Result<DistanceMatrix> {
    let all: Vec<usize> = (0..class.graph().n()).collect();
    plus2_from_subset(class, &all, d)
}

/// Faster `+2` within a degree class: one grouped `(min, +)` product over
/// all clustered vertices, then two extension passes.
///
/// Clusters of unequal size are padded to a common group size by repeating
/// their first member; padded rows and columns are discarded.
pub fn plus2_grouped(class: &DegreeClass, d: usize, q: usize, seed: u64) -> Result<DistanceMatrix> {
    if q == 0 {
        return Err(Error::InvalidParameter("q must be at least 1".into()));
    }
    let setup = ClassSetup::new(class, d)?;
    let n = class.graph().n();
    let clusters = setup.decomposition.clusters();
    let mut est = DistanceMatrix::square_inf(n);

    if let Some(width) = clusters.iter().map(Vec::len).max() {
        let padded: Vec<usize> = clusters
            .iter()
            .flat_map(|c| {
                c.iter()
                    .copied()
                    .chain(std::iter::repeat_n(c[0], width - c.len()))
            })
            .collect();
        let left = setup.to_hubs(&padded);
        let right = left.transpose();
        let inst = GroupedInstance::new(left, right, width, CLUSTER_RANGE, q)?;
        let prod = minplus_grouped(&inst, seed)?;
        let real: Vec<(usize, usize)> = clusters
            .iter()
            .enumerate()
            .flat_map(|(c, members)| {
                members
                    .iter()
                    .enumerate()
                    .map(move |(i, &v)| (c * width + i, v))
            })
            .collect();
        for &(i, u) in &real {
            for &(j, v) in &real {
                est.set(u, v, to_dist(prod.get(i, j)));
            }
        }
    }

    let in_remainder = setup.decomposition.in_remainder(n);
    for pass_remainder in [false, true] {
        let snapshot = &est;
        let rows: Vec<(usize, Vec<Dist>)> = (0..n)
            .into_par_iter()
            .filter(|&v| in_remainder[v] == pass_remainder)
            .map(|v| {
                (
                    v,
                    setup.overlay.extend(v, snapshot.row(v), setup.anchors(v)),
                )
            })
            .collect();
        fold_rows(&mut est, rows);
    }
    Ok(est)
}
