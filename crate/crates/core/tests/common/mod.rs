#![allow(dead_code, clippy::needless_range_loop)]

pub mod tropical;

use std::collections::VecDeque;

use apsp_core::{DistanceMatrix, Graph, INF};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn er(n: usize, p: f64, seed: u64) -> Graph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p) {
                edges.push((u, v));
            }
        }
    }
    Graph::from_edges(n, edges).unwrap()
}

pub fn path(n: usize) -> Graph {
    Graph::from_edges(n, (1..n).map(|v| (v - 1, v))).unwrap()
}

pub fn star(n: usize) -> Graph {
    Graph::from_edges(n, (1..n).map(|v| (0, v))).unwrap()
}

pub fn complete(n: usize) -> Graph {
    Graph::from_edges(n, (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)))).unwrap()
}

pub fn random_tree(n: usize, seed: u64) -> Graph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    Graph::from_edges(n, (1..n).map(|v| (rng.gen_range(0..v), v))).unwrap()
}

/// A few dense communities joined by sparse random edges.
pub fn communities(n: usize, parts: usize, p_in: f64, p_out: f64, seed: u64) -> Graph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            let p = if u % parts == v % parts { p_in } else { p_out };
            if rng.gen_bool(p) {
                edges.push((u, v));
            }
        }
    }
    Graph::from_edges(n, edges).unwrap()
}

/// Floyd–Warshall over the adjacency lists.
pub fn floyd_warshall(g: &Graph) -> Vec<Vec<u32>> {
    let n = g.n();
    let mut d = vec![vec![INF; n]; n];
    for u in 0..n {
        d[u][u] = 0;
        for &v in g.neighbors(u) {
            d[u][v as usize] = 1;
        }
    }
    for k in 0..n {
        for i in 0..n {
            if d[i][k] == INF {
                continue;
            }
            for j in 0..n {
                if d[k][j] != INF && d[i][k] + d[k][j] < d[i][j] {
                    d[i][j] = d[i][k] + d[k][j];
                }
            }
        }
    }
    d
}

/// Shortest walk lengths through vertices of degree `<= 2D` that visit at
/// least one vertex of degree in `[D, 2D]`, by BFS over (vertex, hub seen).
pub fn class_distances(g: &Graph, big_d: usize) -> Vec<Vec<u32>> {
    let n = g.n();
    let deg = g.degrees();
    let allowed: Vec<bool> = deg.iter().map(|&x| x <= 2 * big_d).collect();
    let hub: Vec<bool> = deg.iter().map(|&x| x >= big_d && x <= 2 * big_d).collect();
    let mut out = vec![vec![INF; n]; n];
    for u in 0..n {
        if !allowed[u] {
            continue;
        }
        let mut dist = vec![[INF; 2]; n];
        let start = usize::from(hub[u]);
        dist[u][start] = 0;
        let mut queue = VecDeque::from([(u, start)]);
        while let Some((x, seen)) = queue.pop_front() {
            let dx = dist[x][seen];
            for &y in g.neighbors(x) {
                let y = y as usize;
                if !allowed[y] {
                    continue;
                }
                let s = seen | usize::from(hub[y]);
                if dist[y][s] == INF {
                    dist[y][s] = dx + 1;
                    queue.push_back((y, s));
                }
            }
        }
        for v in 0..n {
            out[u][v] = dist[v][1];
        }
    }
    out
}

/// Distances in the subgraph induced by the vertices of degree `<= d`; a
/// pair whose value matches the true distance has a shortest path through
/// low-degree vertices only.
pub fn low_degree_distances(g: &Graph, d: usize) -> Vec<Vec<u32>> {
    let deg = g.degrees();
    let sub = g.filter_edges(|u, v| deg[u] <= d && deg[v] <= d);
    (0..g.n())
        .map(|u| {
            if deg[u] > d {
                let mut row = vec![INF; g.n()];
                row[u] = 0;
                row
            } else {
                apsp_core::graph::bfs_from(&sub, u).unwrap()
            }
        })
        .collect()
}

pub fn as_rows(m: &DistanceMatrix) -> Vec<Vec<u32>> {
    m.rows().map(<[u32]>::to_vec).collect()
}

/// Worst excess of `est` over `truth` and whether any entry underestimates
/// or disagrees on reachability.
pub fn audit(est: &DistanceMatrix, truth: &[Vec<u32>]) -> (u32, Vec<(usize, usize, u32, u32)>) {
    let mut worst = 0;
    let mut bad = Vec::new();
    for (u, row) in truth.iter().enumerate() {
        for (v, &t) in row.iter().enumerate() {
            let e = est.get(u, v);
            if t == INF {
                if e != INF {
                    bad.push((u, v, e, t));
                }
            } else if e == INF || e < t {
                bad.push((u, v, e, t));
            } else {
                worst = worst.max(e - t);
            }
        }
    }
    (worst, bad)
}

/// Asserts `truth <= est` everywhere and `est <= bound_of + slack` where
/// `bound_of` is finite.
pub fn assert_sandwich(
    est: &DistanceMatrix,
    truth: &[Vec<u32>],
    bound_of: &[Vec<u32>],
    slack: u32,
) {
    for (u, row) in truth.iter().enumerate() {
        for (v, &t) in row.iter().enumerate() {
            let e = est.get(u, v);
            assert!(e >= t, "underestimate at ({u}, {v}): {e} < {t}");
            let b = bound_of[u][v];
            if b != INF {
                assert!(e <= b + slack, "({u}, {v}): {e} > {b} + {slack}");
            }
        }
    }
}

/// Audits the pre-split decomposition invariants against full-graph BFS.
pub fn check_decomposition(
    g: &Graph,
    dec: &apsp_core::sampling::Decomposition,
    d: usize,
) -> Result<(), String> {
    let n = g.n();
    let mut owner = vec![usize::MAX; n];
    for (c, cluster) in dec.clusters().iter().enumerate() {
        if cluster.len() <= d {
            return Err(format!("cluster {c} has {} <= {d} vertices", cluster.len()));
        }
        for &v in cluster {
            if owner[v] != usize::MAX {
                return Err(format!("vertex {v} in two parts"));
            }
            owner[v] = c;
        }
        for &u in cluster {
            let dist = apsp_core::graph::bfs_from(g, u).unwrap();
            if let Some(&v) = cluster.iter().find(|&&v| dist[v] > 4) {
                return Err(format!("cluster {c}: d({u}, {v}) = {}", dist[v]));
            }
        }
    }
    for &r in dec.remainder() {
        if owner[r] != usize::MAX {
            return Err(format!("vertex {r} in a cluster and the remainder"));
        }
        owner[r] = usize::MAX - 1;
        if g.degree(r) >= d {
            return Err(format!(
                "remainder vertex {r} has degree {} >= {d}",
                g.degree(r)
            ));
        }
    }
    match owner.iter().position(|&o| o == usize::MAX) {
        Some(v) => Err(format!("vertex {v} missing from the partition")),
        None => Ok(()),
    }
}

/// Closed-neighborhood coverage of the degree-`>= d` vertices, and the size bound.
pub fn check_hitting_set(g: &Graph, set: &[usize], d: usize) -> Result<(), String> {
    let n = g.n();
    let mut member = vec![false; n];
    for &s in set {
        member[s] = true;
    }
    for v in 0..n {
        if g.degree(v) >= d && !member[v] && !g.neighbors(v).iter().any(|&w| member[w as usize]) {
            return Err(format!("vertex {v} of degree {} not hit", g.degree(v)));
        }
    }
    let limit = 4.0 * n as f64 * (n as f64).ln() / d as f64;
    if set.len() as f64 > limit.max(1.0) {
        return Err(format!("{} hitters exceed {limit:.1}", set.len()));
    }
    Ok(())
}
