//! Additive-error APSP: the sparse `+2k` baseline, the cluster-based `+2`
//! algorithms, the `+2k` hierarchy, and the degree-class drivers that
//! combine them.

mod hierarchy;
mod plus2;

pub use hierarchy::{
    dhz_sparse_apsp, dhz_thresholds, generalize_thresholds, generalize_to_k, sparse_restricted_apsp,
};
pub use plus2::{
    extend_to_all, plus2_from_subset, plus2_grouped, plus2_percluster, RemainderOverlay,
};

use std::fmt;

use crate::error::{Error, Result};
use crate::graph::{DistanceMatrix, Graph};
use crate::matmul::MMCostModel;
use crate::sampling::{hitting_set_within, HittingSet};

/// Exact distances by one breadth-first search per vertex.
pub fn exact_apsp_oracle(g: &Graph) -> DistanceMatrix {
    g.exact_apsp()
}

/// The slice of the input that matters for paths whose highest degree lies
/// in `[D, 2D]`: the subgraph induced by the vertices of degree at most `2D`.
///
/// Degrees are kept from the input graph (zero for removed vertices), so
/// thresholds inside the class refer to original degrees while every search
/// runs on the restricted graph.
#[derive(Clone, Debug)]
pub struct DegreeClass {
    degree: usize,
    graph: Graph,
    degrees: Vec<usize>,
}

impl DegreeClass {
    pub fn new(g: &Graph, degree: usize) -> Result<Self> {
        if degree == 0 {
            return Err(Error::InvalidParameter(
                "degree class D must be at least 1".into(),
            ));
        }
        let cap = 2 * degree;
        let degrees = g
            .degrees()
            .into_iter()
            .map(|x| if x <= cap { x } else { 0 })
            .collect();
        Ok(DegreeClass {
            degree,
            graph: g.restrict_to_max_degree(cap),
            degrees,
        })
    }

    /// `D`.
    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    /// Input-graph degrees of the surviving vertices; zero for removed ones.
    pub fn degrees(&self) -> &[usize] {
        &self.degrees
    }

    /// Whether some vertex has degree in `[D, 2D]`.
    pub fn is_populated(&self) -> bool {
        self.degrees.iter().any(|&x| x >= self.degree)
    }

    /// Vertices dominating every class vertex of degree `>= threshold`.
    pub fn hitting_set(&self, threshold: usize) -> HittingSet {
        hitting_set_within(&self.graph, &self.degrees, threshold)
    }
}

/// Powers of two `1, 2, 4, ..., 2^ceil(log2 n)`.
pub fn degree_classes(n: usize) -> Vec<usize> {
    if n == 0 {
        return Vec::new();
    }
    let top = n.next_power_of_two();
    std::iter::successors(Some(1usize), |&d| (d < top).then_some(2 * d)).collect()
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum BranchPolicy {
    /// Per class, whichever branch the cost model predicts to be cheaper.
    #[default]
    Auto,
    Sparse,
    /// Cluster-based branch wherever its parameters are feasible (`D >= 2`).
    Matrix,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Plus2Variant {
    /// Per-cluster shifted products.
    Warmup,
    /// One grouped product over all clusters.
    #[default]
    Fast,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Branch {
    Sparse,
    Matrix,
}

/// Parameters for one degree class.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct AlgoParams {
    /// Class lower bound `D`.
    pub degree: usize,
    /// Cluster threshold, `1 <= d < D`.
    pub d: usize,
    pub q: usize,
    /// Subset threshold for `+2k`, `delta <= D`.
    pub delta: usize,
    pub k: usize,
}

impl fmt::Display for AlgoParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "D={} d={} q={} delta={} k={}",
            self.degree, self.d, self.q, self.delta, self.k
        )
    }
}

/// User overrides; each replaces the policy's formula where set.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct ParamOverrides {
    /// Classes with `D` at or above this use the matrix branch, below it the sparse one.
    pub crossover: Option<usize>,
    pub d: Option<usize>,
    pub q: Option<usize>,
    pub delta: Option<usize>,
}

/// How the drivers pick a branch and its parameters for each degree class.
#[derive(Clone, Debug, Default)]
pub struct ParamPolicy {
    pub model: MMCostModel,
    pub branch: BranchPolicy,
    pub variant: Plus2Variant,
    pub overrides: ParamOverrides,
    pub seed: u64,
}

impl ParamPolicy {
    pub fn with_branch(branch: BranchPolicy) -> Self {
        ParamPolicy {
            branch,
            ..Self::default()
        }
    }

    /// `+2` parameters for class `D`: `d = (n/D)^((w-1)/(5-w))`,
    /// `q = (n/(D d))^((3-w)/2)`, floors of 2 and 1, `d < D`.
    /// `None` when no valid `d` exists.
    pub fn plus2_params(&self, n: usize, degree: usize) -> Option<AlgoParams> {
        if degree < 2 {
            return None;
        }
        let w = self.model.omega();
        let ratio = n as f64 / degree as f64;
        let d = self
            .overrides
            .d
            .unwrap_or_else(|| hierarchy::ceil_pow(ratio, (w - 1.0) / (5.0 - w)).max(2))
            .clamp(1, degree - 1);
        let q = self.overrides.q.unwrap_or_else(|| {
            let x = (n as f64 / (degree * d) as f64)
                .max(1.0)
                .powf((3.0 - w) / 2.0);
            (x.round() as usize).max(1)
        });
        Some(AlgoParams {
            degree,
            d,
            q: q.max(1),
            delta: degree,
            k: 1,
        })
    }

    /// Exponent `x` solving `1 + x = w(1 - (k-1)x/(k+1), 1 - x, kx/(k+1))`.
    pub fn plus2k_exponent(&self, k: usize) -> f64 {
        let kf = k as f64;
        let gap = |x: f64| {
            self.model.exponent(
                1.0 - (kf - 1.0) * x / (kf + 1.0),
                1.0 - x,
                kf * x / (kf + 1.0),
            ) - 1.0
                - x
        };
        let (mut lo, mut hi) = (0.0, 1.0);
        for _ in 0..80 {
            let mid = 0.5 * (lo + hi);
            if gap(mid) > 0.0 {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        0.5 * (lo + hi)
    }

    /// `+2k` parameters for class `D`: `delta = n^((k-1)x/(k+1))` capped at
    /// `D`, `d = n^(kx/(k+1))` capped below `D`, floors of 2.
    pub fn plus2k_params(&self, n: usize, degree: usize, k: usize) -> Option<AlgoParams> {
        if degree < 2 || k < 2 {
            return None;
        }
        let x = self.plus2k_exponent(k);
        let kf = k as f64;
        let nf = n as f64;
        let delta = self
            .overrides
            .delta
            .unwrap_or_else(|| hierarchy::ceil_pow(nf, (kf - 1.0) * x / (kf + 1.0)).max(2))
            .clamp(1, degree);
        let d = self
            .overrides
            .d
            .unwrap_or_else(|| hierarchy::ceil_pow(nf, kf * x / (kf + 1.0)).max(2))
            .clamp(1, degree - 1);
        Some(AlgoParams {
            degree,
            d,
            q: self.overrides.q.unwrap_or(1).max(1),
            delta,
            k,
        })
    }

    /// Predicted cost of the sparse branch, `n^2 D^(1/(k+1))`.
    pub fn sparse_cost(&self, n: usize, degree: usize, k: usize) -> f64 {
        let nf = n as f64;
        nf * nf * (degree as f64).powf(1.0 / (k + 1) as f64)
    }

    /// Predicted cost of the matrix branch.
    pub fn matrix_cost(&self, n: usize, p: &AlgoParams) -> f64 {
        let (nf, big_d, d) = (n as f64, p.degree as f64, p.d as f64);
        let w = self.model.omega();
        if p.k >= 2 {
            let delta = p.delta as f64;
            let subset = nf / delta;
            return nf * nf * delta.powf(1.0 / (p.k - 1) as f64)
                + subset * nf * d
                + nf / d * self.model.predict_cost(subset, nf / big_d, d);
        }
        match self.variant {
            Plus2Variant::Warmup => {
                nf * nf * d + nf / d * self.model.predict_cost(nf, nf / big_d, d)
            }
            Plus2Variant::Fast => {
                nf * nf * d
                    + nf.powi(3) / (d * d * big_d)
                    + (nf.powf(3.0 + w) / (big_d.powf(w - 1.0) * d.powf(3.0 - w))).sqrt()
            }
        }
    }

    pub fn choose_branch(&self, n: usize, params: Option<&AlgoParams>) -> Branch {
        let Some(p) = params else {
            return Branch::Sparse;
        };
        match self.branch {
            BranchPolicy::Sparse => Branch::Sparse,
            BranchPolicy::Matrix => Branch::Matrix,
            BranchPolicy::Auto => {
                let matrix = match self.overrides.crossover {
                    Some(c) => p.degree >= c,
                    None => self.matrix_cost(n, p) < self.sparse_cost(n, p.degree, p.k),
                };
                if matrix {
                    Branch::Matrix
                } else {
                    Branch::Sparse
                }
            }
        }
    }

    fn class_seed(&self, degree: usize) -> u64 {
        self.seed ^ (degree as u64).rotate_left(32)
    }
}

/// What a driver did for one populated degree class.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassRun {
    pub degree: usize,
    pub branch: Branch,
    pub params: Option<AlgoParams>,
}

impl fmt::Display for ClassRun {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.branch, &self.params) {
            (Branch::Matrix, Some(p)) => write!(f, "matrix[{p}]"),
            _ => write!(f, "sparse[D={}]", self.degree),
        }
    }
}

fn drive(
    g: &Graph,
    k: usize,
    policy: &ParamPolicy,
    mut run_class: impl FnMut(&DegreeClass, Branch, Option<&AlgoParams>) -> Result<DistanceMatrix>,
) -> Result<(DistanceMatrix, Vec<ClassRun>)> {
    let n = g.n();
    let mut est = DistanceMatrix::square_inf(n);
    let mut trace = Vec::new();
    for degree in degree_classes(n) {
        let class = DegreeClass::new(g, degree)?;
        if !class.is_populated() {
            continue;
        }
        let params = if k == 1 {
            policy.plus2_params(n, degree)
        } else {
            policy.plus2k_params(n, degree, k)
        };
        let branch = policy.choose_branch(n, params.as_ref());
        let part = match branch {
            Branch::Sparse => sparse_restricted_apsp(g, 2 * degree, k)?,
            Branch::Matrix => run_class(&class, branch, params.as_ref())?,
        };
        est.min_assign(&part);
        trace.push(ClassRun {
            degree,
            branch,
            params,
        });
    }
    est.symmetrize_min();
    est.set_diagonal_zero();
    Ok((est, trace))
}

/// `+2` APSP over all pairs, with a per-class record of the branches taken.
pub fn plus2_apsp_traced(
    g: &Graph,
    policy: &ParamPolicy,
) -> Result<(DistanceMatrix, Vec<ClassRun>)> {
    drive(g, 1, policy, |class, _, params| {
        let p = params.expect("matrix branch implies parameters");
        match policy.variant {
            Plus2Variant::Warmup => plus2_percluster(class, p.d),
            Plus2Variant::Fast => plus2_grouped(class, p.d, p.q, policy.class_seed(p.degree)),
        }
    })
}

/// `+2` APSP: `d <= estimate <= d + 2` for every pair.
pub fn plus2_apsp(g: &Graph, policy: &ParamPolicy) -> Result<DistanceMatrix> {
    plus2_apsp_traced(g, policy).map(|(est, _)| est)
}

/// `+2k` APSP over all pairs, with a per-class record of the branches taken.
pub fn plus2k_apsp_traced(
    g: &Graph,
    k: usize,
    policy: &ParamPolicy,
) -> Result<(DistanceMatrix, Vec<ClassRun>)> {
    if k < 2 {
        return Err(Error::InvalidParameter(format!(
            "plus2k needs k >= 2, got {k}; use the +2 algorithms for k = 1"
        )));
    }
    drive(g, k, policy, |class, _, params| {
        let p = params.expect("matrix branch implies parameters");
        let subset = class.hitting_set(p.delta).vertices().to_vec();
        let partial = plus2_from_subset(class, &subset, p.d)?;
        generalize_to_k(class, &subset, p.delta, &partial, k)
    })
}

/// `+2k` APSP: `d <= estimate <= d + 2k` for every pair.
pub fn plus2k_apsp(g: &Graph, k: usize, policy: &ParamPolicy) -> Result<DistanceMatrix> {
    plus2k_apsp_traced(g, k, policy).map(|(est, _)| est)
}
