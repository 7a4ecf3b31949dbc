//! Deterministic inputs shared by the benchmarks.

use apsp_core::harness::{generate, Family, GenSpec};
use apsp_core::matmul::BoolMatrix;
use apsp_core::minplus::{GroupedInstance, MinPlusMatrix};
use apsp_core::Graph;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn er_graph(n: usize, p: f64, seed: u64) -> Graph {
    generate(&GenSpec::new(Family::ErdosRenyi { p }, n).with_seed(seed)).expect("valid spec")
}

pub fn random_bool(rows: usize, cols: usize, density: f64, seed: u64) -> BoolMatrix {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    BoolMatrix::from_fn(rows, cols, |_, _| rng.gen_bool(density))
}

/// Entries in `[0, bound]`, about a tenth of them infinite.
pub fn bounded_minplus(rows: usize, cols: usize, bound: i64, seed: u64) -> MinPlusMatrix {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    MinPlusMatrix::from_fn(rows, cols, |_, _| {
        if rng.gen_bool(0.1) {
            MinPlusMatrix::INF
        } else {
            rng.gen_range(0..=bound)
        }
    })
}

/// Rows with a random offset each and spread at most `range`.
pub fn shifted_rows(rows: usize, cols: usize, range: i64, seed: u64) -> MinPlusMatrix {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let offsets: Vec<i64> = (0..rows).map(|_| rng.gen_range(0..1000)).collect();
    MinPlusMatrix::from_fn(rows, cols, |k, _| offsets[k] + rng.gen_range(0..=range))
}

/// `h` groups of `d` rows over `s` inner indices; members of a group differ
/// by at most `range` from a shared base.
pub fn grouped_instance(
    h: usize,
    d: usize,
    s: usize,
    range: i64,
    q: usize,
    seed: u64,
) -> GroupedInstance {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut side = |transpose: bool| {
        let base: Vec<i64> = (0..h * s).map(|_| rng.gen_range(0..500)).collect();
        let mut m = if transpose {
            MinPlusMatrix::filled(s, h * d, 0)
        } else {
            MinPlusMatrix::filled(h * d, s, 0)
        };
        for x in 0..h * d {
            for k in 0..s {
                let v = base[(x / d) * s + k] + rng.gen_range(0..=range);
                if transpose {
                    m.set(k, x, v);
                } else {
                    m.set(x, k, v);
                }
            }
        }
        m
    };
    let a = side(false);
    let b = side(true);
    GroupedInstance::new(a, b, d, range, q).expect("valid grouped instance")
}
