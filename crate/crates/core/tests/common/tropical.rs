use apsp_core::minplus::{GroupedInstance, MinPlusMatrix};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub const INF: i64 = MinPlusMatrix::INF;

/// Triple loop written independently of the library.
pub fn oracle(a: &MinPlusMatrix, b: &MinPlusMatrix) -> MinPlusMatrix {
    let mut out = vec![vec![INF; b.cols()]; a.rows()];
    for (i, row) in out.iter_mut().enumerate() {
        for (j, slot) in row.iter_mut().enumerate() {
            for k in 0..a.cols() {
                let (x, y) = (a.get(i, k), b.get(k, j));
                if x != INF && y != INF {
                    *slot = (*slot).min(x + y);
                }
            }
        }
    }
    MinPlusMatrix::from_rows(&out)
}

pub fn random_bounded(rng: &mut ChaCha8Rng, rows: usize, cols: usize, l: i64) -> MinPlusMatrix {
    MinPlusMatrix::from_fn(rows, cols, |_, _| {
        if rng.gen_bool(0.2) {
            INF
        } else {
            rng.gen_range(0..=l)
        }
    })
}

/// A grouped instance: each group follows a random base value per inner index,
/// members jitter by at most `l`, and some group columns are absent.
pub fn random_grouped(
    rng: &mut ChaCha8Rng,
    h: usize,
    d: usize,
    s: usize,
    l: i64,
    q: usize,
    u: i64,
) -> GroupedInstance {
    let mut side = |rows: usize, cols: usize, transpose: bool| {
        let base: Vec<Vec<i64>> = (0..h)
            .map(|_| {
                (0..s)
                    .map(|_| {
                        if rng.gen_bool(0.15) {
                            INF
                        } else {
                            rng.gen_range(-u..=u - l)
                        }
                    })
                    .collect()
            })
            .collect();
        let mut m = MinPlusMatrix::filled(rows, cols, INF);
        for g in 0..h {
            for k in 0..s {
                if base[g][k] == INF {
                    continue;
                }
                for x in g * d..(g + 1) * d {
                    let v = base[g][k] + rng.gen_range(0..=l);
                    if transpose {
                        m.set(k, x, v);
                    } else {
                        m.set(x, k, v);
                    }
                }
            }
        }
        m
    };
    let a = side(h * d, s, false);
    let b = side(s, h * d, true);
    GroupedInstance::new(a, b, d, l, q).unwrap()
}

/// Inner indices whose coarse sums sit exactly 7 above the optimum are false
/// positives modulo 7; with more of them than the budget, every group pair
/// is deferred and must be finished by brute force.
pub fn adversarial_instance() -> GroupedInstance {
    let (h, d, s, l) = (2, 3, 40, 4);
    let a = MinPlusMatrix::from_fn(h * d, s, |i, k| {
        if k < 20 {
            (i % 2) as i64
        } else {
            28 + (i % 3) as i64
        }
    });
    let b = MinPlusMatrix::from_fn(s, h * d, |k, j| {
        if k < 20 {
            (j % 2) as i64
        } else {
            (j % 4) as i64
        }
    });
    GroupedInstance::new(a, b, d, l, 64).unwrap()
}
