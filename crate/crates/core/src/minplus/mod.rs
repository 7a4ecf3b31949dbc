//! Tropical `(min, +)` products: the brute-force reference, the bounded-entry
//! product built on boolean kernels, the shift reduction for matrices with
//! small row ranges, and the grouped product using false positives modulo a
//! random prime.

mod grouped;

pub use grouped::{
    build_quotient_remainder, minplus_grouped, minplus_grouped_with, DecodedCandidate,
    GroupedConfig, GroupedInstance, GroupedStats, QuotientRemainder,
};

use crate::error::{Error, Result};
use crate::graph::{DistanceMatrix, INF};
use crate::matmul::{bool_mm, wideint_mm, BoolMatrix, WideIntMatrix};

/// Dense integer matrix for tropical products; `MinPlusMatrix::INF` marks +infinity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MinPlusMatrix {
    rows: usize,
    cols: usize,
    data: Vec<i64>,
}

impl MinPlusMatrix {
    pub const INF: i64 = i64::MAX;

    pub fn filled(rows: usize, cols: usize, value: i64) -> Self {
        MinPlusMatrix {
            rows,
            cols,
            data: vec![value; rows * cols],
        }
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> i64) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        MinPlusMatrix { rows, cols, data }
    }

    /// From nested rows; every row must have the same length.
    pub fn from_rows(rows: &[Vec<i64>]) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|r| r.len() == cols), "ragged rows");
        MinPlusMatrix {
            rows: rows.len(),
            cols,
            data: rows.concat(),
        }
    }

    /// Converts distances, mapping the distance sentinel to `INF`.
    pub fn from_distances(m: &DistanceMatrix) -> Self {
        MinPlusMatrix {
            rows: m.nrows(),
            cols: m.ncols(),
            data: m
                .entries()
                .iter()
                .map(|&d| if d == INF { Self::INF } else { i64::from(d) })
                .collect(),
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, value: i64) {
        self.data[i * self.cols + j] = value;
    }

    pub fn row(&self, i: usize) -> &[i64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn entries(&self) -> &[i64] {
        &self.data
    }

    pub fn transpose(&self) -> Self {
        MinPlusMatrix::from_fn(self.cols, self.rows, |i, j| self.get(j, i))
    }

    /// Largest finite magnitude, at least 1.
    pub fn max_abs_finite(&self) -> i64 {
        self.data
            .iter()
            .filter(|&&x| x != Self::INF)
            .map(|x| x.abs())
            .max()
            .unwrap_or(0)
            .max(1)
    }
}

#[inline]
pub(crate) fn trop_add(a: i64, b: i64) -> i64 {
    if a == MinPlusMatrix::INF || b == MinPlusMatrix::INF {
        MinPlusMatrix::INF
    } else {
        a + b
    }
}

fn check_inner(a: &MinPlusMatrix, b: &MinPlusMatrix) -> Result<()> {
    if a.cols != b.rows {
        return Err(Error::dims((a.rows, a.cols), (b.rows, b.cols)));
    }
    Ok(())
}

/// `C[i][j] = min_k A[i][k] + B[k][j]` by exhaustive search.
pub fn minplus_bruteforce(a: &MinPlusMatrix, b: &MinPlusMatrix) -> Result<MinPlusMatrix> {
    check_inner(a, b)?;
    let mut c = MinPlusMatrix::filled(a.rows, b.cols, MinPlusMatrix::INF);
    for i in 0..a.rows {
        for k in 0..a.cols {
            let x = a.get(i, k);
            if x == MinPlusMatrix::INF {
                continue;
            }
            for j in 0..b.cols {
                let y = b.get(k, j);
                if y != MinPlusMatrix::INF && x + y < c.get(i, j) {
                    c.set(i, j, x + y);
                }
            }
        }
    }
    Ok(c)
}

/// How the bounded-entry product is carried out.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum BoundedBackend {
    /// One boolean product per pair of entry values.
    #[default]
    Boolean,
    /// Entries encoded as powers of `2^b` with `2^b` above the inner
    /// dimension, multiplied as wide integers.
    Encoded,
}

fn check_bounded(m: &MinPlusMatrix, bound: i64) -> Result<()> {
    for i in 0..m.rows {
        for (j, &x) in m.row(i).iter().enumerate() {
            if x != MinPlusMatrix::INF && !(0..=bound).contains(&x) {
                return Err(Error::EntryOutOfRange {
                    row: i,
                    col: j,
                    value: x,
                    bound,
                });
            }
        }
    }
    Ok(())
}

/// Tropical product of matrices with entries in `{0, ..., bound, INF}`.
pub fn minplus_bounded(a: &MinPlusMatrix, b: &MinPlusMatrix, bound: i64) -> Result<MinPlusMatrix> {
    minplus_bounded_with(a, b, bound, BoundedBackend::Boolean)
}

pub fn minplus_bounded_with(
    a: &MinPlusMatrix,
    b: &MinPlusMatrix,
    bound: i64,
    backend: BoundedBackend,
) -> Result<MinPlusMatrix> {
    check_inner(a, b)?;
    if bound < 0 {
        return Err(Error::InvalidParameter(format!(
            "negative entry bound {bound}"
        )));
    }
    check_bounded(a, bound)?;
    check_bounded(b, bound)?;
    match backend {
        BoundedBackend::Boolean => bounded_boolean(a, b, bound as usize),
        BoundedBackend::Encoded => bounded_encoded(a, b, bound as usize),
    }
}

fn indicators(m: &MinPlusMatrix, bound: usize) -> Vec<Option<BoolMatrix>> {
    let mut out: Vec<Option<BoolMatrix>> = vec![None; bound + 1];
    for i in 0..m.rows {
        for (j, &x) in m.row(i).iter().enumerate() {
            if x != MinPlusMatrix::INF {
                out[x as usize]
                    .get_or_insert_with(|| BoolMatrix::zeros(m.rows, m.cols))
                    .set(i, j, true);
            }
        }
    }
    out
}

// For each target sum s, OR the products of the value-a and value-(s - a)
// indicators; the first s that lights an entry is its tropical value.
fn bounded_boolean(a: &MinPlusMatrix, b: &MinPlusMatrix, bound: usize) -> Result<MinPlusMatrix> {
    let ia = indicators(a, bound);
    let ib = indicators(b, bound);
    let mut c = MinPlusMatrix::filled(a.rows, b.cols, MinPlusMatrix::INF);
    let mut open = a.rows * b.cols;
    for s in 0..=2 * bound {
        if open == 0 {
            break;
        }
        let mut hits: Option<BoolMatrix> = None;
        for x in s.saturating_sub(bound)..=s.min(bound) {
            if let (Some(ma), Some(mb)) = (&ia[x], &ib[s - x]) {
                let prod = bool_mm(ma, mb)?;
                match hits.as_mut() {
                    Some(h) => h.or_assign(&prod),
                    None => hits = Some(prod),
                }
            }
        }
        let Some(hits) = hits else { continue };
        for i in 0..a.rows {
            for j in 0..b.cols {
                if hits.get(i, j) && c.get(i, j) == MinPlusMatrix::INF {
                    c.set(i, j, s as i64);
                    open -= 1;
                }
            }
        }
    }
    Ok(c)
}

fn bounded_encoded(a: &MinPlusMatrix, b: &MinPlusMatrix, bound: usize) -> Result<MinPlusMatrix> {
    let radix_bits = (usize::BITS - a.cols.leading_zeros()).max(1) as usize;
    let bits = radix_bits * (bound + 1);
    let encode = |m: &MinPlusMatrix| {
        let mut w = WideIntMatrix::zeros(m.rows, m.cols, bits);
        for i in 0..m.rows {
            for (j, &x) in m.row(i).iter().enumerate() {
                if x != MinPlusMatrix::INF {
                    w.set_bit(i, j, radix_bits * (bound - x as usize));
                }
            }
        }
        w
    };
    let prod = wideint_mm(&encode(a), &encode(b))?;
    Ok(MinPlusMatrix::from_fn(a.rows, b.cols, |i, j| {
        (0..=2 * bound)
            .find(|&s| prod.digit(i, j, 2 * bound - s, radix_bits) != 0)
            .map_or(MinPlusMatrix::INF, |s| s as i64)
    }))
}

/// Tropical product when every row of `B` is either entirely infinite or
/// spans at most `range`. Rows of `B` are shifted to start at zero, entries of the
/// shifted `A` that cannot be optimal are dropped, and what remains is a
/// bounded-entry product.
pub fn minplus_shifted(a: &MinPlusMatrix, b: &MinPlusMatrix, range: i64) -> Result<MinPlusMatrix> {
    check_inner(a, b)?;
    if range < 0 {
        return Err(Error::InvalidParameter(format!("negative range {range}")));
    }
    let inf = MinPlusMatrix::INF;

    let mut delta = Vec::with_capacity(b.rows);
    for k in 0..b.rows {
        let row = b.row(k);
        let (lo, hi) = row
            .iter()
            .filter(|&&x| x != inf)
            .fold((inf, i64::MIN), |(lo, hi), &x| (lo.min(x), hi.max(x)));
        // A row mixing finite and infinite entries has unbounded range.
        let mixed = lo != inf && row.contains(&inf);
        if mixed || (lo != inf && hi - lo > range) {
            return Err(Error::RowRange {
                row: k,
                range: if mixed { inf } else { hi - lo },
                limit: range,
            });
        }
        delta.push(lo);
    }
    let b_shift = MinPlusMatrix::from_fn(b.rows, b.cols, |k, j| {
        let x = b.get(k, j);
        if x == inf {
            inf
        } else {
            x - delta[k]
        }
    });
    let a_shift = MinPlusMatrix::from_fn(a.rows, a.cols, |i, k| trop_add(a.get(i, k), delta[k]));

    let row_min: Vec<i64> = (0..a.rows)
        .map(|i| a_shift.row(i).iter().copied().min().unwrap_or(inf))
        .collect();
    let a_bounded = MinPlusMatrix::from_fn(a.rows, a.cols, |i, k| {
        let x = a_shift.get(i, k);
        if x == inf || x - row_min[i] > range {
            inf
        } else {
            x - row_min[i]
        }
    });

    let c = minplus_bounded(&a_bounded, &b_shift, range)?;
    Ok(MinPlusMatrix::from_fn(a.rows, b.cols, |i, j| {
        trop_add(c.get(i, j), row_min[i])
    }))
}
