use crate::error::{Error, Result};

/// Dense row-major matrix of machine integers.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<i64>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, n, |i, j| i64::from(i == j))
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> i64) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        IntMatrix { rows, cols, data }
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

    fn max_abs(&self) -> i64 {
        self.data
            .iter()
            .map(|x| x.saturating_abs())
            .max()
            .unwrap_or(0)
    }
}

/// Ring product of matrices whose entries are bounded by `bound` in absolute
/// value. Fails if any entry exceeds the bound or if `bound^2 * inner` could
/// overflow the `i64` accumulator.
pub fn int_mm(a: &IntMatrix, b: &IntMatrix, bound: i64) -> Result<IntMatrix> {
    if a.cols != b.rows {
        return Err(Error::dims((a.rows, a.cols), (b.rows, b.cols)));
    }
    let worst = a.max_abs().max(b.max_abs());
    if worst > bound {
        return Err(Error::BoundExceeded(format!(
            "entry magnitude {worst} exceeds declared bound {bound}"
        )));
    }
    bound
        .checked_mul(bound)
        .and_then(|sq| sq.checked_mul(a.cols.max(1) as i64))
        .ok_or_else(|| {
            Error::BoundExceeded(format!(
                "bound {bound} with inner dimension {} overflows i64",
                a.cols
            ))
        })?;

    let mut c = IntMatrix::zeros(a.rows, b.cols);
    for i in 0..a.rows {
        let out = &mut c.data[i * b.cols..(i + 1) * b.cols];
        for k in 0..a.cols {
            let x = a.get(i, k);
            if x == 0 {
                continue;
            }
            let brow = &b.data[k * b.cols..(k + 1) * b.cols];
            for (o, &y) in out.iter_mut().zip(brow) {
                *o += x * y;
            }
        }
    }
    Ok(c)
}
