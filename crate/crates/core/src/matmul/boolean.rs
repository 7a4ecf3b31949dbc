use rayon::prelude::*;

use crate::error::{Error, Result};

const WORD: usize = 64;
/// Columns of the right operand processed per block.
const COL_BLOCK: usize = 256;

/// Dense boolean matrix, 64 columns per word, rows padded to whole words.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoolMatrix {
    rows: usize,
    cols: usize,
    stride: usize,
    bits: Vec<u64>,
}

impl BoolMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        let stride = cols.div_ceil(WORD);
        BoolMatrix {
            rows,
            cols,
            stride,
            bits: vec![0; rows * stride],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, true);
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> bool) -> Self {
        let mut m = Self::zeros(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                if f(i, j) {
                    m.set(i, j, true);
                }
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> bool {
        debug_assert!(i < self.rows && j < self.cols);
        self.bits[i * self.stride + j / WORD] >> (j % WORD) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, value: bool) {
        debug_assert!(i < self.rows && j < self.cols);
        let w = &mut self.bits[i * self.stride + j / WORD];
        let mask = 1u64 << (j % WORD);
        if value {
            *w |= mask;
        } else {
            *w &= !mask;
        }
    }

    #[inline]
    fn row_words(&self, i: usize) -> &[u64] {
        &self.bits[i * self.stride..(i + 1) * self.stride]
    }

    pub fn transpose(&self) -> BoolMatrix {
        let mut t = BoolMatrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for (w, &word) in self.row_words(i).iter().enumerate() {
                let mut rest = word;
                while rest != 0 {
                    let j = w * WORD + rest.trailing_zeros() as usize;
                    t.set(j, i, true);
                    rest &= rest - 1;
                }
            }
        }
        t
    }

    /// `self |= other`, entrywise.
    pub fn or_assign(&mut self, other: &BoolMatrix) {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        for (a, b) in self.bits.iter_mut().zip(&other.bits) {
            *a |= b;
        }
    }

    pub fn count_ones(&self) -> usize {
        self.bits.iter().map(|w| w.count_ones() as usize).sum()
    }
}

/// Boolean product: `C[i][j] = OR_k (A[i][k] AND B[k][j])`.
///
/// `B` is transposed so both operands are packed along the inner dimension;
/// each output bit is a word-wise AND with early exit.
pub fn bool_mm(a: &BoolMatrix, b: &BoolMatrix) -> Result<BoolMatrix> {
    if a.cols != b.rows {
        return Err(Error::dims((a.rows, a.cols), (b.rows, b.cols)));
    }
    let bt = b.transpose();
    let mut c = BoolMatrix::zeros(a.rows, b.cols);
    if c.stride == 0 {
        return Ok(c);
    }
    let stride = c.stride;
    c.bits
        .par_chunks_mut(stride)
        .enumerate()
        .for_each(|(i, out)| {
            let arow = a.row_words(i);
            if arow.iter().all(|&w| w == 0) {
                return;
            }
            for block in (0..b.cols).step_by(COL_BLOCK) {
                for j in block..(block + COL_BLOCK).min(b.cols) {
                    let hit = arow.iter().zip(bt.row_words(j)).any(|(&x, &y)| x & y != 0);
                    if hit {
                        out[j / WORD] |= 1 << (j % WORD);
                    }
                }
            }
        });
    Ok(c)
}
