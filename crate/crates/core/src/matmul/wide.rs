use num_bigint::BigUint;
use rayon::prelude::*;

use crate::error::{Error, Result};

/// Matrix of nonnegative integers of bounded bit length, stored as fixed-width
/// little-endian 64-bit limbs.
///
/// Entries are typically packed polynomials: one base-`2^b` digit per
/// coefficient, with `b` large enough that sums never carry between digits.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WideIntMatrix {
    rows: usize,
    cols: usize,
    max_bits: usize,
    width: usize,
    limbs: Vec<u64>,
}

impl WideIntMatrix {
    /// All-zero matrix whose entries may hold up to `max_bits` bits.
    pub fn zeros(rows: usize, cols: usize, max_bits: usize) -> Self {
        let width = max_bits.div_ceil(64).max(1);
        WideIntMatrix {
            rows,
            cols,
            max_bits,
            width,
            limbs: vec![0; rows * cols * width],
        }
    }

    pub fn from_fn(
        rows: usize,
        cols: usize,
        max_bits: usize,
        mut f: impl FnMut(usize, usize) -> BigUint,
    ) -> Result<Self> {
        let mut m = Self::zeros(rows, cols, max_bits);
        for i in 0..rows {
            for j in 0..cols {
                m.set(i, j, &f(i, j))?;
            }
        }
        Ok(m)
    }

    pub fn identity(n: usize, max_bits: usize) -> Self {
        let mut m = Self::zeros(n, n, max_bits.max(1));
        for i in 0..n {
            m.set_bit(i, i, 0);
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn max_bits(&self) -> usize {
        self.max_bits
    }

    #[inline]
    pub fn limbs(&self, i: usize, j: usize) -> &[u64] {
        let at = (i * self.cols + j) * self.width;
        &self.limbs[at..at + self.width]
    }

    #[inline]
    fn limbs_mut(&mut self, i: usize, j: usize) -> &mut [u64] {
        let at = (i * self.cols + j) * self.width;
        &mut self.limbs[at..at + self.width]
    }

    pub fn get(&self, i: usize, j: usize) -> BigUint {
        let halves: Vec<u32> = self
            .limbs(i, j)
            .iter()
            .flat_map(|&l| [l as u32, (l >> 32) as u32])
            .collect();
        BigUint::new(halves)
    }

    pub fn set(&mut self, i: usize, j: usize, value: &BigUint) -> Result<()> {
        let bits = value.bits() as usize;
        if bits > self.max_bits {
            return Err(Error::BoundExceeded(format!(
                "entry of {bits} bits exceeds the declared {} bits",
                self.max_bits
            )));
        }
        let slot = self.limbs_mut(i, j);
        slot.fill(0);
        for (dst, src) in slot.iter_mut().zip(value.iter_u64_digits()) {
            *dst = src;
        }
        Ok(())
    }

    /// Sets entry `(i, j)` to `2^bit`.
    pub fn set_bit(&mut self, i: usize, j: usize, bit: usize) {
        assert!(
            bit < self.max_bits,
            "bit {bit} beyond {} bits",
            self.max_bits
        );
        let slot = self.limbs_mut(i, j);
        slot.fill(0);
        slot[bit / 64] = 1 << (bit % 64);
    }

    /// Base-`2^radix_bits` digit `pos` of entry `(i, j)`.
    #[inline]
    pub fn digit(&self, i: usize, j: usize, pos: usize, radix_bits: usize) -> u64 {
        debug_assert!((1..=64).contains(&radix_bits));
        let limbs = self.limbs(i, j);
        let off = pos * radix_bits;
        let (w, s) = (off / 64, off % 64);
        if w >= limbs.len() {
            return 0;
        }
        let mut v = limbs[w] >> s;
        if s + radix_bits > 64 && w + 1 < limbs.len() {
            v |= limbs[w + 1] << (64 - s);
        }
        if radix_bits == 64 {
            v
        } else {
            v & ((1u64 << radix_bits) - 1)
        }
    }
}

#[inline]
fn add_at(acc: &mut [u64], mut idx: usize, value: u64) {
    let (sum, mut carry) = acc[idx].overflowing_add(value);
    acc[idx] = sum;
    while carry {
        idx += 1;
        let (s, c) = acc[idx].overflowing_add(1);
        acc[idx] = s;
        carry = c;
    }
}

fn nonzero_limbs(limbs: &[u64], out: &mut Vec<(u32, u64)>) {
    out.clear();
    out.extend(
        limbs
            .iter()
            .enumerate()
            .filter(|(_, &l)| l != 0)
            .map(|(i, &l)| (i as u32, l)),
    );
}

/// Exact product over the integers. The result holds
/// `a.max_bits + b.max_bits + bitlen(inner)` bits per entry.
///
/// The kernel touches only nonzero limbs, so sparse packed entries (single
/// monomials) cost a handful of word multiplications each.
pub fn wideint_mm(a: &WideIntMatrix, b: &WideIntMatrix) -> Result<WideIntMatrix> {
    if a.cols != b.rows {
        return Err(Error::dims((a.rows, a.cols), (b.rows, b.cols)));
    }
    let inner_bits = (usize::BITS - a.cols.leading_zeros()) as usize;
    let mut c = WideIntMatrix::zeros(a.rows, b.cols, a.max_bits + b.max_bits + inner_bits);
    let wc = c.width;

    // Nonzero entries of each row of `b`: (column, start, end) into `b_limbs`.
    let mut b_rows: Vec<Vec<(u32, u32, u32)>> = Vec::with_capacity(b.rows);
    let mut b_limbs: Vec<(u32, u64)> = Vec::new();
    let mut scratch = Vec::new();
    for k in 0..b.rows {
        let mut row = Vec::new();
        for j in 0..b.cols {
            nonzero_limbs(b.limbs(k, j), &mut scratch);
            if !scratch.is_empty() {
                let start = b_limbs.len() as u32;
                b_limbs.extend_from_slice(&scratch);
                row.push((j as u32, start, b_limbs.len() as u32));
            }
        }
        b_rows.push(row);
    }

    if wc * b.cols == 0 {
        return Ok(c);
    }
    c.limbs
        .par_chunks_mut(wc * b.cols)
        .enumerate()
        .for_each(|(i, out)| {
            let mut a_nz = Vec::new();
            for (k, brow) in b_rows.iter().enumerate() {
                nonzero_limbs(a.limbs(i, k), &mut a_nz);
                if a_nz.is_empty() {
                    continue;
                }
                for &(j, start, end) in brow {
                    let acc = &mut out[j as usize * wc..(j as usize + 1) * wc];
                    for &(lb, vb) in &b_limbs[start as usize..end as usize] {
                        for &(la, va) in &a_nz {
                            let p = u128::from(va) * u128::from(vb);
                            let at = (la + lb) as usize;
                            add_at(acc, at, p as u64);
                            let hi = (p >> 64) as u64;
                            if hi != 0 {
                                add_at(acc, at + 1, hi);
                            }
                        }
                    }
                }
            }
        });
    Ok(c)
}
