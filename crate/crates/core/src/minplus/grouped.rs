use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::{minplus_bruteforce, trop_add, MinPlusMatrix};
use crate::error::{Error, Result};
use crate::matmul::{wideint_mm, WideIntMatrix};

const INF: i64 = MinPlusMatrix::INF;
/// Finite entries must stay below this magnitude so coarse sums cannot overflow.
const MAX_MAGNITUDE: i64 = 1 << 60;
/// Smallest admissible prime: residues of the shifts `-3..=3` must be distinct.
const MIN_PRIME: u64 = 7;
/// Shifts `r` with `|A' + B' - C'| <= 3` cover every candidate witness.
const SHIFTS: std::ops::RangeInclusive<i64> = -3..=3;

/// A `(min, +)` instance whose rows of `A` and columns of `B` come in
/// contiguous groups of equal size, each group varying by at most `range`
/// along every inner index.
#[derive(Clone, Debug)]
pub struct GroupedInstance {
    a: MinPlusMatrix,
    b: MinPlusMatrix,
    group_size: usize,
    range: i64,
    q: usize,
}

impl GroupedInstance {
    /// Validates the grouping. Within a group, an inner index is either
    /// infinite for every member or finite for every member.
    pub fn new(
        a: MinPlusMatrix,
        b: MinPlusMatrix,
        group_size: usize,
        range: i64,
        q: usize,
    ) -> Result<Self> {
        if group_size == 0 || range < 1 || q == 0 {
            return Err(Error::InvalidParameter(format!(
                "group size {group_size}, range {range} and q {q} must all be positive"
            )));
        }
        if a.cols() != b.rows() {
            return Err(Error::dims((a.rows(), a.cols()), (b.rows(), b.cols())));
        }
        if a.rows() != b.cols() || !a.rows().is_multiple_of(group_size) {
            return Err(Error::GroupInvariant(format!(
                "{} rows and {} columns do not split into groups of {group_size}",
                a.rows(),
                b.cols()
            )));
        }
        for m in [&a, &b] {
            if let Some((i, j)) = (0..m.rows())
                .flat_map(|i| (0..m.cols()).map(move |j| (i, j)))
                .find(|&(i, j)| m.get(i, j) != INF && m.get(i, j).abs() >= MAX_MAGNITUDE)
            {
                return Err(Error::EntryOutOfRange {
                    row: i,
                    col: j,
                    value: m.get(i, j),
                    bound: MAX_MAGNITUDE - 1,
                });
            }
        }
        let inst = GroupedInstance {
            a,
            b,
            group_size,
            range,
            q,
        };
        for g in 0..inst.groups() {
            for k in 0..inst.inner() {
                inst.group_span(true, g, k)?;
                inst.group_span(false, g, k)?;
            }
        }
        Ok(inst)
    }

    pub fn a(&self) -> &MinPlusMatrix {
        &self.a
    }

    pub fn b(&self) -> &MinPlusMatrix {
        &self.b
    }

    pub fn group_size(&self) -> usize {
        self.group_size
    }

    pub fn groups(&self) -> usize {
        self.a.rows() / self.group_size
    }

    pub fn inner(&self) -> usize {
        self.a.cols()
    }

    pub fn range(&self) -> i64 {
        self.range
    }

    pub fn q(&self) -> usize {
        self.q
    }

    #[inline]
    fn entry(&self, left: bool, member: usize, k: usize) -> i64 {
        if left {
            self.a.get(member, k)
        } else {
            self.b.get(k, member)
        }
    }

    /// Minimum over group `g` at inner index `k`, or `INF` if the group is absent there.
    fn group_span(&self, left: bool, g: usize, k: usize) -> Result<i64> {
        let members = g * self.group_size..(g + 1) * self.group_size;
        let inf_count = members
            .clone()
            .filter(|&i| self.entry(left, i, k) == INF)
            .count();
        if inf_count == self.group_size {
            return Ok(INF);
        }
        let side = if left { "A" } else { "B" };
        if inf_count > 0 {
            return Err(Error::GroupInvariant(format!(
                "group {g} of {side} mixes finite and infinite entries at inner index {k}"
            )));
        }
        let (lo, hi) = members
            .map(|i| self.entry(left, i, k))
            .fold((i64::MAX, i64::MIN), |(lo, hi), x| (lo.min(x), hi.max(x)));
        if hi - lo > self.range {
            return Err(Error::GroupInvariant(format!(
                "group {g} of {side} spans {} > {} at inner index {k}",
                hi - lo,
                self.range
            )));
        }
        Ok(lo)
    }
}

/// Coarse and residual parts of a grouped instance:
/// `A[i][k] = L * A'[g(i)][k] + A''[i][k]` with `0 <= A'' < 2L`, likewise for
/// `B`, and the coarse product `C' = A' * B'`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuotientRemainder {
    pub a_quot: MinPlusMatrix,
    pub a_rem: MinPlusMatrix,
    pub b_quot: MinPlusMatrix,
    pub b_rem: MinPlusMatrix,
    pub coarse: MinPlusMatrix,
}

pub fn build_quotient_remainder(inst: &GroupedInstance) -> QuotientRemainder {
    let (h, d, s, l) = (inst.groups(), inst.group_size, inst.inner(), inst.range);
    let quot = |left: bool, g: usize, k: usize| {
        let lo = inst.group_span(left, g, k).expect("validated instance");
        if lo == INF {
            INF
        } else {
            lo.div_euclid(l)
        }
    };
    let a_quot = MinPlusMatrix::from_fn(h, s, |g, k| quot(true, g, k));
    let b_quot = MinPlusMatrix::from_fn(s, h, |k, g| quot(false, g, k));
    let a_rem = MinPlusMatrix::from_fn(h * d, s, |i, k| {
        let x = inst.a.get(i, k);
        if x == INF {
            INF
        } else {
            x - l * a_quot.get(i / d, k)
        }
    });
    let b_rem = MinPlusMatrix::from_fn(s, h * d, |k, j| {
        let x = inst.b.get(k, j);
        if x == INF {
            INF
        } else {
            x - l * b_quot.get(k, j / d)
        }
    });
    let coarse = minplus_bruteforce(&a_quot, &b_quot).expect("conforming dimensions");
    QuotientRemainder {
        a_quot,
        a_rem,
        b_quot,
        b_rem,
        coarse,
    }
}

/// Knobs for [`minplus_grouped_with`]. Unset fields take the defaults derived
/// from the instance.
#[derive(Clone, Debug, Default)]
pub struct GroupedConfig {
    pub seed: u64,
    /// Number of prime rounds; default `max(1, ceil(2 log2(h + 1)))`.
    pub rounds: Option<usize>,
    /// False positives tolerated per group pair and round; default `8 * ceil(s / q)`.
    pub fp_budget: Option<usize>,
    /// Inclusive prime window; default `[b, 2b]` with `b = max(7, q * ceil(log2(2U + 1)))`.
    pub prime_window: Option<(u64, u64)>,
    /// Record every decoded value in [`GroupedStats::decoded`].
    pub audit: bool,
}

impl GroupedConfig {
    pub fn with_seed(seed: u64) -> Self {
        GroupedConfig {
            seed,
            ..Self::default()
        }
    }
}

/// A value read off the packed product for entry `(row, col)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DecodedCandidate {
    pub row: usize,
    pub col: usize,
    pub prime: u64,
    pub shift: i64,
    pub value: i64,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct GroupedStats {
    pub primes: Vec<u64>,
    pub rounds_run: usize,
    pub group_pairs: usize,
    /// Group pairs whose coarse entry is infinite; their blocks are infinite.
    pub infinite_pairs: usize,
    pub resolved_in_rounds: usize,
    pub deferrals: usize,
    pub brute_forced: usize,
    pub false_positives: usize,
    pub decoded: Vec<DecodedCandidate>,
}

/// Exact tropical product of a grouped instance. The seed only influences
/// which primes are drawn, never the result.
pub fn minplus_grouped(inst: &GroupedInstance, seed: u64) -> Result<MinPlusMatrix> {
    minplus_grouped_with(inst, &GroupedConfig::with_seed(seed)).map(|(c, _)| c)
}

pub(crate) fn primes_in(lo: u64, hi: u64) -> Vec<u64> {
    if hi < 2 || lo > hi {
        return Vec::new();
    }
    let n = hi as usize;
    let mut composite = vec![false; n + 1];
    let mut out = Vec::new();
    for i in 2..=n {
        if composite[i] {
            continue;
        }
        if i as u64 >= lo {
            out.push(i as u64);
        }
        let mut j = i * i;
        while j <= n {
            composite[j] = true;
            j += i;
        }
    }
    out
}

fn default_window(inst: &GroupedInstance) -> (u64, u64) {
    let u = inst.a.max_abs_finite().max(inst.b.max_abs_finite()) as u64;
    let bits = u64::from(64 - (2 * u + 1).leading_zeros());
    let lo = (inst.q as u64 * bits).max(MIN_PRIME);
    (lo, 2 * lo)
}

fn bit_len(x: usize) -> usize {
    (usize::BITS - x.leading_zeros()) as usize
}

struct Layout {
    d: usize,
    l: i64,
    /// Bits per packed digit; `2^radix > s`.
    radix: usize,
    /// Digits per unit of the mod-p exponent.
    stride: i64,
}

impl Layout {
    fn code(&self, alpha: i64, beta: i64) -> usize {
        (alpha * self.stride + beta) as usize
    }
}

struct RowOutcome {
    blocks: Vec<(usize, Vec<i64>)>,
    deferred: usize,
    false_positives: usize,
    decoded: Vec<DecodedCandidate>,
}

pub fn minplus_grouped_with(
    inst: &GroupedInstance,
    config: &GroupedConfig,
) -> Result<(MinPlusMatrix, GroupedStats)> {
    let (h, d, s) = (inst.groups(), inst.group_size, inst.inner());
    let (lo, hi) = config.prime_window.unwrap_or_else(|| default_window(inst));
    if lo < MIN_PRIME {
        return Err(Error::InvalidParameter(format!(
            "prime window must start at {MIN_PRIME} or above, got {lo}"
        )));
    }
    let primes = primes_in(lo, hi);
    if primes.is_empty() {
        return Err(Error::InvalidParameter(format!("no prime in [{lo}, {hi}]")));
    }
    let rounds = config
        .rounds
        .unwrap_or_else(|| ((2.0 * ((h + 1) as f64).log2()).ceil() as usize).max(1));
    let budget = config.fp_budget.unwrap_or(8 * s.div_ceil(inst.q));

    let qr = build_quotient_remainder(inst);
    let layout = Layout {
        d,
        l: inst.range,
        radix: bit_len(s).max(1),
        stride: 4 * inst.range + 1,
    };

    let mut c = MinPlusMatrix::filled(h * d, h * d, INF);
    let mut pending = vec![false; h * h];
    let mut stats = GroupedStats {
        group_pairs: h * h,
        ..GroupedStats::default()
    };
    for gi in 0..h {
        for gj in 0..h {
            if qr.coarse.get(gi, gj) == INF {
                stats.infinite_pairs += 1;
            } else {
                pending[gi * h + gj] = true;
            }
        }
    }

    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    for _ in 0..rounds {
        if !pending.contains(&true) {
            break;
        }
        let p = primes[rng.gen_range(0..primes.len())];
        stats.primes.push(p);
        stats.rounds_run += 1;

        let b_packed = pack_right(inst, &qr, &layout, p);
        let outcomes: Vec<RowOutcome> = (0..h)
            .into_par_iter()
            .map(|gi| {
                let wanted: Vec<usize> = (0..h).filter(|&gj| pending[gi * h + gj]).collect();
                row_group(
                    inst,
                    &qr,
                    &layout,
                    &b_packed,
                    p,
                    gi,
                    &wanted,
                    budget,
                    config.audit,
                )
            })
            .collect::<Result<_>>()?;

        for (gi, out) in outcomes.into_iter().enumerate() {
            stats.deferrals += out.deferred;
            stats.false_positives += out.false_positives;
            stats.decoded.extend(out.decoded);
            for (gj, block) in out.blocks {
                pending[gi * h + gj] = false;
                stats.resolved_in_rounds += 1;
                for ii in 0..d {
                    for jj in 0..d {
                        c.set(gi * d + ii, gj * d + jj, block[ii * d + jj]);
                    }
                }
            }
        }
    }

    for gi in 0..h {
        for gj in 0..h {
            if !pending[gi * h + gj] {
                continue;
            }
            stats.brute_forced += 1;
            for i in gi * d..(gi + 1) * d {
                for j in gj * d..(gj + 1) * d {
                    let best = (0..s)
                        .map(|k| trop_add(inst.a.get(i, k), inst.b.get(k, j)))
                        .min()
                        .unwrap_or(INF);
                    c.set(i, j, best);
                }
            }
        }
    }
    Ok((c, stats))
}

fn factor_bits(layout: &Layout, p: u64) -> usize {
    let max_code = (p as i64 - 1) * layout.stride + 2 * layout.l - 1;
    layout.radix * (max_code as usize + 1)
}

/// `B~[k][j] = x^(B'[k][g(j)] mod p) * y^(B''[k][j])`, packed.
fn pack_right(
    inst: &GroupedInstance,
    qr: &QuotientRemainder,
    layout: &Layout,
    p: u64,
) -> WideIntMatrix {
    let (s, cols) = (inst.inner(), inst.b.cols());
    let mut m = WideIntMatrix::zeros(s, cols, factor_bits(layout, p));
    for k in 0..s {
        for j in 0..cols {
            let quot = qr.b_quot.get(k, j / layout.d);
            if quot != INF {
                let code = layout.code(quot.rem_euclid(p as i64), qr.b_rem.get(k, j));
                m.set_bit(k, j, layout.radix * code);
            }
        }
    }
    m
}

#[allow(clippy::too_many_arguments)]
fn row_group(
    inst: &GroupedInstance,
    qr: &QuotientRemainder,
    layout: &Layout,
    b_packed: &WideIntMatrix,
    p: u64,
    gi: usize,
    wanted: &[usize],
    budget: usize,
    audit: bool,
) -> Result<RowOutcome> {
    let (d, s, l, pi) = (layout.d, inst.inner(), layout.l, p as i64);
    let mut out = RowOutcome {
        blocks: Vec::new(),
        deferred: 0,
        false_positives: 0,
        decoded: Vec::new(),
    };

    // False positives: inner indices congruent to C' + r mod p but not within 3.
    let mut accepted = Vec::new();
    for &gj in wanted {
        let cq = qr.coarse.get(gi, gj);
        let mut fps: [Vec<usize>; 7] = Default::default();
        for k in 0..s {
            let sum = trop_add(qr.a_quot.get(gi, k), qr.b_quot.get(k, gj));
            if sum == INF {
                continue;
            }
            let t = sum - cq;
            if t.abs() <= 3 {
                continue;
            }
            let res = t.rem_euclid(pi);
            let r = if res <= 3 {
                res
            } else if res >= pi - 3 {
                res - pi
            } else {
                continue;
            };
            fps[(r + 3) as usize].push(k);
        }
        let total: usize = fps.iter().map(Vec::len).sum();
        out.false_positives += total;
        if total > budget {
            out.deferred += 1;
        } else {
            accepted.push((gj, fps));
        }
    }
    if accepted.is_empty() {
        return Ok(out);
    }

    let mut a_packed = WideIntMatrix::zeros(d, s, factor_bits(layout, p));
    for ii in 0..d {
        for k in 0..s {
            let quot = qr.a_quot.get(gi, k);
            if quot != INF {
                let code = layout.code(quot.rem_euclid(pi), qr.a_rem.get(gi * d + ii, k));
                a_packed.set_bit(ii, k, layout.radix * code);
            }
        }
    }
    let product = wideint_mm(&a_packed, b_packed)?;

    let rem_bits = layout.radix * (2 * l as usize);
    for (gj, fps) in accepted {
        let cq = qr.coarse.get(gi, gj);
        let mut block = vec![INF; d * d];
        for r in SHIFTS {
            let fp = &fps[(r + 3) as usize];
            let correction = if fp.is_empty() {
                None
            } else {
                let mut ya = WideIntMatrix::zeros(d, fp.len(), rem_bits);
                let mut yb = WideIntMatrix::zeros(fp.len(), d, rem_bits);
                for (t, &k) in fp.iter().enumerate() {
                    for x in 0..d {
                        ya.set_bit(x, t, layout.radix * qr.a_rem.get(gi * d + x, k) as usize);
                        yb.set_bit(t, x, layout.radix * qr.b_rem.get(k, gj * d + x) as usize);
                    }
                }
                Some(wideint_mm(&ya, &yb)?)
            };
            let rho = (cq + r).rem_euclid(pi);
            for ii in 0..d {
                for jj in 0..d {
                    let col = gj * d + jj;
                    for beta in 0..=4 * l - 2 {
                        let hits = product.digit(ii, col, layout.code(rho, beta), layout.radix)
                            + product.digit(ii, col, layout.code(rho + pi, beta), layout.radix);
                        let spurious = correction
                            .as_ref()
                            .map_or(0, |m| m.digit(ii, jj, beta as usize, layout.radix));
                        if hits > spurious {
                            let value = l * (cq + r) + beta;
                            let slot = &mut block[ii * d + jj];
                            *slot = (*slot).min(value);
                            if audit {
                                out.decoded.push(DecodedCandidate {
                                    row: gi * d + ii,
                                    col,
                                    prime: p,
                                    shift: r,
                                    value,
                                });
                            }
                            break;
                        }
                    }
                }
            }
        }
        out.blocks.push((gj, block));
    }
    Ok(out)
}
