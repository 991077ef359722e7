use rayon::prelude::*;

use super::{pair_weight, AdditiveCode};
use crate::error::{Error, Result};
use crate::field::Fq;

/// Default cap on the number of enumerated codewords.
pub const DEFAULT_DISTANCE_BUDGET: u64 = 1 << 26;

const EVEN_BITS: u64 = 0x5555_5555_5555_5555;

/// Messages are split on their top bits into this many parallel ranges.
const SPLIT_BITS: usize = 6;

impl AdditiveCode {
    /// Minimum Hamming weight over all `q^k − 1` nonzero codewords.
    ///
    /// Codewords are visited in Gray-code order over the message space, so
    /// each step adds a single multiple of one generator row.
    pub fn min_distance(&self, budget: u64) -> Result<usize> {
        let k = self.k();
        if k == 0 {
            return Err(Error::EmptyCode);
        }
        let q = self.spec.q() as u128;
        let needed = u32::try_from(k)
            .ok()
            .and_then(|k| q.checked_pow(k))
            .unwrap_or(u128::MAX);
        if needed > budget as u128 {
            return Err(Error::BudgetExceeded { needed, budget });
        }
        Ok(if self.spec.q() == 2 {
            self.min_distance_binary()
        } else {
            self.min_distance_generic()
        })
    }

    fn min_distance_binary(&self) -> usize {
        let k = self.k();
        let words = (2 * self.n).div_ceil(64);
        let rows: Vec<Vec<u64>> = self
            .g
            .row_iter()
            .map(|r| {
                let mut w = vec![0u64; words];
                for (c, &x) in r.iter().enumerate() {
                    if x != 0 {
                        w[c / 64] |= 1 << (c % 64);
                    }
                }
                w
            })
            .collect();
        let split = k.min(SPLIT_BITS);
        let low = k - split;
        let n = self.n;

        (0u64..1 << split)
            .into_par_iter()
            .map(|prefix| {
                let mut cw = vec![0u64; words];
                for bit in 0..split {
                    if prefix >> bit & 1 == 1 {
                        xor(&mut cw, &rows[low + bit]);
                    }
                }
                let mut best = if prefix != 0 { weight(&cw) } else { n + 1 };
                for step in 1u64..1 << low {
                    let j = step.trailing_zeros() as usize;
                    xor(&mut cw, &rows[j]);
                    best = best.min(weight_below(&cw, best));
                    if best == 1 {
                        break;
                    }
                }
                best
            })
            .min()
            .expect("at least one chunk")
    }

    fn min_distance_generic(&self) -> usize {
        let f = self.spec.base();
        let q = f.order();
        let k = self.k();
        let mut gray = vec![0usize; k];
        let mut cw: Vec<Fq> = vec![0; 2 * self.n];
        let mut best = self.n + 1;
        let total = (q as u128).pow(k as u32);
        for t in 1..total {
            let mut j = 0;
            let mut rest = t;
            while rest % q as u128 == 0 {
                rest /= q as u128;
                j += 1;
            }
            let old = gray[j];
            gray[j] = (old + 1) % q;
            let delta = f.sub(gray[j] as Fq, old as Fq);
            let table = f.mul_table(delta);
            for (c, &g) in cw.iter_mut().zip(self.g.row(j)) {
                *c = f.add(*c, table[g as usize]);
            }
            best = best.min(pair_weight(&cw));
            if best == 1 {
                break;
            }
        }
        best
    }
}

#[inline]
fn xor(dst: &mut [u64], src: &[u64]) {
    for (d, s) in dst.iter_mut().zip(src) {
        *d ^= s;
    }
}

#[inline]
fn weight(cw: &[u64]) -> usize {
    cw.iter()
        .map(|w| ((w | w >> 1) & EVEN_BITS).count_ones() as usize)
        .sum()
}

/// Pair weight, abandoning the count once it reaches `bound`.
#[inline]
fn weight_below(cw: &[u64], bound: usize) -> usize {
    let mut total = 0;
    for w in cw {
        total += ((w | w >> 1) & EVEN_BITS).count_ones() as usize;
        if total >= bound {
            return bound;
        }
    }
    total
}
