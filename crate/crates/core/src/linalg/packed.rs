//! Word-parallel elimination for `F_2` (one bit per entry) and `F_4`
//! (two bit planes per row, low and high coefficient of `a + bα`).

use super::{GfMatrix, Rref};

struct Gf2 {
    words: usize,
    rows: usize,
    bits: Vec<u64>,
}

impl Gf2 {
    fn pack(m: &GfMatrix) -> Self {
        let words = m.cols.div_ceil(64);
        let mut bits = vec![0u64; words * m.rows];
        for r in 0..m.rows {
            let dst = &mut bits[r * words..(r + 1) * words];
            for (c, &x) in m.row(r).iter().enumerate() {
                if x != 0 {
                    dst[c / 64] |= 1 << (c % 64);
                }
            }
        }
        Gf2 {
            words,
            rows: m.rows,
            bits,
        }
    }

    #[inline]
    fn bit(&self, r: usize, c: usize) -> bool {
        self.bits[r * self.words + c / 64] >> (c % 64) & 1 == 1
    }

    fn swap(&mut self, a: usize, b: usize) {
        if a != b {
            for w in 0..self.words {
                self.bits.swap(a * self.words + w, b * self.words + w);
            }
        }
    }

    /// `row[dst] ^= row[src]` on words `from..`.
    #[inline]
    fn xor_into(&mut self, dst: usize, src: usize, from: usize) {
        let w = self.words;
        let (d, s) = if dst < src {
            let (lo, hi) = self.bits.split_at_mut(src * w);
            (&mut lo[dst * w + from..(dst + 1) * w], &hi[from..w])
        } else {
            let (lo, hi) = self.bits.split_at_mut(dst * w);
            (&mut hi[from..w], &lo[src * w + from..(src + 1) * w])
        };
        for (x, y) in d.iter_mut().zip(s) {
            *x ^= *y;
        }
    }

    fn eliminate(&mut self, cols: usize, reduce_above: bool) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..cols {
            if row == self.rows {
                break;
            }
            let Some(p) = (row..self.rows).find(|&r| self.bit(r, col)) else {
                continue;
            };
            self.swap(p, row);
            let start = if reduce_above { 0 } else { row + 1 };
            for r in start..self.rows {
                if r != row && self.bit(r, col) {
                    self.xor_into(r, row, col / 64);
                }
            }
            pivots.push(col);
            row += 1;
        }
        pivots
    }

    fn unpack(&self, like: &GfMatrix) -> GfMatrix {
        let mut m = GfMatrix::zeros(like.field, like.rows, like.cols);
        for r in 0..like.rows {
            for c in 0..like.cols {
                if self.bit(r, c) {
                    m.set(r, c, 1);
                }
            }
        }
        m
    }
}

pub(super) fn rref_gf2(m: &GfMatrix) -> Rref {
    let mut p = Gf2::pack(m);
    let pivots = p.eliminate(m.cols, true);
    Rref {
        matrix: p.unpack(m),
        pivots,
    }
}

pub(super) fn rank_gf2(m: &GfMatrix) -> usize {
    Gf2::pack(m).eliminate(m.cols, false).len()
}

/// Rows stored as `[lo words | hi words]`; entry value is `lo + 2·hi`.
struct Gf4 {
    words: usize,
    rows: usize,
    planes: Vec<u64>,
}

impl Gf4 {
    fn pack(m: &GfMatrix) -> Self {
        let words = m.cols.div_ceil(64);
        let mut planes = vec![0u64; 2 * words * m.rows];
        for r in 0..m.rows {
            let base = 2 * words * r;
            for (c, &x) in m.row(r).iter().enumerate() {
                if x & 1 != 0 {
                    planes[base + c / 64] |= 1 << (c % 64);
                }
                if x & 2 != 0 {
                    planes[base + words + c / 64] |= 1 << (c % 64);
                }
            }
        }
        Gf4 {
            words,
            rows: m.rows,
            planes,
        }
    }

    #[inline]
    fn get(&self, r: usize, c: usize) -> u8 {
        let base = 2 * self.words * r;
        let lo = (self.planes[base + c / 64] >> (c % 64)) & 1;
        let hi = (self.planes[base + self.words + c / 64] >> (c % 64)) & 1;
        (lo | hi << 1) as u8
    }

    fn swap(&mut self, a: usize, b: usize) {
        if a != b {
            let w = 2 * self.words;
            for i in 0..w {
                self.planes.swap(a * w + i, b * w + i);
            }
        }
    }

    /// Multiply a row by `c ∈ {1, α, α+1}` in place.
    fn scale_row(&mut self, r: usize, c: u8) {
        let w = self.words;
        let base = 2 * w * r;
        for i in 0..w {
            let lo = self.planes[base + i];
            let hi = self.planes[base + w + i];
            let (nlo, nhi) = mul_planes(lo, hi, c);
            self.planes[base + i] = nlo;
            self.planes[base + w + i] = nhi;
        }
    }

    /// `row[dst] += c · row[src]` on words `from..`.
    fn axpy(&mut self, dst: usize, src: usize, c: u8, from: usize) {
        let w = self.words;
        for i in from..w {
            let lo = self.planes[2 * w * src + i];
            let hi = self.planes[2 * w * src + w + i];
            let (slo, shi) = mul_planes(lo, hi, c);
            self.planes[2 * w * dst + i] ^= slo;
            self.planes[2 * w * dst + w + i] ^= shi;
        }
    }

    fn eliminate(&mut self, cols: usize, reduce_above: bool) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..cols {
            if row == self.rows {
                break;
            }
            let Some(p) = (row..self.rows).find(|&r| self.get(r, col) != 0) else {
                continue;
            };
            self.swap(p, row);
            let pv = self.get(row, col);
            if pv != 1 {
                self.scale_row(row, INV[pv as usize]);
            }
            let start = if reduce_above { 0 } else { row + 1 };
            for r in start..self.rows {
                if r != row {
                    let v = self.get(r, col);
                    if v != 0 {
                        self.axpy(r, row, v, col / 64);
                    }
                }
            }
            pivots.push(col);
            row += 1;
        }
        pivots
    }

    fn unpack(&self, like: &GfMatrix) -> GfMatrix {
        let mut m = GfMatrix::zeros(like.field, like.rows, like.cols);
        for r in 0..like.rows {
            for c in 0..like.cols {
                m.set(r, c, self.get(r, c));
            }
        }
        m
    }
}

const INV: [u8; 4] = [0, 1, 3, 2];

/// Bit-sliced product of a plane pair with a constant, using `α² = α + 1`.
#[inline]
fn mul_planes(lo: u64, hi: u64, c: u8) -> (u64, u64) {
    match c {
        1 => (lo, hi),
        2 => (hi, lo ^ hi),
        3 => (lo ^ hi, lo),
        _ => (0, 0),
    }
}

pub(super) fn rref_gf4(m: &GfMatrix) -> Rref {
    let mut p = Gf4::pack(m);
    let pivots = p.eliminate(m.cols, true);
    Rref {
        matrix: p.unpack(m),
        pivots,
    }
}

pub(super) fn rank_gf4(m: &GfMatrix) -> usize {
    Gf4::pack(m).eliminate(m.cols, false).len()
}
