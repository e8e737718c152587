use super::RankBitvector;
use crate::error::{Error, Result};

/// A maximal block of a wavelet matrix level whose values all fall inside a
/// query's value range.
///
/// `order` names the arrangement the block is contiguous in: order 0 is the
/// original column order and order `l + 1` is order `l` stably partitioned by
/// the bit stored at level `l`. Order `depth` is the final arrangement.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Span {
    pub order: usize,
    /// Start position within the order (0-based, inclusive).
    pub start: usize,
    /// End position within the order (0-based, exclusive).
    pub end: usize,
    /// Smallest value any point of the span can have.
    pub lo: u32,
    /// Largest value any point of the span can have.
    pub hi: u32,
}

/// Wavelet matrix over a sequence `S[1..=n]`, seen as the grid of points
/// `(i, S[i])` with exactly one point per column.
#[derive(Clone, Debug)]
pub struct WaveletMatrix {
    levels: Vec<RankBitvector>,
    zeros: Vec<usize>,
    depth: usize,
    len: usize,
}

impl WaveletMatrix {
    /// Builds over `seq`, whose values must lie in `1..=seq.len()`.
    pub fn build(seq: &[u32]) -> Result<WaveletMatrix> {
        let max = seq.len() as u32;
        for (i, &v) in seq.iter().enumerate() {
            if v == 0 || v > max {
                return Err(Error::ValueOutOfRange {
                    column: i + 1,
                    value: v,
                    max,
                });
            }
        }
        let top = seq.iter().copied().max().unwrap_or(1);
        let depth = ((u32::BITS - top.leading_zeros()) as usize).max(1);

        let mut cur = seq.to_vec();
        let mut next = Vec::with_capacity(seq.len());
        let mut levels = Vec::with_capacity(depth);
        let mut zeros = Vec::with_capacity(depth);
        for level in 0..depth {
            let shift = depth - 1 - level;
            let bv = RankBitvector::from_fn(cur.len(), |i| (cur[i] >> shift) & 1 == 1);
            next.clear();
            next.extend(cur.iter().filter(|&&v| (v >> shift) & 1 == 0));
            next.extend(cur.iter().filter(|&&v| (v >> shift) & 1 == 1));
            std::mem::swap(&mut cur, &mut next);
            zeros.push(bv.count_zeros());
            levels.push(bv);
        }
        Ok(WaveletMatrix {
            levels,
            zeros,
            depth,
            len: seq.len(),
        })
    }

    /// Number of columns.
    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    /// Number of bit levels.
    pub fn depth(&self) -> usize {
        self.depth
    }

    pub fn level(&self, level: usize) -> &RankBitvector {
        &self.levels[level]
    }

    /// Number of zero bits at `level`.
    pub fn zeros(&self, level: usize) -> usize {
        self.zeros[level]
    }

    /// `S[col]` for a 1-based column.
    pub fn access(&self, col: usize) -> Result<u32> {
        if col == 0 || col > self.len {
            return Err(Error::PositionOutOfRange {
                pos: col,
                max: self.len,
            });
        }
        let mut p = col - 1;
        let mut value = 0u32;
        for level in 0..self.depth {
            let (bit, ones) = self.levels[level].bit_and_rank1(p);
            value = (value << 1) | bit as u32;
            p = if bit { self.zeros[level] + ones } else { p - ones };
        }
        Ok(value)
    }

    /// Maps position `p` of order `level` to its position in order `level + 1`.
    #[inline]
    pub fn step(&self, level: usize, p: usize) -> usize {
        let (bit, ones) = self.levels[level].bit_and_rank1(p);
        if bit {
            self.zeros[level] + ones
        } else {
            p - ones
        }
    }

    /// Maps position `p` of `order` down to the final order.
    #[inline]
    pub fn track(&self, order: usize, mut p: usize) -> usize {
        for level in order..self.depth {
            p = self.step(level, p);
        }
        p
    }

    /// Rearranges `src` (laid out in order `level`) into order `level + 1`.
    pub fn permute_down<T: Copy>(&self, level: usize, src: &[T], dst: &mut Vec<T>) {
        let bv = &self.levels[level];
        dst.clear();
        dst.extend((0..src.len()).filter(|&i| !bv.get(i)).map(|i| src[i]));
        dst.extend((0..src.len()).filter(|&i| bv.get(i)).map(|i| src[i]));
    }

    /// Smallest value among columns `x1..=x2` (1-based), if the range is nonempty.
    pub fn range_min(&self, x1: usize, x2: usize) -> Option<u32> {
        if x1 == 0 || x1 > x2 || x2 > self.len {
            return None;
        }
        let (mut a, mut b) = (x1 - 1, x2);
        let mut value = 0u32;
        for level in 0..self.depth {
            let bv = &self.levels[level];
            let (ra, rb) = (bv.rank1(a), bv.rank1(b));
            let (za, zb) = (a - ra, b - rb);
            if zb > za {
                value <<= 1;
                a = za;
                b = zb;
            } else {
                value = (value << 1) | 1;
                a = self.zeros[level] + ra;
                b = self.zeros[level] + rb;
            }
        }
        Some(value)
    }

    /// Decomposes the rectangle `[x1, x2] x [y1, y2]` (1-based columns,
    /// inclusive values) into maximal spans, at most two per order and at most
    /// one per order when the value range is one-sided. Spans are listed
    /// order by order, left to right.
    pub fn decompose(&self, x1: usize, x2: usize, y1: u32, y2: u32) -> Vec<Span> {
        let mut out = Vec::new();
        let x2 = x2.min(self.len);
        if x1 == 0 || x1 > x2 || y1 > y2 {
            return out;
        }
        let depth = self.depth;
        let full = (1u64 << depth) - 1;
        // Stored values are at least 1, so a lower bound of 1 is one-sided.
        let y1 = if y1 <= 1 { 0 } else { y1 as u64 };
        let y2 = (y2 as u64).min(full);
        if y1 > y2 {
            return out;
        }
        // (start, end, prefix) of partially covered nodes at the current order.
        let mut frontier: Vec<(usize, usize, u64)> = Vec::with_capacity(2);
        if y1 == 0 && y2 == full {
            out.push(Span {
                order: 0,
                start: x1 - 1,
                end: x2,
                lo: 0,
                hi: full as u32,
            });
            return out;
        }
        frontier.push((x1 - 1, x2, 0));
        let mut next = Vec::with_capacity(4);
        for level in 0..depth {
            let bv = &self.levels[level];
            let z = self.zeros[level];
            let width = depth - level - 1;
            let first = out.len();
            next.clear();
            for &(a, b, prefix) in &frontier {
                let (ra, rb) = (bv.rank1(a), bv.rank1(b));
                let children = [
                    (a - ra, b - rb, prefix << 1),
                    (z + ra, z + rb, (prefix << 1) | 1),
                ];
                for (ca, cb, cp) in children {
                    if ca >= cb {
                        continue;
                    }
                    let lo = cp << width;
                    let hi = lo + (1u64 << width) - 1;
                    if hi < y1 || lo > y2 {
                        continue;
                    }
                    if y1 <= lo && hi <= y2 {
                        out.push(Span {
                            order: level + 1,
                            start: ca,
                            end: cb,
                            lo: lo as u32,
                            hi: hi as u32,
                        });
                    } else {
                        next.push((ca, cb, cp));
                    }
                }
            }
            out[first..].sort_by_key(|s| s.start);
            std::mem::swap(&mut frontier, &mut next);
            if frontier.is_empty() {
                break;
            }
        }
        out
    }
}
