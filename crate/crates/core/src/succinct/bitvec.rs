const WORDS: usize = 7;
const BLOCK_BITS: usize = WORDS * 64;

/// One cache line: the number of ones before the block, then 448 payload bits.
#[derive(Clone, Copy, Debug, Default)]
#[repr(C, align(64))]
struct Block {
    rank: u64,
    words: [u64; WORDS],
}

/// A static bitvector with constant-time `rank`.
///
/// Bits are 0-indexed; `rank1(i)` counts the ones in `bits[0..i)`.
#[derive(Clone, Debug)]
pub struct RankBitvector {
    blocks: Vec<Block>,
    len: usize,
    ones: usize,
}

impl RankBitvector {
    pub fn from_fn(len: usize, mut bit: impl FnMut(usize) -> bool) -> Self {
        // One trailing block so that rank1(len) never indexes past the end.
        let mut blocks = vec![Block::default(); len / BLOCK_BITS + 1];
        for i in 0..len {
            if bit(i) {
                let b = &mut blocks[i / BLOCK_BITS];
                let r = i % BLOCK_BITS;
                b.words[r / 64] |= 1 << (r % 64);
            }
        }
        let mut ones = 0u64;
        for b in blocks.iter_mut() {
            b.rank = ones;
            ones += b.words.iter().map(|w| w.count_ones() as u64).sum::<u64>();
        }
        RankBitvector {
            blocks,
            len,
            ones: ones as usize,
        }
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn count_ones(&self) -> usize {
        self.ones
    }

    pub fn count_zeros(&self) -> usize {
        self.len - self.ones
    }

    #[inline]
    pub fn get(&self, i: usize) -> bool {
        debug_assert!(i < self.len);
        let r = i % BLOCK_BITS;
        (self.blocks[i / BLOCK_BITS].words[r / 64] >> (r % 64)) & 1 == 1
    }

    #[inline]
    pub fn rank1(&self, i: usize) -> usize {
        debug_assert!(i <= self.len);
        self.bit_and_rank1(i).1
    }

    #[inline]
    pub fn rank0(&self, i: usize) -> usize {
        i - self.rank1(i)
    }

    /// `(bits[i], rank1(i))` from a single block read. For `i == len` the bit
    /// is reported as zero.
    #[inline]
    pub fn bit_and_rank1(&self, i: usize) -> (bool, usize) {
        let blk = &self.blocks[i / BLOCK_BITS];
        let r = i % BLOCK_BITS;
        let w = r / 64;
        let mut count = blk.rank as usize;
        for word in &blk.words[..w] {
            count += word.count_ones() as usize;
        }
        let word = blk.words[w];
        let shift = r % 64;
        count += (word & ((1u64 << shift) - 1)).count_ones() as usize;
        ((word >> shift) & 1 == 1, count)
    }
}

impl FromIterator<bool> for RankBitvector {
    fn from_iter<I: IntoIterator<Item = bool>>(iter: I) -> Self {
        let bits: Vec<bool> = iter.into_iter().collect();
        RankBitvector::from_fn(bits.len(), |i| bits[i])
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn empty() {
        let bv = RankBitvector::from_fn(0, |_| true);
        assert_eq!(bv.rank1(0), 0);
        assert_eq!(bv.rank0(0), 0);
    }

    #[test]
    fn rank_matches_prefix_sums() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for &(len, density) in &[(1usize, 0.5), (447, 0.5), (448, 0.9), (1000, 0.1), (100_000, 0.5)] {
            let bits: Vec<bool> = (0..len).map(|_| rng.gen_bool(density)).collect();
            let bv: RankBitvector = bits.iter().copied().collect();
            let mut ones = 0;
            for i in 0..=len {
                assert_eq!(bv.rank1(i), ones, "len {len} i {i}");
                assert_eq!(bv.rank0(i) + bv.rank1(i), i);
                if i < len {
                    assert_eq!(bv.get(i), bits[i]);
                    ones += bits[i] as usize;
                }
            }
            assert_eq!(bv.count_ones(), ones);
        }
    }
}
