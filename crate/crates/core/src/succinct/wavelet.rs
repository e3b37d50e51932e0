//! Balanced wavelet tree over integer alphabets, stored level-wise: level `l`
//! holds bit `height-1-l` of every symbol, and each level's order is the
//! previous order stably partitioned by that bit (zeros first). Rank and
//! access walk the levels with two bitvector ranks apiece, so both cost
//! O(log alphabet) regardless of alphabet size.

use super::{BitVector, BitVectorBuilder};
use crate::{Error, Symbol};

#[derive(Debug, Clone)]
pub struct WaveletTree {
    pub(crate) levels: Vec<BitVector>,
    /// count of zero bits per level, the offset of the ones block.
    pub(crate) zeros: Vec<usize>,
    pub(crate) alphabet_size: u32,
    pub(crate) len: usize,
}

impl WaveletTree {
    pub fn new<S: Symbol>(seq: &[S], alphabet_size: u32) -> Self {
        for &s in seq {
            assert!(
                s.index() < alphabet_size.max(1) as usize,
                "symbol {} outside alphabet of size {alphabet_size}",
                s.index()
            );
        }
        let height = height_for(alphabet_size);
        let mut levels = Vec::with_capacity(height as usize);
        let mut zeros = Vec::with_capacity(height as usize);
        let mut cur: Vec<S> = seq.to_vec();
        let mut next: Vec<S> = cur.clone();
        for level in 0..height {
            let shift = height - 1 - level;
            let mut builder = BitVectorBuilder::with_capacity(cur.len());
            let zero_count = cur.iter().filter(|s| s.index() >> shift & 1 == 0).count();
            let (mut z, mut o) = (0usize, zero_count);
            for &v in &cur {
                if v.index() >> shift & 1 == 0 {
                    builder.push(false);
                    next[z] = v;
                    z += 1;
                } else {
                    builder.push(true);
                    next[o] = v;
                    o += 1;
                }
            }
            levels.push(builder.finish());
            zeros.push(zero_count);
            std::mem::swap(&mut cur, &mut next);
        }
        Self {
            levels,
            zeros,
            alphabet_size,
            len: seq.len(),
        }
    }

    /// Reassembles a tree from stored levels, recomputing the partition
    /// offsets. Used when loading an index from disk.
    pub(crate) fn from_parts(
        levels: Vec<BitVector>,
        alphabet_size: u32,
        len: usize,
    ) -> Result<Self, Error> {
        if levels.len() as u32 != height_for(alphabet_size) {
            return Err(Error::Format("wavelet level count mismatch".into()));
        }
        if levels.iter().any(|l| l.len() != len) {
            return Err(Error::Format("wavelet level length mismatch".into()));
        }
        let zeros = levels.iter().map(|l| l.len() - l.count_ones()).collect();
        Ok(Self { levels, zeros, alphabet_size, len })
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    #[inline]
    pub fn alphabet_size(&self) -> u32 {
        self.alphabet_size
    }

    pub fn height(&self) -> u32 {
        self.levels.len() as u32
    }

    /// Symbol stored at position `i`.
    pub fn access(&self, i: usize) -> u32 {
        assert!(i < self.len, "access index {i} out of range ({})", self.len);
        let mut pos = i;
        let mut code = 0u32;
        for (level, bv) in self.levels.iter().enumerate() {
            if bv.get(pos) {
                code |= 1 << (self.levels.len() - 1 - level);
                pos = self.zeros[level] + bv.rank1(pos);
            } else {
                pos -= bv.rank1(pos);
            }
        }
        code
    }

    /// Count of symbol `c` in the prefix of length `i`. Symbols outside the
    /// alphabet occur zero times.
    pub fn rank(&self, c: u32, i: usize) -> usize {
        assert!(i <= self.len, "rank index {i} out of range ({})", self.len);
        if c >= self.alphabet_size {
            return 0;
        }
        if self.levels.is_empty() {
            // Single-symbol alphabet: every position holds symbol 0.
            return i;
        }
        let mut lo = 0usize;
        let mut hi = i;
        for (level, bv) in self.levels.iter().enumerate() {
            if c >> (self.levels.len() - 1 - level) & 1 == 1 {
                lo = self.zeros[level] + bv.rank1(lo);
                hi = self.zeros[level] + bv.rank1(hi);
            } else {
                lo -= bv.rank1(lo);
                hi -= bv.rank1(hi);
            }
        }
        hi - lo
    }
}

fn height_for(alphabet_size: u32) -> u32 {
    if alphabet_size <= 1 {
        0
    } else {
        32 - (alphabet_size - 1).leading_zeros()
    }
}
