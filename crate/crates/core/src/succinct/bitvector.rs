//! Plain bitvector with rank/select support.
//!
//! Bits are packed LSB-first into 64-bit words. Rank uses a two-level
//! directory: absolute counts per 512-bit superblock plus 16-bit relative
//! counts per word, so `rank1` is a handful of loads. Select keeps the
//! position of every 512th set bit and narrows the rest of the way with a
//! binary search over superblocks, then a word scan.

const WORD_BITS: usize = 64;
const WORDS_PER_SUPER: usize = 8;
const SUPER_BITS: usize = WORD_BITS * WORDS_PER_SUPER;
const SELECT_SAMPLE: usize = 512;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BitVector {
    pub(crate) words: Vec<u64>,
    pub(crate) n_bits: usize,
    ones: usize,
    /// ones before each superblock; one trailing entry equal to `ones`.
    super_ranks: Vec<u64>,
    /// ones from the enclosing superblock start to each word start.
    word_ranks: Vec<u16>,
    /// bit position of the (k * SELECT_SAMPLE + 1)-th set bit.
    select_samples: Vec<u64>,
}

#[derive(Debug, Default)]
pub struct BitVectorBuilder {
    words: Vec<u64>,
    len: usize,
}

impl BitVectorBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with_capacity(bits: usize) -> Self {
        Self {
            words: Vec::with_capacity(bits.div_ceil(WORD_BITS)),
            len: 0,
        }
    }

    #[inline]
    pub fn push(&mut self, bit: bool) {
        let offset = self.len % WORD_BITS;
        if offset == 0 {
            self.words.push(0);
        }
        if bit {
            *self.words.last_mut().unwrap() |= 1u64 << offset;
        }
        self.len += 1;
    }

    pub fn finish(self) -> BitVector {
        BitVector::from_words(self.words, self.len)
    }
}

impl BitVector {
    pub fn from_bits(bits: impl IntoIterator<Item = bool>) -> Self {
        let mut b = BitVectorBuilder::new();
        for bit in bits {
            b.push(bit);
        }
        b.finish()
    }

    /// Rebuilds the rank/select directories from packed words. Trailing bits
    /// in the last word beyond `n_bits` are cleared.
    pub(crate) fn from_words(mut words: Vec<u64>, n_bits: usize) -> Self {
        let n_words = n_bits.div_ceil(WORD_BITS);
        assert!(words.len() == n_words, "word count does not match bit count");
        if n_bits % WORD_BITS != 0 {
            if let Some(last) = words.last_mut() {
                *last &= (1u64 << (n_bits % WORD_BITS)) - 1;
            }
        }

        let n_supers = n_words.div_ceil(WORDS_PER_SUPER);
        let mut super_ranks = Vec::with_capacity(n_supers + 1);
        let mut word_ranks = Vec::with_capacity(n_words);
        let mut select_samples = Vec::new();
        let mut ones = 0usize;
        for (w, &word) in words.iter().enumerate() {
            if w % WORDS_PER_SUPER == 0 {
                super_ranks.push(ones as u64);
            }
            word_ranks.push((ones as u64 - super_ranks[w / WORDS_PER_SUPER]) as u16);
            let count = word.count_ones() as usize;
            while select_samples.len() * SELECT_SAMPLE + 1 <= ones + count {
                let within = select_samples.len() * SELECT_SAMPLE + 1 - ones;
                select_samples.push((w * WORD_BITS + select_in_word(word, within)) as u64);
            }
            ones += count;
        }
        super_ranks.push(ones as u64);

        Self {
            words,
            n_bits,
            ones,
            super_ranks,
            word_ranks,
            select_samples,
        }
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.n_bits
    }

    pub fn is_empty(&self) -> bool {
        self.n_bits == 0
    }

    #[inline]
    pub fn count_ones(&self) -> usize {
        self.ones
    }

    #[inline]
    pub fn get(&self, i: usize) -> bool {
        assert!(i < self.n_bits, "bit index {i} out of range ({})", self.n_bits);
        self.words[i / WORD_BITS] >> (i % WORD_BITS) & 1 == 1
    }

    /// Number of set bits strictly before position `i`; `i` may equal `len()`.
    #[inline]
    pub fn rank1(&self, i: usize) -> usize {
        assert!(i <= self.n_bits, "rank index {i} out of range ({})", self.n_bits);
        if i == self.n_bits {
            return self.ones;
        }
        let w = i / WORD_BITS;
        let masked = self.words[w] & ((1u64 << (i % WORD_BITS)) - 1);
        self.super_ranks[w / WORDS_PER_SUPER] as usize
            + self.word_ranks[w] as usize
            + masked.count_ones() as usize
    }

    #[inline]
    pub fn rank0(&self, i: usize) -> usize {
        i - self.rank1(i)
    }

    /// Position of the k-th set bit, 1-based. `None` when there is no such
    /// occurrence.
    pub fn select1(&self, k: usize) -> Option<usize> {
        if k == 0 || k > self.ones {
            return None;
        }
        // Narrow to a superblock range using the nearest sample, then binary
        // search for the superblock holding the k-th one.
        let sample = self.select_samples[(k - 1) / SELECT_SAMPLE] as usize;
        let mut lo = sample / SUPER_BITS;
        let mut hi = match self.select_samples.get((k - 1) / SELECT_SAMPLE + 1) {
            Some(&next) => next as usize / SUPER_BITS + 1,
            None => self.super_ranks.len() - 1,
        };
        while hi - lo > 1 {
            let mid = lo + (hi - lo) / 2;
            if (self.super_ranks[mid] as usize) < k {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        let mut remaining = k - self.super_ranks[lo] as usize;
        let word_end = ((lo + 1) * WORDS_PER_SUPER).min(self.words.len());
        for w in lo * WORDS_PER_SUPER..word_end {
            let count = self.words[w].count_ones() as usize;
            if remaining <= count {
                return Some(w * WORD_BITS + select_in_word(self.words[w], remaining));
            }
            remaining -= count;
        }
        unreachable!("select directory out of sync");
    }

    /// Total variant of [`select1`](Self::select1): out-of-range `k` yields
    /// `len()` instead of an error.
    pub fn select1_or_len(&self, k: usize) -> usize {
        self.select1(k).unwrap_or(self.n_bits)
    }
}

/// Position of the k-th set bit within a word, 1-based; caller guarantees the
/// word has at least k set bits.
#[inline]
fn select_in_word(mut word: u64, k: usize) -> usize {
    for _ in 1..k {
        word &= word - 1;
    }
    word.trailing_zeros() as usize
}
