//! Suffix sorting and derived structures: SA-IS over integer alphabets, the
//! BWT read off a suffix array, the C-array of cumulative symbol counts, and
//! the dense remap from raw bytes to a compact alphabet.
//!
//! Everything here assumes the sentinel contract captured by [`IntSequence`]:
//! symbol 0 occurs exactly once, at the last position. Positions are 32-bit,
//! which bounds texts at a little under 4 GiB and keeps the suffix array half
//! the size of a `usize` one.

use crate::{Error, Symbol};

/// Sequence of integer symbols ending in a unique, minimal sentinel.
#[derive(Debug, Clone)]
pub struct IntSequence<S> {
    symbols: Vec<S>,
    alphabet_size: usize,
}

impl<S: Symbol> IntSequence<S> {
    pub fn new(symbols: Vec<S>, alphabet_size: usize) -> Result<Self, Error> {
        if symbols.is_empty() {
            return Err(Error::BadSequence("sequence is empty".into()));
        }
        if symbols.len() > (u32::MAX - 1) as usize {
            return Err(Error::TextTooLarge(symbols.len()));
        }
        if symbols.last().unwrap().index() != 0 {
            return Err(Error::BadSequence("last symbol is not the sentinel 0".into()));
        }
        for (i, &s) in symbols.iter().enumerate() {
            if s.index() == 0 && i + 1 != symbols.len() {
                return Err(Error::BadSequence(format!("sentinel 0 also occurs at position {i}")));
            }
            if s.index() >= alphabet_size {
                return Err(Error::BadSequence(format!(
                    "symbol {} at position {i} outside alphabet of size {alphabet_size}",
                    s.index()
                )));
            }
        }
        Ok(Self { symbols, alphabet_size })
    }

    pub fn symbols(&self) -> &[S] {
        &self.symbols
    }

    pub fn alphabet_size(&self) -> usize {
        self.alphabet_size
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }
}

/// Lexicographic order of all suffixes, as starting positions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SuffixArray {
    sa: Vec<u32>,
}

impl SuffixArray {
    pub fn positions(&self) -> &[u32] {
        &self.sa
    }

    pub fn len(&self) -> usize {
        self.sa.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sa.is_empty()
    }
}

/// For each symbol `c`, the number of suffixes starting with a smaller
/// symbol; indexable by `c` in `0..=alphabet_size`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CArray {
    counts: Vec<usize>,
}

impl CArray {
    pub(crate) fn from_counts(counts: Vec<usize>) -> Self {
        Self { counts }
    }

    pub(crate) fn counts(&self) -> &[usize] {
        &self.counts
    }

    /// Number of symbols (the C-array has one more entry).
    pub fn alphabet_size(&self) -> usize {
        self.counts.len() - 1
    }
}

impl std::ops::Index<usize> for CArray {
    type Output = usize;

    fn index(&self, c: usize) -> &usize {
        &self.counts[c]
    }
}

pub fn build_suffix_array<S: Symbol>(seq: &IntSequence<S>) -> SuffixArray {
    let mut sa = vec![0u32; seq.len()];
    sais(seq.symbols(), seq.alphabet_size(), &mut sa);
    SuffixArray { sa }
}

/// Last column of the sorted-rotations matrix: `BWT[i] = s[(sa[i] + n - 1) mod n]`.
pub fn bwt_from_sa<S: Symbol>(seq: &IntSequence<S>, sa: &SuffixArray) -> Vec<S> {
    let s = seq.symbols();
    let n = s.len();
    sa.positions()
        .iter()
        .map(|&p| if p == 0 { s[n - 1] } else { s[p as usize - 1] })
        .collect()
}

pub fn build_c_array<S: Symbol>(seq: &IntSequence<S>) -> CArray {
    let mut counts = vec![0usize; seq.alphabet_size() + 1];
    for &s in seq.symbols() {
        counts[s.index() + 1] += 1;
    }
    for c in 1..counts.len() {
        counts[c] += counts[c - 1];
    }
    CArray { counts }
}

/// Dense code assignment for the bytes present in a text. Codes follow byte
/// order, so the 0x00 sentinel always gets code 0.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ByteAlphabet {
    code_to_byte: Vec<u8>,
    byte_to_code: [u16; 256],
}

const ABSENT: u16 = u16::MAX;

impl ByteAlphabet {
    pub fn from_text(text: &[u8]) -> Self {
        let mut present = [false; 256];
        for &b in text {
            present[b as usize] = true;
        }
        let bytes = (0u16..256).filter(|&b| present[b as usize]).map(|b| b as u8);
        Self::from_code_table(bytes.collect()).expect("presence scan yields sorted distinct bytes")
    }

    /// Rebuilds the inverse table from a sorted list of distinct bytes.
    pub(crate) fn from_code_table(code_to_byte: Vec<u8>) -> Result<Self, Error> {
        if code_to_byte.is_empty() || code_to_byte.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::Format("alphabet table not sorted and distinct".into()));
        }
        let mut byte_to_code = [ABSENT; 256];
        for (code, &b) in code_to_byte.iter().enumerate() {
            byte_to_code[b as usize] = code as u16;
        }
        Ok(Self { code_to_byte, byte_to_code })
    }

    pub fn sigma(&self) -> usize {
        self.code_to_byte.len()
    }

    #[inline]
    pub fn encode(&self, byte: u8) -> Option<u8> {
        match self.byte_to_code[byte as usize] {
            ABSENT => None,
            code => Some(code as u8),
        }
    }

    pub fn decode(&self, code: u8) -> u8 {
        self.code_to_byte[code as usize]
    }

    /// Encodes a text whose bytes are all known to be in the alphabet.
    pub fn encode_all(&self, text: &[u8]) -> Vec<u8> {
        text.iter()
            .map(|&b| self.encode(b).expect("byte outside alphabet"))
            .collect()
    }

    pub(crate) fn code_table(&self) -> &[u8] {
        &self.code_to_byte
    }
}

const EMPTY: u32 = u32::MAX;

/// SA-IS: classify suffixes as S/L, sort the LMS substrings by one induction
/// round, name them, recurse on the reduced string if names repeat, then
/// induce the full order from the sorted LMS suffixes.
fn sais<S: Symbol>(s: &[S], sigma: usize, sa: &mut [u32]) {
    let n = s.len();
    debug_assert_eq!(sa.len(), n);
    if n == 0 {
        return;
    }
    if n == 1 {
        sa[0] = 0;
        return;
    }

    // is_s[i]: suffix i sorts before suffix i+1 (ties propagate leftwards).
    let mut is_s = vec![false; n];
    is_s[n - 1] = true;
    for i in (0..n - 1).rev() {
        is_s[i] = s[i] < s[i + 1] || (s[i] == s[i + 1] && is_s[i + 1]);
    }

    let mut counts = vec![0u32; sigma];
    for &c in s {
        counts[c.index()] += 1;
    }

    // Round 1: seed LMS positions at bucket tails in text order; induction
    // leaves the LMS substrings sorted among themselves.
    sa.fill(EMPTY);
    {
        let mut tails = bucket_tails(&counts);
        for i in 1..n {
            if is_s[i] && !is_s[i - 1] {
                let c = s[i].index();
                tails[c] -= 1;
                sa[tails[c] as usize] = i as u32;
            }
        }
    }
    induce(s, &is_s, &counts, sa);

    // Compact the LMS positions, now in sorted LMS-substring order.
    let mut n1 = 0;
    for i in 0..n {
        let j = sa[i] as usize;
        if j > 0 && is_s[j] && !is_s[j - 1] {
            sa[n1] = sa[i];
            n1 += 1;
        }
    }

    // Name LMS substrings; equal neighbors share a name. Names are parked at
    // sa[n1 + pos/2], which cannot clash since LMS positions are 2 apart.
    for slot in sa[n1..].iter_mut() {
        *slot = EMPTY;
    }
    let mut names = 0u32;
    let mut prev = usize::MAX;
    for i in 0..n1 {
        let pos = sa[i] as usize;
        if prev == usize::MAX || !lms_substrings_equal(s, &is_s, prev, pos) {
            names += 1;
        }
        sa[n1 + pos / 2] = names - 1;
        prev = pos;
    }
    let s1: Vec<u32> = sa[n1..].iter().copied().filter(|&v| v != EMPTY).collect();
    debug_assert_eq!(s1.len(), n1);

    let mut lms_pos: Vec<u32> = Vec::with_capacity(n1);
    for i in 1..n {
        if is_s[i] && !is_s[i - 1] {
            lms_pos.push(i as u32);
        }
    }

    // Order the LMS suffixes: recurse when LMS substrings repeat, otherwise
    // the names already define the permutation.
    if (names as usize) < n1 {
        let mut sa1 = vec![0u32; n1];
        sais(&s1, names as usize, &mut sa1);
        for i in 0..n1 {
            sa[i] = lms_pos[sa1[i] as usize];
        }
    } else {
        for (rank, &pos) in s1.iter().zip(&lms_pos) {
            sa[*rank as usize] = pos;
        }
    }

    // Round 2: seed the sorted LMS suffixes at bucket tails (right-to-left
    // keeps each write at or beyond the read cursor) and induce the rest.
    for slot in sa[n1..].iter_mut() {
        *slot = EMPTY;
    }
    {
        let mut tails = bucket_tails(&counts);
        for i in (0..n1).rev() {
            let j = sa[i];
            sa[i] = EMPTY;
            let c = s[j as usize].index();
            tails[c] -= 1;
            sa[tails[c] as usize] = j;
        }
    }
    induce(s, &is_s, &counts, sa);
}

fn bucket_heads(counts: &[u32]) -> Vec<u32> {
    let mut heads = Vec::with_capacity(counts.len());
    let mut sum = 0u32;
    for &c in counts {
        heads.push(sum);
        sum += c;
    }
    heads
}

fn bucket_tails(counts: &[u32]) -> Vec<u32> {
    let mut tails = Vec::with_capacity(counts.len());
    let mut sum = 0u32;
    for &c in counts {
        sum += c;
        tails.push(sum);
    }
    tails
}

/// One induction round: a left-to-right pass places every L-type predecessor
/// at its bucket head, then a right-to-left pass places every S-type
/// predecessor at its bucket tail.
fn induce<S: Symbol>(s: &[S], is_s: &[bool], counts: &[u32], sa: &mut [u32]) {
    let n = s.len();
    let mut heads = bucket_heads(counts);
    for i in 0..n {
        let j = sa[i];
        if j == EMPTY || j == 0 {
            continue;
        }
        let p = j as usize - 1;
        if !is_s[p] {
            let c = s[p].index();
            sa[heads[c] as usize] = p as u32;
            heads[c] += 1;
        }
    }
    let mut tails = bucket_tails(counts);
    for i in (0..n).rev() {
        let j = sa[i];
        if j == EMPTY || j == 0 {
            continue;
        }
        let p = j as usize - 1;
        if is_s[p] {
            let c = s[p].index();
            tails[c] -= 1;
            sa[tails[c] as usize] = p as u32;
        }
    }
}

/// Compares the substrings running from two LMS positions to their next LMS
/// positions, inclusive. The unique sentinel forces a mismatch before either
/// scan can run off the end.
fn lms_substrings_equal<S: Symbol>(s: &[S], is_s: &[bool], a: usize, b: usize) -> bool {
    if a == b {
        return true;
    }
    if s[a] != s[b] {
        return false;
    }
    let mut i = a + 1;
    let mut j = b + 1;
    loop {
        if s[i] != s[j] {
            return false;
        }
        let lms_i = is_s[i] && !is_s[i - 1];
        let lms_j = is_s[j] && !is_s[j - 1];
        if lms_i != lms_j {
            return false;
        }
        if lms_i {
            return true;
        }
        i += 1;
        j += 1;
    }
}
