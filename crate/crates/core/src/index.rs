//! The assembled two-level index: a character-level FM-index over the text,
//! a phrase-level FM-index over the parse, and the boundary bitvector that
//! moves intervals between the two levels.
//!
//! `count` parses the pattern, backward-searches its tail `beta` character by
//! character, jumps to the parse level for the run of complete phrases, jumps
//! back, and finishes with the characters of `alpha` in front of the first
//! trigger window. `count_baseline` is the plain single-level search used for
//! comparison.

use std::collections::BTreeMap;

use crate::pfp::{self, ParseResult, PhraseMap, QueryEncoding, TriggerOracle};
use crate::succinct::{BitVector, BitVectorBuilder, WaveletTree};
use crate::suffix::{
    build_c_array, build_suffix_array, bwt_from_sa, ByteAlphabet, CArray, IntSequence,
};
use crate::{Error, SENTINEL};

/// Inclusive interval of BWT matrix rows.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Interval {
    Empty,
    Rows { lo: usize, hi: usize },
}

impl Interval {
    pub fn new(lo: usize, hi: usize) -> Self {
        assert!(lo <= hi);
        Interval::Rows { lo, hi }
    }

    /// All rows of a matrix with `len` rows.
    pub fn full(len: usize) -> Self {
        if len == 0 {
            Interval::Empty
        } else {
            Interval::Rows { lo: 0, hi: len - 1 }
        }
    }

    pub fn len(&self) -> usize {
        match *self {
            Interval::Empty => 0,
            Interval::Rows { lo, hi } => hi - lo + 1,
        }
    }

    pub fn is_empty(&self) -> bool {
        matches!(self, Interval::Empty)
    }
}

fn extend(bwt: &WaveletTree, c: &CArray, iv: Interval, sym: usize) -> Interval {
    let Interval::Rows { lo, hi } = iv else {
        return Interval::Empty;
    };
    if sym >= c.alphabet_size() {
        return Interval::Empty;
    }
    let base = c[sym];
    let new_lo = base + bwt.rank(sym as u32, lo);
    let new_end = base + bwt.rank(sym as u32, hi + 1);
    if new_lo == new_end {
        Interval::Empty
    } else {
        Interval::Rows { lo: new_lo, hi: new_end - 1 }
    }
}

/// FM-index over the sentinel-terminated text: wavelet tree of the BWT, the
/// C-array, and the dense byte remap.
#[derive(Debug, Clone)]
pub struct CharFmIndex {
    bwt: WaveletTree,
    c: CArray,
    alphabet: ByteAlphabet,
}

impl CharFmIndex {
    pub(crate) fn new(bwt: WaveletTree, c: CArray, alphabet: ByteAlphabet) -> Self {
        Self { bwt, c, alphabet }
    }

    /// Number of rows, equal to the text length including the sentinel.
    pub fn len(&self) -> usize {
        self.bwt.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bwt.is_empty()
    }

    /// Narrows `iv` to the rows whose rotation starts with `byte` followed
    /// by a rotation in `iv`. Bytes outside the text alphabet yield `Empty`.
    pub fn backward_extend(&self, iv: Interval, byte: u8) -> Interval {
        match self.alphabet.encode(byte) {
            Some(code) => extend(&self.bwt, &self.c, iv, code as usize),
            None => Interval::Empty,
        }
    }

    /// Backward search, consuming the pattern right to left.
    pub fn backward_search(&self, pattern: &[u8], start: Interval) -> Interval {
        pattern.iter().rev().fold(start, |iv, &b| self.backward_extend(iv, b))
    }

    pub fn bwt_byte(&self, row: usize) -> u8 {
        self.alphabet.decode(self.bwt.access(row) as u8)
    }

    pub(crate) fn wavelet(&self) -> &WaveletTree {
        &self.bwt
    }

    pub(crate) fn c_array(&self) -> &CArray {
        &self.c
    }

    pub(crate) fn alphabet(&self) -> &ByteAlphabet {
        &self.alphabet
    }
}

/// FM-index over the rotated parse; symbols are phrase ids.
#[derive(Debug, Clone)]
pub struct ParseFmIndex {
    bwt: WaveletTree,
    c: CArray,
}

impl ParseFmIndex {
    pub(crate) fn new(bwt: WaveletTree, c: CArray) -> Self {
        Self { bwt, c }
    }

    /// Number of rows, equal to the number of phrases in the parse.
    pub fn len(&self) -> usize {
        self.bwt.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bwt.is_empty()
    }

    pub fn backward_extend(&self, iv: Interval, id: u32) -> Interval {
        extend(&self.bwt, &self.c, iv, id as usize)
    }

    pub fn backward_search(&self, ids: &[u32], start: Interval) -> Interval {
        ids.iter().rev().fold(start, |iv, &id| self.backward_extend(iv, id))
    }

    pub fn bwt_id(&self, row: usize) -> u32 {
        self.bwt.access(row)
    }

    pub(crate) fn wavelet(&self) -> &WaveletTree {
        &self.bwt
    }

    pub(crate) fn c_array(&self) -> &CArray {
        &self.c
    }
}

/// Build-time diagnostics reported by the CLI.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IndexStats {
    /// Indexed length, including the sentinel.
    pub text_len: usize,
    /// Number of distinct phrases.
    pub phrase_count: usize,
    /// Number of phrase occurrences in the parse.
    pub parse_len: usize,
    /// (phrase length, distinct phrases of that length), ascending.
    pub phrase_length_histogram: Vec<(u32, u32)>,
}

impl IndexStats {
    /// Mean length of the distinct phrases.
    pub fn mean_phrase_len(&self) -> f64 {
        let total: u64 = self
            .phrase_length_histogram
            .iter()
            .map(|&(len, count)| len as u64 * count as u64)
            .sum();
        total as f64 / self.phrase_count as f64
    }
}

/// Interval trace of an accelerated `count`, one entry per stage.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CountTrace {
    /// After backward-searching `beta` on the character level.
    pub beta_interval: Interval,
    /// After mapping to the parse level.
    pub parse_interval: Interval,
    /// After backward-searching the complete phrase ids.
    pub mid_interval: Interval,
    /// After mapping back to the character level.
    pub char_interval: Interval,
    /// After backward-searching `alpha` without its trailing window.
    pub final_interval: Interval,
}

#[derive(Debug, Clone)]
pub struct TwoLevelIndex {
    char_fm: CharFmIndex,
    parse_fm: ParseFmIndex,
    boundary: BitVector,
    map: PhraseMap,
    oracle: TriggerOracle,
    stats: IndexStats,
}

impl TwoLevelIndex {
    /// Indexes `text`, which must be non-empty and free of the 0x00 sentinel;
    /// the sentinel is appended internally. `seed` picks the fingerprint base
    /// for the phrase map.
    pub fn build(text: &[u8], oracle: TriggerOracle, seed: u64) -> Result<Self, Error> {
        if text.is_empty() {
            return Err(Error::EmptyText);
        }
        if let Some(pos) = text.iter().position(|&b| b == SENTINEL) {
            return Err(Error::SentinelInInput(pos));
        }
        let mut s = Vec::with_capacity(text.len() + 1);
        s.extend_from_slice(text);
        s.push(SENTINEL);

        let ParseResult { dictionary, parse, triggers } = pfp::parse_text(&s, &oracle)?;

        let alphabet = ByteAlphabet::from_text(&s);
        let seq = IntSequence::new(alphabet.encode_all(&s), alphabet.sigma())?;
        let n = seq.len();
        let c = build_c_array(&seq);
        let boundary;
        let bwt_s;
        {
            // The suffix array is by far the largest transient, so derive
            // everything that needs it inside this scope.
            let sa = build_suffix_array(&seq);
            bwt_s = bwt_from_sa(&seq, &sa);
            let mut is_trigger = vec![false; n];
            for &t in &triggers {
                is_trigger[t] = true;
            }
            let mut marks = BitVectorBuilder::new();
            for &p in sa.positions() {
                marks.push(is_trigger[p as usize]);
            }
            boundary = marks.finish();
        }
        drop(seq);
        let char_fm =
            CharFmIndex::new(WaveletTree::new(&bwt_s, alphabet.sigma() as u32), c, alphabet);
        drop(bwt_s);

        // Phrase level: rotating the parse so its unique 0 comes last makes
        // rotation order equal suffix order.
        let mut rotated_parse: Vec<u32> = parse[1..].to_vec();
        rotated_parse.push(parse[0]);
        let parse_seq = IntSequence::new(rotated_parse, dictionary.len())?;
        let sa_p = build_suffix_array(&parse_seq);
        let c_p = build_c_array(&parse_seq);
        let bwt_p = bwt_from_sa(&parse_seq, &sa_p);
        let parse_fm = ParseFmIndex::new(WaveletTree::new(&bwt_p, dictionary.len() as u32), c_p);

        let mut histogram = BTreeMap::new();
        for phrase in dictionary.phrases() {
            *histogram.entry(phrase.len() as u32).or_insert(0u32) += 1;
        }
        let stats = IndexStats {
            text_len: n,
            phrase_count: dictionary.len(),
            parse_len: parse.len(),
            phrase_length_histogram: histogram.into_iter().collect(),
        };

        let map = pfp::build_phrase_map(dictionary, seed)?;
        Self::from_parts(char_fm, parse_fm, boundary, map, oracle, stats)
    }

    pub(crate) fn from_parts(
        char_fm: CharFmIndex,
        parse_fm: ParseFmIndex,
        boundary: BitVector,
        map: PhraseMap,
        oracle: TriggerOracle,
        stats: IndexStats,
    ) -> Result<Self, Error> {
        if boundary.len() != char_fm.len() {
            return Err(Error::Format("boundary bitvector length differs from text length".into()));
        }
        if boundary.count_ones() != parse_fm.len() {
            return Err(Error::Format("boundary mark count differs from parse length".into()));
        }
        if map.phrase_count() == 0 || map.phrase_count() > parse_fm.len() {
            return Err(Error::Format("phrase table size inconsistent with parse".into()));
        }
        Ok(Self { char_fm, parse_fm, boundary, map, oracle, stats })
    }

    /// Occurrences of `pattern` in the indexed text (the sentinel is not
    /// matchable). Empty patterns and patterns containing 0x00 occur zero
    /// times by definition.
    pub fn count(&self, pattern: &[u8]) -> usize {
        self.count_with_trace(pattern).0
    }

    /// `count` plus the stage-by-stage intervals; the trace is present only
    /// when the two-level path runs (a pattern with triggers, all complete
    /// phrases in the dictionary).
    pub fn count_with_trace(&self, pattern: &[u8]) -> (usize, Option<CountTrace>) {
        if pattern.is_empty() || pattern.contains(&SENTINEL) {
            return (0, None);
        }
        match pfp::parse_query(pattern, &self.oracle, &self.map) {
            QueryEncoding::NoTrigger => {
                let iv = self.char_fm.backward_search(pattern, Interval::full(self.char_fm.len()));
                (iv.len(), None)
            }
            QueryEncoding::NotInDictionary => (0, None),
            QueryEncoding::Parsed(enc) => {
                let beta_interval =
                    self.char_fm.backward_search(enc.beta, Interval::full(self.char_fm.len()));
                let parse_interval = self.map_char_to_parse(beta_interval);
                let mid_interval = self.parse_fm.backward_search(&enc.mids, parse_interval);
                let char_interval = self.map_parse_to_char(mid_interval);
                let final_interval = if enc.alpha.is_empty() {
                    char_interval
                } else {
                    // The last w characters of alpha are the first trigger
                    // window, already matched as the head of the interval.
                    let body = &enc.alpha[..enc.alpha.len() - self.oracle.window_len()];
                    self.char_fm.backward_search(body, char_interval)
                };
                let trace = CountTrace {
                    beta_interval,
                    parse_interval,
                    mid_interval,
                    char_interval,
                    final_interval,
                };
                (final_interval.len(), Some(trace))
            }
        }
    }

    /// Plain single-level backward search over the whole pattern.
    pub fn count_baseline(&self, pattern: &[u8]) -> usize {
        if pattern.is_empty() || pattern.contains(&SENTINEL) {
            return 0;
        }
        self.char_fm.backward_search(pattern, Interval::full(self.char_fm.len())).len()
    }

    /// Maps a character-level interval whose rows all start at trigger
    /// positions to the parse-level interval of the same rotations.
    pub fn map_char_to_parse(&self, iv: Interval) -> Interval {
        char_to_parse(&self.boundary, iv)
    }

    /// Maps a parse-level interval to the character-level interval spanning
    /// the same rotations.
    pub fn map_parse_to_char(&self, iv: Interval) -> Interval {
        parse_to_char(&self.boundary, iv)
    }

    pub fn char_fm(&self) -> &CharFmIndex {
        &self.char_fm
    }

    pub fn parse_fm(&self) -> &ParseFmIndex {
        &self.parse_fm
    }

    pub fn boundary(&self) -> &BitVector {
        &self.boundary
    }

    pub fn phrase_map(&self) -> &PhraseMap {
        &self.map
    }

    pub fn oracle(&self) -> &TriggerOracle {
        &self.oracle
    }

    pub fn stats(&self) -> &IndexStats {
        &self.stats
    }

    /// Indexed length including the sentinel.
    pub fn text_len(&self) -> usize {
        self.char_fm.len()
    }
}

fn char_to_parse(boundary: &BitVector, iv: Interval) -> Interval {
    let Interval::Rows { lo, hi } = iv else {
        return Interval::Empty;
    };
    let before = boundary.rank1(lo);
    let through = boundary.rank1(hi + 1);
    // Any unmarked row would mean a beta interval row not starting at a
    // trigger, which the parse construction rules out.
    assert!(through - before == hi - lo + 1, "every row of the interval must be marked");
    Interval::Rows { lo: before, hi: through - 1 }
}

fn parse_to_char(boundary: &BitVector, iv: Interval) -> Interval {
    let Interval::Rows { lo, hi } = iv else {
        return Interval::Empty;
    };
    let lo2 = boundary.select1(lo + 1).expect("parse row beyond the marked rows");
    let hi2 = boundary.select1(hi + 1).expect("parse row beyond the marked rows");
    Interval::Rows { lo: lo2, hi: hi2 }
}
