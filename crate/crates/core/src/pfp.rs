//! Prefix-free parsing: trigger-window selection, parsing a text into a
//! dictionary of overlapping phrases plus the parse sequence, the
//! fingerprint-keyed phrase lookup, and the partial encoding of patterns.
//!
//! A phrase runs from one trigger position to the next (cyclically, for the
//! text), including the closing trigger's window, so consecutive phrases
//! overlap by `w` characters. The window starting at the sentinel position is
//! always a trigger; windows containing the sentinel anywhere else never are.

use std::collections::HashMap;

use crate::{Error, SENTINEL};

pub(crate) const KR_PRIME: u64 = (1 << 61) - 1;

/// Fixed base for the trigger-window hash. Windows have fixed length `w`, so
/// a shared base keeps trigger positions reproducible across builds while
/// still spreading hashes well.
pub(crate) const WINDOW_BASE: u64 = 16777619;

#[inline]
fn mulmod(a: u64, b: u64) -> u64 {
    ((a as u128 * b as u128) % KR_PRIME as u128) as u64
}

fn pow_mod(base: u64, mut exp: u64) -> u64 {
    let mut acc = 1u64;
    let mut base = base % KR_PRIME;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mulmod(acc, base);
        }
        base = mulmod(base, base);
        exp >>= 1;
    }
    acc
}

/// Hash of a fixed-length window; bytes feed in directly.
pub(crate) fn window_hash(bytes: &[u8]) -> u64 {
    bytes
        .iter()
        .fold(0, |h, &b| (mulmod(h, WINDOW_BASE) + b as u64) % KR_PRIME)
}

/// Fingerprint of a variable-length phrase. Bytes are shifted by one because
/// with raw bytes a leading sentinel would collapse: fp(0x00 ++ s) = fp(s)
/// for every base.
pub(crate) fn fingerprint(base: u64, bytes: &[u8]) -> u64 {
    bytes
        .iter()
        .fold(0, |h, &b| (mulmod(h, base) + b as u64 + 1) % KR_PRIME)
}

pub(crate) fn splitmix64(mut x: u64) -> u64 {
    x = x.wrapping_add(0x9e3779b97f4a7c15);
    x = (x ^ (x >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
    x = (x ^ (x >> 27)).wrapping_mul(0x94d049bb133111eb);
    x ^ (x >> 31)
}

/// Decides which length-`w` windows are triggers: either every window whose
/// Karp-Rabin hash is divisible by `p`, or membership in an explicit set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TriggerOracle {
    w: usize,
    mode: Mode,
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Mode {
    Hashed { p: u64 },
    Explicit { windows: Vec<Vec<u8>> },
}

impl TriggerOracle {
    pub fn hashed(w: usize, p: u64) -> Result<Self, Error> {
        if w < 2 {
            return Err(Error::InvalidTrigger(format!("hashed mode needs w >= 2, got {w}")));
        }
        if p == 0 {
            return Err(Error::InvalidTrigger("modulus p must be at least 1".into()));
        }
        Ok(Self { w, mode: Mode::Hashed { p } })
    }

    pub fn explicit(w: usize, mut windows: Vec<Vec<u8>>) -> Result<Self, Error> {
        if w < 1 {
            return Err(Error::InvalidTrigger("window length w must be at least 1".into()));
        }
        for win in &windows {
            if win.len() != w {
                return Err(Error::InvalidTrigger(format!(
                    "window {:?} has length {}, expected {w}",
                    String::from_utf8_lossy(win),
                    win.len()
                )));
            }
            if win.contains(&SENTINEL) {
                return Err(Error::InvalidTrigger("window contains the 0x00 sentinel".into()));
            }
        }
        windows.sort_unstable();
        windows.dedup();
        Ok(Self { w, mode: Mode::Explicit { windows } })
    }

    pub fn window_len(&self) -> usize {
        self.w
    }

    /// Modulus `p` in hashed mode.
    pub fn hashed_modulus(&self) -> Option<u64> {
        match &self.mode {
            Mode::Hashed { p } => Some(*p),
            Mode::Explicit { .. } => None,
        }
    }

    /// Sorted window set in explicit mode.
    pub fn explicit_windows(&self) -> Option<&[Vec<u8>]> {
        match &self.mode {
            Mode::Hashed { .. } => None,
            Mode::Explicit { windows } => Some(windows),
        }
    }

    /// Trigger positions of a sentinel-terminated text, scanned cyclically:
    /// the selected windows that avoid the sentinel, plus the sentinel
    /// position itself. Ascending, never empty.
    pub fn triggers_cyclic(&self, text: &[u8]) -> Vec<usize> {
        let n = text.len();
        debug_assert_eq!(text.last(), Some(&SENTINEL));
        let mut out = self.scan(&text[..n - 1]);
        out.push(n - 1);
        out
    }

    /// Trigger positions of the windows fully inside a pattern, ascending.
    pub fn triggers_linear(&self, pattern: &[u8]) -> Vec<usize> {
        self.scan(pattern)
    }

    fn scan(&self, hay: &[u8]) -> Vec<usize> {
        let w = self.w;
        let mut out = Vec::new();
        if hay.len() < w {
            return out;
        }
        match &self.mode {
            Mode::Explicit { windows } => {
                for i in 0..=hay.len() - w {
                    if windows.binary_search_by(|win| win.as_slice().cmp(&hay[i..i + w])).is_ok() {
                        out.push(i);
                    }
                }
            }
            Mode::Hashed { p } => {
                let pow_out = pow_mod(WINDOW_BASE, w as u64 - 1);
                let mut h = window_hash(&hay[..w]);
                if h % p == 0 {
                    out.push(0);
                }
                for i in 1..=hay.len() - w {
                    let gone = hay[i - 1] as u64;
                    let come = hay[i + w - 1] as u64;
                    h = (h + KR_PRIME - mulmod(gone, pow_out)) % KR_PRIME;
                    h = (mulmod(h, WINDOW_BASE) + come) % KR_PRIME;
                    if h % p == 0 {
                        out.push(i);
                    }
                }
            }
        }
        out
    }
}

/// Distinct phrases in lexicographic order; a phrase's index is its id.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Dictionary {
    phrases: Vec<Vec<u8>>,
}

impl Dictionary {
    pub(crate) fn from_sorted(phrases: Vec<Vec<u8>>) -> Result<Self, Error> {
        if phrases.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::Format("dictionary phrases not sorted and distinct".into()));
        }
        Ok(Self { phrases })
    }

    pub fn len(&self) -> usize {
        self.phrases.len()
    }

    pub fn is_empty(&self) -> bool {
        self.phrases.is_empty()
    }

    pub fn phrase(&self, id: u32) -> &[u8] {
        &self.phrases[id as usize]
    }

    pub fn phrases(&self) -> &[Vec<u8>] {
        &self.phrases
    }

    fn into_phrases(self) -> Vec<Vec<u8>> {
        self.phrases
    }
}

#[derive(Debug, Clone)]
pub struct ParseResult {
    pub dictionary: Dictionary,
    /// Phrase ids in text order, starting with the sentinel phrase (id 0).
    pub parse: Vec<u32>,
    /// Trigger positions, ascending; the last one is the sentinel position.
    pub triggers: Vec<usize>,
}

/// Parses a sentinel-terminated text into phrases running trigger to trigger.
///
/// Phrase lengths follow from the cyclic gap between consecutive triggers
/// plus the closing window, so the single-trigger degenerate case yields one
/// phrase wrapping the whole text.
pub fn parse_text(text: &[u8], oracle: &TriggerOracle) -> Result<ParseResult, Error> {
    let n = text.len();
    if n == 0 || text[n - 1] != SENTINEL {
        return Err(Error::BadSequence("text must end with the sentinel".into()));
    }
    let w = oracle.window_len();
    let triggers = oracle.triggers_cyclic(text);
    let k = triggers.len();

    // Rotating the text to start at the sentinel makes every phrase a
    // contiguous slice: phrase i starts right after its opening trigger's
    // predecessor... concretely, text position a maps to rotated position
    // (a + 1) mod n, and the w-byte tail extends the final windows.
    let rotated: Vec<u8> = (0..n + w).map(|i| text[(i + n - 1) % n]).collect();

    let mut occurrence: Vec<&[u8]> = Vec::with_capacity(k);
    for i in 0..k {
        let start = if i == 0 { n - 1 } else { triggers[i - 1] };
        let end = triggers[i];
        let dist = (end + n - start - 1) % n + 1;
        let from = (start + 1) % n;
        occurrence.push(&rotated[from..from + dist + w]);
    }

    let mut sorted = occurrence.clone();
    sorted.sort_unstable();
    sorted.dedup();
    if sorted.len() > u32::MAX as usize {
        return Err(Error::DictionaryTooLarge(sorted.len()));
    }

    let parse: Vec<u32> = occurrence
        .iter()
        .map(|p| sorted.binary_search(p).unwrap() as u32)
        .collect();
    debug_assert_eq!(parse[0], 0, "the sentinel phrase sorts first");

    let dictionary = Dictionary::from_sorted(sorted.into_iter().map(<[u8]>::to_vec).collect())
        .expect("occurrences are sorted and deduplicated");
    Ok(ParseResult { dictionary, parse, triggers })
}

/// Lookup from phrase bytes to phrase id, keyed by Karp-Rabin fingerprint
/// and verified byte-for-byte, so strings outside the dictionary never map
/// to an id.
#[derive(Debug, Clone)]
pub struct PhraseMap {
    map: HashMap<u64, u32>,
    base: u64,
    phrases: Vec<Vec<u8>>,
}

const MAX_RESEEDS: u32 = 16;

/// Picks a fingerprint base from the seed and retries with fresh bases until
/// the dictionary's fingerprints are pairwise distinct.
pub fn build_phrase_map(dictionary: Dictionary, seed: u64) -> Result<PhraseMap, Error> {
    let phrases = dictionary.into_phrases();
    'attempt: for attempt in 0..MAX_RESEEDS {
        let base = derive_base(seed, attempt);
        let mut map = HashMap::with_capacity(phrases.len());
        for (id, phrase) in phrases.iter().enumerate() {
            if map.insert(fingerprint(base, phrase), id as u32).is_some() {
                continue 'attempt;
            }
        }
        return Ok(PhraseMap { map, base, phrases });
    }
    Err(Error::FingerprintCollisions(MAX_RESEEDS))
}

fn derive_base(seed: u64, attempt: u32) -> u64 {
    // Bases in [256, prime) exceed every shifted byte value.
    256 + splitmix64(seed ^ (attempt as u64).wrapping_mul(0xa0761d6478bd642f)) % (KR_PRIME - 256)
}

impl PhraseMap {
    /// Rebuilds the hash table for a stored base, as used when loading an
    /// index. A collision under the stored base means the data is corrupt:
    /// the base was chosen collision-free at build time.
    pub(crate) fn from_parts(phrases: Vec<Vec<u8>>, base: u64) -> Result<Self, Error> {
        if phrases.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::Format("phrase table not sorted and distinct".into()));
        }
        let mut map = HashMap::with_capacity(phrases.len());
        for (id, phrase) in phrases.iter().enumerate() {
            if map.insert(fingerprint(base, phrase), id as u32).is_some() {
                return Err(Error::Format("stored fingerprint base collides".into()));
            }
        }
        Ok(Self { map, base, phrases })
    }

    pub fn lookup(&self, bytes: &[u8]) -> Option<u32> {
        let id = *self.map.get(&fingerprint(self.base, bytes))?;
        (self.phrases[id as usize] == bytes).then_some(id)
    }

    pub fn phrase_count(&self) -> usize {
        self.phrases.len()
    }

    pub fn phrase(&self, id: u32) -> &[u8] {
        &self.phrases[id as usize]
    }

    pub(crate) fn base(&self) -> u64 {
        self.base
    }

    pub(crate) fn phrases(&self) -> &[Vec<u8>] {
        &self.phrases
    }
}

/// Pattern split at its trigger windows: `alpha` runs up to and including
/// the first window (empty when the pattern starts at a trigger), `mids` are
/// the ids of the complete phrases spanning consecutive triggers, and `beta`
/// runs from the last trigger to the end.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartialEncoding<'a> {
    pub alpha: &'a [u8],
    pub mids: Vec<u32>,
    pub beta: &'a [u8],
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum QueryEncoding<'a> {
    /// No window triggers; the pattern must be matched character by
    /// character.
    NoTrigger,
    /// A complete phrase of the pattern is missing from the dictionary, so
    /// the pattern cannot occur in the text.
    NotInDictionary,
    Parsed(PartialEncoding<'a>),
}

pub fn parse_query<'a>(
    pattern: &'a [u8],
    oracle: &TriggerOracle,
    map: &PhraseMap,
) -> QueryEncoding<'a> {
    let triggers = oracle.triggers_linear(pattern);
    if triggers.is_empty() {
        return QueryEncoding::NoTrigger;
    }
    let w = oracle.window_len();
    let mut mids = Vec::with_capacity(triggers.len() - 1);
    for pair in triggers.windows(2) {
        match map.lookup(&pattern[pair[0]..pair[1] + w]) {
            Some(id) => mids.push(id),
            None => return QueryEncoding::NotInDictionary,
        }
    }
    let first = triggers[0];
    let alpha = if first == 0 { &pattern[..0] } else { &pattern[..first + w] };
    let beta = &pattern[*triggers.last().unwrap()..];
    QueryEncoding::Parsed(PartialEncoding { alpha, mids, beta })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::testdata::{EXAMPLE_TEXT, EXAMPLE_TRIGGERS};
    use proptest::prelude::*;

    pub(crate) fn example_oracle() -> TriggerOracle {
        let windows = EXAMPLE_TRIGGERS.iter().map(|t| t.to_vec()).collect();
        TriggerOracle::explicit(2, windows).unwrap()
    }

    fn with_sentinel(text: &[u8]) -> Vec<u8> {
        let mut t = text.to_vec();
        t.push(SENTINEL);
        t
    }

    fn phrase_strings(d: &Dictionary) -> Vec<String> {
        d.phrases()
            .iter()
            .map(|p| String::from_utf8_lossy(p).replace('\0', "$"))
            .collect()
    }

    #[test]
    fn example_triggers() {
        let text = with_sentinel(EXAMPLE_TEXT);
        let oracle = example_oracle();
        assert_eq!(oracle.triggers_cyclic(&text), vec![5, 10, 18, 28, 34, 40]);
    }

    #[test]
    fn example_parse() {
        let text = with_sentinel(EXAMPLE_TEXT);
        let result = parse_text(&text, &example_oracle()).unwrap();
        assert_eq!(
            phrase_strings(&result.dictionary),
            ["$TCCAGAA", "AAGACATA", "AAGAGTA", "CGACATGTTGAA", "TATCTCCTCG", "TATGAT$T"]
        );
        assert_eq!(result.parse, vec![0, 2, 4, 3, 1, 5]);
    }

    #[test]
    fn hashmark_text_parse() {
        let text = with_sentinel(b"AGACGACT#AGATACT#AGATTCGAGACGAC");
        let oracle = TriggerOracle::explicit(2, vec![b"AC".to_vec(), b"TC".to_vec()]).unwrap();
        let result = parse_text(&text, &oracle).unwrap();
        assert_eq!(
            phrase_strings(&result.dictionary),
            ["$AGAC", "AC$A", "ACGAC", "ACT#AGATAC", "ACT#AGATTC", "TCGAGAC"]
        );
        assert_eq!(result.parse, vec![0, 2, 3, 4, 5, 2, 1]);
    }

    #[test]
    fn single_trigger_wraps_whole_text() {
        let text = with_sentinel(b"A");
        let oracle = TriggerOracle::explicit(2, vec![b"CC".to_vec()]).unwrap();
        let result = parse_text(&text, &oracle).unwrap();
        assert_eq!(phrase_strings(&result.dictionary), ["$A$A"]);
        assert_eq!(result.parse, vec![0]);
        assert_eq!(result.triggers, vec![1]);
    }

    #[test]
    fn trigger_at_text_start() {
        let text = with_sentinel(b"AB");
        let oracle = TriggerOracle::explicit(2, vec![b"AB".to_vec()]).unwrap();
        let result = parse_text(&text, &oracle).unwrap();
        assert_eq!(phrase_strings(&result.dictionary), ["$AB", "AB$A"]);
        assert_eq!(result.parse, vec![0, 1]);
    }

    #[test]
    fn oracle_validation() {
        assert!(TriggerOracle::hashed(1, 10).is_err());
        assert!(TriggerOracle::hashed(2, 0).is_err());
        assert!(TriggerOracle::explicit(0, vec![]).is_err());
        assert!(TriggerOracle::explicit(2, vec![b"ABC".to_vec()]).is_err());
        assert!(TriggerOracle::explicit(2, vec![vec![b'A', 0]]).is_err());
    }

    #[test]
    fn query_triggers_in_worked_pattern() {
        let q = b"CAGAAGAGTATCTCCTCGACATGTTGAAGACATAT";
        assert_eq!(example_oracle().triggers_linear(q), vec![3, 8, 16, 26, 32]);
    }

    #[test]
    fn fingerprint_distinguishes_leading_sentinel() {
        let base = derive_base(7, 0);
        assert_ne!(fingerprint(base, b"\0ABC"), fingerprint(base, b"ABC"));
        assert_ne!(fingerprint(base, b"\0"), fingerprint(base, b""));
    }

    #[test]
    fn phrase_map_lookup() {
        let text = with_sentinel(EXAMPLE_TEXT);
        let result = parse_text(&text, &example_oracle()).unwrap();
        let map = build_phrase_map(result.dictionary, 42).unwrap();
        assert_eq!(map.lookup(b"AAGAGTA"), Some(2));
        assert_eq!(map.lookup(b"\0TCCAGAA"), Some(0));
        assert_eq!(map.lookup(b"ZZZZ"), None);
        assert_eq!(map.lookup(b""), None);
    }

    #[test]
    fn phrase_map_rejects_fingerprint_hit_with_different_bytes() {
        let text = with_sentinel(EXAMPLE_TEXT);
        let result = parse_text(&text, &example_oracle()).unwrap();
        let mut map = build_phrase_map(result.dictionary, 42).unwrap();
        // Force a table hit for a string that is not a phrase.
        map.map.insert(fingerprint(map.base, b"QQQQ"), 3);
        assert_eq!(map.lookup(b"QQQQ"), None);
    }

    #[test]
    fn phrase_map_same_seed_same_base() {
        let text = with_sentinel(EXAMPLE_TEXT);
        let a = build_phrase_map(parse_text(&text, &example_oracle()).unwrap().dictionary, 9).unwrap();
        let b = build_phrase_map(parse_text(&text, &example_oracle()).unwrap().dictionary, 9).unwrap();
        assert_eq!(a.base(), b.base());
    }

    #[test]
    fn worked_pattern_partial_encoding() {
        let text = with_sentinel(EXAMPLE_TEXT);
        let oracle = example_oracle();
        let map = build_phrase_map(parse_text(&text, &oracle).unwrap().dictionary, 42).unwrap();
        let q = b"CAGAAGAGTATCTCCTCGACATGTTGAAGACATAT";
        match parse_query(q, &oracle, &map) {
            QueryEncoding::Parsed(enc) => {
                assert_eq!(enc.alpha, b"CAGAA");
                assert_eq!(enc.mids, vec![2, 4, 3, 1]);
                assert_eq!(enc.beta, b"TAT");
            }
            other => panic!("expected a parsed encoding, got {other:?}"),
        }
    }

    #[test]
    fn pattern_without_triggers() {
        let text = with_sentinel(EXAMPLE_TEXT);
        let oracle = example_oracle();
        let map = build_phrase_map(parse_text(&text, &oracle).unwrap().dictionary, 42).unwrap();
        assert_eq!(parse_query(b"GGG", &oracle, &map), QueryEncoding::NoTrigger);
        assert_eq!(parse_query(b"G", &oracle, &map), QueryEncoding::NoTrigger);
        assert_eq!(parse_query(b"", &oracle, &map), QueryEncoding::NoTrigger);
    }

    #[test]
    fn pattern_with_unknown_phrase() {
        let text = with_sentinel(EXAMPLE_TEXT);
        let oracle = example_oracle();
        let map = build_phrase_map(parse_text(&text, &oracle).unwrap().dictionary, 42).unwrap();
        assert_eq!(parse_query(b"AATTTTAA", &oracle, &map), QueryEncoding::NotInDictionary);
    }

    #[test]
    fn pattern_starting_and_ending_at_triggers() {
        let text = with_sentinel(EXAMPLE_TEXT);
        let oracle = example_oracle();
        let map = build_phrase_map(parse_text(&text, &oracle).unwrap().dictionary, 42).unwrap();
        // Text positions 5..12, "AAGAGTA": starts at trigger 5, ends right
        // after trigger 10's window.
        match parse_query(b"AAGAGTA", &oracle, &map) {
            QueryEncoding::Parsed(enc) => {
                assert_eq!(enc.alpha, b"");
                assert_eq!(enc.mids, vec![2]);
                assert_eq!(enc.beta, b"TA");
            }
            other => panic!("expected a parsed encoding, got {other:?}"),
        }
    }

    /// Concatenating the parse's phrases with the w-byte overlaps removed
    /// must rebuild the sentinel-first rotation of the text plus a w-byte
    /// cyclic tail.
    fn check_reconstruction(text: &[u8], oracle: &TriggerOracle) {
        let result = parse_text(text, oracle).unwrap();
        let w = oracle.window_len();
        let n = text.len();
        let mut rebuilt = Vec::new();
        for (i, &id) in result.parse.iter().enumerate() {
            let phrase = result.dictionary.phrase(id);
            rebuilt.extend_from_slice(if i == 0 { phrase } else { &phrase[w..] });
        }
        let expected: Vec<u8> = (0..n + w).map(|i| text[(i + n - 1) % n]).collect();
        assert_eq!(rebuilt, expected);
    }

    fn check_prefix_free(text: &[u8], oracle: &TriggerOracle) {
        let d = parse_text(text, oracle).unwrap().dictionary;
        for a in d.phrases() {
            for b in d.phrases() {
                if a != b {
                    assert!(!b.starts_with(a), "{a:?} is a prefix of {b:?}");
                }
            }
        }
    }

    #[test]
    fn example_reconstruction() {
        let text = with_sentinel(EXAMPLE_TEXT);
        check_reconstruction(&text, &example_oracle());
        check_prefix_free(&text, &example_oracle());
    }

    fn arb_dna(max_len: usize) -> impl Strategy<Value = Vec<u8>> {
        proptest::collection::vec(proptest::sample::select(b"ACGT".to_vec()), 1..max_len)
    }

    proptest! {
        #[test]
        fn rolling_hash_matches_per_window(body in arb_dna(300), w in 2usize..6, p in 1u64..8) {
            let text = with_sentinel(&body);
            let oracle = TriggerOracle::hashed(w, p).unwrap();
            let hay = &text[..text.len() - 1];
            let naive: Vec<usize> = if hay.len() < w {
                vec![]
            } else {
                (0..=hay.len() - w)
                    .filter(|&i| window_hash(&hay[i..i + w]) % p == 0)
                    .collect()
            };
            let mut expected = naive;
            expected.push(text.len() - 1);
            prop_assert_eq!(oracle.triggers_cyclic(&text), expected);
        }

        #[test]
        fn parse_round_trips(body in arb_dna(300), w in 2usize..6, p in 1u64..8) {
            let text = with_sentinel(&body);
            let oracle = TriggerOracle::hashed(w, p).unwrap();
            check_reconstruction(&text, &oracle);
        }

        #[test]
        fn dictionary_is_prefix_free(body in arb_dna(300), w in 2usize..6, p in 1u64..8) {
            let text = with_sentinel(&body);
            let oracle = TriggerOracle::hashed(w, p).unwrap();
            check_prefix_free(&text, &oracle);
        }

        #[test]
        fn parsed_ids_are_lexicographic_ranks(body in arb_dna(200), p in 1u64..6) {
            let text = with_sentinel(&body);
            let oracle = TriggerOracle::hashed(3, p).unwrap();
            let result = parse_text(&text, &oracle).unwrap();
            prop_assert_eq!(result.parse[0], 0);
            let d = result.dictionary.phrases();
            prop_assert!(d.windows(2).all(|w| w[0] < w[1]));
            prop_assert!(result.parse.iter().all(|&id| (id as usize) < d.len()));
            prop_assert_eq!(result.parse.len(), result.triggers.len());
        }

        #[test]
        fn query_encoding_covers_pattern(body in arb_dna(300), w in 2usize..5, p in 1u64..6) {
            let text = with_sentinel(&body);
            let oracle = TriggerOracle::hashed(w, p).unwrap();
            let map = build_phrase_map(parse_text(&text, &oracle).unwrap().dictionary, 11).unwrap();
            // Slices of the text parse into pieces that tile the pattern.
            let q = &body[..body.len().min(60)];
            if let QueryEncoding::Parsed(enc) = parse_query(q, &oracle, &map) {
                let triggers = oracle.triggers_linear(q);
                let first = triggers[0];
                let last = *triggers.last().unwrap();
                if first == 0 {
                    prop_assert!(enc.alpha.is_empty());
                } else {
                    prop_assert_eq!(enc.alpha, &q[..first + w]);
                }
                prop_assert_eq!(enc.beta, &q[last..]);
                prop_assert_eq!(enc.mids.len() + 1, triggers.len());
                // Each mid phrase is a dictionary phrase matching its slice.
                for (pair, &id) in triggers.windows(2).zip(&enc.mids) {
                    prop_assert_eq!(map.phrase(id), &q[pair[0]..pair[1] + w]);
                }
            }
        }
    }
}
