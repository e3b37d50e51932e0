//! On-disk index format.
//!
//! Layout: an 8-byte magic, a version word, seven length-prefixed sections
//! (trigger oracle, byte alphabet, character FM-index, parse FM-index,
//! boundary bitvector, phrase table, stats), and a trailing FNV-1a checksum.
//! Everything is little-endian. Rank directories, wavelet partition offsets,
//! and the fingerprint table are derived data and get rebuilt on load, which
//! keeps the format small and makes save/load/save round-trips
//! byte-identical.

use std::fs::File;
use std::io::{Read, Write};
use std::path::Path;

use crate::index::{CharFmIndex, IndexStats, ParseFmIndex, TwoLevelIndex};
use crate::pfp::{PhraseMap, TriggerOracle};
use crate::succinct::{BitVector, WaveletTree};
use crate::suffix::{ByteAlphabet, CArray};
use crate::Error;

const MAGIC: &[u8; 8] = b"PFPFM1\0\0";
const VERSION: u32 = 1;

pub fn save(index: &TwoLevelIndex, path: impl AsRef<Path>) -> Result<(), Error> {
    let mut file = File::create(path)?;
    write_index(index, &mut file)
}

pub fn load(path: impl AsRef<Path>) -> Result<TwoLevelIndex, Error> {
    let mut buf = Vec::new();
    File::open(path)?.read_to_end(&mut buf)?;
    decode(&buf)
}

pub fn write_index<W: Write>(index: &TwoLevelIndex, mut out: W) -> Result<(), Error> {
    out.write_all(&encode(index))?;
    Ok(())
}

pub fn read_index<R: Read>(mut input: R) -> Result<TwoLevelIndex, Error> {
    let mut buf = Vec::new();
    input.read_to_end(&mut buf)?;
    decode(&buf)
}

fn encode(index: &TwoLevelIndex) -> Vec<u8> {
    let mut w = Writer { buf: Vec::new() };
    w.bytes(MAGIC);
    w.u32(VERSION);
    w.section(|w| put_oracle(w, index.oracle()));
    w.section(|w| {
        let table = index.char_fm().alphabet().code_table();
        w.u64(table.len() as u64);
        w.bytes(table);
    });
    w.section(|w| {
        put_wavelet(w, index.char_fm().wavelet());
        put_c_array(w, index.char_fm().c_array());
    });
    w.section(|w| {
        put_wavelet(w, index.parse_fm().wavelet());
        put_c_array(w, index.parse_fm().c_array());
    });
    w.section(|w| put_bitvector(w, index.boundary()));
    w.section(|w| {
        w.u64(index.phrase_map().base());
        let phrases = index.phrase_map().phrases();
        w.u64(phrases.len() as u64);
        for phrase in phrases {
            w.u64(phrase.len() as u64);
            w.bytes(phrase);
        }
    });
    w.section(|w| {
        let stats = index.stats();
        w.u64(stats.text_len as u64);
        w.u64(stats.phrase_count as u64);
        w.u64(stats.parse_len as u64);
        w.u64(stats.phrase_length_histogram.len() as u64);
        for &(len, count) in &stats.phrase_length_histogram {
            w.u32(len);
            w.u32(count);
        }
    });
    let digest = fnv1a(&w.buf);
    w.u64(digest);
    w.buf
}

fn decode(buf: &[u8]) -> Result<TwoLevelIndex, Error> {
    if buf.len() < MAGIC.len() + 4 + 8 {
        return Err(Error::Format("file too short to be an index".into()));
    }
    let (body, tail) = buf.split_at(buf.len() - 8);
    let stored = u64::from_le_bytes(tail.try_into().unwrap());
    if fnv1a(body) != stored {
        return Err(Error::Format("checksum mismatch, file is corrupt".into()));
    }
    let mut r = Reader { buf: body, pos: 0 };
    if r.bytes(MAGIC.len())? != MAGIC {
        return Err(Error::Format("not an index file".into()));
    }
    let version = r.u32()?;
    if version != VERSION {
        return Err(Error::Format(format!("unsupported format version {version}")));
    }

    let mut s = r.section()?;
    let oracle = get_oracle(&mut s)?;
    s.done()?;

    let mut s = r.section()?;
    let table_len = s.u64()? as usize;
    let alphabet = ByteAlphabet::from_code_table(s.bytes(table_len)?.to_vec())?;
    s.done()?;

    let mut s = r.section()?;
    let char_wt = get_wavelet(&mut s)?;
    let char_c = get_c_array(&mut s)?;
    s.done()?;

    let mut s = r.section()?;
    let parse_wt = get_wavelet(&mut s)?;
    let parse_c = get_c_array(&mut s)?;
    s.done()?;

    let mut s = r.section()?;
    let boundary = get_bitvector(&mut s)?;
    s.done()?;

    let mut s = r.section()?;
    let base = s.u64()?;
    let phrase_count = s.u64()? as usize;
    let mut phrases = Vec::new();
    for _ in 0..phrase_count {
        let len = s.u64()? as usize;
        phrases.push(s.bytes(len)?.to_vec());
    }
    let map = PhraseMap::from_parts(phrases, base)?;
    s.done()?;

    let mut s = r.section()?;
    let stats = IndexStats {
        text_len: s.u64()? as usize,
        phrase_count: s.u64()? as usize,
        parse_len: s.u64()? as usize,
        phrase_length_histogram: {
            let len = s.u64()? as usize;
            let mut hist = Vec::new();
            for _ in 0..len {
                let length = s.u32()?;
                let count = s.u32()?;
                hist.push((length, count));
            }
            hist
        },
    };
    s.done()?;
    r.done()?;

    check(
        alphabet.sigma() == char_wt.alphabet_size() as usize,
        "alphabet size differs from character BWT alphabet",
    )?;
    check(
        char_c.alphabet_size() == char_wt.alphabet_size() as usize,
        "character C-array size differs from BWT alphabet",
    )?;
    check(
        parse_c.alphabet_size() == parse_wt.alphabet_size() as usize,
        "parse C-array size differs from BWT alphabet",
    )?;
    check(stats.text_len == char_wt.len(), "stats text length differs from BWT length")?;
    check(stats.parse_len == parse_wt.len(), "stats parse length differs from BWT length")?;
    check(stats.phrase_count == map.phrase_count(), "stats phrase count differs from table")?;
    check(
        map.phrase_count() == parse_wt.alphabet_size() as usize,
        "phrase table size differs from parse alphabet",
    )?;

    let char_fm = CharFmIndex::new(char_wt, char_c, alphabet);
    let parse_fm = ParseFmIndex::new(parse_wt, parse_c);
    TwoLevelIndex::from_parts(char_fm, parse_fm, boundary, map, oracle, stats)
}

fn check(ok: bool, msg: &str) -> Result<(), Error> {
    if ok {
        Ok(())
    } else {
        Err(Error::Format(msg.into()))
    }
}

struct Writer {
    buf: Vec<u8>,
}

impl Writer {
    fn u8(&mut self, v: u8) {
        self.buf.push(v);
    }

    fn u32(&mut self, v: u32) {
        self.buf.extend_from_slice(&v.to_le_bytes());
    }

    fn u64(&mut self, v: u64) {
        self.buf.extend_from_slice(&v.to_le_bytes());
    }

    fn bytes(&mut self, b: &[u8]) {
        self.buf.extend_from_slice(b);
    }

    /// Writes a section body with its u64 length prefix patched in after.
    fn section(&mut self, f: impl FnOnce(&mut Self)) {
        self.u64(0);
        let start = self.buf.len();
        f(self);
        let len = (self.buf.len() - start) as u64;
        self.buf[start - 8..start].copy_from_slice(&len.to_le_bytes());
    }
}

struct Reader<'a> {
    buf: &'a [u8],
    pos: usize,
}

impl<'a> Reader<'a> {
    fn bytes(&mut self, n: usize) -> Result<&'a [u8], Error> {
        if n > self.buf.len() - self.pos {
            return Err(Error::Format("truncated index data".into()));
        }
        let out = &self.buf[self.pos..self.pos + n];
        self.pos += n;
        Ok(out)
    }

    fn u8(&mut self) -> Result<u8, Error> {
        Ok(self.bytes(1)?[0])
    }

    fn u32(&mut self) -> Result<u32, Error> {
        Ok(u32::from_le_bytes(self.bytes(4)?.try_into().unwrap()))
    }

    fn u64(&mut self) -> Result<u64, Error> {
        Ok(u64::from_le_bytes(self.bytes(8)?.try_into().unwrap()))
    }

    fn section(&mut self) -> Result<Reader<'a>, Error> {
        let len = self.u64()? as usize;
        Ok(Reader { buf: self.bytes(len)?, pos: 0 })
    }

    fn done(&self) -> Result<(), Error> {
        if self.pos == self.buf.len() {
            Ok(())
        } else {
            Err(Error::Format("unexpected trailing bytes".into()))
        }
    }
}

fn put_oracle(w: &mut Writer, oracle: &TriggerOracle) {
    if let Some(p) = oracle.hashed_modulus() {
        w.u8(0);
        w.u64(oracle.window_len() as u64);
        w.u64(p);
    } else {
        let windows = oracle.explicit_windows().expect("oracle is hashed or explicit");
        w.u8(1);
        w.u64(oracle.window_len() as u64);
        w.u64(windows.len() as u64);
        for win in windows {
            w.bytes(win);
        }
    }
}

fn get_oracle(r: &mut Reader) -> Result<TriggerOracle, Error> {
    let mode = r.u8()?;
    let w_len = r.u64()? as usize;
    match mode {
        0 => TriggerOracle::hashed(w_len, r.u64()?),
        1 => {
            let count = r.u64()? as usize;
            let mut windows = Vec::new();
            for _ in 0..count {
                windows.push(r.bytes(w_len)?.to_vec());
            }
            TriggerOracle::explicit(w_len, windows)
        }
        other => Err(Error::Format(format!("unknown oracle mode {other}"))),
    }
}

fn put_bitvector(w: &mut Writer, bv: &BitVector) {
    w.u64(bv.len() as u64);
    for &word in &bv.words {
        w.u64(word);
    }
}

fn get_bitvector(r: &mut Reader) -> Result<BitVector, Error> {
    let n_bits = r.u64()? as usize;
    let byte_len = n_bits
        .div_ceil(64)
        .checked_mul(8)
        .ok_or_else(|| Error::Format("bitvector length overflows".into()))?;
    let raw = r.bytes(byte_len)?;
    let words = raw
        .chunks_exact(8)
        .map(|c| u64::from_le_bytes(c.try_into().unwrap()))
        .collect();
    Ok(BitVector::from_words(words, n_bits))
}

fn put_wavelet(w: &mut Writer, wt: &WaveletTree) {
    w.u64(wt.len() as u64);
    w.u32(wt.alphabet_size());
    w.u32(wt.height());
    for level in &wt.levels {
        put_bitvector(w, level);
    }
}

fn get_wavelet(r: &mut Reader) -> Result<WaveletTree, Error> {
    let len = r.u64()? as usize;
    let sigma = r.u32()?;
    let height = r.u32()?;
    let mut levels = Vec::new();
    for _ in 0..height {
        levels.push(get_bitvector(r)?);
    }
    WaveletTree::from_parts(levels, sigma, len)
}

fn put_c_array(w: &mut Writer, c: &CArray) {
    w.u64(c.counts().len() as u64);
    for &v in c.counts() {
        w.u64(v as u64);
    }
}

fn get_c_array(r: &mut Reader) -> Result<CArray, Error> {
    let len = r.u64()? as usize;
    if len < 2 {
        return Err(Error::Format("C-array too short".into()));
    }
    let mut counts = Vec::new();
    for _ in 0..len {
        counts.push(r.u64()? as usize);
    }
    if counts[0] != 0 || counts.windows(2).any(|p| p[0] > p[1]) {
        return Err(Error::Format("C-array not cumulative".into()));
    }
    Ok(CArray::from_counts(counts))
}

fn fnv1a(bytes: &[u8]) -> u64 {
    let mut h = 0xcbf29ce484222325u64;
    for &b in bytes {
        h ^= b as u64;
        h = h.wrapping_mul(0x100000001b3);
    }
    h
}
