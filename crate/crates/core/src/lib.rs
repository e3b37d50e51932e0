//! Two-level FM-index over a prefix-free parse.
//!
//! The text is parsed into phrases delimited by trigger windows (length-`w`
//! substrings selected by a Karp-Rabin hash test or an explicit set). Counting
//! a pattern then runs character-level backward search only over the pattern's
//! ragged ends and phrase-level backward search over the run of whole phrases
//! in between, which touches far fewer rank structures than the plain
//! character-by-character walk on long patterns.
//!
//! Module layout:
//! - [`succinct`]: bitvectors with rank/select and a wavelet tree, the
//!   substrate for both FM-indexes and the boundary bitvector.
//! - [`suffix`]: suffix array (induced sorting), BWT, C-array, and the dense
//!   byte-alphabet remap.
//! - [`pfp`]: trigger detection, text parsing into a dictionary + parse,
//!   fingerprint-keyed phrase lookup, and query partial encoding.
//! - [`index`]: the assembled two-level index, `count`, and the single-level
//!   `count_baseline`.
//! - [`container`]: the on-disk index format.
//! - [`input`]: FASTA/raw input normalization for the CLI.
//! - [`bench`]: pattern sampling, corpus generation, and the benchmark sweep.

pub mod bench;
pub mod container;
mod error;
pub mod index;
pub mod input;
pub mod pfp;
pub mod succinct;
pub mod suffix;

pub use error::Error;
pub use index::{CountTrace, Interval, TwoLevelIndex};
pub use pfp::TriggerOracle;

/// Sentinel byte appended to every indexed text. Inputs containing it are
/// rejected, which keeps it unique and lexicographically smallest.
pub const SENTINEL: u8 = 0x00;

/// Integer symbol usable as input to the suffix and wavelet structures.
///
/// `u8` covers remapped text bytes, `u32` covers phrase identifiers.
pub trait Symbol: Copy + Ord {
    fn index(self) -> usize;
}

impl Symbol for u8 {
    #[inline(always)]
    fn index(self) -> usize {
        self as usize
    }
}

impl Symbol for u32 {
    #[inline(always)]
    fn index(self) -> usize {
        self as usize
    }
}
