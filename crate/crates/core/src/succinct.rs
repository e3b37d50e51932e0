//! Succinct building blocks: a plain bitvector with constant-time rank and
//! sampled select, and a balanced wavelet tree for rank/access over integer
//! alphabets.

mod bitvector;
mod wavelet;

pub use bitvector::{BitVector, BitVectorBuilder};
pub use wavelet::WaveletTree;
