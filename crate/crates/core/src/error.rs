use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("input text is empty")]
    EmptyText,

    #[error("input text contains the sentinel byte 0x00 at offset {0}")]
    SentinelInInput(usize),

    #[error("input text of {0} bytes exceeds the 32-bit position limit")]
    TextTooLarge(usize),

    #[error("dictionary would need {0} phrases, which exceeds 32-bit phrase ids")]
    DictionaryTooLarge(usize),

    #[error("invalid trigger parameters: {0}")]
    InvalidTrigger(String),

    #[error("sequence violates the sentinel contract: {0}")]
    BadSequence(String),

    #[error("phrase fingerprints kept colliding after {0} reseeds")]
    FingerprintCollisions(u32),

    #[error("pattern length {length} exceeds text length {text_len}")]
    PatternTooLong { length: usize, text_len: usize },

    #[error("malformed index container: {0}")]
    Format(String),

    #[error(
        "count mismatch at w={w} p={p} pattern {pattern_index}: accelerated {accel} vs baseline {baseline}"
    )]
    BenchMismatch {
        w: usize,
        p: u64,
        pattern_index: usize,
        accel: usize,
        baseline: usize,
    },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}
