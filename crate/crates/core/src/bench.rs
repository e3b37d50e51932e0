//! Benchmark harness: builds one index per (w, p) cell, times batched counts
//! against the accelerated and baseline search paths, and reports
//! queries-per-second rows suitable for a heatmap.

use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::index::TwoLevelIndex;
use crate::pfp::TriggerOracle;
use crate::Error;

pub const CSV_HEADER: &str =
    "w,p,pattern_length,num_queries,accel_qps,baseline_qps,ratio,build_seconds,peak_build_bytes";

/// One benchmark cell: a (w, p, pattern_length) combination.
#[derive(Debug, Clone, PartialEq)]
pub struct BenchRecord {
    pub w: usize,
    pub p: u64,
    pub pattern_length: usize,
    pub num_queries: usize,
    pub accel_qps: f64,
    pub baseline_qps: f64,
    pub ratio: f64,
    pub build_seconds: f64,
    pub peak_build_bytes: u64,
}

impl BenchRecord {
    pub fn to_csv_row(&self) -> String {
        format!(
            "{},{},{},{},{:.3},{:.3},{:.3},{:.3},{}",
            self.w,
            self.p,
            self.pattern_length,
            self.num_queries,
            self.accel_qps,
            self.baseline_qps,
            self.ratio,
            self.build_seconds,
            self.peak_build_bytes
        )
    }

    pub fn from_csv_row(row: &str) -> Result<Self, Error> {
        let fields: Vec<&str> = row.trim_end_matches(['\r', '\n']).split(',').collect();
        if fields.len() != 9 {
            return Err(Error::Format(format!("expected 9 CSV fields, got {}", fields.len())));
        }
        fn field<T: std::str::FromStr>(raw: &str, name: &str) -> Result<T, Error> {
            raw.parse().map_err(|_| Error::Format(format!("bad CSV field {name}: {raw:?}")))
        }
        Ok(Self {
            w: field(fields[0], "w")?,
            p: field(fields[1], "p")?,
            pattern_length: field(fields[2], "pattern_length")?,
            num_queries: field(fields[3], "num_queries")?,
            accel_qps: field(fields[4], "accel_qps")?,
            baseline_qps: field(fields[5], "baseline_qps")?,
            ratio: field(fields[6], "ratio")?,
            build_seconds: field(fields[7], "build_seconds")?,
            peak_build_bytes: field(fields[8], "peak_build_bytes")?,
        })
    }
}

#[derive(Debug, Clone)]
pub struct BenchConfig {
    pub w_list: Vec<usize>,
    pub p_list: Vec<u64>,
    pub length_list: Vec<usize>,
    pub num_queries: usize,
    pub seed: u64,
}

impl Default for BenchConfig {
    fn default() -> Self {
        Self {
            w_list: vec![4, 6, 8, 10],
            p_list: vec![10, 30, 50, 100],
            length_list: vec![125, 250, 500, 1000],
            num_queries: 1000,
            seed: 42,
        }
    }
}

/// Runs the full sweep. Each (w, p) cell builds one index; each pattern
/// length reuses the same seeded pattern set across cells so cells are
/// comparable. Every accelerated count is cross-checked against the baseline
/// before throughput is reported. `on_record` fires as each row finishes so
/// callers can stream CSV output.
pub fn run_bench(
    text: &[u8],
    config: &BenchConfig,
    mut on_record: impl FnMut(&BenchRecord),
) -> Result<Vec<BenchRecord>, Error> {
    assert!(
        !config.w_list.is_empty() && !config.p_list.is_empty() && !config.length_list.is_empty(),
        "benchmark grid must be non-empty"
    );
    let mut pattern_sets = Vec::new();
    for &length in &config.length_list {
        let seed = config.seed ^ (length as u64).wrapping_mul(0x9e37_79b9_7f4a_7c15);
        pattern_sets.push((length, sample_patterns(text, length, config.num_queries, seed)?));
    }

    let mut records = Vec::new();
    for &w in &config.w_list {
        for &p in &config.p_list {
            reset_peak_rss();
            let build_start = Instant::now();
            let oracle = TriggerOracle::hashed(w, p)?;
            let index = TwoLevelIndex::build(text, oracle, config.seed)?;
            let build_seconds = build_start.elapsed().as_secs_f64();
            let peak_build_bytes = vm_hwm_bytes();

            for (length, patterns) in &pattern_sets {
                let timer = Instant::now();
                let accel: Vec<usize> = patterns.iter().map(|q| index.count(q)).collect();
                let accel_secs = timer.elapsed().as_secs_f64();

                let timer = Instant::now();
                let baseline: Vec<usize> =
                    patterns.iter().map(|q| index.count_baseline(q)).collect();
                let baseline_secs = timer.elapsed().as_secs_f64();

                for (i, (a, b)) in accel.iter().zip(&baseline).enumerate() {
                    if a != b {
                        return Err(Error::BenchMismatch {
                            w,
                            p,
                            pattern_index: i,
                            accel: *a,
                            baseline: *b,
                        });
                    }
                }

                let n = patterns.len() as f64;
                let accel_qps = round3(n / accel_secs.max(1e-9));
                let baseline_qps = round3(n / baseline_secs.max(1e-9));
                let record = BenchRecord {
                    w,
                    p,
                    pattern_length: *length,
                    num_queries: patterns.len(),
                    accel_qps,
                    baseline_qps,
                    ratio: round3(accel_qps / baseline_qps.max(1e-9)),
                    build_seconds: round3(build_seconds),
                    peak_build_bytes,
                };
                on_record(&record);
                records.push(record);
            }
        }
    }
    Ok(records)
}

/// Draws `num` substrings of `length` with uniformly random start positions.
pub fn sample_patterns(
    text: &[u8],
    length: usize,
    num: usize,
    seed: u64,
) -> Result<Vec<Vec<u8>>, Error> {
    if length > text.len() {
        return Err(Error::PatternTooLong { length, text_len: text.len() });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    Ok((0..num)
        .map(|_| {
            let start = rng.random_range(0..=text.len() - length);
            text[start..start + length].to_vec()
        })
        .collect())
}

/// Builds a repetitive DNA-like corpus: one random seed string followed by
/// `copies - 1` near-copies, each position mutated with `mutation_rate`.
pub fn generate_repetitive_corpus(
    seed_len: usize,
    copies: usize,
    mutation_rate: f64,
    seed: u64,
) -> Vec<u8> {
    assert!(seed_len > 0 && copies > 0, "corpus must be non-empty");
    const BASES: [u8; 4] = *b"ACGT";
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let base: Vec<u8> = (0..seed_len).map(|_| BASES[rng.random_range(0..4)]).collect();
    let mut out = Vec::with_capacity(seed_len * copies);
    out.extend_from_slice(&base);
    for _ in 1..copies {
        out.extend(base.iter().map(|&b| {
            if rng.random::<f64>() < mutation_rate {
                BASES[rng.random_range(0..4)]
            } else {
                b
            }
        }));
    }
    out
}

/// Peak resident set size of this process in bytes, 0 where unsupported.
pub fn vm_hwm_bytes() -> u64 {
    peak_rss_bytes().unwrap_or(0)
}

fn peak_rss_bytes() -> Option<u64> {
    let status = std::fs::read_to_string("/proc/self/status").ok()?;
    for line in status.lines() {
        if let Some(rest) = line.strip_prefix("VmHWM:") {
            let kb: u64 = rest.trim().strip_suffix("kB")?.trim().parse().ok()?;
            return Some(kb * 1024);
        }
    }
    None
}

/// Asks the kernel to reset the peak RSS counter so per-cell peaks are
/// meaningful; silently keeps the monotone counter where not permitted.
fn reset_peak_rss() {
    let _ = std::fs::write("/proc/self/clear_refs", b"5");
}

fn round3(x: f64) -> f64 {
    format!("{x:.3}").parse().expect("formatted floats parse back")
}
