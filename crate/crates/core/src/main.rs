use std::fs::{self, File};
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};

use anyhow::{bail, ensure, Context, Result};
use clap::{Parser, Subcommand};

use pfp_fm::bench::{run_bench, sample_patterns, BenchConfig, CSV_HEADER};
use pfp_fm::container;
use pfp_fm::input::read_text;
use pfp_fm::{TriggerOracle, TwoLevelIndex};

#[derive(Parser)]
#[command(name = "pfp-fm", version, about = "Two-level FM-index over a prefix-free parse")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build an index from a raw text or FASTA file.
    Build {
        input_path: PathBuf,
        output_path: PathBuf,
        /// Trigger window length.
        #[arg(long, default_value_t = 6)]
        w: usize,
        /// Hash modulus: a window triggers a phrase break when its hash is 0 mod p.
        #[arg(long, conflicts_with = "triggers")]
        p: Option<u64>,
        /// File with one length-w trigger string per line instead of hashing.
        #[arg(long, conflicts_with = "p")]
        triggers: Option<PathBuf>,
        /// Seed for the phrase fingerprint function.
        #[arg(long, default_value_t = 42)]
        seed: u64,
    },
    /// Count occurrences of each pattern in a line-delimited file.
    Count {
        index_path: PathBuf,
        patterns_path: PathBuf,
        /// Query the single-level index instead of the accelerated path.
        #[arg(long)]
        baseline: bool,
    },
    /// Sample random substrings of the input, one per line.
    Sample {
        input_path: PathBuf,
        output_path: PathBuf,
        #[arg(long)]
        length: usize,
        #[arg(long, default_value_t = 1000)]
        num: usize,
        #[arg(long, default_value_t = 42)]
        seed: u64,
    },
    /// Sweep (w, p) and pattern length, reporting throughput as CSV.
    Bench {
        input_path: PathBuf,
        #[arg(long = "w-list", value_delimiter = ',', default_value = "4,6,8,10")]
        w_list: Vec<usize>,
        #[arg(long = "p-list", value_delimiter = ',', default_value = "10,30,50,100")]
        p_list: Vec<u64>,
        #[arg(long = "length-list", value_delimiter = ',', default_value = "125,250,500,1000")]
        length_list: Vec<usize>,
        /// Queries per (w, p, length) cell.
        #[arg(long, default_value_t = 1000)]
        num: usize,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        /// Write the CSV here instead of standard output.
        #[arg(long = "csv-out")]
        csv_out: Option<PathBuf>,
    },
}

fn main() -> Result<()> {
    match Cli::parse().command {
        Command::Build { input_path, output_path, w, p, triggers, seed } => {
            cmd_build(&input_path, &output_path, w, p, triggers.as_deref(), seed)
        }
        Command::Count { index_path, patterns_path, baseline } => {
            cmd_count(&index_path, &patterns_path, baseline)
        }
        Command::Sample { input_path, output_path, length, num, seed } => {
            cmd_sample(&input_path, &output_path, length, num, seed)
        }
        Command::Bench { input_path, w_list, p_list, length_list, num, seed, csv_out } => {
            cmd_bench(&input_path, w_list, p_list, length_list, num, seed, csv_out.as_deref())
        }
    }
}

fn cmd_build(
    input_path: &Path,
    output_path: &Path,
    w: usize,
    p: Option<u64>,
    triggers: Option<&Path>,
    seed: u64,
) -> Result<()> {
    let text = read_text(input_path)
        .with_context(|| format!("reading input {}", input_path.display()))?;
    let oracle = match (p, triggers) {
        (Some(p), None) => TriggerOracle::hashed(w, p)?,
        (None, Some(path)) => TriggerOracle::explicit(w, read_trigger_file(path, w)?)?,
        _ => bail!("provide exactly one of --p and --triggers"),
    };
    let index = TwoLevelIndex::build(&text, oracle, seed)?;
    container::save(&index, output_path)
        .with_context(|| format!("writing index {}", output_path.display()))?;
    let stats = index.stats();
    eprintln!(
        "n = {} (with sentinel), |D| = {} phrases, |P| = {} occurrences, mean phrase length = {:.2}",
        stats.text_len,
        stats.phrase_count,
        stats.parse_len,
        stats.mean_phrase_len()
    );
    Ok(())
}

fn read_trigger_file(path: &Path, w: usize) -> Result<Vec<Vec<u8>>> {
    let raw = fs::read_to_string(path)
        .with_context(|| format!("reading triggers {}", path.display()))?;
    raw.lines()
        .map(|line| {
            ensure!(line.len() == w, "trigger {line:?} is not {w} bytes long");
            Ok(line.as_bytes().to_vec())
        })
        .collect()
}

fn cmd_count(index_path: &Path, patterns_path: &Path, baseline: bool) -> Result<()> {
    let index = container::load(index_path)
        .with_context(|| format!("loading index {}", index_path.display()))?;
    let raw = fs::read_to_string(patterns_path)
        .with_context(|| format!("reading patterns {}", patterns_path.display()))?;
    let mut out = BufWriter::new(io::stdout().lock());
    for (i, line) in raw.lines().enumerate() {
        let count = if baseline {
            index.count_baseline(line.as_bytes())
        } else {
            index.count(line.as_bytes())
        };
        writeln!(out, "{i}\t{count}")?;
    }
    out.flush()?;
    Ok(())
}

fn cmd_sample(
    input_path: &Path,
    output_path: &Path,
    length: usize,
    num: usize,
    seed: u64,
) -> Result<()> {
    let text = read_text(input_path)
        .with_context(|| format!("reading input {}", input_path.display()))?;
    let patterns = sample_patterns(&text, length, num, seed)?;
    let mut out = BufWriter::new(
        File::create(output_path)
            .with_context(|| format!("creating {}", output_path.display()))?,
    );
    for q in &patterns {
        out.write_all(q)?;
        out.write_all(b"\n")?;
    }
    out.flush()?;
    Ok(())
}

fn cmd_bench(
    input_path: &Path,
    w_list: Vec<usize>,
    p_list: Vec<u64>,
    length_list: Vec<usize>,
    num: usize,
    seed: u64,
    csv_out: Option<&Path>,
) -> Result<()> {
    ensure!(!w_list.is_empty() && !p_list.is_empty() && !length_list.is_empty(),
        "--w-list, --p-list, and --length-list must be non-empty");
    ensure!(num > 0, "--num must be positive");
    let text = read_text(input_path)
        .with_context(|| format!("reading input {}", input_path.display()))?;
    let config = BenchConfig { w_list, p_list, length_list, num_queries: num, seed };

    let mut sink: Box<dyn Write> = match csv_out {
        Some(path) => Box::new(BufWriter::new(
            File::create(path).with_context(|| format!("creating {}", path.display()))?,
        )),
        None => Box::new(io::stdout().lock()),
    };
    writeln!(sink, "{CSV_HEADER}")?;
    let mut write_err: Option<io::Error> = None;
    run_bench(&text, &config, |record| {
        eprintln!(
            "bench: w={} p={} len={} accel={:.0}/s baseline={:.0}/s ratio={:.3}",
            record.w,
            record.p,
            record.pattern_length,
            record.accel_qps,
            record.baseline_qps,
            record.ratio
        );
        if write_err.is_none() {
            if let Err(e) = writeln!(sink, "{}", record.to_csv_row()) {
                write_err = Some(e);
            }
        }
    })?;
    if let Some(e) = write_err {
        return Err(e).context("writing CSV output");
    }
    sink.flush()?;
    Ok(())
}
