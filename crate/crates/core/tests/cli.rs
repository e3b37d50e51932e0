//! End-to-end tests driving the compiled binary.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use pfp_fm::bench::{BenchRecord, CSV_HEADER};

const TEXT_41: &str = "TCCAGAAGAGTATCTCCTCGACATGTTGAAGACATATGAT$";
const QUERY: &str = "CAGAAGAGTATCTCCTCGACATGTTGAAGACATAT";

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_pfp-fm"))
}

fn run_ok(cmd: &mut Command) -> (String, String) {
    let Output { status, stdout, stderr } = cmd.output().expect("binary runs");
    let stdout = String::from_utf8(stdout).unwrap();
    let stderr = String::from_utf8(stderr).unwrap();
    assert!(status.success(), "command failed\nstdout: {stdout}\nstderr: {stderr}");
    (stdout, stderr)
}

fn run_err(cmd: &mut Command) -> String {
    let Output { status, stderr, .. } = cmd.output().expect("binary runs");
    assert!(!status.success(), "command unexpectedly succeeded");
    String::from_utf8(stderr).unwrap()
}

struct Workspace {
    _dir: tempfile::TempDir,
    root: PathBuf,
}

impl Workspace {
    fn new() -> Self {
        let dir = tempfile::tempdir().unwrap();
        let root = dir.path().to_path_buf();
        Workspace { _dir: dir, root }
    }

    fn file(&self, name: &str, contents: impl AsRef<[u8]>) -> PathBuf {
        let path = self.root.join(name);
        fs::write(&path, contents).unwrap();
        path
    }

    fn path(&self, name: &str) -> PathBuf {
        self.root.join(name)
    }
}

fn count_output(index: &Path, patterns: &Path, baseline: bool) -> String {
    let mut cmd = bin();
    cmd.arg("count").arg(index).arg(patterns);
    if baseline {
        cmd.arg("--baseline");
    }
    run_ok(&mut cmd).0
}

#[test]
fn build_then_count_worked_query() {
    let ws = Workspace::new();
    let text = ws.file("text.txt", TEXT_41);
    let triggers = ws.file("triggers.txt", "AA\nCG\nTA\n");
    let index = ws.path("index.pfpfm");
    let (_, stderr) = run_ok(bin().arg("build").arg(&text).arg(&index).args([
        "--w",
        "2",
        "--triggers",
        triggers.to_str().unwrap(),
    ]));
    assert!(stderr.contains("|D| = 6"), "summary: {stderr}");
    assert!(stderr.contains("|P| = 6"), "summary: {stderr}");

    let patterns = ws.file("patterns.txt", format!("{QUERY}\n"));
    assert_eq!(count_output(&index, &patterns, false), "0\t1\n");
    assert_eq!(count_output(&index, &patterns, true), "0\t1\n");
}

#[test]
fn count_is_identical_with_and_without_baseline() {
    let ws = Workspace::new();
    let text = ws.file("text.txt", TEXT_41);
    let triggers = ws.file("triggers.txt", "AA\nCG\nTA\n");
    let index = ws.path("index.pfpfm");
    run_ok(bin().arg("build").arg(&text).arg(&index).args([
        "--w",
        "2",
        "--triggers",
        triggers.to_str().unwrap(),
    ]));

    let mut lines = String::new();
    for len in [1, 2, 3, 5, 8, 13, 21] {
        for start in 0..(TEXT_41.len() - len).min(30) {
            lines.push_str(&TEXT_41[start..start + len]);
            lines.push('\n');
        }
    }
    lines.push_str("GGGG\nTCCA\n");
    let patterns = ws.file("patterns.txt", &lines);
    let accel = count_output(&index, &patterns, false);
    let baseline = count_output(&index, &patterns, true);
    assert!(!accel.is_empty());
    assert_eq!(accel, baseline);
}

#[test]
fn count_with_empty_patterns_file() {
    let ws = Workspace::new();
    let text = ws.file("text.txt", TEXT_41);
    let index = ws.path("index.pfpfm");
    run_ok(bin().arg("build").arg(&text).arg(&index).args(["--w", "2", "--p", "3"]));
    let patterns = ws.file("patterns.txt", "");
    assert_eq!(count_output(&index, &patterns, false), "");
}

#[test]
fn sample_of_full_length_returns_whole_text() {
    let ws = Workspace::new();
    let text = ws.file("text.txt", TEXT_41);
    let out = ws.path("sampled.txt");
    run_ok(bin().arg("sample").arg(&text).arg(&out).args(["--length", "41", "--num", "1"]));
    assert_eq!(fs::read_to_string(&out).unwrap(), format!("{TEXT_41}\n"));
}

#[test]
fn sample_is_deterministic_and_yields_substrings() {
    let ws = Workspace::new();
    let text = ws.file("text.txt", TEXT_41);
    let first = ws.path("a.txt");
    let second = ws.path("b.txt");
    for out in [&first, &second] {
        run_ok(bin().arg("sample").arg(&text).arg(out).args([
            "--length", "10", "--num", "3", "--seed", "7",
        ]));
    }
    let a = fs::read_to_string(&first).unwrap();
    assert_eq!(a, fs::read_to_string(&second).unwrap());
    let lines: Vec<&str> = a.lines().collect();
    assert_eq!(lines.len(), 3);
    for line in lines {
        assert_eq!(line.len(), 10);
        assert!(TEXT_41.contains(line), "{line} not a substring");
    }

    let empty = ws.path("empty.txt");
    run_ok(bin().arg("sample").arg(&text).arg(&empty).args(["--length", "10", "--num", "0"]));
    assert_eq!(fs::read_to_string(&empty).unwrap(), "");
}

#[test]
fn sample_rejects_overlong_length() {
    let ws = Workspace::new();
    let text = ws.file("text.txt", TEXT_41);
    let out = ws.path("sampled.txt");
    let stderr = run_err(bin().arg("sample").arg(&text).arg(&out).args([
        "--length", "42", "--num", "1",
    ]));
    assert!(stderr.contains("exceeds text length"), "stderr: {stderr}");
}

#[test]
fn build_rejects_empty_input() {
    let ws = Workspace::new();
    let text = ws.file("empty.txt", "");
    let index = ws.path("index.pfpfm");
    let stderr = run_err(bin().arg("build").arg(&text).arg(&index).args(["--w", "2", "--p", "3"]));
    assert!(stderr.contains("empty"), "stderr: {stderr}");
}

#[test]
fn build_requires_exactly_one_oracle_mode() {
    let ws = Workspace::new();
    let text = ws.file("text.txt", TEXT_41);
    let index = ws.path("index.pfpfm");
    let stderr = run_err(bin().arg("build").arg(&text).arg(&index).args(["--w", "2"]));
    assert!(stderr.contains("--p"), "stderr: {stderr}");
}

#[test]
fn fasta_input_is_normalized() {
    let ws = Workspace::new();
    let fasta = ws.file("genome.fa", ">rec1 desc\nacgtacgt\nACGT\n>rec2\ntttt\n");
    let index = ws.path("index.pfpfm");
    run_ok(bin().arg("build").arg(&fasta).arg(&index).args(["--w", "2", "--p", "2"]));

    // Record concatenation: ACGTACGTACGTTTTT.
    let patterns = ws.file("patterns.txt", "ACGTACGT\nACGTTTTT\nacgt\n");
    let out = count_output(&index, &patterns, false);
    assert_eq!(out, "0\t2\n1\t1\n2\t0\n");
}

#[test]
fn bench_writes_parseable_csv() {
    let ws = Workspace::new();
    let text = ws.file("text.txt", TEXT_41.repeat(64));
    let csv_path = ws.path("bench.csv");
    run_ok(bin().arg("bench").arg(&text).args([
        "--w-list", "2,3",
        "--p-list", "2,4",
        "--length-list", "4,8",
        "--num", "5",
        "--seed", "1",
        "--csv-out", csv_path.to_str().unwrap(),
    ]));
    let csv = fs::read_to_string(&csv_path).unwrap();
    let mut lines = csv.lines();
    assert_eq!(lines.next(), Some(CSV_HEADER));
    let rows: Vec<&str> = lines.collect();
    assert_eq!(rows.len(), 8);
    for row in rows {
        BenchRecord::from_csv_row(row).unwrap();
    }
}
