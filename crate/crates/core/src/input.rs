//! Input loading for the CLI: raw byte texts and FASTA files.

use std::fs;
use std::path::Path;

use crate::Error;

/// Reads a file and normalizes it for indexing.
pub fn read_text(path: impl AsRef<Path>) -> Result<Vec<u8>, Error> {
    Ok(normalize_input(&fs::read(path)?))
}

/// Files whose first byte is `>` are treated as FASTA: header lines are
/// dropped, sequence lines are uppercased and concatenated across records.
/// Anything else is taken as raw bytes, minus a single trailing newline so
/// that `echo text > file` indexes just `text`.
pub fn normalize_input(raw: &[u8]) -> Vec<u8> {
    if raw.first() == Some(&b'>') {
        let mut out = Vec::with_capacity(raw.len());
        for line in raw.split(|&b| b == b'\n') {
            let line = line.strip_suffix(b"\r").unwrap_or(line);
            if line.is_empty() || line[0] == b'>' {
                continue;
            }
            out.extend(line.iter().map(|b| b.to_ascii_uppercase()));
        }
        out
    } else {
        let raw = raw.strip_suffix(b"\n").unwrap_or(raw);
        let raw = raw.strip_suffix(b"\r").unwrap_or(raw);
        raw.to_vec()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn raw_keeps_interior_bytes() {
        assert_eq!(normalize_input(b"ab\ncd"), b"ab\ncd");
        assert_eq!(normalize_input(b"abcd"), b"abcd");
    }

    #[test]
    fn raw_strips_one_trailing_newline() {
        assert_eq!(normalize_input(b"abcd\n"), b"abcd");
        assert_eq!(normalize_input(b"abcd\r\n"), b"abcd");
        assert_eq!(normalize_input(b"abcd\n\n"), b"abcd\n");
        assert_eq!(normalize_input(b""), b"");
    }

    #[test]
    fn fasta_concatenates_records_uppercased() {
        let fasta = b">chr1 test\nacgt\nACGT\n>chr2\nttaa\n";
        assert_eq!(normalize_input(fasta), b"ACGTACGTTTAA");
    }

    #[test]
    fn fasta_handles_crlf_and_blank_lines() {
        let fasta = b">r1\r\nAC\r\n\r\nGT\r\n";
        assert_eq!(normalize_input(fasta), b"ACGT");
    }

    #[test]
    fn fasta_with_only_headers_is_empty() {
        assert_eq!(normalize_input(b">r1\n>r2\n"), b"");
    }

    #[test]
    fn read_text_round_trip() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("t.fa");
        fs::write(&path, b">x\nacg\n").unwrap();
        assert_eq!(read_text(&path).unwrap(), b"ACG");
    }
}
