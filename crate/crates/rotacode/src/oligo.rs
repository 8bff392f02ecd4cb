//! Cutting nucleotide streams into fixed-length oligos and FASTA round trips.
//!
//! Oligos are kept in order; concatenating them reproduces the stream, and
//! the FASTA headers carry zero-padded indices so files reassemble exactly.

use std::path::Path;

use crate::codebook::{nucleotides_from_str, nucleotides_to_string, Nucleotide};
use crate::error::{Error, Result};

/// Ordered pool of fixed-length oligos cut from one stream.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OligoPool {
    oligos: Vec<Vec<Nucleotide>>,
}

impl OligoPool {
    pub fn oligos(&self) -> &[Vec<Nucleotide>] {
        &self.oligos
    }

    pub fn len(&self) -> usize {
        self.oligos.len()
    }

    pub fn is_empty(&self) -> bool {
        self.oligos.is_empty()
    }

    /// Observed cut length: the length of the first oligo. Every oligo but
    /// the last shares it when the pool came from [`segment`].
    pub fn oligo_length(&self) -> usize {
        self.oligos.first().map(Vec::len).unwrap_or(0)
    }

    /// Length of the final, possibly partial, oligo.
    pub fn last_len(&self) -> usize {
        self.oligos.last().map(Vec::len).unwrap_or(0)
    }

    pub fn total_nucleotides(&self) -> usize {
        self.oligos.iter().map(Vec::len).sum()
    }
}

/// Cut a stream greedily every `oligo_length` nucleotides; the final partial
/// oligo is kept as-is. An empty stream yields an empty pool.
pub fn segment(stream: &[Nucleotide], oligo_length: usize) -> Result<OligoPool> {
    if oligo_length == 0 {
        return Err(Error::InvalidOligoLength);
    }
    let oligos = stream
        .chunks(oligo_length)
        .map(|chunk| chunk.to_vec())
        .collect();
    Ok(OligoPool { oligos })
}

/// Concatenate the pool back into one stream.
pub fn reassemble(pool: &OligoPool) -> Vec<Nucleotide> {
    let mut out = Vec::with_capacity(pool.total_nucleotides());
    for oligo in &pool.oligos {
        out.extend_from_slice(oligo);
    }
    out
}

/// Render the pool as FASTA: `>oligo_<zero-padded index>` then one sequence
/// line per record, LF endings, uppercase ACGT.
pub fn format_fasta(pool: &OligoPool) -> String {
    let mut out = String::new();
    for (i, oligo) in pool.oligos.iter().enumerate() {
        out.push_str(&format!(">oligo_{i:06}\n"));
        out.push_str(&nucleotides_to_string(oligo));
        out.push('\n');
    }
    out
}

/// Parse FASTA produced by [`format_fasta`]: indices must be contiguous from
/// zero and sequences must be uppercase ACGT, one line per record.
pub fn parse_fasta(text: &str) -> Result<OligoPool> {
    let mut oligos: Vec<Vec<Nucleotide>> = Vec::new();
    let mut lines = text.lines().enumerate().peekable();
    while let Some((idx, raw)) = lines.next() {
        let line_no = idx + 1;
        let line = raw.trim_end_matches('\r');
        if line.is_empty() {
            continue;
        }
        let header = line.strip_prefix('>').ok_or_else(|| Error::FastaParse {
            line: line_no,
            msg: "expected a '>' header line".into(),
        })?;
        let index: usize = header
            .strip_prefix("oligo_")
            .and_then(|s| s.parse().ok())
            .ok_or_else(|| Error::FastaParse {
                line: line_no,
                msg: format!("header {header:?} is not of the form oligo_<index>"),
            })?;
        if index != oligos.len() {
            return Err(Error::FastaParse {
                line: line_no,
                msg: format!("expected index {}, found {index}", oligos.len()),
            });
        }
        let Some((seq_idx, seq_raw)) = lines.next() else {
            return Err(Error::FastaParse {
                line: line_no,
                msg: "header without a sequence line".into(),
            });
        };
        let seq_line = seq_raw.trim_end_matches('\r');
        let nucleotides = nucleotides_from_str(seq_line).map_err(|c| Error::FastaParse {
            line: seq_idx + 1,
            msg: format!("{c:?} is not a nucleotide"),
        })?;
        if nucleotides.is_empty() {
            return Err(Error::FastaParse {
                line: seq_idx + 1,
                msg: "empty sequence line".into(),
            });
        }
        oligos.push(nucleotides);
    }
    Ok(OligoPool { oligos })
}

pub fn read_fasta(path: &Path) -> Result<OligoPool> {
    parse_fasta(&std::fs::read_to_string(path)?)
}

pub fn write_fasta(pool: &OligoPool, path: &Path) -> Result<()> {
    Ok(std::fs::write(path, format_fasta(pool))?)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn stream(len: usize) -> Vec<Nucleotide> {
        (0..len)
            .map(|i| Nucleotide::from_index((i % 4) as u8).unwrap())
            .collect()
    }

    #[test]
    fn segment_cuts_greedily() {
        let pool = segment(&stream(450), 200).unwrap();
        let lens: Vec<usize> = pool.oligos().iter().map(Vec::len).collect();
        assert_eq!(lens, vec![200, 200, 50]);
        assert_eq!(pool.oligo_length(), 200);
        assert_eq!(pool.last_len(), 50);
    }

    #[test]
    fn exact_multiple_has_no_partial() {
        let pool = segment(&stream(200), 200).unwrap();
        assert_eq!(pool.len(), 1);
        assert_eq!(pool.last_len(), 200);
    }

    #[test]
    fn empty_stream_empty_pool() {
        let pool = segment(&[], 200).unwrap();
        assert!(pool.is_empty());
        assert_eq!(reassemble(&pool), vec![]);
    }

    #[test]
    fn zero_oligo_length_rejected() {
        assert!(matches!(
            segment(&stream(8), 0),
            Err(Error::InvalidOligoLength)
        ));
    }

    #[test]
    fn reassemble_inverts_segment() {
        for len in [0usize, 1, 199, 200, 201, 450, 1000] {
            let s = stream(len);
            let pool = segment(&s, 200).unwrap();
            assert_eq!(reassemble(&pool), s);
        }
    }

    #[test]
    fn fasta_headers_are_zero_padded() {
        let pool = segment(&stream(30), 10).unwrap();
        let text = format_fasta(&pool);
        assert_eq!(
            text,
            ">oligo_000000\nATCGATCGAT\n>oligo_000001\nCGATCGATCG\n>oligo_000002\nATCGATCGAT\n"
        );
    }

    #[test]
    fn fasta_roundtrip() {
        let pool = segment(&stream(450), 200).unwrap();
        let back = parse_fasta(&format_fasta(&pool)).unwrap();
        assert_eq!(back, pool);
    }

    #[test]
    fn empty_fasta_is_an_empty_pool() {
        let pool = parse_fasta("").unwrap();
        assert!(pool.is_empty());
    }

    #[test]
    fn fasta_rejects_bad_bases() {
        match parse_fasta(">oligo_000000\nACGN\n") {
            Err(Error::FastaParse { line, .. }) => assert_eq!(line, 2),
            other => panic!("expected parse error, got {other:?}"),
        }
    }

    #[test]
    fn fasta_rejects_gapped_indices() {
        let text = ">oligo_000000\nACGT\n>oligo_000002\nACGT\n";
        match parse_fasta(text) {
            Err(Error::FastaParse { line, .. }) => assert_eq!(line, 3),
            other => panic!("expected index error, got {other:?}"),
        }
    }

    #[test]
    fn fasta_rejects_duplicate_indices() {
        let text = ">oligo_000000\nACGT\n>oligo_000000\nACGT\n";
        assert!(parse_fasta(text).is_err());
    }

    #[test]
    fn fasta_rejects_missing_sequence() {
        assert!(parse_fasta(">oligo_000000\n").is_err());
    }
}
