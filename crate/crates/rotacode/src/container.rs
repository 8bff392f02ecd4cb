//! Nucleotide-mapped stream containers.
//!
//! Headers are fixed-length bit fields packed two bits per nucleotide
//! (A=00, T=01, C=10, G=11, most significant bits first). Two container
//! kinds exist: image streams and plain symbol streams, distinguished by a
//! 32-bit magic. Field order for the image header:
//! magic, width, height, quality, mode, seed, block count, histogram length,
//! then (token id, count) pairs. The symbol stream header carries magic,
//! mode, seed, fragment length, and symbol count.
//!
//! Headers are formatted data, not payload: oligo quality statistics are
//! computed over the payload that follows them.

use crate::codebook::{FrequencyTable, Nucleotide, SymbolId};
use crate::error::{Error, Result};
use crate::rotation::ScheduleMode;

/// Magic for image streams ("ROTQ").
pub const MAGIC_IMAGE: u32 = 0x524F_5451;
/// Magic for plain symbol streams ("ROTS").
pub const MAGIC_STREAM: u32 = 0x524F_5453;

/// Packs MSB-first bit fields into nucleotides.
#[derive(Debug, Default)]
pub struct NucleotideWriter {
    bits: Vec<bool>,
}

impl NucleotideWriter {
    pub fn new() -> NucleotideWriter {
        NucleotideWriter::default()
    }

    pub fn write_bits(&mut self, value: u64, width: usize) {
        debug_assert!(width <= 64);
        debug_assert!(width == 64 || value < (1u64 << width));
        for i in (0..width).rev() {
            self.bits.push(value >> i & 1 == 1);
        }
    }

    /// Zero-pad to a whole number of nucleotides and emit them.
    pub fn finish(mut self) -> Vec<Nucleotide> {
        if self.bits.len() % 2 == 1 {
            self.bits.push(false);
        }
        self.bits
            .chunks(2)
            .map(|pair| {
                let idx = (pair[0] as u8) << 1 | pair[1] as u8;
                Nucleotide::from_index(idx).expect("two bits index the alphabet")
            })
            .collect()
    }
}

/// Reads MSB-first bit fields back out of a nucleotide stream.
pub struct NucleotideReader<'a> {
    stream: &'a [Nucleotide],
    bit: usize,
}

impl<'a> NucleotideReader<'a> {
    pub fn new(stream: &'a [Nucleotide]) -> NucleotideReader<'a> {
        NucleotideReader { stream, bit: 0 }
    }

    pub fn read_bits(&mut self, width: usize) -> Result<u64> {
        debug_assert!(width <= 64);
        let mut out = 0u64;
        for _ in 0..width {
            let nucleotide = self.stream.get(self.bit / 2).ok_or(Error::HeaderParse {
                msg: "stream too short for its header".into(),
            })?;
            let pair = nucleotide.index();
            let bit = if self.bit.is_multiple_of(2) { pair >> 1 } else { pair & 1 };
            out = out << 1 | bit as u64;
            self.bit += 1;
        }
        Ok(out)
    }

    /// Nucleotides consumed so far, rounded up to whole nucleotides.
    pub fn consumed(&self) -> usize {
        self.bit.div_ceil(2)
    }
}

/// Header of an encoded image stream.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ImageHeader {
    pub width: u32,
    pub height: u32,
    pub quality: u8,
    pub mode: ScheduleMode,
    pub n_blocks: u32,
    /// Token histogram the decoder rebuilds the codebook from.
    pub histogram: Vec<(SymbolId, u32)>,
}

impl ImageHeader {
    pub fn to_nucleotides(&self) -> Vec<Nucleotide> {
        let mut w = NucleotideWriter::new();
        w.write_bits(MAGIC_IMAGE as u64, 32);
        w.write_bits(self.width as u64, 32);
        w.write_bits(self.height as u64, 32);
        w.write_bits(self.quality as u64, 8);
        w.write_bits(self.mode.tag() as u64, 8);
        w.write_bits(self.mode.seed(), 64);
        w.write_bits(self.n_blocks as u64, 32);
        w.write_bits(self.histogram.len() as u64, 16);
        for &(id, count) in &self.histogram {
            w.write_bits(id as u64, 16);
            w.write_bits(count as u64, 32);
        }
        w.finish()
    }

    /// Parse a header from the front of a stream; returns the header and the
    /// number of nucleotides it occupies.
    pub fn parse(stream: &[Nucleotide]) -> Result<(ImageHeader, usize)> {
        let mut r = NucleotideReader::new(stream);
        let magic = r.read_bits(32)? as u32;
        if magic != MAGIC_IMAGE {
            return Err(Error::HeaderParse {
                msg: format!("bad magic {magic:#010x}, expected an image stream"),
            });
        }
        let width = r.read_bits(32)? as u32;
        let height = r.read_bits(32)? as u32;
        let quality = r.read_bits(8)? as u8;
        let tag = r.read_bits(8)? as u8;
        let seed = r.read_bits(64)?;
        let mode = ScheduleMode::from_tag(tag, seed).ok_or_else(|| Error::HeaderParse {
            msg: format!("unknown schedule mode tag {tag}"),
        })?;
        let n_blocks = r.read_bits(32)? as u32;
        let hist_len = r.read_bits(16)? as usize;
        let mut histogram = Vec::with_capacity(hist_len);
        for _ in 0..hist_len {
            let id = r.read_bits(16)? as SymbolId;
            let count = r.read_bits(32)? as u32;
            histogram.push((id, count));
        }
        Ok((
            ImageHeader {
                width,
                height,
                quality,
                mode,
                n_blocks,
                histogram,
            },
            r.consumed(),
        ))
    }

    pub fn frequency_table(&self) -> FrequencyTable {
        FrequencyTable::from_counts(self.histogram.iter().map(|&(id, c)| (id, c as u64)))
    }
}

/// Header of an encoded plain symbol stream.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StreamHeader {
    pub mode: ScheduleMode,
    pub fragment_len: u32,
    pub n_symbols: u64,
}

impl StreamHeader {
    pub fn to_nucleotides(&self) -> Vec<Nucleotide> {
        let mut w = NucleotideWriter::new();
        w.write_bits(MAGIC_STREAM as u64, 32);
        w.write_bits(self.mode.tag() as u64, 8);
        w.write_bits(self.mode.seed(), 64);
        w.write_bits(self.fragment_len as u64, 32);
        w.write_bits(self.n_symbols, 64);
        w.finish()
    }

    pub fn parse(stream: &[Nucleotide]) -> Result<(StreamHeader, usize)> {
        let mut r = NucleotideReader::new(stream);
        let magic = r.read_bits(32)? as u32;
        if magic != MAGIC_STREAM {
            return Err(Error::HeaderParse {
                msg: format!("bad magic {magic:#010x}, expected a symbol stream"),
            });
        }
        let tag = r.read_bits(8)? as u8;
        let seed = r.read_bits(64)?;
        let mode = ScheduleMode::from_tag(tag, seed).ok_or_else(|| Error::HeaderParse {
            msg: format!("unknown schedule mode tag {tag}"),
        })?;
        let fragment_len = r.read_bits(32)? as u32;
        let n_symbols = r.read_bits(64)?;
        Ok((
            StreamHeader {
                mode,
                fragment_len,
                n_symbols,
            },
            r.consumed(),
        ))
    }
}

/// Identify the container kind from the leading magic, if any.
pub fn sniff_magic(stream: &[Nucleotide]) -> Option<u32> {
    let mut r = NucleotideReader::new(stream);
    let magic = r.read_bits(32).ok()? as u32;
    (magic == MAGIC_IMAGE || magic == MAGIC_STREAM).then_some(magic)
}
