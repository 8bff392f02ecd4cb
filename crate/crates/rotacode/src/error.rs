//! Crate-wide error type.

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("codebook must contain at least one entry")]
    EmptyCodebook,

    #[error("codeword must contain at least one nucleotide")]
    EmptyCodeword,

    #[error("codeword length {len} exceeds the maximum of {max}")]
    CodewordTooLong { len: usize, max: usize },

    #[error("source must have at least two symbols with nonzero counts")]
    DegenerateSource,

    #[error("symbol {symbol} has a nonzero count but no codebook entry")]
    MissingSymbol { symbol: u32 },

    #[error("codebook is not prefix-free")]
    NotPrefixFree,

    #[error("rotation index {k} out of range (expected 0..=3)")]
    InvalidShift { k: u8 },

    #[error("fragment length must be at least 1")]
    InvalidFragmentLength,

    #[error("oligo length must be at least 1")]
    InvalidOligoLength,

    #[error("quality {quality} out of range (expected 1..=100)")]
    InvalidQuality { quality: u8 },

    #[error("symbol {symbol} at position {position} has no codebook entry")]
    UncoveredSymbol { position: usize, symbol: u32 },

    #[error("no codeword matches the stream at nucleotide offset {offset}")]
    NoCodewordMatch { offset: usize },

    #[error("stream ended inside a codeword at nucleotide offset {offset}")]
    PrematureEnd { offset: usize },

    #[error("trailing garbage after the last symbol at nucleotide offset {offset}")]
    TrailingGarbage { offset: usize },

    #[error("decode failed in block row {block_row}, column {block_col}: {reason} (nucleotide offset {offset})")]
    BlockDecode {
        block_row: usize,
        block_col: usize,
        offset: usize,
        reason: String,
    },

    #[error("coefficient value {value} exceeds the representable magnitude range")]
    ValueOverflow { value: i64 },

    #[error("value word does not map to a value of category {category}")]
    InvalidValueWord { category: u8 },

    #[error("codebook file line {line}: {msg}")]
    CodebookParse { line: usize, msg: String },

    #[error("FASTA line {line}: {msg}")]
    FastaParse { line: usize, msg: String },

    #[error("frequency file line {line}: {msg}")]
    FrequencyParse { line: usize, msg: String },

    #[error("symbol file line {line}: {msg}")]
    SymbolParse { line: usize, msg: String },

    #[error("PGM: {msg}")]
    PgmParse { msg: String },

    #[error("stream header: {msg}")]
    HeaderParse { msg: String },

    #[error("corrupt stream: {msg}")]
    CorruptStream { msg: String },

    #[error("image dimensions do not match")]
    DimensionMismatch,

    #[error("image dimensions must be nonzero and match the pixel buffer")]
    InvalidImage,

    #[error("{0}")]
    Usage(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    /// True for errors caused by a corrupt or truncated encoded stream,
    /// as opposed to bad inputs or usage. The CLI maps these to exit code 3.
    pub fn is_corruption(&self) -> bool {
        matches!(
            self,
            Error::NoCodewordMatch { .. }
                | Error::PrematureEnd { .. }
                | Error::TrailingGarbage { .. }
                | Error::BlockDecode { .. }
                | Error::InvalidValueWord { .. }
                | Error::HeaderParse { .. }
                | Error::CorruptStream { .. }
        )
    }

    pub fn exit_code(&self) -> i32 {
        if self.is_corruption() {
            3
        } else {
            2
        }
    }
}
