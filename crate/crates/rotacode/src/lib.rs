//! Quaternary entropy coding with rotating codebook labeling for DNA data
//! storage.
//!
//! Variable-length codes over the DNA alphabet tend to create homopolymers
//! and repeated patterns when a frequent symbol repeats in the source, and
//! those patterns raise synthesis and sequencing error rates. This crate
//! rotates the labeling instead of constraining the code: every codebook is
//! expanded into four alphabet-shifted variants with identical codeword
//! lengths, and a deterministic scheduler switches between them per source
//! fragment (or per block in the image codec). Streams keep exactly the
//! compression rate of the unrotated code while long runs and repeats are
//! broken up.
//!
//! What's here:
//!
//! - [`codebook`]: the quaternary alphabet, prefix-free codebooks, ternary
//!   Huffman construction with Goldman relabeling, and the codebook file
//!   format.
//! - [`rotation`]: letter shifting, the four-book rotation set, and the
//!   round-robin / seeded pseudo-random schedulers.
//! - [`entropy`]: stream encode/decode with scheduled book switches.
//! - [`image`]: a block-transform grayscale codec (8x8 DCT, quality-scaled
//!   quantization, run/category tokens) that rotates the entropy code per
//!   block and leaves the fixed-length value code untouched.
//! - [`oligo`]: cutting streams into fixed-length oligos and FASTA I/O.
//! - [`analyzer`]: homopolymer and GC-content statistics over oligo pools.
//! - [`cli`]: the `rotacode` command-line tool built from the pieces above.
//!
//! # Examples
//!
//! Each major capability has a runnable example:
//!
//! ```bash
//! cargo run --example codebook_construction
//! cargo run --example rotating_stream
//! cargo run --example image_pipeline
//! cargo run --example oligo_quality
//! cargo run --example file_formats
//! ```
//!
//! A quick in-process tour:
//!
//! ```
//! use rotacode::codebook::{build_huffman_goldman, FrequencyTable};
//! use rotacode::entropy::{decode_stream, encode_stream};
//! use rotacode::rotation::{RotationSet, ScheduleMode, Scheduler};
//!
//! # fn main() -> rotacode::Result<()> {
//! let freqs = FrequencyTable::from_counts([(0, 90), (1, 6), (2, 4)]);
//! let book = build_huffman_goldman(&freqs)?;
//! let rotation = RotationSet::generate(&book)?;
//!
//! let source = vec![0, 0, 0, 0, 0, 0, 1, 0, 0, 2];
//! let mut scheduler = Scheduler::new(ScheduleMode::RoundRobin);
//! let stream = encode_stream(&source, &rotation, &mut scheduler, 6)?;
//!
//! let mut scheduler = Scheduler::new(ScheduleMode::RoundRobin);
//! let decoded = decode_stream(&stream, &rotation, &mut scheduler, 6, source.len())?;
//! assert_eq!(decoded, source);
//! # Ok(())
//! # }
//! ```

pub mod analyzer;
pub mod cli;
pub mod codebook;
pub mod container;
pub mod entropy;
pub mod error;
pub mod image;
pub mod oligo;
pub mod rotation;

pub use error::{Error, Result};
