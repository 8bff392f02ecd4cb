//! Block-transform grayscale image codec over the quaternary alphabet.
//!
//! The pipeline follows the classic transform-coding shape: 8x8 blocks are
//! level shifted, transformed with an orthonormal DCT, quantized with a
//! quality-scaled table, and tokenized into run/category symbols. Tokens are
//! entropy coded with a codebook built from the image's own token histogram;
//! the histogram travels in the stream header so the decoder rebuilds the
//! identical book. Coefficient values follow their tokens in a pre-generated
//! fixed-length code that is never rotated.
//!
//! Rotation happens per block: the scheduler draws one book index per block
//! and is reinitialised at the start of every block row, so a corrupt row
//! cannot influence the schedule of the rows before it. Because all four
//! books share codeword lengths, streams for all schedule modes have exactly
//! the same length, and all modes decode to the identical image.

pub mod dct;
pub mod pgm;
pub mod quant;
pub mod tokens;
pub mod value_code;

use crate::codebook::{build_huffman_goldman, FrequencyTable, Nucleotide};
use crate::container::ImageHeader;
use crate::entropy::RotatingDecoder;
use crate::error::{Error, Result};
use crate::rotation::{RotationSet, ScheduleMode, Scheduler};

use quant::QuantizationSpec;
use tokens::{BlockAssembler, Token, TokenSequence};

/// 8-bit grayscale image, row-major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GrayImage {
    width: usize,
    height: usize,
    pixels: Vec<u8>,
}

impl GrayImage {
    pub fn new(width: usize, height: usize, pixels: Vec<u8>) -> Result<GrayImage> {
        if width == 0 || height == 0 || pixels.len() != width * height {
            return Err(Error::InvalidImage);
        }
        Ok(GrayImage {
            width,
            height,
            pixels,
        })
    }

    /// Build an image by evaluating a function at every (x, y).
    pub fn from_fn(width: usize, height: usize, f: impl Fn(usize, usize) -> u8) -> GrayImage {
        let mut pixels = Vec::with_capacity(width * height);
        for y in 0..height {
            for x in 0..width {
                pixels.push(f(x, y));
            }
        }
        GrayImage {
            width,
            height,
            pixels,
        }
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn pixels(&self) -> &[u8] {
        &self.pixels
    }

    pub fn get(&self, x: usize, y: usize) -> u8 {
        self.pixels[y * self.width + x]
    }
}

/// Encoded image stream, header and payload kept separate so quality
/// statistics can be computed over the payload alone.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EncodedImage {
    pub header: Vec<Nucleotide>,
    pub payload: Vec<Nucleotide>,
}

impl EncodedImage {
    /// Header followed by payload; what actually gets stored.
    pub fn full_stream(&self) -> Vec<Nucleotide> {
        let mut out = Vec::with_capacity(self.header.len() + self.payload.len());
        out.extend_from_slice(&self.header);
        out.extend_from_slice(&self.payload);
        out
    }

    pub fn total_len(&self) -> usize {
        self.header.len() + self.payload.len()
    }
}

/// Peak signal-to-noise ratio in decibels; infinite for identical images.
pub fn psnr(a: &GrayImage, b: &GrayImage) -> Result<f64> {
    if a.width != b.width || a.height != b.height {
        return Err(Error::DimensionMismatch);
    }
    let sum_sq: f64 = a
        .pixels
        .iter()
        .zip(&b.pixels)
        .map(|(&x, &y)| {
            let d = x as f64 - y as f64;
            d * d
        })
        .sum();
    if sum_sq == 0.0 {
        return Ok(f64::INFINITY);
    }
    let mse = sum_sq / (a.width * a.height) as f64;
    Ok(10.0 * (255.0f64 * 255.0 / mse).log10())
}

fn pad_to_blocks(image: &GrayImage) -> (Vec<u8>, usize, usize) {
    let padded_w = image.width.div_ceil(8) * 8;
    let padded_h = image.height.div_ceil(8) * 8;
    let mut pixels = Vec::with_capacity(padded_w * padded_h);
    for y in 0..padded_h {
        let sy = y.min(image.height - 1);
        for x in 0..padded_w {
            let sx = x.min(image.width - 1);
            pixels.push(image.get(sx, sy));
        }
    }
    (pixels, padded_w, padded_h)
}

fn extract_block(pixels: &[u8], stride: usize, bx: usize, by: usize) -> [[f64; 8]; 8] {
    let mut block = [[0.0; 8]; 8];
    for (r, row) in block.iter_mut().enumerate() {
        let base = (by * 8 + r) * stride + bx * 8;
        for (c, v) in row.iter_mut().enumerate() {
            *v = pixels[base + c] as f64 - 128.0;
        }
    }
    block
}

/// Encode a grayscale image at the given quality under a schedule mode.
pub fn encode_image(image: &GrayImage, quality: u8, mode: ScheduleMode) -> Result<EncodedImage> {
    let spec = QuantizationSpec::from_quality(quality)?;
    let (pixels, padded_w, padded_h) = pad_to_blocks(image);
    let blocks_x = padded_w / 8;
    let blocks_y = padded_h / 8;

    // Transform, quantize, and tokenize every block; gather the histogram.
    let mut block_tokens: Vec<TokenSequence> = Vec::with_capacity(blocks_x * blocks_y);
    let mut histogram = FrequencyTable::new();
    let mut prev_dc = 0i32;
    for by in 0..blocks_y {
        for bx in 0..blocks_x {
            let block = extract_block(&pixels, padded_w, bx, by);
            let quantized = quant::quantize(&dct::forward_8x8(&block), &spec);
            let (tokens, dc) = tokens::block_to_symbols(&quantized, prev_dc)?;
            prev_dc = dc;
            for (token, _) in &tokens {
                histogram.add(token.symbol_id(), 1);
            }
            block_tokens.push(tokens);
        }
    }

    let codebook = build_huffman_goldman(&histogram)?;
    let rotation = RotationSet::generate(&codebook)?;

    let header = ImageHeader {
        width: image.width as u32,
        height: image.height as u32,
        quality,
        mode,
        n_blocks: (blocks_x * blocks_y) as u32,
        histogram: histogram.iter().map(|(id, c)| (id, c as u32)).collect(),
    }
    .to_nucleotides();

    // Entropy-code the tokens block by block; one book draw per block,
    // schedule reinitialised at every block row. Value words are appended
    // verbatim from the fixed-length code.
    let mut scheduler = Scheduler::new(mode);
    let mut payload = Vec::new();
    for by in 0..blocks_y {
        scheduler.reset_for_row(by as u64);
        for bx in 0..blocks_x {
            let book = rotation.code(scheduler.next_code());
            for (token, value) in &block_tokens[by * blocks_x + bx] {
                let word = book
                    .get(token.symbol_id())
                    .expect("histogram covers every token");
                payload.extend_from_slice(word.nucleotides());
                if let Some(v) = value {
                    payload.extend(value_code::encode_value(token.value_category(), *v)?);
                }
            }
        }
    }

    Ok(EncodedImage { header, payload })
}

/// Decode a stream produced by [`encode_image`] back to an image.
///
/// The result is exactly the image reconstructed from the quantized
/// coefficients: lossy relative to the input only through quantization, and
/// identical for every schedule mode.
pub fn decode_image(stream: &[Nucleotide]) -> Result<GrayImage> {
    let (header, header_len) = ImageHeader::parse(stream)?;
    let width = header.width as usize;
    let height = header.height as usize;
    if width == 0 || height == 0 {
        return Err(Error::HeaderParse {
            msg: "zero image dimensions".into(),
        });
    }
    let spec = QuantizationSpec::from_quality(header.quality).map_err(|_| Error::HeaderParse {
        msg: format!("quality {} out of range", header.quality),
    })?;
    let blocks_x = width.div_ceil(8);
    let blocks_y = height.div_ceil(8);
    if header.n_blocks as usize != blocks_x * blocks_y {
        return Err(Error::HeaderParse {
            msg: format!(
                "block count {} does not match {}x{} blocks",
                header.n_blocks, blocks_x, blocks_y
            ),
        });
    }

    let codebook = build_huffman_goldman(&header.frequency_table()).map_err(|e| {
        Error::HeaderParse {
            msg: format!("histogram does not define a codebook: {e}"),
        }
    })?;
    let rotation = RotationSet::generate(&codebook)?;
    let decoder = RotatingDecoder::new(&rotation)?;

    let padded_w = blocks_x * 8;
    let padded_h = blocks_y * 8;
    let mut canvas = vec![0u8; padded_w * padded_h];

    let mut scheduler = Scheduler::new(header.mode);
    let mut pos = header_len;
    let mut prev_dc = 0i32;
    for by in 0..blocks_y {
        scheduler.reset_for_row(by as u64);
        for bx in 0..blocks_x {
            let k = scheduler.next_code();
            let quantized = decode_block(
                stream,
                &mut pos,
                decoder.trie(k),
                &mut prev_dc,
            )
            .map_err(|e| locate(e, by, bx, pos))?;
            let block = dct::inverse_8x8(&quant::dequantize(&quantized, &spec));
            for (r, row) in block.iter().enumerate() {
                let base = (by * 8 + r) * padded_w + bx * 8;
                for (c, &v) in row.iter().enumerate() {
                    canvas[base + c] = (v + 128.0).round().clamp(0.0, 255.0) as u8;
                }
            }
        }
    }
    if pos != stream.len() {
        return Err(Error::TrailingGarbage { offset: pos });
    }

    // Crop the padding off.
    let mut pixels = Vec::with_capacity(width * height);
    for y in 0..height {
        pixels.extend_from_slice(&canvas[y * padded_w..y * padded_w + width]);
    }
    GrayImage::new(width, height, pixels)
}

fn locate(e: Error, block_row: usize, block_col: usize, fallback_offset: usize) -> Error {
    let offset = match &e {
        Error::NoCodewordMatch { offset }
        | Error::PrematureEnd { offset }
        | Error::TrailingGarbage { offset } => *offset,
        _ => fallback_offset,
    };
    Error::BlockDecode {
        block_row,
        block_col,
        offset,
        reason: e.to_string(),
    }
}

fn decode_block(
    stream: &[Nucleotide],
    pos: &mut usize,
    trie: &crate::entropy::PrefixTrie,
    prev_dc: &mut i32,
) -> Result<[[i32; 8]; 8]> {
    let mut assembler = BlockAssembler::new();
    while !assembler.is_complete() {
        let (symbol, used) = trie.decode_at(stream, *pos)?;
        *pos += used;
        let token = Token::from_symbol_id(symbol)?;
        let category = token.value_category();
        let value = if category > 0 {
            let len = value_code::word_len(category);
            let word = stream
                .get(*pos..*pos + len)
                .ok_or(Error::PrematureEnd { offset: stream.len() })?;
            let v = value_code::decode_value(category, word)?;
            *pos += len;
            Some(v)
        } else {
            None
        };
        assembler.push(token, value, *prev_dc)?;
    }
    let (block, dc) = assembler.finish();
    *prev_dc = dc;
    Ok(block)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::codebook::SymbolId;

    fn gradient(width: usize, height: usize) -> GrayImage {
        GrayImage::from_fn(width, height, |x, y| {
            ((x * 255) / width.max(1) / 2 + (y * 255) / height.max(1) / 2) as u8
        })
    }

    #[test]
    fn constant_block_tokens() {
        let image = GrayImage::from_fn(8, 8, |_, _| 128);
        let encoded = encode_image(&image, 50, ScheduleMode::None).unwrap();
        let (header, _) = ImageHeader::parse(&encoded.full_stream()).unwrap();
        assert_eq!(header.n_blocks, 1);
        // One DC category-0 token and one end-of-block token.
        let mut ids: Vec<SymbolId> = header.histogram.iter().map(|&(id, _)| id).collect();
        ids.sort_unstable();
        assert_eq!(ids, vec![Token::Dc { category: 0 }.symbol_id(), Token::EndOfBlock.symbol_id()]);
    }

    #[test]
    fn round_robin_resets_each_block_row() {
        // Two blocks per row: with a per-row reset the draw sequence is
        // 0,1 / 0,1 rather than 0,1 / 2,3.
        let mut sched = Scheduler::new(ScheduleMode::RoundRobin);
        let mut draws = Vec::new();
        for row in 0..2u64 {
            sched.reset_for_row(row);
            for _ in 0..2 {
                draws.push(sched.next_code());
            }
        }
        assert_eq!(draws, vec![0, 1, 0, 1]);
    }

    #[test]
    fn decode_inverts_encode_for_all_modes() {
        let image = gradient(24, 16);
        let mut decoded_images = Vec::new();
        for mode in [
            ScheduleMode::None,
            ScheduleMode::RoundRobin,
            ScheduleMode::PseudoRandom { seed: 7 },
        ] {
            let encoded = encode_image(&image, 50, mode).unwrap();
            let decoded = decode_image(&encoded.full_stream()).unwrap();
            assert_eq!(decoded.width(), 24);
            assert_eq!(decoded.height(), 16);
            decoded_images.push(decoded);
        }
        // Identical reconstruction regardless of labeling.
        assert_eq!(decoded_images[0], decoded_images[1]);
        assert_eq!(decoded_images[0], decoded_images[2]);
    }

    #[test]
    fn stream_length_is_mode_invariant() {
        let image = gradient(40, 24);
        for quality in [10u8, 50, 90] {
            let baseline = encode_image(&image, quality, ScheduleMode::None).unwrap();
            for mode in [
                ScheduleMode::RoundRobin,
                ScheduleMode::PseudoRandom { seed: 31 },
            ] {
                let other = encode_image(&image, quality, mode).unwrap();
                assert_eq!(other.payload.len(), baseline.payload.len());
                assert_eq!(other.total_len(), baseline.total_len());
            }
        }
    }

    #[test]
    fn high_quality_gradient_reconstructs_well() {
        let image = gradient(64, 64);
        let encoded = encode_image(&image, 100, ScheduleMode::RoundRobin).unwrap();
        let decoded = decode_image(&encoded.full_stream()).unwrap();
        let quality = psnr(&image, &decoded).unwrap();
        assert!(quality > 40.0, "PSNR {quality:.2} dB");
    }

    #[test]
    fn non_multiple_of_eight_dimensions() {
        let image = gradient(13, 9);
        let encoded = encode_image(&image, 75, ScheduleMode::RoundRobin).unwrap();
        let decoded = decode_image(&encoded.full_stream()).unwrap();
        assert_eq!(decoded.width(), 13);
        assert_eq!(decoded.height(), 9);
    }

    #[test]
    fn psnr_examples() {
        let a = gradient(16, 16);
        assert_eq!(psnr(&a, &a).unwrap(), f64::INFINITY);

        // All pixels off by exactly 16: closed form 20*log10(255/16).
        let expected = 20.0 * (255.0f64 / 16.0).log10();
        let base = GrayImage::from_fn(16, 16, |x, y| a.get(x, y) / 2);
        let shifted = GrayImage::from_fn(16, 16, |x, y| (a.get(x, y) / 2) + 16);
        assert!((psnr(&base, &shifted).unwrap() - expected).abs() < 1e-9);
        assert_eq!(
            psnr(&base, &shifted).unwrap(),
            psnr(&shifted, &base).unwrap()
        );

        let small = gradient(8, 8);
        assert!(matches!(psnr(&a, &small), Err(Error::DimensionMismatch)));
    }

    #[test]
    fn tampering_is_localized_or_detected() {
        let image = gradient(64, 48); // 8x6 blocks
        let encoded = encode_image(&image, 50, ScheduleMode::RoundRobin).unwrap();
        let clean = decode_image(&encoded.full_stream()).unwrap();

        // Flip a nucleotide somewhere in the row-3 region of the payload.
        let mut stream = encoded.full_stream();
        let tamper_at = encoded.header.len() + encoded.payload.len() / 2;
        let original = stream[tamper_at];
        let replacement = Nucleotide::from_index((original.index() + 1) % 4).unwrap();
        stream[tamper_at] = replacement;

        match decode_image(&stream) {
            Ok(decoded) => {
                // Rows before the tamper point must be untouched.
                for y in 0..8 {
                    for x in 0..64 {
                        assert_eq!(decoded.get(x, y), clean.get(x, y));
                    }
                }
            }
            Err(e) => {
                assert!(e.is_corruption(), "unexpected error class: {e}");
                if let Error::BlockDecode { block_row, .. } = e {
                    assert!(block_row >= 2, "error should not predate the tamper point");
                }
            }
        }
    }
}
