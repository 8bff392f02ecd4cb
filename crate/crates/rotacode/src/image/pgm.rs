//! Binary PGM (P5, 8-bit) reading and writing.

use std::path::Path;

use crate::error::{Error, Result};
use crate::image::GrayImage;

fn parse_err(msg: impl Into<String>) -> Error {
    Error::PgmParse { msg: msg.into() }
}

/// Parse a P5 image from raw bytes. Comments (`#` to end of line) are
/// allowed between header tokens; the maximum sample value must fit a byte.
pub fn from_pgm_bytes(data: &[u8]) -> Result<GrayImage> {
    let mut pos = 0usize;

    fn next_token(data: &[u8], pos: &mut usize) -> Result<String> {
        // Skip whitespace and comments.
        loop {
            while *pos < data.len() && data[*pos].is_ascii_whitespace() {
                *pos += 1;
            }
            if *pos < data.len() && data[*pos] == b'#' {
                while *pos < data.len() && data[*pos] != b'\n' {
                    *pos += 1;
                }
            } else {
                break;
            }
        }
        let start = *pos;
        while *pos < data.len() && !data[*pos].is_ascii_whitespace() && data[*pos] != b'#' {
            *pos += 1;
        }
        if start == *pos {
            return Err(parse_err("unexpected end of header"));
        }
        Ok(String::from_utf8_lossy(&data[start..*pos]).into_owned())
    }

    let magic = next_token(data, &mut pos)?;
    if magic != "P5" {
        return Err(parse_err(format!("expected P5 magic, found {magic:?}")));
    }
    let width: usize = next_token(data, &mut pos)?
        .parse()
        .map_err(|_| parse_err("invalid width"))?;
    let height: usize = next_token(data, &mut pos)?
        .parse()
        .map_err(|_| parse_err("invalid height"))?;
    let maxval: u32 = next_token(data, &mut pos)?
        .parse()
        .map_err(|_| parse_err("invalid maximum sample value"))?;
    if maxval == 0 || maxval > 255 {
        return Err(parse_err(format!(
            "maximum sample value {maxval} outside 1..=255 (8-bit only)"
        )));
    }
    // Exactly one whitespace byte separates the header from the samples.
    if pos >= data.len() || !data[pos].is_ascii_whitespace() {
        return Err(parse_err("missing separator before samples"));
    }
    pos += 1;

    let expected = width
        .checked_mul(height)
        .ok_or_else(|| parse_err("image dimensions overflow"))?;
    let samples = &data[pos..];
    if samples.len() < expected {
        return Err(parse_err(format!(
            "expected {expected} samples, found {}",
            samples.len()
        )));
    }
    GrayImage::new(width, height, samples[..expected].to_vec())
}

/// Serialize as binary P5 with a 255 maximum sample value.
pub fn to_pgm_bytes(image: &GrayImage) -> Vec<u8> {
    let mut out = format!("P5\n{} {}\n255\n", image.width(), image.height()).into_bytes();
    out.extend_from_slice(image.pixels());
    out
}

pub fn read_pgm(path: &Path) -> Result<GrayImage> {
    from_pgm_bytes(&std::fs::read(path)?)
}

pub fn write_pgm(image: &GrayImage, path: &Path) -> Result<()> {
    Ok(std::fs::write(path, to_pgm_bytes(image))?)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn roundtrip() {
        let image = GrayImage::new(3, 2, vec![0, 64, 128, 192, 255, 7]).unwrap();
        let bytes = to_pgm_bytes(&image);
        let back = from_pgm_bytes(&bytes).unwrap();
        assert_eq!(back, image);
    }

    #[test]
    fn comments_in_header() {
        let data = b"P5 # binary graymap\n# made by hand\n2 2\n255\n\x00\x01\x02\x03";
        let image = from_pgm_bytes(data).unwrap();
        assert_eq!(image.width(), 2);
        assert_eq!(image.pixels(), &[0, 1, 2, 3]);
    }

    #[test]
    fn rejects_wrong_magic() {
        assert!(matches!(
            from_pgm_bytes(b"P2\n2 2\n255\n"),
            Err(Error::PgmParse { .. })
        ));
    }

    #[test]
    fn rejects_wide_samples() {
        assert!(matches!(
            from_pgm_bytes(b"P5\n2 2\n65535\n\x00\x00\x00\x00\x00\x00\x00\x00"),
            Err(Error::PgmParse { .. })
        ));
    }

    #[test]
    fn rejects_short_sample_data() {
        assert!(matches!(
            from_pgm_bytes(b"P5\n2 2\n255\n\x00\x01"),
            Err(Error::PgmParse { .. })
        ));
    }
}
