//! Quality-scaled quantization of DCT coefficient blocks.

use crate::error::{Error, Result};

/// ITU-T T.81 Annex K luminance table.
pub const BASE_LUMINANCE: [[u16; 8]; 8] = [
    [16, 11, 10, 16, 24, 40, 51, 61],
    [12, 12, 14, 19, 26, 58, 60, 55],
    [14, 13, 16, 24, 40, 57, 69, 56],
    [14, 17, 22, 29, 51, 87, 80, 62],
    [18, 22, 37, 56, 68, 109, 103, 77],
    [24, 35, 55, 64, 81, 104, 113, 92],
    [49, 64, 78, 87, 103, 121, 120, 101],
    [72, 92, 95, 98, 112, 100, 103, 99],
];

/// Quantization steps derived from the base table and a 1..=100 quality.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuantizationSpec {
    table: [[u16; 8]; 8],
    quality: u8,
}

impl QuantizationSpec {
    pub fn from_quality(quality: u8) -> Result<QuantizationSpec> {
        if !(1..=100).contains(&quality) {
            return Err(Error::InvalidQuality { quality });
        }
        let scale: u32 = if quality < 50 {
            5000 / quality as u32
        } else {
            200 - 2 * quality as u32
        };
        let mut table = [[0u16; 8]; 8];
        for (r, row) in table.iter_mut().enumerate() {
            for (c, step) in row.iter_mut().enumerate() {
                let scaled = (BASE_LUMINANCE[r][c] as u32 * scale + 50) / 100;
                *step = scaled.clamp(1, u16::MAX as u32) as u16;
            }
        }
        Ok(QuantizationSpec { table, quality })
    }

    pub fn quality(&self) -> u8 {
        self.quality
    }

    pub fn step(&self, row: usize, col: usize) -> u16 {
        self.table[row][col]
    }

    pub fn steps(&self) -> &[[u16; 8]; 8] {
        &self.table
    }
}

/// Divide by the step and round half away from zero.
pub fn quantize(coefs: &[[f64; 8]; 8], spec: &QuantizationSpec) -> [[i32; 8]; 8] {
    let mut out = [[0i32; 8]; 8];
    for r in 0..8 {
        for c in 0..8 {
            out[r][c] = (coefs[r][c] / spec.table[r][c] as f64).round() as i32;
        }
    }
    out
}

/// Multiply quantized values back onto the step grid.
pub fn dequantize(quantized: &[[i32; 8]; 8], spec: &QuantizationSpec) -> [[f64; 8]; 8] {
    let mut out = [[0.0; 8]; 8];
    for r in 0..8 {
        for c in 0..8 {
            out[r][c] = quantized[r][c] as f64 * spec.table[r][c] as f64;
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quality_bounds_checked() {
        assert!(QuantizationSpec::from_quality(0).is_err());
        assert!(QuantizationSpec::from_quality(101).is_err());
        assert!(QuantizationSpec::from_quality(1).is_ok());
        assert!(QuantizationSpec::from_quality(100).is_ok());
    }

    #[test]
    fn quality_50_is_the_base_table() {
        let spec = QuantizationSpec::from_quality(50).unwrap();
        assert_eq!(spec.steps(), &BASE_LUMINANCE);
    }

    #[test]
    fn quality_100_is_all_ones() {
        let spec = QuantizationSpec::from_quality(100).unwrap();
        for row in spec.steps() {
            for &s in row {
                assert_eq!(s, 1);
            }
        }
    }

    #[test]
    fn quality_5_scales_by_ten() {
        let spec = QuantizationSpec::from_quality(5).unwrap();
        assert_eq!(spec.step(0, 0), 160);
        assert_eq!(spec.step(0, 1), 110);
        assert_eq!(spec.step(7, 7), 990);
    }

    #[test]
    fn rounding_is_half_away_from_zero() {
        let spec = QuantizationSpec::from_quality(50).unwrap();
        let mut coefs = [[0.0; 8]; 8];
        coefs[0][0] = 17.0; // step 16
        coefs[0][3] = -24.0; // step 16
        coefs[1][0] = 6.0; // step 12, exactly half
        coefs[2][0] = -7.0; // step 14, exactly half
        let q = quantize(&coefs, &spec);
        assert_eq!(q[0][0], 1);
        assert_eq!(q[0][3], -2);
        assert_eq!(q[1][0], 1);
        assert_eq!(q[2][0], -1);
        assert_eq!(q[5][5], 0);
    }

    #[test]
    fn dequantize_stays_within_half_step() {
        let spec = QuantizationSpec::from_quality(75).unwrap();
        let mut coefs = [[0.0; 8]; 8];
        for (r, row) in coefs.iter_mut().enumerate() {
            for (c, v) in row.iter_mut().enumerate() {
                *v = (r as f64 * 17.3 - c as f64 * 42.7) % 300.0;
            }
        }
        let back = dequantize(&quantize(&coefs, &spec), &spec);
        for r in 0..8 {
            for c in 0..8 {
                let half = spec.step(r, c) as f64 / 2.0;
                assert!((back[r][c] - coefs[r][c]).abs() <= half + 1e-9);
            }
        }
    }
}
