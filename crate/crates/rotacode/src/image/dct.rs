//! Orthonormal 8x8 type-II DCT and its inverse.

use std::sync::OnceLock;

/// Basis matrix: `COS[k][n] = scale(k) * cos((2n + 1) k pi / 16)` with
/// `scale(0) = sqrt(1/8)` and `scale(k) = 1/2` otherwise. Orthonormal, so the
/// inverse transform is the transpose.
fn basis() -> &'static [[f64; 8]; 8] {
    static BASIS: OnceLock<[[f64; 8]; 8]> = OnceLock::new();
    BASIS.get_or_init(|| {
        let mut m = [[0.0; 8]; 8];
        for (k, row) in m.iter_mut().enumerate() {
            let scale = if k == 0 { (1.0f64 / 8.0).sqrt() } else { 0.5 };
            for (n, v) in row.iter_mut().enumerate() {
                *v = scale
                    * ((2.0 * n as f64 + 1.0) * k as f64 * std::f64::consts::PI / 16.0).cos();
            }
        }
        m
    })
}

/// Forward 2-D DCT: rows then columns.
pub fn forward_8x8(block: &[[f64; 8]; 8]) -> [[f64; 8]; 8] {
    let c = basis();
    let mut tmp = [[0.0; 8]; 8];
    for k in 0..8 {
        for n in 0..8 {
            let mut acc = 0.0;
            for m in 0..8 {
                acc += c[k][m] * block[m][n];
            }
            tmp[k][n] = acc;
        }
    }
    let mut out = [[0.0; 8]; 8];
    for k in 0..8 {
        for l in 0..8 {
            let mut acc = 0.0;
            for n in 0..8 {
                acc += tmp[k][n] * c[l][n];
            }
            out[k][l] = acc;
        }
    }
    out
}

/// Inverse 2-D DCT (transpose of the forward transform).
pub fn inverse_8x8(coefs: &[[f64; 8]; 8]) -> [[f64; 8]; 8] {
    let c = basis();
    let mut tmp = [[0.0; 8]; 8];
    for m in 0..8 {
        for l in 0..8 {
            let mut acc = 0.0;
            for k in 0..8 {
                acc += c[k][m] * coefs[k][l];
            }
            tmp[m][l] = acc;
        }
    }
    let mut out = [[0.0; 8]; 8];
    for m in 0..8 {
        for n in 0..8 {
            let mut acc = 0.0;
            for l in 0..8 {
                acc += tmp[m][l] * c[l][n];
            }
            out[m][n] = acc;
        }
    }
    out
}
