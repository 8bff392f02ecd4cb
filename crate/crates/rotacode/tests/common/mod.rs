//! Shared helpers for the integration suites: deterministic generators for
//! codebooks, sources, and test images.

#![allow(dead_code)]

use rotacode::codebook::{Codebook, Codeword, Nucleotide, SymbolId};
use rotacode::image::quant::QuantizationSpec;
use rotacode::image::tokens::ZIGZAG;
use rotacode::image::GrayImage;
use rotacode::rotation::Xorshift64;

use std::collections::BTreeMap;

/// Random prefix-free codebook built by expanding a quaternary trie and
/// sampling its leaves. Leaves of a tree are prefix-free by construction,
/// which keeps this generator independent of the crate's own predicates.
pub fn random_prefix_codebook(rng: &mut Xorshift64, max_expansions: u64) -> Codebook {
    let mut leaves: Vec<Vec<Nucleotide>> =
        Nucleotide::ALL.iter().map(|&n| vec![n]).collect();
    let expansions = rng.next_below(max_expansions) + 1;
    for _ in 0..expansions {
        let i = rng.next_below(leaves.len() as u64) as usize;
        if leaves[i].len() >= 10 {
            continue;
        }
        let base = leaves.swap_remove(i);
        for &n in &Nucleotide::ALL {
            let mut word = base.clone();
            word.push(n);
            leaves.push(word);
        }
    }
    // Fisher-Yates shuffle, then keep a random subset of at least two leaves.
    for i in (1..leaves.len()).rev() {
        let j = rng.next_below(i as u64 + 1) as usize;
        leaves.swap(i, j);
    }
    let keep = 2 + rng.next_below(leaves.len() as u64 - 1) as usize;
    let mut entries = BTreeMap::new();
    for (i, word) in leaves.into_iter().take(keep).enumerate() {
        entries.insert(i as SymbolId, Codeword::new(word).unwrap());
    }
    Codebook::new(entries).unwrap()
}

/// Random source over the book's symbols, skewed toward the first symbol so
/// repeated-codeword behavior gets exercised.
pub fn random_source(rng: &mut Xorshift64, book: &Codebook, len: usize) -> Vec<SymbolId> {
    let symbols: Vec<SymbolId> = book.symbols().collect();
    (0..len)
        .map(|_| {
            if rng.next_below(2) == 0 {
                symbols[0]
            } else {
                symbols[rng.next_below(symbols.len() as u64) as usize]
            }
        })
        .collect()
}

pub fn gradient_image(width: usize, height: usize) -> GrayImage {
    GrayImage::from_fn(width, height, |x, y| {
        (x * 128 / width.max(1) + y * 127 / height.max(1)) as u8
    })
}

pub fn noise_image(width: usize, height: usize, seed: u64) -> GrayImage {
    let mut rng = Xorshift64::new(seed);
    let pixels: Vec<u8> = (0..width * height)
        .map(|_| rng.next_below(256) as u8)
        .collect();
    GrayImage::new(width, height, pixels).unwrap()
}

pub fn rings_image(width: usize, height: usize) -> GrayImage {
    GrayImage::from_fn(width, height, |x, y| {
        let dx = x as f64 - width as f64 / 2.0;
        let dy = y as f64 - height as f64 / 2.0;
        let r = (dx * dx + dy * dy).sqrt();
        (128.0 + 100.0 * (r / 6.0).cos()) as u8
    })
}

/// Inverse DCT kept in test code so image construction does not depend on
/// the implementation under test.
fn reference_idct(target: &[[f64; 8]; 8]) -> [[f64; 8]; 8] {
    let mut basis = [[0.0f64; 8]; 8];
    for (k, row) in basis.iter_mut().enumerate() {
        let scale = if k == 0 { (1.0f64 / 8.0).sqrt() } else { 0.5 };
        for (n, v) in row.iter_mut().enumerate() {
            *v = scale * ((2.0 * n as f64 + 1.0) * k as f64 * std::f64::consts::PI / 16.0).cos();
        }
    }
    let mut out = [[0.0; 8]; 8];
    for m in 0..8 {
        for n in 0..8 {
            let mut acc = 0.0;
            for u in 0..8 {
                for v in 0..8 {
                    acc += target[u][v] * basis[u][m] * basis[v][n];
                }
            }
            out[m][n] = acc;
        }
    }
    out
}

/// 8x8 pixel tile whose quantized spectrum at the given quality puts a +1
/// coefficient at each listed scan position.
fn spectral_tile(scan_positions: &[usize], quality: u8) -> [[u8; 8]; 8] {
    let spec = QuantizationSpec::from_quality(quality).unwrap();
    let mut target = [[0.0f64; 8]; 8];
    for &scan in scan_positions {
        let idx = ZIGZAG[scan];
        target[idx / 8][idx % 8] = 0.75 * spec.step(idx / 8, idx % 8) as f64;
    }
    let px = reference_idct(&target);
    let mut tile = [[0u8; 8]; 8];
    for r in 0..8 {
        for c in 0..8 {
            tile[r][c] = (px[r][c] + 128.0).round().clamp(0.0, 255.0) as u8;
        }
    }
    tile
}

/// Low-entropy striped test image for the high-compression regime.
///
/// Block columns cycle through four kinds of content: a flat tile, a tile
/// with a gap-one coefficient comb, and two copies of a tile with a dense
/// run of unit coefficients. The dense tiles produce long runs of one
/// repeated token, which an un-rotated code turns into long homopolymers;
/// they sit in columns whose round-robin phase is nonzero, so rotation
/// relabels exactly the blocks that need it.
pub fn striped_low_entropy_image(size: usize, quality: u8) -> GrayImage {
    let dense = spectral_tile(&[1, 2, 3, 4, 5, 6, 7, 8], quality);
    let comb = spectral_tile(&[1, 3, 5, 7, 9, 11, 13, 15], quality);
    GrayImage::from_fn(size, size, |x, y| {
        match (x / 8) % 4 {
            0 => 128,
            1 => comb[y % 8][x % 8],
            _ => dense[y % 8][x % 8],
        }
    })
}

/// Longest run of one nucleotide in a stream.
pub fn max_homopolymer(stream: &[Nucleotide]) -> usize {
    let mut best = 0;
    let mut current = 0;
    let mut prev = None;
    for &n in stream {
        if Some(n) == prev {
            current += 1;
        } else {
            current = 1;
            prev = Some(n);
        }
        best = best.max(current);
    }
    best
}
