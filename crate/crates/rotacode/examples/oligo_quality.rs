//! Cut encoded streams into oligos and compare their quality statistics with
//! and without rotation: homopolymer counts, lengths, and GC distribution.
//!
//! ```bash
//! cargo run --example oligo_quality
//! ```

use rotacode::analyzer::{compare_reports, quality_report};
use rotacode::image::quant::QuantizationSpec;
use rotacode::image::tokens::ZIGZAG;
use rotacode::image::{dct, encode_image, GrayImage};
use rotacode::oligo::segment;
use rotacode::rotation::ScheduleMode;

/// Pixel tile whose quantized spectrum has a +1 coefficient at each of the
/// given scan positions.
fn tile_for(scan_positions: &[usize], spec: &QuantizationSpec) -> [[u8; 8]; 8] {
    let mut spectrum = [[0.0f64; 8]; 8];
    for &scan in scan_positions {
        let idx = ZIGZAG[scan];
        spectrum[idx / 8][idx % 8] = 0.75 * spec.step(idx / 8, idx % 8) as f64;
    }
    let pixels = dct::inverse_8x8(&spectrum);
    let mut tile = [[0u8; 8]; 8];
    for r in 0..8 {
        for c in 0..8 {
            tile[r][c] = (pixels[r][c] + 128.0).round().clamp(0.0, 255.0) as u8;
        }
    }
    tile
}

/// A low-entropy image in the regime where un-rotated coding produces long
/// homopolymers: flat background, one stripe of a sparse coefficient comb,
/// and two stripes of a dense coefficient run whose single frequent token
/// repeats many times back to back.
fn low_entropy_image(size: usize, quality: u8) -> GrayImage {
    let spec = QuantizationSpec::from_quality(quality).unwrap();
    let dense = tile_for(&[1, 2, 3, 4, 5, 6, 7, 8], &spec);
    let comb = tile_for(&[1, 3, 5, 7, 9, 11, 13, 15], &spec);
    GrayImage::from_fn(size, size, |x, y| match (x / 8) % 4 {
        0 => 128,
        1 => comb[y % 8][x % 8],
        _ => dense[y % 8][x % 8],
    })
}

fn main() -> rotacode::Result<()> {
    let quality = 5;
    let image = low_entropy_image(256, quality);
    let oligo_length = 200;

    let mut reports = Vec::new();
    for mode in [ScheduleMode::None, ScheduleMode::RoundRobin] {
        let encoded = encode_image(&image, quality, mode)?;
        // Quality statistics cover the payload; the header is formatted data.
        let pool = segment(&encoded.payload, oligo_length)?;
        let report = quality_report(&pool);
        println!("{mode:?}:");
        println!("  oligos:                 {}", report.n_oligos);
        println!("  homopolymers (>= 4 nt): {}", report.n_homopolymers);
        println!("  average run length:     {:.2}", report.avg_homopolymer_len);
        println!("  longest run:            {}", report.max_homopolymer_len);
        println!("  clean oligo fraction:   {:.3}", report.clean_oligo_fraction);
        println!("  problematic GC:         {:.3}", report.gc_problematic_fraction);
        println!("  gc histogram (5% bins): {:?}", report.gc_histogram);
        reports.push(report);
    }

    let delta = compare_reports(&reports[0], &reports[1]);
    println!("\nrotation delta (round-robin minus none):");
    println!("  homopolymer count: {:+}", delta.d_n_homopolymers);
    println!("  average length:    {:+.2}", delta.d_avg_homopolymer_len);
    println!("  longest run:       {:+}", delta.d_max_homopolymer_len);
    println!("  problematic GC:    {:+.3}", delta.d_gc_problematic_fraction);
    Ok(())
}
