//! Build a quaternary codebook from symbol frequencies and inspect its four
//! rotations.
//!
//! ```bash
//! cargo run --example codebook_construction
//! ```

use rotacode::codebook::{build_huffman_goldman, expected_length, FrequencyTable};
use rotacode::rotation::RotationSet;

fn main() -> rotacode::Result<()> {
    // A skewed source: symbol 0 dominates, so it earns the shortest codeword.
    let freqs = FrequencyTable::from_counts([(0, 120), (1, 40), (2, 20), (3, 10), (4, 5)]);
    let book = build_huffman_goldman(&freqs)?;

    println!("codebook for counts 120/40/20/10/5:");
    for (symbol, word) in book.iter() {
        println!("  symbol {symbol}: {word}  ({} nt)", word.len());
    }
    let mean = expected_length(&book, &freqs)?;
    println!("mean length: {mean} nt/symbol = {:.4}", mean.as_f64());
    println!("prefix-free: {}", book.is_prefix_free());

    // The rotation set relabels every codeword by shifting letters through
    // A -> T -> C -> G. Lengths never change, so neither does the rate.
    let rotation = RotationSet::generate(&book)?;
    println!("\nrotations of each codeword:");
    for (symbol, _) in book.iter() {
        let variants: Vec<String> = (0..4u8)
            .map(|k| rotation.code(k).get(symbol).unwrap().to_string())
            .collect();
        println!("  symbol {symbol}: {}", variants.join(" / "));
    }
    for k in 1..=3u8 {
        assert_eq!(expected_length(rotation.code(k), &freqs)?, mean);
    }
    println!("\nall four books share the same mean length: {mean}");
    Ok(())
}
