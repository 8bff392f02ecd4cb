//! Tour of the on-disk formats: codebook files, FASTA oligo pools, and the
//! nucleotide-mapped stream header.
//!
//! ```bash
//! cargo run --example file_formats
//! ```

use rotacode::codebook::{format_codebook, parse_codebook};
use rotacode::container::{sniff_magic, ImageHeader, MAGIC_IMAGE};
use rotacode::image::{encode_image, GrayImage};
use rotacode::oligo::{format_fasta, parse_fasta, reassemble, segment};
use rotacode::rotation::ScheduleMode;

fn main() -> rotacode::Result<()> {
    // Codebook files: one tab-separated entry per line. An externally
    // constructed book (say, from another coder) drops in through the same
    // format as long as it stays prefix-free.
    let text = "# symbol\tcodeword\n0\tT\n1\tCA\n2\tCT\n3\tCG\n";
    let book = parse_codebook(text)?;
    println!("parsed {} codebook entries:", book.len());
    print!("{}", format_codebook(&book));

    // Encode a tiny image and cut the stream into oligos.
    let image = GrayImage::from_fn(16, 16, |x, y| (x * 16 + y * 8) as u8);
    let encoded = encode_image(&image, 50, ScheduleMode::RoundRobin)?;
    let stream = encoded.full_stream();
    println!("\nencoded image: {} header + {} payload nt", encoded.header.len(), encoded.payload.len());

    let pool = segment(&stream, 64)?;
    let fasta = format_fasta(&pool);
    println!("\nFASTA pool ({} oligos of {} nt):", pool.len(), pool.oligo_length());
    for line in fasta.lines().take(4) {
        println!("  {line}");
    }
    println!("  ...");

    // Files round-trip exactly; reassembly restores the stream.
    let parsed = parse_fasta(&fasta)?;
    assert_eq!(parsed, pool);
    assert_eq!(reassemble(&parsed), stream);

    // The stream self-identifies via its leading magic, and the header
    // carries everything the decoder needs: dimensions, quality, schedule
    // mode, seed, and the token histogram that rebuilds the codebook.
    assert_eq!(sniff_magic(&stream), Some(MAGIC_IMAGE));
    let (header, header_len) = ImageHeader::parse(&stream)?;
    println!("\nheader ({header_len} nt):");
    println!("  dimensions: {}x{}", header.width, header.height);
    println!("  quality:    {}", header.quality);
    println!("  mode:       {:?}", header.mode);
    println!("  histogram:  {} token kinds", header.histogram.len());
    Ok(())
}
