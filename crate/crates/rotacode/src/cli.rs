//! Command-line front end: encode, decode, analyze, and gen-codebook.
//!
//! Summaries go to standard output as JSON; human-oriented notes sit behind
//! `--verbose` on standard error. Exit codes: 0 on success, 2 for input or
//! usage errors, 3 for corrupt or truncated streams.

use std::io::Write;
use std::path::{Path, PathBuf};

use serde::Serialize;

use crate::analyzer;
use crate::codebook::{
    build_huffman_goldman, expected_length, read_codebook, write_codebook, FrequencyTable,
    SymbolId,
};
use crate::container::{sniff_magic, StreamHeader, MAGIC_IMAGE, MAGIC_STREAM};
use crate::entropy::{decode_stream, encode_stream};
use crate::error::{Error, Result};
use crate::image::{decode_image, encode_image, pgm};
use crate::oligo::{read_fasta, reassemble, segment, write_fasta, OligoPool};
use crate::rotation::{switch_letters_book, RotationSet, ScheduleMode, Scheduler};

pub const USAGE: &str = "\
usage: rotacode <command> [flags]

commands:
  encode        PGM image (or symbol file with --codebook) -> FASTA oligo pool
  decode        FASTA oligo pool -> PGM image (or symbol file with --codebook)
  analyze       FASTA oligo pool -> quality report
  gen-codebook  frequency file (or --codebook) -> codebook file

flags:
  --input PATH            input file
  --output PATH           output file
  --quality N             image quality 1..=100 (default 50)
  --mode none|roundrobin|random
                          codebook schedule (default roundrobin)
  --seed N                seed for --mode random (default 0)
  --oligo-length N        oligo length in nucleotides (default 200)
  --fragment-length N     symbols per fragment, stream mode only (default 6)
  --codebook PATH         codebook file for symbol streams
  --rotated K             emit the K-rotated book (gen-codebook, default 0)
  --verbose               progress notes on standard error
  --help                  this text
";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Command {
    Encode,
    Decode,
    Analyze,
    GenCodebook,
}

#[derive(Debug, Clone)]
pub struct CliConfig {
    command: Command,
    input: Option<PathBuf>,
    output: Option<PathBuf>,
    quality: u8,
    mode: ScheduleMode,
    oligo_length: usize,
    fragment_length: usize,
    codebook: Option<PathBuf>,
    rotated: u8,
    verbose: bool,
}

fn usage_err(msg: impl Into<String>) -> Error {
    Error::Usage(msg.into())
}

fn parse_args(args: &[String]) -> Result<Option<CliConfig>> {
    if args.is_empty() || args[0] == "--help" || args[0] == "-h" {
        return Ok(None);
    }
    let command = match args[0].as_str() {
        "encode" => Command::Encode,
        "decode" => Command::Decode,
        "analyze" => Command::Analyze,
        "gen-codebook" => Command::GenCodebook,
        other => return Err(usage_err(format!("unknown command {other:?}"))),
    };

    let mut input = None;
    let mut output = None;
    let mut quality = 50u8;
    let mut mode_name = "roundrobin".to_string();
    let mut seed = 0u64;
    let mut oligo_length = 200usize;
    let mut fragment_length = 6usize;
    let mut codebook = None;
    let mut rotated = 0u8;
    let mut verbose = false;

    let mut it = args[1..].iter();
    while let Some(flag) = it.next() {
        let mut value = |name: &str| {
            it.next()
                .cloned()
                .ok_or_else(|| usage_err(format!("{name} requires a value")))
        };
        match flag.as_str() {
            "--input" => input = Some(PathBuf::from(value("--input")?)),
            "--output" => output = Some(PathBuf::from(value("--output")?)),
            "--quality" => {
                quality = value("--quality")?
                    .parse()
                    .map_err(|_| usage_err("--quality expects an integer 1..=100"))?;
            }
            "--mode" => mode_name = value("--mode")?,
            "--seed" => {
                seed = value("--seed")?
                    .parse()
                    .map_err(|_| usage_err("--seed expects a 64-bit unsigned integer"))?;
            }
            "--oligo-length" => {
                oligo_length = value("--oligo-length")?
                    .parse()
                    .map_err(|_| usage_err("--oligo-length expects a positive integer"))?;
            }
            "--fragment-length" => {
                fragment_length = value("--fragment-length")?
                    .parse()
                    .map_err(|_| usage_err("--fragment-length expects a positive integer"))?;
            }
            "--codebook" => codebook = Some(PathBuf::from(value("--codebook")?)),
            "--rotated" => {
                rotated = value("--rotated")?
                    .parse()
                    .map_err(|_| usage_err("--rotated expects 0..=3"))?;
            }
            "--verbose" => verbose = true,
            "--help" | "-h" => return Ok(None),
            other => return Err(usage_err(format!("unknown flag {other:?}"))),
        }
    }

    let mode = match mode_name.as_str() {
        "none" => ScheduleMode::None,
        "roundrobin" => ScheduleMode::RoundRobin,
        "random" => ScheduleMode::PseudoRandom { seed },
        other => {
            return Err(usage_err(format!(
                "unknown mode {other:?} (expected none, roundrobin, or random)"
            )))
        }
    };
    if oligo_length == 0 {
        return Err(Error::InvalidOligoLength);
    }
    if fragment_length == 0 {
        return Err(Error::InvalidFragmentLength);
    }

    Ok(Some(CliConfig {
        command,
        input,
        output,
        quality,
        mode,
        oligo_length,
        fragment_length,
        codebook,
        rotated,
        verbose,
    }))
}

/// Run the CLI against the given arguments, writing summaries to `stdout`
/// and diagnostics to `stderr`. Returns the process exit code.
pub fn run(args: &[String], stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32 {
    let config = match parse_args(args) {
        Ok(Some(config)) => config,
        Ok(None) => {
            let _ = stdout.write_all(USAGE.as_bytes());
            return 0;
        }
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            let _ = stderr.write_all(USAGE.as_bytes());
            return 2;
        }
    };
    let outcome = match config.command {
        Command::Encode => cmd_encode(&config, stdout, stderr),
        Command::Decode => cmd_decode(&config, stdout, stderr),
        Command::Analyze => cmd_analyze(&config, stdout, stderr),
        Command::GenCodebook => cmd_gen_codebook(&config, stdout, stderr),
    };
    match outcome {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            e.exit_code()
        }
    }
}

fn require_input(config: &CliConfig) -> Result<&Path> {
    config
        .input
        .as_deref()
        .ok_or_else(|| usage_err("--input is required"))
}

fn require_output(config: &CliConfig) -> Result<&Path> {
    config
        .output
        .as_deref()
        .ok_or_else(|| usage_err("--output is required"))
}

fn print_json<T: Serialize>(stdout: &mut dyn Write, value: &T) -> Result<()> {
    let text = serde_json::to_string(value).expect("summaries serialize");
    Ok(writeln!(stdout, "{text}")?)
}

#[derive(Serialize)]
struct EncodeSummary<'a> {
    command: &'a str,
    source: &'a str,
    output: String,
    mode: &'a str,
    nucleotides_total: usize,
    nucleotides_header: usize,
    nucleotides_payload: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    width: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    height: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    quality: Option<u8>,
    #[serde(skip_serializing_if = "Option::is_none")]
    nt_per_pixel: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    n_symbols: Option<usize>,
    oligo_count: usize,
    oligo_length: usize,
}

fn mode_name(mode: ScheduleMode) -> &'static str {
    match mode {
        ScheduleMode::None => "none",
        ScheduleMode::RoundRobin => "roundrobin",
        ScheduleMode::PseudoRandom { .. } => "random",
    }
}

fn cmd_encode(config: &CliConfig, stdout: &mut dyn Write, stderr: &mut dyn Write) -> Result<()> {
    let input = require_input(config)?;
    let output = require_output(config)?;

    let (stream, header_len, summary_dims, n_symbols) = if let Some(cb_path) = &config.codebook {
        // Stream mode: entropy-code a plain symbol sequence.
        let symbols = parse_symbol_file(&std::fs::read_to_string(input)?)?;
        let book = read_codebook(cb_path)?;
        let rotation = RotationSet::generate(&book)?;
        let header = StreamHeader {
            mode: config.mode,
            fragment_len: config.fragment_length as u32,
            n_symbols: symbols.len() as u64,
        }
        .to_nucleotides();
        let mut scheduler = Scheduler::new(config.mode);
        let payload = encode_stream(&symbols, &rotation, &mut scheduler, config.fragment_length)?;
        let mut stream = header.clone();
        stream.extend_from_slice(&payload);
        (stream, header.len(), None, Some(symbols.len()))
    } else {
        let image = pgm::read_pgm(input)?;
        let encoded = encode_image(&image, config.quality, config.mode)?;
        let dims = (image.width(), image.height());
        (encoded.full_stream(), encoded.header.len(), Some(dims), None)
    };

    let pool = segment(&stream, config.oligo_length)?;
    write_fasta(&pool, output)?;

    if config.verbose {
        writeln!(
            stderr,
            "encoded {} nucleotides into {} oligos",
            stream.len(),
            pool.len()
        )?;
    }

    let payload_len = stream.len() - header_len;
    let summary = EncodeSummary {
        command: "encode",
        source: if summary_dims.is_some() { "image" } else { "symbols" },
        output: output.display().to_string(),
        mode: mode_name(config.mode),
        nucleotides_total: stream.len(),
        nucleotides_header: header_len,
        nucleotides_payload: payload_len,
        width: summary_dims.map(|(w, _)| w),
        height: summary_dims.map(|(_, h)| h),
        quality: summary_dims.map(|_| config.quality),
        nt_per_pixel: summary_dims.map(|(w, h)| payload_len as f64 / (w * h) as f64),
        n_symbols,
        oligo_count: pool.len(),
        oligo_length: config.oligo_length,
    };
    print_json(stdout, &summary)
}

#[derive(Serialize)]
struct DecodeSummary<'a> {
    command: &'a str,
    source: &'a str,
    output: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    width: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    height: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    n_symbols: Option<usize>,
}

fn cmd_decode(config: &CliConfig, stdout: &mut dyn Write, stderr: &mut dyn Write) -> Result<()> {
    let input = require_input(config)?;
    let output = require_output(config)?;
    let pool = read_fasta(input)?;
    let stream = reassemble(&pool);

    match sniff_magic(&stream) {
        Some(MAGIC_IMAGE) => {
            let image = decode_image(&stream)?;
            pgm::write_pgm(&image, output)?;
            if config.verbose {
                writeln!(stderr, "decoded {}x{} image", image.width(), image.height())?;
            }
            print_json(
                stdout,
                &DecodeSummary {
                    command: "decode",
                    source: "image",
                    output: output.display().to_string(),
                    width: Some(image.width()),
                    height: Some(image.height()),
                    n_symbols: None,
                },
            )
        }
        Some(MAGIC_STREAM) => {
            let cb_path = config
                .codebook
                .as_deref()
                .ok_or_else(|| usage_err("--codebook is required to decode a symbol stream"))?;
            let book = read_codebook(cb_path)?;
            let rotation = RotationSet::generate(&book)?;
            let (header, header_len) = StreamHeader::parse(&stream)?;
            let mut scheduler = Scheduler::new(header.mode);
            let symbols = decode_stream(
                &stream[header_len..],
                &rotation,
                &mut scheduler,
                header.fragment_len as usize,
                header.n_symbols as usize,
            )?;
            let mut text = String::new();
            for s in &symbols {
                text.push_str(&format!("{s}\n"));
            }
            std::fs::write(output, text)?;
            if config.verbose {
                writeln!(stderr, "decoded {} symbols", symbols.len())?;
            }
            print_json(
                stdout,
                &DecodeSummary {
                    command: "decode",
                    source: "symbols",
                    output: output.display().to_string(),
                    width: None,
                    height: None,
                    n_symbols: Some(symbols.len()),
                },
            )
        }
        _ => Err(Error::HeaderParse {
            msg: "input does not begin with a known stream magic".into(),
        }),
    }
}

/// Strip a leading container header so statistics cover payload only; the
/// header is formatted data, not synthesized content.
fn payload_pool(pool: &OligoPool) -> Result<OligoPool> {
    if pool.is_empty() {
        return Ok(pool.clone());
    }
    let stream = reassemble(pool);
    let header_len = match sniff_magic(&stream) {
        Some(MAGIC_IMAGE) => crate::container::ImageHeader::parse(&stream).map(|(_, n)| n),
        Some(MAGIC_STREAM) => StreamHeader::parse(&stream).map(|(_, n)| n),
        _ => return Ok(pool.clone()),
    };
    match header_len {
        Ok(n) => segment(&stream[n..], pool.oligo_length()),
        // A coincidental magic without a parseable header: analyze as-is.
        Err(_) => Ok(pool.clone()),
    }
}

fn cmd_analyze(config: &CliConfig, stdout: &mut dyn Write, stderr: &mut dyn Write) -> Result<()> {
    let input = require_input(config)?;
    let pool = read_fasta(input)?;
    let measured = payload_pool(&pool)?;
    let report = analyzer::quality_report(&measured);

    if let Some(output) = &config.output {
        std::fs::write(output, serde_json::to_string_pretty(&report).expect("report serializes"))?;
        let dir = output.parent().unwrap_or_else(|| Path::new("."));
        std::fs::write(
            dir.join("gc_histogram.csv"),
            analyzer::gc_histogram_csv(&report),
        )?;
        std::fs::write(
            dir.join("homopolymer_per_oligo.csv"),
            analyzer::per_oligo_csv(&measured),
        )?;
        if config.verbose {
            writeln!(stderr, "report and histograms written next to {}", output.display())?;
        }
    }
    print_json(stdout, &report)
}

#[derive(Serialize)]
struct GenCodebookSummary<'a> {
    command: &'a str,
    output: String,
    entries: usize,
    rotated: u8,
    #[serde(skip_serializing_if = "Option::is_none")]
    expected_length: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    expected_length_exact: Option<String>,
}

fn cmd_gen_codebook(
    config: &CliConfig,
    stdout: &mut dyn Write,
    stderr: &mut dyn Write,
) -> Result<()> {
    let output = require_output(config)?;
    if config.rotated > 3 {
        return Err(Error::InvalidShift { k: config.rotated });
    }

    // Either rotate an existing book or build one from frequencies.
    let (base, mean) = if let Some(cb_path) = &config.codebook {
        (read_codebook(cb_path)?, None)
    } else {
        let input = require_input(config)?;
        let freqs = parse_frequency_file(&std::fs::read_to_string(input)?)?;
        let book = build_huffman_goldman(&freqs)?;
        let mean = expected_length(&book, &freqs)?;
        (book, Some(mean))
    };

    let book = if config.rotated == 0 {
        base
    } else {
        switch_letters_book(&base, config.rotated)?
    };
    write_codebook(&book, output)?;

    if config.verbose {
        writeln!(stderr, "wrote {} codewords", book.len())?;
    }
    print_json(
        stdout,
        &GenCodebookSummary {
            command: "gen-codebook",
            output: output.display().to_string(),
            entries: book.len(),
            rotated: config.rotated,
            expected_length: mean.map(|m| m.as_f64()),
            expected_length_exact: mean.map(|m| m.to_string()),
        },
    )
}

/// Parse a symbol file: one decimal symbol id per line, `#` comments and
/// blank lines ignored.
pub fn parse_symbol_file(text: &str) -> Result<Vec<SymbolId>> {
    let mut out = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let symbol = line.parse().map_err(|_| Error::SymbolParse {
            line: idx + 1,
            msg: format!("invalid symbol id {line:?}"),
        })?;
        out.push(symbol);
    }
    Ok(out)
}

/// Parse a frequency file: `<symbol id> <count>` per line, whitespace
/// separated, `#` comments and blank lines ignored.
pub fn parse_frequency_file(text: &str) -> Result<FrequencyTable> {
    let mut table = FrequencyTable::new();
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let mut parts = line.split_whitespace();
        let (Some(id_part), Some(count_part), None) = (parts.next(), parts.next(), parts.next())
        else {
            return Err(Error::FrequencyParse {
                line: line_no,
                msg: "expected <symbol id> <count>".into(),
            });
        };
        let symbol: SymbolId = id_part.parse().map_err(|_| Error::FrequencyParse {
            line: line_no,
            msg: format!("invalid symbol id {id_part:?}"),
        })?;
        let count: u64 = count_part.parse().map_err(|_| Error::FrequencyParse {
            line: line_no,
            msg: format!("invalid count {count_part:?}"),
        })?;
        table.add(symbol, count);
    }
    Ok(table)
}
