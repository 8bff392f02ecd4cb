//! Quaternary codebooks: nucleotide alphabet, prefix-free codeword maps,
//! ternary Huffman construction with Goldman relabeling, and codebook files.
//!
//! A codebook maps symbol ids to codewords over the DNA alphabet. Books built
//! by [`build_huffman_goldman`] are prefix-free, length-optimal for a ternary
//! Huffman code over the given frequencies, and never contain two identical
//! adjacent nucleotides inside a codeword.

use std::collections::BTreeMap;
use std::fmt;
use std::path::Path;

use crate::error::{Error, Result};

/// Symbol identifier in a source alphabet.
pub type SymbolId = u32;

/// One of the four DNA bases. The total order A < T < C < G is the cyclic
/// order used by letter rotation, not the alphabetical one.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Nucleotide {
    A,
    T,
    C,
    G,
}

impl Nucleotide {
    /// All four bases in rotation order.
    pub const ALL: [Nucleotide; 4] = [Nucleotide::A, Nucleotide::T, Nucleotide::C, Nucleotide::G];

    /// Index in rotation order: A=0, T=1, C=2, G=3.
    ///
    /// This doubles as the 2-bit wire value used by stream headers.
    pub fn index(self) -> u8 {
        match self {
            Nucleotide::A => 0,
            Nucleotide::T => 1,
            Nucleotide::C => 2,
            Nucleotide::G => 3,
        }
    }

    pub fn from_index(idx: u8) -> Option<Nucleotide> {
        Nucleotide::ALL.get(idx as usize).copied()
    }

    pub fn from_char(c: char) -> Option<Nucleotide> {
        match c {
            'A' => Some(Nucleotide::A),
            'T' => Some(Nucleotide::T),
            'C' => Some(Nucleotide::C),
            'G' => Some(Nucleotide::G),
            _ => None,
        }
    }

    pub fn to_char(self) -> char {
        match self {
            Nucleotide::A => 'A',
            Nucleotide::T => 'T',
            Nucleotide::C => 'C',
            Nucleotide::G => 'G',
        }
    }
}

impl fmt::Display for Nucleotide {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_char())
    }
}

/// Render a nucleotide slice as an ACGT string.
pub fn nucleotides_to_string(nucleotides: &[Nucleotide]) -> String {
    nucleotides.iter().map(|n| n.to_char()).collect()
}

/// Parse an ACGT string into nucleotides. Returns the offending character on failure.
pub fn nucleotides_from_str(s: &str) -> std::result::Result<Vec<Nucleotide>, char> {
    s.chars().map(|c| Nucleotide::from_char(c).ok_or(c)).collect()
}

/// A non-empty nucleotide string used as a code entry.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Codeword(Vec<Nucleotide>);

impl Codeword {
    /// Longest representable codeword. Bounds memory for packed
    /// representations; no realistic token table comes close.
    pub const MAX_LEN: usize = 32;

    pub fn new(nucleotides: Vec<Nucleotide>) -> Result<Codeword> {
        if nucleotides.is_empty() {
            return Err(Error::EmptyCodeword);
        }
        if nucleotides.len() > Codeword::MAX_LEN {
            return Err(Error::CodewordTooLong {
                len: nucleotides.len(),
                max: Codeword::MAX_LEN,
            });
        }
        Ok(Codeword(nucleotides))
    }

    pub fn parse(s: &str) -> Result<Codeword> {
        let nucleotides = nucleotides_from_str(s)
            .map_err(|c| Error::Usage(format!("invalid nucleotide {c:?} in codeword {s:?}")))?;
        Codeword::new(nucleotides)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn nucleotides(&self) -> &[Nucleotide] {
        &self.0
    }

    /// True when `self` is a prefix of `other` (including equality).
    pub fn is_prefix_of(&self, other: &Codeword) -> bool {
        self.len() <= other.len() && self.0[..] == other.0[..self.len()]
    }
}

impl fmt::Display for Codeword {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", nucleotides_to_string(&self.0))
    }
}

/// Symbol appearance counts used to drive codebook construction.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct FrequencyTable {
    counts: BTreeMap<SymbolId, u64>,
}

impl FrequencyTable {
    pub fn new() -> FrequencyTable {
        FrequencyTable::default()
    }

    pub fn from_counts<I: IntoIterator<Item = (SymbolId, u64)>>(counts: I) -> FrequencyTable {
        FrequencyTable {
            counts: counts.into_iter().collect(),
        }
    }

    pub fn add(&mut self, symbol: SymbolId, count: u64) {
        *self.counts.entry(symbol).or_insert(0) += count;
    }

    pub fn count(&self, symbol: SymbolId) -> u64 {
        self.counts.get(&symbol).copied().unwrap_or(0)
    }

    pub fn iter(&self) -> impl Iterator<Item = (SymbolId, u64)> + '_ {
        self.counts.iter().map(|(&s, &c)| (s, c))
    }

    /// Symbols with nonzero counts, ascending by id.
    pub fn nonzero_symbols(&self) -> Vec<SymbolId> {
        self.counts
            .iter()
            .filter(|&(_, &c)| c > 0)
            .map(|(&s, _)| s)
            .collect()
    }

    pub fn total(&self) -> u64 {
        self.counts.values().sum()
    }

    pub fn len(&self) -> usize {
        self.counts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.counts.is_empty()
    }
}

/// Exact ratio of nucleotides per symbol, kept in lowest terms.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Rational {
    num: u128,
    den: u128,
}

impl Rational {
    pub fn new(num: u128, den: u128) -> Rational {
        assert!(den != 0, "rational with zero denominator");
        if num == 0 {
            return Rational { num: 0, den: 1 };
        }
        let g = gcd(num, den);
        Rational {
            num: num / g,
            den: den / g,
        }
    }

    pub fn numerator(&self) -> u128 {
        self.num
    }

    pub fn denominator(&self) -> u128 {
        self.den
    }

    pub fn as_f64(&self) -> f64 {
        self.num as f64 / self.den as f64
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}

fn gcd(mut a: u128, mut b: u128) -> u128 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

/// Map from symbol ids to quaternary codewords.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Codebook {
    entries: BTreeMap<SymbolId, Codeword>,
}

impl Codebook {
    pub fn new(entries: BTreeMap<SymbolId, Codeword>) -> Result<Codebook> {
        if entries.is_empty() {
            return Err(Error::EmptyCodebook);
        }
        Ok(Codebook { entries })
    }

    /// Convenience constructor from `(symbol, "ACGT")` pairs.
    pub fn from_pairs<'a, I: IntoIterator<Item = (SymbolId, &'a str)>>(pairs: I) -> Result<Codebook> {
        let mut entries = BTreeMap::new();
        for (symbol, word) in pairs {
            entries.insert(symbol, Codeword::parse(word)?);
        }
        Codebook::new(entries)
    }

    pub fn get(&self, symbol: SymbolId) -> Option<&Codeword> {
        self.entries.get(&symbol)
    }

    pub fn iter(&self) -> impl Iterator<Item = (SymbolId, &Codeword)> + '_ {
        self.entries.iter().map(|(&s, w)| (s, w))
    }

    pub fn symbols(&self) -> impl Iterator<Item = SymbolId> + '_ {
        self.entries.keys().copied()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn max_codeword_len(&self) -> usize {
        self.entries.values().map(Codeword::len).max().unwrap_or(0)
    }

    /// True iff no codeword is a duplicate or proper prefix of another.
    ///
    /// Pairwise check; the prefix trie in [`crate::entropy`] provides an
    /// independent route to the same predicate.
    pub fn is_prefix_free(&self) -> bool {
        let words: Vec<&Codeword> = self.entries.values().collect();
        for (i, a) in words.iter().enumerate() {
            for b in words.iter().skip(i + 1) {
                if a.is_prefix_of(b) || b.is_prefix_of(a) {
                    return false;
                }
            }
        }
        true
    }
}

/// Mean codeword length in nucleotides per symbol under the given counts.
///
/// Every nonzero-count symbol must have a codebook entry. Rotated variants of
/// a book yield the same value because rotation preserves all lengths.
pub fn expected_length(cb: &Codebook, freqs: &FrequencyTable) -> Result<Rational> {
    let mut total_nucleotides: u128 = 0;
    let mut total_count: u128 = 0;
    for (symbol, count) in freqs.iter() {
        if count == 0 {
            continue;
        }
        let word = cb.get(symbol).ok_or(Error::MissingSymbol { symbol })?;
        total_nucleotides += count as u128 * word.len() as u128;
        total_count += count as u128;
    }
    if total_count == 0 {
        return Err(Error::DegenerateSource);
    }
    Ok(Rational::new(total_nucleotides, total_count))
}

// --- ternary Huffman + Goldman construction ---------------------------------

/// Build a prefix-free quaternary codebook for the given frequencies.
///
/// Codeword lengths are those of an optimal ternary Huffman code (zero-weight
/// dummies pad the alphabet to an odd size; equal weights merge lowest symbol
/// id first, dummies after real symbols). Trit strings are assigned
/// canonically by (length, symbol id) and then relabeled to nucleotides with
/// the Goldman rule: trit t at each position picks the t-th nucleotide, in
/// A<T<C<G order, among the three that differ from the previous one. The
/// first position treats A as the previous nucleotide, so no codeword starts
/// with A and none repeats a nucleotide in adjacent positions.
pub fn build_huffman_goldman(freqs: &FrequencyTable) -> Result<Codebook> {
    let symbols = freqs.nonzero_symbols();
    if symbols.len() < 2 {
        return Err(Error::DegenerateSource);
    }
    let lengths = ternary_huffman_lengths(freqs, &symbols)?;

    // Canonical assignment: sort by (length, id), hand out consecutive
    // base-3 codes widened as lengths grow.
    let mut order: Vec<(SymbolId, usize)> = symbols
        .iter()
        .map(|&s| (s, lengths[&s]))
        .collect();
    order.sort_by_key(|&(s, len)| (len, s));

    let mut entries = BTreeMap::new();
    let mut code: u64 = 0;
    let mut prev_len = order[0].1;
    for (i, &(symbol, len)) in order.iter().enumerate() {
        if i > 0 {
            code = (code + 1) * 3u64.pow((len - prev_len) as u32);
        }
        let trits = base3_digits(code, len);
        entries.insert(symbol, goldman_relabel(&trits)?);
        prev_len = len;
    }
    Codebook::new(entries)
}

/// Optimal ternary code lengths per symbol (Huffman with dummy padding).
fn ternary_huffman_lengths(
    freqs: &FrequencyTable,
    symbols: &[SymbolId],
) -> Result<BTreeMap<SymbolId, usize>> {
    #[derive(Debug)]
    struct Node {
        weight: u64,
        ord: u64,
        // (position in `symbols`, depth); dummies use position = usize::MAX
        members: Vec<(usize, usize)>,
    }

    let n = symbols.len();
    let dummies = if n.is_multiple_of(2) { 1 } else { 0 };

    let mut pending: Vec<Node> = Vec::with_capacity(n + dummies);
    for (i, &s) in symbols.iter().enumerate() {
        pending.push(Node {
            weight: freqs.count(s),
            ord: s as u64,
            members: vec![(i, 0)],
        });
    }
    // Dummies order after every real symbol id.
    let dummy_base = SymbolId::MAX as u64 + 1;
    for d in 0..dummies {
        pending.push(Node {
            weight: 0,
            ord: dummy_base + d as u64,
            members: vec![(usize::MAX, 0)],
        });
    }

    // Internal nodes order after all leaves, in creation order.
    let mut next_ord = dummy_base + dummies as u64 + 1;
    while pending.len() > 1 {
        pending.sort_by_key(|n| (n.weight, n.ord));
        let mut merged = Node {
            weight: 0,
            ord: next_ord,
            members: Vec::new(),
        };
        next_ord += 1;
        for node in pending.drain(..3) {
            merged.weight += node.weight;
            merged
                .members
                .extend(node.members.into_iter().map(|(i, d)| (i, d + 1)));
        }
        pending.push(merged);
    }

    let root = pending.pop().expect("at least one node");
    let mut lengths = BTreeMap::new();
    for (i, depth) in root.members {
        if i == usize::MAX {
            continue;
        }
        if depth > Codeword::MAX_LEN {
            return Err(Error::CodewordTooLong {
                len: depth,
                max: Codeword::MAX_LEN,
            });
        }
        lengths.insert(symbols[i], depth);
    }
    Ok(lengths)
}

fn base3_digits(mut code: u64, width: usize) -> Vec<u8> {
    let mut digits = vec![0u8; width];
    for slot in digits.iter_mut().rev() {
        *slot = (code % 3) as u8;
        code /= 3;
    }
    debug_assert_eq!(code, 0, "canonical code overflows its length");
    digits
}

/// Relabel a trit string to nucleotides so that adjacent positions always
/// differ. Position 0 uses A as the previous nucleotide.
fn goldman_relabel(trits: &[u8]) -> Result<Codeword> {
    let mut out = Vec::with_capacity(trits.len());
    let mut prev = Nucleotide::A;
    for &t in trits {
        let mut options = Nucleotide::ALL.iter().copied().filter(|&n| n != prev);
        let chosen = options
            .nth(t as usize)
            .expect("trit in 0..=2 selects one of three options");
        out.push(chosen);
        prev = chosen;
    }
    Codeword::new(out)
}

// --- codebook files ----------------------------------------------------------

/// Parse the text codebook format: one `<id>\t<ACGT word>` entry per line,
/// `#` comment lines and blank lines ignored. The parsed book must be
/// prefix-free.
pub fn parse_codebook(text: &str) -> Result<Codebook> {
    let mut entries: BTreeMap<SymbolId, Codeword> = BTreeMap::new();
    let mut entry_lines: BTreeMap<SymbolId, usize> = BTreeMap::new();
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.trim_end_matches('\r');
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (id_part, word_part) = line.split_once('\t').ok_or_else(|| Error::CodebookParse {
            line: line_no,
            msg: "expected <symbol id><TAB><codeword>".into(),
        })?;
        let symbol: SymbolId = id_part.trim().parse().map_err(|_| Error::CodebookParse {
            line: line_no,
            msg: format!("invalid symbol id {id_part:?}"),
        })?;
        let nucleotides = nucleotides_from_str(word_part).map_err(|c| Error::CodebookParse {
            line: line_no,
            msg: format!("{c:?} is not a nucleotide"),
        })?;
        let word = Codeword::new(nucleotides).map_err(|e| Error::CodebookParse {
            line: line_no,
            msg: e.to_string(),
        })?;
        if entries.insert(symbol, word).is_some() {
            return Err(Error::CodebookParse {
                line: line_no,
                msg: format!("duplicate symbol id {symbol}"),
            });
        }
        entry_lines.insert(symbol, line_no);
    }
    let book = Codebook::new(entries)?;

    // Prefix violations name the line of the later entry involved.
    let words: Vec<(SymbolId, &Codeword)> = book.iter().collect();
    for (i, &(sa, wa)) in words.iter().enumerate() {
        for &(sb, wb) in words.iter().skip(i + 1) {
            if wa.is_prefix_of(wb) || wb.is_prefix_of(wa) {
                let line = entry_lines[&sa].max(entry_lines[&sb]);
                return Err(Error::CodebookParse {
                    line,
                    msg: format!("codewords for symbols {sa} and {sb} violate prefix-freeness"),
                });
            }
        }
    }
    Ok(book)
}

/// Render a codebook in the text format, entries ascending by symbol id.
pub fn format_codebook(cb: &Codebook) -> String {
    let mut out = String::new();
    for (symbol, word) in cb.iter() {
        out.push_str(&format!("{symbol}\t{word}\n"));
    }
    out
}

pub fn read_codebook(path: &Path) -> Result<Codebook> {
    parse_codebook(&std::fs::read_to_string(path)?)
}

pub fn write_codebook(cb: &Codebook, path: &Path) -> Result<()> {
    Ok(std::fs::write(path, format_codebook(cb))?)
}
