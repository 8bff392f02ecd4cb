//! Variable-length encoding and decoding of symbol streams with rotating
//! codebooks.
//!
//! The encoder draws a rotation index at the start of the stream and again
//! after every `fragment_len` symbols, then emits each symbol's codeword from
//! the active book. The decoder replays the same schedule and walks a prefix
//! trie per book, so a stream decodes back to the original symbols whenever
//! both sides agree on mode, seed, and fragment length. Rotation never
//! changes codeword lengths, so the encoded length is the same for every
//! schedule mode.

use crate::codebook::{Codebook, Nucleotide, SymbolId};
use crate::error::{Error, Result};
use crate::rotation::{RotationSet, Scheduler};

/// Prefix trie over the quaternary alphabet for instantaneous decoding.
#[derive(Debug, Clone)]
pub struct PrefixTrie {
    nodes: Vec<TrieNode>,
}

#[derive(Debug, Clone, Default)]
struct TrieNode {
    // Child index + 1 per nucleotide; 0 means no child.
    children: [u32; 4],
    symbol: Option<SymbolId>,
}

impl PrefixTrie {
    /// Build a trie from a codebook. Fails with [`Error::NotPrefixFree`] if
    /// any codeword is a duplicate or prefix of another, which makes trie
    /// insertion an independent check of the pairwise predicate.
    pub fn from_codebook(cb: &Codebook) -> Result<PrefixTrie> {
        let mut nodes = vec![TrieNode::default()];
        for (symbol, word) in cb.iter() {
            let mut at = 0usize;
            for n in word.nucleotides() {
                if nodes[at].symbol.is_some() {
                    // An existing codeword is a proper prefix of this one.
                    return Err(Error::NotPrefixFree);
                }
                let slot = n.index() as usize;
                if nodes[at].children[slot] == 0 {
                    nodes.push(TrieNode::default());
                    let idx = (nodes.len() - 1) as u32;
                    nodes[at].children[slot] = idx;
                }
                at = nodes[at].children[slot] as usize;
            }
            if nodes[at].symbol.is_some() || nodes[at].children.iter().any(|&c| c != 0) {
                // Duplicate, or this codeword is a prefix of an existing one.
                return Err(Error::NotPrefixFree);
            }
            nodes[at].symbol = Some(symbol);
        }
        Ok(PrefixTrie { nodes })
    }

    /// Decode one symbol starting at `pos`; returns the symbol and the number
    /// of nucleotides consumed.
    pub fn decode_at(&self, stream: &[Nucleotide], pos: usize) -> Result<(SymbolId, usize)> {
        let mut at = 0usize;
        let mut offset = pos;
        loop {
            if let Some(symbol) = self.nodes[at].symbol {
                return Ok((symbol, offset - pos));
            }
            let Some(&n) = stream.get(offset) else {
                return Err(Error::PrematureEnd { offset });
            };
            let child = self.nodes[at].children[n.index() as usize];
            if child == 0 {
                return Err(Error::NoCodewordMatch { offset });
            }
            at = child as usize;
            offset += 1;
        }
    }
}

/// Tries for all four rotations of a book, ready for scheduled decoding.
#[derive(Debug, Clone)]
pub struct RotatingDecoder {
    tries: [PrefixTrie; 4],
}

impl RotatingDecoder {
    pub fn new(rs: &RotationSet) -> Result<RotatingDecoder> {
        let tries = [
            PrefixTrie::from_codebook(rs.code(0))?,
            PrefixTrie::from_codebook(rs.code(1))?,
            PrefixTrie::from_codebook(rs.code(2))?,
            PrefixTrie::from_codebook(rs.code(3))?,
        ];
        Ok(RotatingDecoder { tries })
    }

    pub fn trie(&self, k: u8) -> &PrefixTrie {
        &self.tries[k as usize & 3]
    }
}

/// Encode a symbol sequence, switching the active book every `fragment_len`
/// symbols according to the scheduler.
pub fn encode_stream(
    symbols: &[SymbolId],
    rs: &RotationSet,
    scheduler: &mut Scheduler,
    fragment_len: usize,
) -> Result<Vec<Nucleotide>> {
    if fragment_len == 0 {
        return Err(Error::InvalidFragmentLength);
    }
    let mut out = Vec::new();
    let mut active = 0u8;
    for (position, &symbol) in symbols.iter().enumerate() {
        if position % fragment_len == 0 {
            active = scheduler.next_code();
        }
        let word = rs
            .code(active)
            .get(symbol)
            .ok_or(Error::UncoveredSymbol { position, symbol })?;
        out.extend_from_slice(word.nucleotides());
    }
    Ok(out)
}

/// Decode `n_symbols` symbols from a nucleotide stream produced by
/// [`encode_stream`] with the same rotation set, schedule, and fragment
/// length. The whole stream must be consumed exactly.
pub fn decode_stream(
    stream: &[Nucleotide],
    rs: &RotationSet,
    scheduler: &mut Scheduler,
    fragment_len: usize,
    n_symbols: usize,
) -> Result<Vec<SymbolId>> {
    if fragment_len == 0 {
        return Err(Error::InvalidFragmentLength);
    }
    let decoder = RotatingDecoder::new(rs)?;
    let mut out = Vec::with_capacity(n_symbols);
    let mut pos = 0usize;
    let mut active = 0u8;
    for index in 0..n_symbols {
        if index % fragment_len == 0 {
            active = scheduler.next_code();
        }
        let (symbol, used) = decoder.trie(active).decode_at(stream, pos)?;
        pos += used;
        out.push(symbol);
    }
    if pos != stream.len() {
        return Err(Error::TrailingGarbage { offset: pos });
    }
    Ok(out)
}
