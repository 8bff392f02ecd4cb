//! Rotated codebook generation and the code-choice schedulers.
//!
//! A codebook is expanded into four variants by cyclically shifting every
//! letter of every codeword through the alphabet order A, T, C, G. Shifting
//! is a permutation of the alphabet, so all four books are prefix-free and
//! every codeword keeps its length; switching between them cannot change the
//! size of an encoded stream. A [`Scheduler`] decides which book encodes each
//! fragment or block, either round-robin or from a seeded xorshift generator,
//! and both sides of a transmission replay the identical decision sequence.

use crate::codebook::{Codebook, Codeword, Nucleotide};
use crate::error::{Error, Result};

use std::collections::BTreeMap;

/// Replacement seed when a caller passes zero (xorshift state must be nonzero).
pub const ZERO_SEED_REPLACEMENT: u64 = 0x9E37_79B9_7F4A_7C15;

/// Mixing constant for per-row reseeding.
const ROW_MIX: u64 = 0x9E37_79B9_7F4A_7C15;

/// Minimal xorshift generator with a fixed 13/7/17 shift triple.
///
/// Deliberately tiny so that any implementation in any language can replay
/// the same stream from the same seed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Xorshift64 {
    state: u64,
}

impl Xorshift64 {
    /// Seed the generator; a zero seed is replaced by a fixed constant.
    pub fn new(seed: u64) -> Xorshift64 {
        Xorshift64 {
            state: if seed == 0 { ZERO_SEED_REPLACEMENT } else { seed },
        }
    }

    pub fn next_u64(&mut self) -> u64 {
        let mut x = self.state;
        x ^= x << 13;
        x ^= x >> 7;
        x ^= x << 17;
        self.state = x;
        x
    }

    /// Uniform value in `[0, bound)` by rejection-free scaling of the top bits.
    pub fn next_below(&mut self, bound: u64) -> u64 {
        ((self.next_u64() >> 32) * bound) >> 32
    }
}

/// Shift every letter of a codeword `k` steps through A → T → C → G → A.
///
/// `k = 0` is the identity. The output always differs from the input at
/// every position when `k != 0`, which is what breaks up repeated codewords.
pub fn switch_letters(word: &Codeword, k: u8) -> Result<Codeword> {
    if k > 3 {
        return Err(Error::InvalidShift { k });
    }
    let shifted = word
        .nucleotides()
        .iter()
        .map(|n| shift_nucleotide(*n, k))
        .collect();
    Codeword::new(shifted)
}

fn shift_nucleotide(n: Nucleotide, k: u8) -> Nucleotide {
    Nucleotide::from_index((n.index() + k) % 4).expect("index mod 4 is valid")
}

/// Shift every codeword of a book, materializing one rotation.
pub fn switch_letters_book(book: &Codebook, k: u8) -> Result<Codebook> {
    let entries: Result<BTreeMap<_, _>> = book
        .iter()
        .map(|(symbol, word)| Ok((symbol, switch_letters(word, k)?)))
        .collect();
    Codebook::new(entries?)
}

/// The four interchangeable codebooks: the input book plus its three shifts.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RotationSet {
    codes: [Codebook; 4],
}

impl RotationSet {
    /// Expand a prefix-free codebook into its four rotations.
    pub fn generate(input: &Codebook) -> Result<RotationSet> {
        if !input.is_prefix_free() {
            return Err(Error::NotPrefixFree);
        }
        let mut codes = Vec::with_capacity(4);
        codes.push(input.clone());
        for k in 1..=3u8 {
            codes.push(switch_letters_book(input, k)?);
        }
        let codes: [Codebook; 4] = codes.try_into().expect("exactly four books");
        Ok(RotationSet { codes })
    }

    /// The book for rotation index `k` (0..=3). Index 0 is the input book.
    pub fn code(&self, k: u8) -> &Codebook {
        &self.codes[k as usize & 3]
    }

    pub fn codes(&self) -> &[Codebook; 4] {
        &self.codes
    }
}

/// How the active codebook is chosen for each fragment or block.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ScheduleMode {
    /// Always use book 0; rotation disabled.
    None,
    /// Cycle 0, 1, 2, 3, 0, ...
    RoundRobin,
    /// Seeded xorshift; encoder and decoder share the seed.
    PseudoRandom { seed: u64 },
}

impl ScheduleMode {
    /// Wire tag used by stream headers: 0, 1, or 2.
    pub fn tag(&self) -> u8 {
        match self {
            ScheduleMode::None => 0,
            ScheduleMode::RoundRobin => 1,
            ScheduleMode::PseudoRandom { .. } => 2,
        }
    }

    pub fn seed(&self) -> u64 {
        match self {
            ScheduleMode::PseudoRandom { seed } => *seed,
            _ => 0,
        }
    }

    pub fn from_tag(tag: u8, seed: u64) -> Option<ScheduleMode> {
        match tag {
            0 => Some(ScheduleMode::None),
            1 => Some(ScheduleMode::RoundRobin),
            2 => Some(ScheduleMode::PseudoRandom { seed }),
            _ => None,
        }
    }
}

/// Deterministic source of rotation indices.
///
/// One scheduler drives one encode or decode session. The output sequence is
/// a pure function of the mode, the seed, and the reset calls, so two
/// independently constructed schedulers always agree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Scheduler {
    mode: ScheduleMode,
    counter: u64,
    prng: Xorshift64,
}

impl Scheduler {
    pub fn new(mode: ScheduleMode) -> Scheduler {
        Scheduler {
            mode,
            counter: 0,
            prng: Xorshift64::new(mode.seed()),
        }
    }

    pub fn mode(&self) -> ScheduleMode {
        self.mode
    }

    /// Draw the rotation index for the next fragment or block.
    pub fn next_code(&mut self) -> u8 {
        match self.mode {
            ScheduleMode::None => 0,
            ScheduleMode::RoundRobin => {
                let k = (self.counter % 4) as u8;
                self.counter += 1;
                k
            }
            ScheduleMode::PseudoRandom { .. } => (self.prng.next_u64() >> 62) as u8,
        }
    }

    /// Reinitialise the decision process at the start of a block row.
    ///
    /// Round-robin restarts its cycle; pseudo-random reseeds from the seed
    /// mixed with the row index so rows stay independent of one another.
    pub fn reset_for_row(&mut self, row_index: u64) {
        match self.mode {
            ScheduleMode::None => {}
            ScheduleMode::RoundRobin => self.counter = 0,
            ScheduleMode::PseudoRandom { seed } => {
                self.prng = Xorshift64::new(seed ^ row_index.wrapping_mul(ROW_MIX));
            }
        }
    }
}
