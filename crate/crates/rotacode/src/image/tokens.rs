//! Run/category tokenization of quantized coefficient blocks.
//!
//! Each block becomes a DC token carrying the magnitude category of the
//! differential DC value, followed by AC tokens pairing a zero-run length
//! with the category of the next nonzero coefficient. Runs longer than 15
//! emit a zero-run marker that stands for 16 zeros; trailing zeros collapse
//! into an end-of-block marker. Tokens are entropy coded; the values
//! themselves ride in the fixed-length value code.

use crate::codebook::SymbolId;
use crate::error::{Error, Result};

/// Scan order: `ZIGZAG[i]` is the row-major coefficient index of the i-th
/// scanned position.
pub const ZIGZAG: [usize; 64] = [
    0, 1, 8, 16, 9, 2, 3, 10, 17, 24, 32, 25, 18, 11, 4, 5, 12, 19, 26, 33, 40, 48, 41, 34, 27,
    20, 13, 6, 7, 14, 21, 28, 35, 42, 49, 56, 57, 50, 43, 36, 29, 22, 15, 23, 30, 37, 44, 51, 58,
    59, 52, 45, 38, 31, 39, 46, 53, 60, 61, 54, 47, 55, 62, 63,
];

/// Highest representable magnitude category.
pub const MAX_CATEGORY: u8 = 11;

/// One block's tokens, each paired with the value its category calls for.
pub type TokenSequence = Vec<(Token, Option<i32>)>;

/// Entropy-coded block token.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Token {
    /// Differential DC magnitude category (0..=11). Category 0 carries no value.
    Dc { category: u8 },
    /// A run of zeros (0..=15) followed by a nonzero value of the given
    /// category (1..=11).
    Ac { run: u8, category: u8 },
    /// All remaining coefficients in the block are zero.
    EndOfBlock,
    /// Sixteen consecutive zero coefficients.
    ZeroRun,
}

impl Token {
    const EOB_ID: SymbolId = 12;
    const ZRL_ID: SymbolId = 13;
    const AC_BASE: SymbolId = 14;

    /// Stable symbol id used by the entropy coder and the stream header.
    pub fn symbol_id(&self) -> SymbolId {
        match *self {
            Token::Dc { category } => category as SymbolId,
            Token::EndOfBlock => Token::EOB_ID,
            Token::ZeroRun => Token::ZRL_ID,
            Token::Ac { run, category } => {
                Token::AC_BASE + run as SymbolId * MAX_CATEGORY as SymbolId + (category - 1) as SymbolId
            }
        }
    }

    pub fn from_symbol_id(id: SymbolId) -> Result<Token> {
        match id {
            0..=11 => Ok(Token::Dc { category: id as u8 }),
            Token::EOB_ID => Ok(Token::EndOfBlock),
            Token::ZRL_ID => Ok(Token::ZeroRun),
            _ => {
                let rel = id - Token::AC_BASE;
                let run = rel / MAX_CATEGORY as SymbolId;
                let category = rel % MAX_CATEGORY as SymbolId + 1;
                if run > 15 {
                    return Err(Error::CorruptStream {
                        msg: format!("token id {id} out of range"),
                    });
                }
                Ok(Token::Ac {
                    run: run as u8,
                    category: category as u8,
                })
            }
        }
    }

    /// Category of the value word that follows this token; 0 means none.
    pub fn value_category(&self) -> u8 {
        match *self {
            Token::Dc { category } => category,
            Token::Ac { category, .. } => category,
            Token::EndOfBlock | Token::ZeroRun => 0,
        }
    }
}

/// JPEG-style magnitude category: 0 for zero, otherwise the bit length of
/// the absolute value.
pub fn category_of(value: i32) -> Result<u8> {
    if value == 0 {
        return Ok(0);
    }
    let magnitude = value.unsigned_abs();
    let category = (32 - magnitude.leading_zeros()) as u8;
    if category > MAX_CATEGORY {
        return Err(Error::ValueOverflow {
            value: value as i64,
        });
    }
    Ok(category)
}

/// Tokenize one quantized block. Returns the token/value pairs in scan order
/// and the block's DC value for the next block's prediction.
pub fn block_to_symbols(
    quantized: &[[i32; 8]; 8],
    prev_dc: i32,
) -> Result<(TokenSequence, i32)> {
    let flat: Vec<i32> = ZIGZAG
        .iter()
        .map(|&i| quantized[i / 8][i % 8])
        .collect();

    let mut tokens = Vec::new();
    let dc = flat[0];
    let diff = dc - prev_dc;
    let dc_cat = category_of(diff)?;
    tokens.push((
        Token::Dc { category: dc_cat },
        if dc_cat > 0 { Some(diff) } else { None },
    ));

    let mut run = 0u32;
    for &v in &flat[1..] {
        if v == 0 {
            run += 1;
        } else {
            while run > 15 {
                tokens.push((Token::ZeroRun, None));
                run -= 16;
            }
            let category = category_of(v)?;
            tokens.push((
                Token::Ac {
                    run: run as u8,
                    category,
                },
                Some(v),
            ));
            run = 0;
        }
    }
    if run > 0 {
        tokens.push((Token::EndOfBlock, None));
    }
    Ok((tokens, dc))
}

/// Incremental inverse of [`block_to_symbols`] for the decoder, which sees
/// one token at a time.
#[derive(Debug)]
pub struct BlockAssembler {
    coefs: [i32; 64],
    /// Next scan position to fill; 0 means the DC token is still expected.
    position: usize,
    dc: i32,
    complete: bool,
}

impl BlockAssembler {
    pub fn new() -> BlockAssembler {
        BlockAssembler {
            coefs: [0; 64],
            position: 0,
            dc: 0,
            complete: false,
        }
    }

    pub fn is_complete(&self) -> bool {
        self.complete
    }

    /// Feed the next token and its decoded value. Errors signal a stream that
    /// no valid encoder could have produced.
    pub fn push(&mut self, token: Token, value: Option<i32>, prev_dc: i32) -> Result<()> {
        let corrupt = |msg: &str| Error::CorruptStream { msg: msg.into() };
        if self.complete {
            return Err(corrupt("token after completed block"));
        }
        match token {
            Token::Dc { category } => {
                if self.position != 0 {
                    return Err(corrupt("DC token inside a block"));
                }
                let diff = match (category, value) {
                    (0, None) => 0,
                    (c, Some(v)) if c > 0 => v,
                    _ => return Err(corrupt("DC token value mismatch")),
                };
                self.dc = prev_dc + diff;
                self.coefs[0] = self.dc;
                self.position = 1;
                if self.position == 64 {
                    self.complete = true;
                }
            }
            Token::EndOfBlock => {
                if self.position == 0 || self.position >= 64 {
                    return Err(corrupt("end-of-block at an invalid position"));
                }
                self.complete = true;
            }
            Token::ZeroRun => {
                if self.position == 0 || self.position + 16 > 63 {
                    return Err(corrupt("zero-run overflows the block"));
                }
                self.position += 16;
            }
            Token::Ac { run, category } => {
                if self.position == 0 {
                    return Err(corrupt("AC token before the DC token"));
                }
                let v = value.ok_or_else(|| corrupt("AC token without a value"))?;
                if category_of(v)? != category || category == 0 {
                    return Err(corrupt("AC value outside its category"));
                }
                let target = self.position + run as usize;
                if target > 63 {
                    return Err(corrupt("AC run overflows the block"));
                }
                self.coefs[target] = v;
                self.position = target + 1;
                if self.position == 64 {
                    self.complete = true;
                }
            }
        }
        Ok(())
    }

    /// Final quantized block and its DC value.
    pub fn finish(self) -> ([[i32; 8]; 8], i32) {
        debug_assert!(self.complete);
        let mut out = [[0i32; 8]; 8];
        for (scan, &v) in self.coefs.iter().enumerate() {
            let idx = ZIGZAG[scan];
            out[idx / 8][idx % 8] = v;
        }
        (out, self.dc)
    }
}

impl Default for BlockAssembler {
    fn default() -> Self {
        BlockAssembler::new()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Diagonal-walk construction of the scan order, as an independent check
    /// of the table.
    fn generated_zigzag() -> Vec<usize> {
        let mut order = Vec::with_capacity(64);
        for d in 0..15usize {
            let cells: Vec<(usize, usize)> = (0..=d)
                .filter_map(|i| {
                    let j = d - i;
                    (i < 8 && j < 8).then_some((i, j))
                })
                .collect();
            if d % 2 == 0 {
                // Even diagonals walk bottom-left to top-right.
                order.extend(cells.iter().rev().map(|&(r, c)| r * 8 + c));
            } else {
                order.extend(cells.iter().map(|&(r, c)| r * 8 + c));
            }
        }
        order
    }

    #[test]
    fn zigzag_table_matches_diagonal_walk() {
        assert_eq!(ZIGZAG.to_vec(), generated_zigzag());
    }

    #[test]
    fn categories() {
        assert_eq!(category_of(0).unwrap(), 0);
        assert_eq!(category_of(1).unwrap(), 1);
        assert_eq!(category_of(-1).unwrap(), 1);
        assert_eq!(category_of(5).unwrap(), 3);
        assert_eq!(category_of(-4).unwrap(), 3);
        assert_eq!(category_of(7).unwrap(), 3);
        assert_eq!(category_of(8).unwrap(), 4);
        assert_eq!(category_of(2047).unwrap(), 11);
        assert!(matches!(
            category_of(2048),
            Err(Error::ValueOverflow { value: 2048 })
        ));
        assert!(category_of(-2048).is_err());
    }

    #[test]
    fn all_zero_block_is_dc_plus_eob() {
        let block = [[0i32; 8]; 8];
        let (tokens, dc) = block_to_symbols(&block, 0).unwrap();
        assert_eq!(dc, 0);
        assert_eq!(
            tokens,
            vec![(Token::Dc { category: 0 }, None), (Token::EndOfBlock, None)]
        );
    }

    #[test]
    fn short_run_example() {
        // AC pattern: three zeros then 5 in scan order.
        let mut block = [[0i32; 8]; 8];
        let idx = ZIGZAG[4];
        block[idx / 8][idx % 8] = 5;
        let (tokens, _) = block_to_symbols(&block, 0).unwrap();
        assert_eq!(
            tokens,
            vec![
                (Token::Dc { category: 0 }, None),
                (Token::Ac { run: 3, category: 3 }, Some(5)),
                (Token::EndOfBlock, None),
            ]
        );
    }

    #[test]
    fn long_run_emits_zero_run_marker() {
        // Seventeen zeros then -1: the marker eats sixteen of them.
        let mut block = [[0i32; 8]; 8];
        let idx = ZIGZAG[18];
        block[idx / 8][idx % 8] = -1;
        let (tokens, _) = block_to_symbols(&block, 0).unwrap();
        assert_eq!(
            tokens,
            vec![
                (Token::Dc { category: 0 }, None),
                (Token::ZeroRun, None),
                (Token::Ac { run: 1, category: 1 }, Some(-1)),
                (Token::EndOfBlock, None),
            ]
        );
    }

    #[test]
    fn nonzero_final_coefficient_skips_eob() {
        let mut block = [[0i32; 8]; 8];
        block[7][7] = 3;
        let (tokens, _) = block_to_symbols(&block, 0).unwrap();
        assert!(tokens.iter().all(|(t, _)| *t != Token::EndOfBlock));
        assert_eq!(tokens.last().unwrap().0, Token::Ac { run: 14, category: 2 });
    }

    #[test]
    fn dc_prediction_is_differential() {
        let mut block = [[0i32; 8]; 8];
        block[0][0] = 9;
        let (tokens, dc) = block_to_symbols(&block, 4).unwrap();
        assert_eq!(dc, 9);
        assert_eq!(tokens[0], (Token::Dc { category: 3 }, Some(5)));
    }

    #[test]
    fn symbol_ids_roundtrip() {
        let mut all = vec![Token::EndOfBlock, Token::ZeroRun];
        for category in 0..=MAX_CATEGORY {
            all.push(Token::Dc { category });
        }
        for run in 0..=15u8 {
            for category in 1..=MAX_CATEGORY {
                all.push(Token::Ac { run, category });
            }
        }
        let mut seen = std::collections::BTreeSet::new();
        for t in all {
            let id = t.symbol_id();
            assert!(seen.insert(id), "duplicate id {id}");
            assert_eq!(Token::from_symbol_id(id).unwrap(), t);
        }
        assert!(Token::from_symbol_id(14 + 16 * 11).is_err());
    }

    #[test]
    fn tokenize_assemble_roundtrip() {
        let mut rng = crate::rotation::Xorshift64::new(2024);
        let mut prev_dc = 0i32;
        let mut assembled_prev_dc = 0i32;
        for _ in 0..200 {
            let mut block = [[0i32; 8]; 8];
            for row in block.iter_mut() {
                for v in row.iter_mut() {
                    *v = match rng.next_below(10) {
                        0 => rng.next_below(63) as i32 - 31,
                        1 => rng.next_below(7) as i32 - 3,
                        _ => 0,
                    };
                }
            }
            let (tokens, new_dc) = block_to_symbols(&block, prev_dc).unwrap();
            let mut assembler = BlockAssembler::new();
            for (t, v) in tokens {
                assembler.push(t, v, assembled_prev_dc).unwrap();
            }
            assert!(assembler.is_complete());
            let (back, dc) = assembler.finish();
            assert_eq!(back, block);
            assert_eq!(dc, new_dc);
            prev_dc = new_dc;
            assembled_prev_dc = dc;
        }
    }
}
