//! Fixed-length constrained code for coefficient values.
//!
//! For each magnitude category c the code uses all length-L(c) words over
//! ACGT with no two identical adjacent nucleotides, enumerated in
//! lexicographic A<T<C<G order, where L(c) is the shortest length whose
//! 4*3^(L-1) admissible words cover the 2^c values of the category. The i-th
//! word encodes the i-th value, negatives ascending then positives ascending.
//!
//! Because the words are pre-generated to satisfy the adjacency constraint,
//! they are emitted verbatim: the rotation machinery never touches them.
//! Shifting their letters would reintroduce exactly the words the
//! construction excluded.

use crate::codebook::Nucleotide;
use crate::error::{Error, Result};
use crate::image::tokens::MAX_CATEGORY;

/// Word length per category: the least L with 4 * 3^(L-1) >= 2^c.
pub fn word_len(category: u8) -> usize {
    debug_assert!((1..=MAX_CATEGORY).contains(&category));
    let needed = 1u64 << category;
    let mut len = 1usize;
    let mut admissible = 4u64;
    while admissible < needed {
        len += 1;
        admissible *= 3;
    }
    len
}

/// Number of values in a category: 2^c, split evenly between signs.
fn value_count(category: u8) -> u64 {
    1u64 << category
}

fn value_to_index(category: u8, value: i32) -> Option<u64> {
    let half = 1i64 << (category - 1);
    let v = value as i64;
    if (-2 * half + 1..=-half).contains(&v) {
        Some((v + 2 * half - 1) as u64)
    } else if (half..2 * half).contains(&v) {
        Some(v as u64)
    } else {
        None
    }
}

fn index_to_value(category: u8, index: u64) -> i32 {
    let half = 1i64 << (category - 1);
    if (index as i64) < half {
        (index as i64 - 2 * half + 1) as i32
    } else {
        index as i32
    }
}

/// The i-th admissible word of the given length, mixed-radix: the first
/// letter ranges over all four nucleotides, each later letter over the three
/// that differ from its predecessor, in A<T<C<G order.
fn index_to_word(index: u64, len: usize) -> Vec<Nucleotide> {
    let mut radix = 3u64.pow(len as u32 - 1);
    let mut out = Vec::with_capacity(len);
    let first = Nucleotide::from_index((index / radix) as u8).expect("first digit below 4");
    out.push(first);
    let mut rest = index % radix;
    let mut prev = first;
    for _ in 1..len {
        radix /= 3;
        let digit = (rest / radix) as usize;
        rest %= radix;
        let next = Nucleotide::ALL
            .iter()
            .copied()
            .filter(|&n| n != prev)
            .nth(digit)
            .expect("digit below 3");
        out.push(next);
        prev = next;
    }
    out
}

fn word_to_index(word: &[Nucleotide]) -> Result<u64> {
    let len = word.len();
    let mut radix = 3u64.pow(len as u32 - 1);
    let mut index = word[0].index() as u64 * radix;
    let mut prev = word[0];
    for &n in &word[1..] {
        if n == prev {
            return Err(Error::InvalidValueWord { category: 0 });
        }
        radix /= 3;
        let digit = Nucleotide::ALL
            .iter()
            .copied()
            .filter(|&m| m != prev)
            .position(|m| m == n)
            .expect("n differs from prev") as u64;
        index += digit * radix;
        prev = n;
    }
    Ok(index)
}

/// Encode a value of the given category (1..=11) as its fixed-length word.
pub fn encode_value(category: u8, value: i32) -> Result<Vec<Nucleotide>> {
    if !(1..=MAX_CATEGORY).contains(&category) {
        return Err(Error::InvalidValueWord { category });
    }
    let index = value_to_index(category, value).ok_or(Error::ValueOverflow {
        value: value as i64,
    })?;
    Ok(index_to_word(index, word_len(category)))
}

/// Decode a fixed-length word back to its value. The word must be exactly
/// `word_len(category)` nucleotides and map inside the category's value set.
pub fn decode_value(category: u8, word: &[Nucleotide]) -> Result<i32> {
    if !(1..=MAX_CATEGORY).contains(&category) || word.len() != word_len(category) {
        return Err(Error::InvalidValueWord { category });
    }
    let index = word_to_index(word).map_err(|_| Error::InvalidValueWord { category })?;
    if index >= value_count(category) {
        return Err(Error::InvalidValueWord { category });
    }
    Ok(index_to_value(category, index))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::codebook::nucleotides_to_string;

    #[test]
    fn word_lengths() {
        let expected = [1, 1, 2, 3, 3, 4, 5, 5, 6, 7, 7];
        for (c, &len) in (1..=MAX_CATEGORY).zip(&expected) {
            assert_eq!(word_len(c), len, "category {c}");
            // Minimality on both sides.
            assert!(4 * 3u64.pow(len as u32 - 1) >= 1 << c);
            if len > 1 {
                assert!(4 * 3u64.pow(len as u32 - 2) < 1 << c);
            }
        }
    }

    #[test]
    fn category_one_words() {
        assert_eq!(nucleotides_to_string(&encode_value(1, -1).unwrap()), "A");
        assert_eq!(nucleotides_to_string(&encode_value(1, 1).unwrap()), "T");
    }

    #[test]
    fn category_three_first_word() {
        // Values -7..=-4 then 4..=7; the first admissible length-2 word is
        // AT because AA repeats.
        assert_eq!(nucleotides_to_string(&encode_value(3, -7).unwrap()), "AT");
        assert_eq!(nucleotides_to_string(&encode_value(3, 7).unwrap()), "CT");
    }

    #[test]
    fn category_two_covers_all_four_letters() {
        let words: Vec<String> = [-3, -2, 2, 3]
            .iter()
            .map(|&v| nucleotides_to_string(&encode_value(2, v).unwrap()))
            .collect();
        assert_eq!(words, vec!["A", "T", "C", "G"]);
    }

    #[test]
    fn enumeration_is_lexicographic_no_repeat() {
        // Explicit enumeration for length 2, filtering repeats, in A<T<C<G order.
        let mut expected = Vec::new();
        for &a in &Nucleotide::ALL {
            for &b in &Nucleotide::ALL {
                if a != b {
                    expected.push(vec![a, b]);
                }
            }
        }
        let listed: Vec<Vec<Nucleotide>> = (0..12).map(|i| index_to_word(i, 2)).collect();
        assert_eq!(listed, expected);
    }

    #[test]
    fn no_adjacent_repeats_anywhere() {
        for category in 1..=MAX_CATEGORY {
            let len = word_len(category) as u32;
            let words = 4 * 3u64.pow(len - 1);
            for i in 0..words.min(4096) {
                let w = index_to_word(i, len as usize);
                for pair in w.windows(2) {
                    assert_ne!(pair[0], pair[1]);
                }
            }
        }
    }

    #[test]
    fn value_roundtrip_is_a_bijection() {
        for category in 1..=MAX_CATEGORY {
            let half = 1i32 << (category - 1);
            let mut seen = std::collections::BTreeSet::new();
            for v in (-2 * half + 1..=-half).chain(half..2 * half) {
                let word = encode_value(category, v).unwrap();
                assert_eq!(word.len(), word_len(category));
                assert!(seen.insert(nucleotides_to_string(&word)));
                assert_eq!(decode_value(category, &word).unwrap(), v);
            }
            assert_eq!(seen.len() as u64, value_count(category));
        }
    }

    #[test]
    fn out_of_category_values_rejected() {
        assert!(encode_value(1, 0).is_err());
        assert!(encode_value(1, 2).is_err());
        assert!(encode_value(3, -8).is_err());
        assert!(encode_value(3, 3).is_err());
    }

    #[test]
    fn unused_words_rejected_on_decode() {
        // Category 3 uses 8 of the 12 admissible length-2 words; the last
        // enumerated word GC maps to index 11 and must not decode.
        let word = index_to_word(11, 2);
        assert!(matches!(
            decode_value(3, &word),
            Err(Error::InvalidValueWord { category: 3 })
        ));
        // Wrong length is rejected too.
        assert!(decode_value(3, &index_to_word(0, 1)).is_err());
    }
}
