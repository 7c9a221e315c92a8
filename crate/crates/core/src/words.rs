//! Words are sequences of symbol indices into a machine's alphabet.

use crate::error::{Error, Result};

/// All words over `alphabet_size` symbols with length ≤ `max_len`, in
/// length-then-lexicographic order (by symbol index), starting with ε.
pub fn words_up_to(alphabet_size: usize, max_len: usize) -> WordsUpTo {
    WordsUpTo {
        alphabet_size,
        max_len,
        next: Some(Vec::new()),
    }
}

pub struct WordsUpTo {
    alphabet_size: usize,
    max_len: usize,
    next: Option<Vec<usize>>,
}

impl Iterator for WordsUpTo {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        let current = self.next.take()?;
        if self.alphabet_size == 0 {
            return if current.is_empty() { Some(current) } else { None };
        }
        // Odometer increment; on overflow move to the next length.
        let mut succ = current.clone();
        let mut pos = succ.len();
        loop {
            if pos == 0 {
                if current.len() < self.max_len {
                    succ = vec![0; current.len() + 1];
                } else {
                    self.next = None;
                    return Some(current);
                }
                break;
            }
            pos -= 1;
            if succ[pos] + 1 < self.alphabet_size {
                succ[pos] += 1;
                for s in succ.iter_mut().skip(pos + 1) {
                    *s = 0;
                }
                break;
            }
        }
        self.next = Some(succ);
        Some(current)
    }
}

/// Validates that every symbol index falls inside the alphabet.
pub fn check_word(word: &[usize], alphabet_size: usize) -> Result<()> {
    for &s in word {
        if s >= alphabet_size {
            return Err(Error::SymbolOutOfRange {
                index: s,
                size: alphabet_size,
            });
        }
    }
    Ok(())
}

/// Parses a word literal against an alphabet. When every symbol is a single
/// character and the literal contains no comma, characters are read one by
/// one; otherwise the literal is split on commas. The empty string is ε.
pub fn parse_word(text: &str, alphabet: &[String]) -> Result<Vec<usize>> {
    if text.is_empty() {
        return Ok(Vec::new());
    }
    let index_of = |tok: &str| -> Result<usize> {
        alphabet
            .iter()
            .position(|s| s == tok)
            .ok_or_else(|| Error::Parse(format!("symbol {tok:?} is not in the alphabet")))
    };
    let single_char = alphabet.iter().all(|s| s.chars().count() == 1);
    if single_char && !text.contains(',') {
        text.chars().map(|c| index_of(&c.to_string())).collect()
    } else {
        text.split(',').map(index_of).collect()
    }
}

/// Renders a word using the alphabet's symbols: concatenated when all symbols
/// are single characters, comma-separated otherwise. ε prints as "".
pub fn format_word(word: &[usize], alphabet: &[String]) -> String {
    let single_char = alphabet.iter().all(|s| s.chars().count() == 1);
    let syms: Vec<&str> = word.iter().map(|&i| alphabet[i].as_str()).collect();
    if single_char {
        syms.concat()
    } else {
        syms.join(",")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn words_enumerate_in_length_then_lex_order() {
        let got: Vec<Vec<usize>> = words_up_to(2, 2).collect();
        assert_eq!(
            got,
            vec![
                vec![],
                vec![0],
                vec![1],
                vec![0, 0],
                vec![0, 1],
                vec![1, 0],
                vec![1, 1],
            ]
        );
        assert_eq!(words_up_to(3, 4).count(), 1 + 3 + 9 + 27 + 81);
        assert_eq!(words_up_to(2, 0).count(), 1);
    }

    #[test]
    fn parse_and_format_round_trip() {
        let alpha = vec!["0".to_string(), "1".to_string()];
        assert_eq!(parse_word("010", &alpha).unwrap(), vec![0, 1, 0]);
        assert_eq!(parse_word("", &alpha).unwrap(), Vec::<usize>::new());
        assert_eq!(format_word(&[0, 1, 0], &alpha), "010");
        let wide = vec!["ab".to_string(), "c".to_string()];
        assert_eq!(parse_word("ab,c,ab", &wide).unwrap(), vec![0, 1, 0]);
        assert_eq!(format_word(&[0, 1, 0], &wide), "ab,c,ab");
        assert!(parse_word("2", &alpha).is_err());
    }
}
