use crate::error::{Error, Result};
use crate::words::check_word;

/// Deterministic finite automaton with a total transition function.
/// States are indices 0..state_count; symbols are indices into `alphabet`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Dfa {
    alphabet: Vec<String>,
    transitions: Vec<Vec<usize>>, // [state][symbol]
    initial: usize,
    accepting: Vec<bool>,
}

impl Dfa {
    pub fn new(
        alphabet: Vec<String>,
        transitions: Vec<Vec<usize>>,
        initial: usize,
        accepting: Vec<bool>,
    ) -> Result<Self> {
        let n = transitions.len();
        if n == 0 {
            return Err(Error::validation("transitions", "DFA needs at least one state"));
        }
        if alphabet.is_empty() {
            return Err(Error::validation("alphabet", "alphabet must be non-empty"));
        }
        for (i, a) in alphabet.iter().enumerate() {
            if a.is_empty() {
                return Err(Error::validation(
                    format!("alphabet.{i}"),
                    "symbols must be non-empty strings",
                ));
            }
            if alphabet[..i].contains(a) {
                return Err(Error::validation(
                    format!("alphabet.{i}"),
                    format!("duplicate symbol {a:?}"),
                ));
            }
        }
        for (s, row) in transitions.iter().enumerate() {
            if row.len() != alphabet.len() {
                return Err(Error::validation(
                    format!("transitions.{s}"),
                    format!(
                        "expected {} targets (one per symbol), found {}",
                        alphabet.len(),
                        row.len()
                    ),
                ));
            }
            for (sym, &t) in row.iter().enumerate() {
                if t >= n {
                    return Err(Error::validation(
                        format!("transitions.{s}.{sym}"),
                        format!("target state {t} out of range (have {n} states)"),
                    ));
                }
            }
        }
        if initial >= n {
            return Err(Error::StateOutOfRange { index: initial, count: n });
        }
        if accepting.len() != n {
            return Err(Error::validation(
                "accepting",
                format!("expected {} flags, found {}", n, accepting.len()),
            ));
        }
        Ok(Dfa { alphabet, transitions, initial, accepting })
    }

    pub fn state_count(&self) -> usize {
        self.transitions.len()
    }

    pub fn alphabet(&self) -> &[String] {
        &self.alphabet
    }

    pub fn initial(&self) -> usize {
        self.initial
    }

    pub fn is_accepting(&self, state: usize) -> bool {
        self.accepting[state]
    }

    pub fn accepting_states(&self) -> Vec<usize> {
        (0..self.state_count()).filter(|&s| self.accepting[s]).collect()
    }

    pub fn step(&self, state: usize, symbol: usize) -> usize {
        self.transitions[state][symbol]
    }

    pub fn transitions(&self) -> &[Vec<usize>] {
        &self.transitions
    }

    /// δ*(from, word).
    pub fn run_from(&self, from: usize, word: &[usize]) -> Result<usize> {
        check_word(word, self.alphabet.len())?;
        Ok(word.iter().fold(from, |s, &sym| self.step(s, sym)))
    }

    pub fn accepts(&self, word: &[usize]) -> Result<bool> {
        Ok(self.accepting[self.run_from(self.initial, word)?])
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ends_in_zero_dfa() -> Dfa {
        // Two states over {0,1}: accept exactly the words ending in 0.
        Dfa::new(
            vec!["0".into(), "1".into()],
            vec![vec![1, 0], vec![1, 0]],
            0,
            vec![false, true],
        )
        .unwrap()
    }

    #[test]
    fn accepts_words_ending_in_zero() {
        let d = ends_in_zero_dfa();
        assert!(d.accepts(&[1, 0]).unwrap());
        assert!(!d.accepts(&[]).unwrap());
        assert!(!d.accepts(&[0, 1]).unwrap());
        assert!(d.accepts(&[0, 0, 0]).unwrap());
    }

    #[test]
    fn rejects_out_of_range_symbol() {
        let d = ends_in_zero_dfa();
        assert!(matches!(
            d.accepts(&[2]),
            Err(Error::SymbolOutOfRange { index: 2, size: 2 })
        ));
    }

    #[test]
    fn validation_catches_bad_shapes() {
        assert!(Dfa::new(vec!["0".into()], vec![], 0, vec![]).is_err());
        assert!(Dfa::new(vec![], vec![vec![]], 0, vec![false]).is_err());
        assert!(Dfa::new(
            vec!["0".into(), "0".into()],
            vec![vec![0, 0]],
            0,
            vec![false]
        )
        .is_err());
        // Transition target out of range.
        assert!(Dfa::new(vec!["0".into()], vec![vec![1]], 0, vec![false]).is_err());
        // Initial state out of range.
        assert!(Dfa::new(vec!["0".into()], vec![vec![0]], 3, vec![false]).is_err());
        // Wrong accepting length.
        assert!(Dfa::new(vec!["0".into()], vec![vec![0]], 0, vec![]).is_err());
    }
}
