use super::{check_alphabet, check_projector, check_unit_vector, check_unitary};
use crate::error::{Error, Result};
use crate::linalg::{ComplexMatrix, ComplexVector, DEFAULT_TOL};
use crate::words::check_word;
use std::collections::BTreeMap;

/// A window of the last k letters seen; `None` is the blank padding that
/// precedes the input.
pub type Window = Vec<Option<usize>>;

/// k-letter quantum finite automaton: at step i the unitary chosen by the
/// window of the last k letters (blank-padded at the start) is applied.
/// k = 1 coincides with the measure-once model.
#[derive(Clone, Debug)]
pub struct KLetterQfa {
    k: usize,
    alphabet: Vec<String>,
    initial_state: ComplexVector,
    nu: BTreeMap<Window, ComplexMatrix>,
    accepting_proj: ComplexMatrix,
}

/// All windows that can occur on some input: for each number of leading
/// blanks a in 0..k, every suffix in Σ^(k-a).
pub fn reachable_windows(k: usize, alphabet_size: usize) -> Vec<Window> {
    let mut out = Vec::new();
    for blanks in (0..k).rev() {
        let letters = k - blanks;
        let mut stack: Vec<Vec<usize>> = vec![Vec::new()];
        while let Some(prefix) = stack.pop() {
            if prefix.len() == letters {
                let mut w: Window = vec![None; blanks];
                w.extend(prefix.iter().map(|&s| Some(s)));
                out.push(w);
                continue;
            }
            for s in (0..alphabet_size).rev() {
                let mut next = prefix.clone();
                next.push(s);
                stack.push(next);
            }
        }
    }
    out
}

fn window_name(w: &Window, alphabet: &[String]) -> String {
    w.iter()
        .map(|e| match e {
            None => "_".to_string(),
            Some(i) => alphabet[*i].clone(),
        })
        .collect::<Vec<_>>()
        .join("")
}

impl KLetterQfa {
    pub fn new(
        k: usize,
        alphabet: Vec<String>,
        initial_state: ComplexVector,
        nu: BTreeMap<Window, ComplexMatrix>,
        accepting_proj: ComplexMatrix,
    ) -> Result<Self> {
        if k == 0 {
            return Err(Error::validation("k", "window length k must be at least 1"));
        }
        check_alphabet(&alphabet, "alphabet")?;
        let dim = initial_state.dim();
        check_unit_vector(&initial_state, dim, "initial_state", DEFAULT_TOL)?;
        check_projector(&accepting_proj, dim, "accepting_proj", DEFAULT_TOL)?;
        let required = reachable_windows(k, alphabet.len());
        for w in &required {
            match nu.get(w) {
                None => {
                    return Err(Error::validation(
                        format!("nu.{}", window_name(w, &alphabet)),
                        "missing unitary for a reachable window",
                    ));
                }
                Some(u) => {
                    check_unitary(u, dim, &format!("nu.{}", window_name(w, &alphabet)), DEFAULT_TOL)?
                }
            }
        }
        if nu.len() != required.len() {
            let extra = nu
                .keys()
                .find(|w| !required.contains(w))
                .expect("count mismatch implies an extra key");
            return Err(Error::validation(
                format!("nu.{}", window_name(extra, &alphabet)),
                "window can never occur (blanks are only a prefix shorter than k)",
            ));
        }
        Ok(KLetterQfa { k, alphabet, initial_state, nu, accepting_proj })
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn qdim(&self) -> usize {
        self.initial_state.dim()
    }

    pub fn alphabet(&self) -> &[String] {
        &self.alphabet
    }

    pub fn initial_state(&self) -> &ComplexVector {
        &self.initial_state
    }

    pub fn accepting_proj(&self) -> &ComplexMatrix {
        &self.accepting_proj
    }

    pub fn windows(&self) -> impl Iterator<Item = (&Window, &ComplexMatrix)> {
        self.nu.iter()
    }

    pub fn accept_prob(&self, word: &[usize]) -> Result<f64> {
        check_word(word, self.alphabet.len())?;
        let mut v = self.initial_state.clone();
        let mut window: Window = vec![None; self.k];
        for &sym in word {
            window.remove(0);
            window.push(Some(sym));
            let u = self.nu.get(&window).expect("validated total on reachable windows");
            v = u.mat_vec(&v)?;
        }
        Ok(self.accepting_proj.mat_vec(&v)?.norm_sq())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::Complex64;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    fn bit_flip() -> ComplexMatrix {
        ComplexMatrix::from_rows(vec![vec![c(0.0), c(1.0)], vec![c(1.0), c(0.0)]]).unwrap()
    }

    fn proj_one() -> ComplexMatrix {
        ComplexMatrix::from_rows(vec![vec![c(0.0), c(0.0)], vec![c(0.0), c(1.0)]]).unwrap()
    }

    /// 2-letter machine over {a,b} that flips a qubit whenever the window
    /// ends in b; accepts on |1>, so it accepts words with an odd number
    /// of b's.
    fn parity_machine() -> KLetterQfa {
        let mut nu = BTreeMap::new();
        for w in reachable_windows(2, 2) {
            let u = match w.last().unwrap() {
                Some(1) => bit_flip(),
                _ => ComplexMatrix::identity(2),
            };
            nu.insert(w, u);
        }
        KLetterQfa::new(
            2,
            vec!["a".into(), "b".into()],
            ComplexVector::basis_state(2, 0),
            nu,
            proj_one(),
        )
        .unwrap()
    }

    #[test]
    fn window_walk_counts_b_parity() {
        let q = parity_machine();
        let cases: [(&[usize], f64); 6] = [
            (&[], 0.0),
            (&[1], 1.0),
            (&[0, 1], 1.0),
            (&[1, 1], 0.0),
            (&[1, 0, 1], 0.0),
            (&[0, 1, 1, 1], 1.0),
        ];
        for (w, expect) in cases {
            assert_eq!(q.accept_prob(w).unwrap(), expect, "word {w:?}");
        }
    }

    #[test]
    fn reachable_windows_cover_padded_prefixes_and_full_windows() {
        let ws = reachable_windows(2, 2);
        assert_eq!(ws.len(), 2 + 4);
        assert!(ws.contains(&vec![None, Some(0)]));
        assert!(ws.contains(&vec![None, Some(1)]));
        assert!(!ws.iter().any(|w| w == &vec![None, None]));
        assert_eq!(reachable_windows(3, 2).len(), 2 + 4 + 8);
    }

    #[test]
    fn missing_window_is_rejected_eagerly() {
        let mut nu = BTreeMap::new();
        for w in reachable_windows(2, 2) {
            nu.insert(w, ComplexMatrix::identity(2));
        }
        nu.remove(&vec![None, Some(1)]);
        let err = KLetterQfa::new(
            2,
            vec!["a".into(), "b".into()],
            ComplexVector::basis_state(2, 0),
            nu,
            proj_one(),
        )
        .unwrap_err();
        assert!(err.to_string().contains("nu._b"), "got: {err}");
    }

    #[test]
    fn unreachable_window_is_rejected() {
        let mut nu = BTreeMap::new();
        for w in reachable_windows(2, 2) {
            nu.insert(w, ComplexMatrix::identity(2));
        }
        nu.insert(vec![Some(0), None], ComplexMatrix::identity(2));
        let err = KLetterQfa::new(
            2,
            vec!["a".into(), "b".into()],
            ComplexVector::basis_state(2, 0),
            nu,
            proj_one(),
        )
        .unwrap_err();
        assert!(err.to_string().contains("never occur"), "got: {err}");
    }
}
