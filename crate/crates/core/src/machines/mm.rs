use super::{
    check_alphabet, check_complete_measurement, check_projector, check_unit_vector, check_unitary,
};
use crate::error::{Error, Result};
use crate::linalg::{ComplexMatrix, ComplexVector, DEFAULT_TOL};
use crate::words::check_word;

/// Measure-many quantum finite automaton. After each symbol (and after the
/// implicit end marker) the state is measured against {accept, reject, go-on};
/// only the go-on component keeps evolving. Input words range over the plain
/// alphabet; the end marker is appended internally and may not appear in the
/// alphabet itself.
#[derive(Clone, Debug)]
pub struct MmQfa {
    alphabet: Vec<String>,
    initial_state: ComplexVector,
    unitaries: Vec<ComplexMatrix>, // [symbol]
    end_unitary: ComplexMatrix,
    accepting_proj: ComplexMatrix,
    reject_proj: ComplexMatrix,
    nonhalt_proj: ComplexMatrix,
}

impl MmQfa {
    #[allow(clippy::too_many_arguments)]
    pub fn new(
        alphabet: Vec<String>,
        initial_state: ComplexVector,
        unitaries: Vec<ComplexMatrix>,
        end_unitary: ComplexMatrix,
        accepting_proj: ComplexMatrix,
        reject_proj: ComplexMatrix,
        nonhalt_proj: ComplexMatrix,
    ) -> Result<Self> {
        check_alphabet(&alphabet, "alphabet")?;
        if alphabet.iter().any(|s| s == "$") {
            return Err(Error::validation(
                "alphabet",
                "the end marker \"$\" cannot be an input symbol",
            ));
        }
        let dim = initial_state.dim();
        check_unit_vector(&initial_state, dim, "initial_state", DEFAULT_TOL)?;
        if unitaries.len() != alphabet.len() {
            return Err(Error::validation(
                "unitaries",
                format!(
                    "expected one unitary per symbol ({}), found {}",
                    alphabet.len(),
                    unitaries.len()
                ),
            ));
        }
        for (i, u) in unitaries.iter().enumerate() {
            check_unitary(u, dim, &format!("unitaries.{i}"), DEFAULT_TOL)?;
        }
        check_unitary(&end_unitary, dim, "end_unitary", DEFAULT_TOL)?;
        check_projector(&accepting_proj, dim, "accepting_proj", DEFAULT_TOL)?;
        check_projector(&reject_proj, dim, "reject_proj", DEFAULT_TOL)?;
        check_projector(&nonhalt_proj, dim, "nonhalt_proj", DEFAULT_TOL)?;
        check_complete_measurement(
            &[&accepting_proj, &reject_proj, &nonhalt_proj],
            dim,
            "measurement",
            DEFAULT_TOL,
        )?;
        Ok(MmQfa {
            alphabet,
            initial_state,
            unitaries,
            end_unitary,
            accepting_proj,
            reject_proj,
            nonhalt_proj,
        })
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

    pub fn unitary(&self, symbol: usize) -> &ComplexMatrix {
        &self.unitaries[symbol]
    }

    pub fn end_unitary(&self) -> &ComplexMatrix {
        &self.end_unitary
    }

    pub fn accepting_proj(&self) -> &ComplexMatrix {
        &self.accepting_proj
    }

    pub fn reject_proj(&self) -> &ComplexMatrix {
        &self.reject_proj
    }

    pub fn nonhalt_proj(&self) -> &ComplexMatrix {
        &self.nonhalt_proj
    }

    /// Cumulative (accept, reject) probabilities over all halting branches.
    /// The two need not sum to 1: amplitude left in the go-on subspace after
    /// the end marker is simply dropped.
    pub fn probs(&self, word: &[usize]) -> Result<(f64, f64)> {
        check_word(word, self.alphabet.len())?;
        let mut live = self.initial_state.clone();
        let mut p_acc = 0.0;
        let mut p_rej = 0.0;
        for step in 0..=word.len() {
            let u = if step < word.len() {
                &self.unitaries[word[step]]
            } else {
                &self.end_unitary
            };
            let evolved = u.mat_vec(&live)?;
            p_acc += self.accepting_proj.mat_vec(&evolved)?.norm_sq();
            p_rej += self.reject_proj.mat_vec(&evolved)?.norm_sq();
            live = self.nonhalt_proj.mat_vec(&evolved)?;
        }
        Ok((p_acc, p_rej))
    }
}
