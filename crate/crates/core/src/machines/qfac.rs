use super::{
    check_alphabet, check_complete_measurement, check_outcome_labels, check_unit_vector,
    check_unitary,
};
use crate::error::{Error, Result};
use crate::linalg::{ComplexMatrix, ComplexVector, DEFAULT_TOL};
use crate::words::check_word;

/// Quantum finite automaton with classical states: a DFA skeleton reads the
/// word and selects, per (classical state, symbol), the unitary applied to
/// the quantum register; the final classical state selects the projective
/// measurement whose outcome distribution is reported.
#[derive(Clone, Debug)]
pub struct Qfac {
    alphabet: Vec<String>,
    outcomes: Vec<String>,
    initial_classical: usize,
    initial_quantum: ComplexVector,
    delta: Vec<Vec<usize>>,                // [classical][symbol]
    unitaries: Vec<Vec<ComplexMatrix>>,    // [classical][symbol]
    measurements: Vec<Vec<ComplexMatrix>>, // [classical][outcome]
}

/// Full record of one run: classical states and quantum states after each
/// prefix (both of length |w|+1), plus the final outcome distribution.
#[derive(Clone, Debug)]
pub struct RunTrace {
    pub classical_path: Vec<usize>,
    pub quantum_path: Vec<ComplexVector>,
    pub outcome_distribution: Vec<f64>,
}

impl Qfac {
    #[allow(clippy::too_many_arguments)]
    pub fn new(
        alphabet: Vec<String>,
        outcomes: Vec<String>,
        initial_classical: usize,
        initial_quantum: ComplexVector,
        delta: Vec<Vec<usize>>,
        unitaries: Vec<Vec<ComplexMatrix>>,
        measurements: Vec<Vec<ComplexMatrix>>,
    ) -> Result<Self> {
        check_alphabet(&alphabet, "alphabet")?;
        check_outcome_labels(&outcomes, "outcomes")?;
        let k = delta.len();
        if k == 0 {
            return Err(Error::validation("delta", "at least one classical state is required"));
        }
        let n = initial_quantum.dim();
        check_unit_vector(&initial_quantum, n, "initial_quantum", DEFAULT_TOL)?;
        if initial_classical >= k {
            return Err(Error::StateOutOfRange { index: initial_classical, count: k });
        }
        for (s, row) in delta.iter().enumerate() {
            if row.len() != alphabet.len() {
                return Err(Error::validation(
                    format!("delta.{s}"),
                    format!("expected {} targets, found {}", alphabet.len(), row.len()),
                ));
            }
            for (sym, &t) in row.iter().enumerate() {
                if t >= k {
                    return Err(Error::validation(
                        format!("delta.{s}.{sym}"),
                        format!("target state {t} out of range (have {k} classical states)"),
                    ));
                }
            }
        }
        if unitaries.len() != k {
            return Err(Error::validation(
                "unitaries",
                format!("expected one row per classical state ({k}), found {}", unitaries.len()),
            ));
        }
        for (s, row) in unitaries.iter().enumerate() {
            if row.len() != alphabet.len() {
                return Err(Error::validation(
                    format!("unitaries.{s}"),
                    format!("expected {} unitaries, found {}", alphabet.len(), row.len()),
                ));
            }
            for (sym, u) in row.iter().enumerate() {
                check_unitary(u, n, &format!("unitaries.{s}.{sym}"), DEFAULT_TOL)?;
            }
        }
        if measurements.len() != k {
            return Err(Error::validation(
                "measurements",
                format!(
                    "expected one measurement per classical state ({k}), found {}",
                    measurements.len()
                ),
            ));
        }
        for (s, projs) in measurements.iter().enumerate() {
            if projs.len() != outcomes.len() {
                return Err(Error::validation(
                    format!("measurements.{s}"),
                    format!("expected {} projectors, found {}", outcomes.len(), projs.len()),
                ));
            }
            for (g, p) in projs.iter().enumerate() {
                super::check_projector(p, n, &format!("measurements.{s}.{g}"), DEFAULT_TOL)?;
            }
            check_complete_measurement(
                &projs.iter().collect::<Vec<_>>(),
                n,
                &format!("measurements.{s}"),
                DEFAULT_TOL,
            )?;
        }
        Ok(Qfac {
            alphabet,
            outcomes,
            initial_classical,
            initial_quantum,
            delta,
            unitaries,
            measurements,
        })
    }

    pub fn classical_count(&self) -> usize {
        self.delta.len()
    }

    pub fn qdim(&self) -> usize {
        self.initial_quantum.dim()
    }

    pub fn alphabet(&self) -> &[String] {
        &self.alphabet
    }

    pub fn outcomes(&self) -> &[String] {
        &self.outcomes
    }

    pub fn outcome_index(&self, label: &str) -> Option<usize> {
        self.outcomes.iter().position(|o| o == label)
    }

    pub fn initial_classical(&self) -> usize {
        self.initial_classical
    }

    pub fn initial_quantum(&self) -> &ComplexVector {
        &self.initial_quantum
    }

    pub fn delta(&self) -> &[Vec<usize>] {
        &self.delta
    }

    pub fn classical_step(&self, state: usize, symbol: usize) -> usize {
        self.delta[state][symbol]
    }

    pub fn unitary(&self, state: usize, symbol: usize) -> &ComplexMatrix {
        &self.unitaries[state][symbol]
    }

    pub fn measurement(&self, state: usize, outcome: usize) -> &ComplexMatrix {
        &self.measurements[state][outcome]
    }

    /// Probability of each outcome after reading `word`.
    pub fn outcome_probs(&self, word: &[usize]) -> Result<Vec<f64>> {
        check_word(word, self.alphabet.len())?;
        let mut s = self.initial_classical;
        let mut v = self.initial_quantum.clone();
        for &sym in word {
            v = self.unitaries[s][sym].mat_vec(&v)?;
            s = self.delta[s][sym];
        }
        self.measurements[s]
            .iter()
            .map(|p| Ok(p.mat_vec(&v)?.norm_sq()))
            .collect()
    }

    /// Probability of one outcome by label.
    pub fn outcome_prob(&self, word: &[usize], outcome: &str) -> Result<f64> {
        let g = self.outcome_index(outcome).ok_or_else(|| {
            Error::Unsupported(format!("machine has no outcome labeled {outcome:?}"))
        })?;
        Ok(self.outcome_probs(word)?[g])
    }

    /// Acceptance probability: the probability of the outcome labeled "a".
    pub fn accept_prob(&self, word: &[usize]) -> Result<f64> {
        self.outcome_prob(word, "a")
    }

    pub fn run_trace(&self, word: &[usize]) -> Result<RunTrace> {
        check_word(word, self.alphabet.len())?;
        let mut classical_path = Vec::with_capacity(word.len() + 1);
        let mut quantum_path = Vec::with_capacity(word.len() + 1);
        let mut s = self.initial_classical;
        let mut v = self.initial_quantum.clone();
        classical_path.push(s);
        quantum_path.push(v.clone());
        for &sym in word {
            v = self.unitaries[s][sym].mat_vec(&v)?;
            s = self.delta[s][sym];
            classical_path.push(s);
            quantum_path.push(v.clone());
        }
        let outcome_distribution = self.measurements[s]
            .iter()
            .map(|p| Ok(p.mat_vec(&v)?.norm_sq()))
            .collect::<Result<Vec<f64>>>()?;
        Ok(RunTrace { classical_path, quantum_path, outcome_distribution })
    }
}
