use super::{
    check_alphabet, check_complete_measurement, check_outcome_labels, check_projector,
    check_unit_vector, check_unitary, Dfa,
};
use crate::error::{Error, Result};
use crate::linalg::{Complex64, ComplexMatrix, ComplexVector, DEFAULT_TOL};
use crate::words::check_word;

/// Measure-many automaton with control language: after every unitary (one per
/// input symbol, then one for the end marker) a complete projective
/// measurement is taken, and the input is accepted with the total probability
/// of the outcome sequences that belong to the control DFA's language.
#[derive(Clone, Debug)]
pub struct QfaCl {
    alphabet: Vec<String>,
    initial_state: ComplexVector,
    unitaries: Vec<ComplexMatrix>, // [input symbol]
    end_unitary: ComplexMatrix,
    outcomes: Vec<String>,
    projectors: Vec<ComplexMatrix>, // [outcome]
    control: Dfa,                   // over the outcome alphabet
}

impl QfaCl {
    #[allow(clippy::too_many_arguments)]
    pub fn new(
        alphabet: Vec<String>,
        initial_state: ComplexVector,
        unitaries: Vec<ComplexMatrix>,
        end_unitary: ComplexMatrix,
        outcomes: Vec<String>,
        projectors: Vec<ComplexMatrix>,
        control: Dfa,
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
        check_outcome_labels(&outcomes, "outcomes")?;
        if projectors.len() != outcomes.len() {
            return Err(Error::validation(
                "projectors",
                format!(
                    "expected one projector per outcome ({}), found {}",
                    outcomes.len(),
                    projectors.len()
                ),
            ));
        }
        for (i, p) in projectors.iter().enumerate() {
            check_projector(p, dim, &format!("projectors.{i}"), DEFAULT_TOL)?;
        }
        check_complete_measurement(
            &projectors.iter().collect::<Vec<_>>(),
            dim,
            "projectors",
            DEFAULT_TOL,
        )?;
        if control.alphabet() != outcomes.as_slice() {
            return Err(Error::validation(
                "control.alphabet",
                "control DFA alphabet must equal the outcome labels in order",
            ));
        }
        Ok(QfaCl {
            alphabet,
            initial_state,
            unitaries,
            end_unitary,
            outcomes,
            projectors,
            control,
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

    pub fn outcomes(&self) -> &[String] {
        &self.outcomes
    }

    pub fn projector(&self, outcome: usize) -> &ComplexMatrix {
        &self.projectors[outcome]
    }

    pub fn control(&self) -> &Dfa {
        &self.control
    }

    /// Exact acceptance probability by aggregating one unnormalized density
    /// matrix per control state: stepping with the symbol's unitary, then
    /// splitting along the measurement and routing each branch through the
    /// control DFA. Linear in the word length.
    pub fn accept_prob(&self, word: &[usize]) -> Result<f64> {
        check_word(word, self.alphabet.len())?;
        let states = self.control.state_count();
        let mut rho: Vec<Option<ComplexMatrix>> = vec![None; states];
        rho[self.control.initial()] = Some(ComplexMatrix::outer(
            &self.initial_state,
            &self.initial_state,
        ));
        for step in 0..=word.len() {
            let u = if step < word.len() {
                &self.unitaries[word[step]]
            } else {
                &self.end_unitary
            };
            let mut next: Vec<Option<ComplexMatrix>> = vec![None; states];
            for (e, slot) in rho.iter().enumerate() {
                let Some(r) = slot else { continue };
                let evolved = u.mat_mul(r)?.mat_mul(&u.dagger())?;
                for (ci, p) in self.projectors.iter().enumerate() {
                    let branch = p.mat_mul(&evolved)?.mat_mul(p)?;
                    let target = self.control.step(e, ci);
                    next[target] = Some(match next[target].take() {
                        None => branch,
                        Some(acc) => acc.add(&branch)?,
                    });
                }
            }
            rho = next;
        }
        let mut total = Complex64::new(0.0, 0.0);
        for (e, slot) in rho.iter().enumerate() {
            if self.control.is_accepting(e) {
                if let Some(r) = slot {
                    total += r.trace();
                }
            }
        }
        Ok(total.re)
    }

    /// Oracle kept alongside the aggregated evaluator: sums ‖Π P(y_i)U(x_i)ψ0‖²
    /// over every outcome sequence y accepted by the control DFA. Exponential
    /// in the word length.
    pub fn accept_prob_brute_force(&self, word: &[usize]) -> Result<f64> {
        check_word(word, self.alphabet.len())?;
        let steps = word.len() + 1;
        let mut total = 0.0;
        let mut outcome_seq = vec![0usize; steps];
        loop {
            let end = self.control.run_from(self.control.initial(), &outcome_seq)?;
            if self.control.is_accepting(end) {
                let mut v = self.initial_state.clone();
                for (i, &y) in outcome_seq.iter().enumerate() {
                    let u = if i < word.len() {
                        &self.unitaries[word[i]]
                    } else {
                        &self.end_unitary
                    };
                    v = u.mat_vec(&v)?;
                    v = self.projectors[y].mat_vec(&v)?;
                }
                total += v.norm_sq();
            }
            // Odometer over outcome sequences.
            let mut pos = steps;
            loop {
                if pos == 0 {
                    return Ok(total);
                }
                pos -= 1;
                if outcome_seq[pos] + 1 < self.outcomes.len() {
                    outcome_seq[pos] += 1;
                    for s in outcome_seq.iter_mut().skip(pos + 1) {
                        *s = 0;
                    }
                    break;
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::random::{random_measurement, random_ranks, random_state, random_unitary};
    use crate::words::words_up_to;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn all_accepting_control(outcomes: &[String]) -> Dfa {
        Dfa::new(
            outcomes.to_vec(),
            vec![vec![0; outcomes.len()]],
            0,
            vec![true],
        )
        .unwrap()
    }

    fn random_qfacl(rng: &mut ChaCha8Rng, dim: usize, control: Dfa) -> QfaCl {
        let n_out = control.alphabet().len();
        let ranks = random_ranks(rng, dim, n_out);
        let projs = random_measurement(rng, dim, &ranks);
        QfaCl::new(
            vec!["0".into(), "1".into()],
            random_state(rng, dim),
            vec![random_unitary(rng, dim), random_unitary(rng, dim)],
            random_unitary(rng, dim),
            control.alphabet().to_vec(),
            projs,
            control,
        )
        .unwrap()
    }

    #[test]
    fn control_accepting_everything_gives_probability_one() {
        let mut rng = ChaCha8Rng::seed_from_u64(31);
        let outcomes: Vec<String> = vec!["x".into(), "y".into()];
        let control = all_accepting_control(&outcomes);
        for _ in 0..5 {
            let q = random_qfacl(&mut rng, 3, control.clone());
            for w in words_up_to(2, 3) {
                assert!((q.accept_prob(&w).unwrap() - 1.0).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn single_trivial_outcome_reduces_to_control_membership() {
        // One outcome "c" measured with the identity: the outcome sequence is
        // forced to c^(n+1), so acceptance is 1 or 0 by control membership.
        let control = Dfa::new(
            vec!["c".into()],
            vec![vec![1], vec![0]],
            0,
            vec![false, true], // accepts odd-length outcome sequences
        )
        .unwrap();
        let q = QfaCl::new(
            vec!["0".into()],
            ComplexVector::basis_state(2, 0),
            vec![ComplexMatrix::identity(2)],
            ComplexMatrix::identity(2),
            vec!["c".into()],
            vec![ComplexMatrix::identity(2)],
            control,
        )
        .unwrap();
        // |w| = n gives outcome sequence length n+1.
        assert_eq!(q.accept_prob(&[]).unwrap(), 1.0);
        assert_eq!(q.accept_prob(&[0]).unwrap(), 0.0);
        assert_eq!(q.accept_prob(&[0, 0]).unwrap(), 1.0);
    }

    #[test]
    fn aggregation_matches_brute_force_enumeration() {
        let mut rng = ChaCha8Rng::seed_from_u64(32);
        // Control with 3 outcomes and 2 states: accept iff the count of
        // outcome 0 is odd.
        let control = Dfa::new(
            vec!["p".into(), "q".into(), "r".into()],
            vec![vec![1, 0, 0], vec![0, 1, 1]],
            0,
            vec![false, true],
        )
        .unwrap();
        for _ in 0..5 {
            let q = random_qfacl(&mut rng, 3, control.clone());
            for w in words_up_to(2, 3) {
                let fast = q.accept_prob(&w).unwrap();
                let slow = q.accept_prob_brute_force(&w).unwrap();
                assert!((fast - slow).abs() < 1e-12, "word {w:?}: {fast} vs {slow}");
            }
        }
    }

    #[test]
    fn control_alphabet_must_match_outcomes() {
        let control = Dfa::new(vec!["z".into()], vec![vec![0]], 0, vec![true]).unwrap();
        let err = QfaCl::new(
            vec!["0".into()],
            ComplexVector::basis_state(1, 0),
            vec![ComplexMatrix::identity(1)],
            ComplexMatrix::identity(1),
            vec!["c".into()],
            vec![ComplexMatrix::identity(1)],
            control,
        )
        .unwrap_err();
        assert!(err.to_string().contains("control.alphabet"));
    }
}
