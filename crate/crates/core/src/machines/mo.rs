use super::{check_alphabet, check_projector, check_unit_vector, check_unitary};
use crate::error::Result;
use crate::linalg::{ComplexMatrix, ComplexVector, DEFAULT_TOL};
use crate::words::check_word;

/// Measure-once quantum finite automaton: one unitary per symbol, a single
/// accepting projector applied after the whole word has been read.
#[derive(Clone, Debug)]
pub struct MoQfa {
    alphabet: Vec<String>,
    initial_state: ComplexVector,
    unitaries: Vec<ComplexMatrix>, // [symbol]
    accepting_proj: ComplexMatrix,
}

impl MoQfa {
    pub fn new(
        alphabet: Vec<String>,
        initial_state: ComplexVector,
        unitaries: Vec<ComplexMatrix>,
        accepting_proj: ComplexMatrix,
    ) -> Result<Self> {
        check_alphabet(&alphabet, "alphabet")?;
        let dim = initial_state.dim();
        check_unit_vector(&initial_state, dim, "initial_state", DEFAULT_TOL)?;
        if unitaries.len() != alphabet.len() {
            return Err(crate::error::Error::validation(
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
        check_projector(&accepting_proj, dim, "accepting_proj", DEFAULT_TOL)?;
        Ok(MoQfa { alphabet, initial_state, unitaries, accepting_proj })
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

    pub fn accepting_proj(&self) -> &ComplexMatrix {
        &self.accepting_proj
    }

    /// ‖P_acc · U(σ_m)···U(σ_1) |ψ0>‖².
    pub fn accept_prob(&self, word: &[usize]) -> Result<f64> {
        check_word(word, self.alphabet.len())?;
        let mut v = self.initial_state.clone();
        for &sym in word {
            v = self.unitaries[sym].mat_vec(&v)?;
        }
        Ok(self.accepting_proj.mat_vec(&v)?.norm_sq())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{rotation, Complex64};
    use std::f64::consts::PI;

    /// 2-dimensional machine rotating by π/m on every symbol, accepting |0>.
    fn rotation_machine(m: usize) -> MoQfa {
        let u = rotation(PI / m as f64);
        let proj = ComplexMatrix::from_fn(2, 2, |i, j| {
            Complex64::new(if i == 0 && j == 0 { 1.0 } else { 0.0 }, 0.0)
        });
        MoQfa::new(
            vec!["0".into(), "1".into()],
            ComplexVector::basis_state(2, 0),
            vec![u.clone(), u],
            proj,
        )
        .unwrap()
    }

    #[test]
    fn rotation_machine_probability_depends_only_on_length() {
        let q = rotation_machine(3);
        assert!((q.accept_prob(&[]).unwrap() - 1.0).abs() < 1e-12);
        assert!((q.accept_prob(&[0]).unwrap() - 0.25).abs() < 1e-12);
        assert!((q.accept_prob(&[1]).unwrap() - 0.25).abs() < 1e-12);
        for len in 0..10 {
            let w: Vec<usize> = (0..len).map(|i| i % 2).collect();
            let expect = (len as f64 * PI / 3.0).cos().powi(2);
            assert!((q.accept_prob(&w).unwrap() - expect).abs() < 1e-12);
        }
        // Multiples of m=3 are accepted with certainty.
        assert!((q.accept_prob(&[0, 0, 0]).unwrap() - 1.0).abs() < 1e-12);
        assert!((q.accept_prob(&[0; 6]).unwrap() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn rejects_non_unitary_matrix() {
        let bad = ComplexMatrix::from_fn(2, 2, |_, _| Complex64::new(1.0, 0.0));
        let err = MoQfa::new(
            vec!["0".into()],
            ComplexVector::basis_state(2, 0),
            vec![bad],
            ComplexMatrix::identity(2),
        )
        .unwrap_err();
        assert!(err.to_string().contains("unitaries.0"));
    }

    #[test]
    fn rejects_non_unit_initial_state() {
        let v = ComplexVector::new(vec![Complex64::new(0.5, 0.0), Complex64::new(0.5, 0.0)]);
        assert!(MoQfa::new(
            vec!["0".into()],
            v,
            vec![ComplexMatrix::identity(2)],
            ComplexMatrix::identity(2),
        )
        .is_err());
    }
}
