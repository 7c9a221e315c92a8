//! Equivalence checking for machines with classical and quantum states.
//!
//! A machine is first embedded as a linear automaton over one kn-dimensional
//! space (block matrices indexed by classical state), then turned into a
//! bilinear machine whose word function *is* the outcome probability. Two
//! bilinear machines are compared by closing the span of reachable row
//! vectors, which bounds witness length by the sum of their dimensions.

use crate::error::{Error, Result};
use crate::linalg::{range_basis, Complex64, ComplexMatrix, ComplexVector};
use crate::machines::{check_alphabet, Qfac};
use std::collections::VecDeque;

/// Below this norm a row vector is treated as zero and spans nothing.
const ZERO_VECTOR_FLOOR: f64 = 1e-14;

/// A machine with classical and quantum states rewritten over the single
/// kn-dimensional space: one step matrix per symbol, one block-diagonal
/// projector per outcome, and a start configuration concentrated in the
/// block of the initial classical state.
#[derive(Clone, Debug)]
pub struct BlockEmbedding {
    alphabet: Vec<String>,
    outcomes: Vec<String>,
    c0: ComplexVector,
    step_matrices: Vec<ComplexMatrix>,
    outcome_projectors: Vec<ComplexMatrix>,
}

impl BlockEmbedding {
    pub fn dim(&self) -> usize {
        self.c0.dim()
    }

    pub fn alphabet(&self) -> &[String] {
        &self.alphabet
    }

    pub fn outcomes(&self) -> &[String] {
        &self.outcomes
    }

    pub fn c0(&self) -> &ComplexVector {
        &self.c0
    }

    pub fn step_matrix(&self, symbol: usize) -> &ComplexMatrix {
        &self.step_matrices[symbol]
    }

    pub fn outcome_projector(&self, outcome: usize) -> &ComplexMatrix {
        &self.outcome_projectors[outcome]
    }

    /// Applies the word's step matrices to the start configuration.
    pub fn configuration(&self, word: &[usize]) -> Result<ComplexVector> {
        let mut c = self.c0.clone();
        for &sym in word {
            if sym >= self.alphabet.len() {
                return Err(Error::SymbolOutOfRange { index: sym, size: self.alphabet.len() });
            }
            c = self.step_matrices[sym].mat_vec(&c)?;
        }
        Ok(c)
    }

    /// ‖P_γ c‖² for the configuration c reached by the word.
    pub fn outcome_prob(&self, word: &[usize], outcome: &str) -> Result<f64> {
        let g = self
            .outcomes
            .iter()
            .position(|o| o == outcome)
            .ok_or_else(|| Error::Unsupported(format!("unknown outcome `{outcome}`")))?;
        let c = self.configuration(word)?;
        Ok(self.outcome_projectors[g].mat_vec(&c)?.norm_sq())
    }
}

/// Rewrites the machine over one kn-dimensional space. The step matrix for σ
/// carries U_{s,σ} in block row δ(s,σ), block column s; each outcome
/// projector is block diagonal.
pub fn embed_qfac(a: &Qfac) -> BlockEmbedding {
    let (k, n) = (a.classical_count(), a.qdim());
    let dim = k * n;
    let mut c0 = ComplexVector::zeros(dim);
    for (i, &x) in a.initial_quantum().as_slice().iter().enumerate() {
        c0.set(a.initial_classical() * n + i, x);
    }
    let step_matrices = (0..a.alphabet().len())
        .map(|sym| {
            let mut x = ComplexMatrix::zeros(dim, dim);
            for s in 0..k {
                x.set_block(a.classical_step(s, sym) * n, s * n, a.unitary(s, sym));
            }
            x
        })
        .collect();
    let outcome_projectors = (0..a.outcomes().len())
        .map(|g| {
            let mut p = ComplexMatrix::zeros(dim, dim);
            for s in 0..k {
                p.set_block(s * n, s * n, a.measurement(s, g));
            }
            p
        })
        .collect();
    BlockEmbedding {
        alphabet: a.alphabet().to_vec(),
        outcomes: a.outcomes().to_vec(),
        c0,
        step_matrices,
        outcome_projectors,
    }
}

/// Bilinear machine: a row vector π, one square matrix per symbol, and a
/// column vector η, computing f(w) = π·M(w₁)···M(w_m)·η.
#[derive(Clone, Debug)]
pub struct Blm {
    alphabet: Vec<String>,
    dim: usize,
    pi: ComplexVector,
    step: Vec<ComplexMatrix>,
    eta: ComplexVector,
}

impl Blm {
    pub fn new(
        alphabet: Vec<String>,
        pi: ComplexVector,
        step: Vec<ComplexMatrix>,
        eta: ComplexVector,
    ) -> Result<Blm> {
        check_alphabet(&alphabet, "alphabet")?;
        let dim = pi.dim();
        if dim == 0 {
            return Err(Error::validation("pi", "must not be empty"));
        }
        if !pi.is_finite() {
            return Err(Error::validation("pi", "entries must be finite"));
        }
        if eta.dim() != dim {
            return Err(Error::validation(
                "eta",
                format!("has dimension {} but pi has {}", eta.dim(), dim),
            ));
        }
        if !eta.is_finite() {
            return Err(Error::validation("eta", "entries must be finite"));
        }
        if step.len() != alphabet.len() {
            return Err(Error::validation(
                "step",
                format!("{} matrices for {} symbols", step.len(), alphabet.len()),
            ));
        }
        for (i, m) in step.iter().enumerate() {
            if m.rows() != dim || m.cols() != dim {
                return Err(Error::validation(
                    format!("step.{i}"),
                    format!("must be {dim}x{dim}, got {}x{}", m.rows(), m.cols()),
                ));
            }
            if !m.is_finite() {
                return Err(Error::validation(format!("step.{i}"), "entries must be finite"));
            }
        }
        Ok(Blm { alphabet, dim, pi, step, eta })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn alphabet(&self) -> &[String] {
        &self.alphabet
    }

    pub fn pi(&self) -> &ComplexVector {
        &self.pi
    }

    pub fn step(&self, symbol: usize) -> &ComplexMatrix {
        &self.step[symbol]
    }

    pub fn eta(&self) -> &ComplexVector {
        &self.eta
    }

    /// f(w) = π·M(w₁)···M(w_m)·η, multiplying the row vector left to right.
    pub fn word_fn(&self, word: &[usize]) -> Result<Complex64> {
        let mut v = self.pi.clone();
        for &sym in word {
            if sym >= self.alphabet.len() {
                return Err(Error::SymbolOutOfRange { index: sym, size: self.alphabet.len() });
            }
            v = self.step[sym].row_mul(&v)?;
        }
        Ok(v.dot(&self.eta))
    }
}

/// Word function of a bilinear machine.
pub fn blm_word_fn(b: &Blm, word: &[usize]) -> Result<Complex64> {
    b.word_fn(word)
}

/// The γ-projector flattened through its range basis: Σ_j ψ_j ⊗ ψ_j*.
/// Equal to the row-major flattening of the projector itself; kept as an
/// independent construction path for cross-checking.
pub fn eta_from_range_basis(p: &ComplexMatrix, tol: f64) -> Result<ComplexVector> {
    let mut eta = ComplexVector::zeros(p.rows() * p.rows());
    for psi in range_basis(p, tol)? {
        eta = eta.add(&psi.kron(&psi.conj()));
    }
    Ok(eta)
}

/// Squares the embedding into a bilinear machine whose word function equals
/// the probability of `outcome` exactly: the configuration space is the
/// tensor square (dimension (kn)²), carrying c̄ ⊗ c so that the quadratic
/// form ⟨c|P|c⟩ becomes the linear pairing with the flattened projector.
pub fn bilinearize(a: &Qfac, outcome: &str) -> Result<Blm> {
    let g = a
        .outcome_index(outcome)
        .ok_or_else(|| Error::Unsupported(format!("unknown outcome `{outcome}`")))?;
    let emb = embed_qfac(a);
    let pi = emb.c0().conj().kron(emb.c0());
    let step = emb
        .step_matrices
        .iter()
        .map(|x| x.conj().kron(x).transpose())
        .collect();
    let eta = emb.outcome_projector(g).flatten();
    Blm::new(a.alphabet().to_vec(), pi, step, eta)
}

/// Outcome of an equivalence decision. `witness` is the first word in
/// breadth-first order (shortest, then alphabet order) whose function values
/// differ by more than the tolerance; its length never exceeds
/// `length_bound`.
#[derive(Clone, Debug, PartialEq)]
pub struct EquivalenceVerdict {
    pub equivalent: bool,
    pub witness: Option<Vec<usize>>,
    pub length_bound: usize,
    pub basis_size: usize,
    pub max_abs_diff_at_witness: f64,
}

/// Decides whether two bilinear machines compute the same word function, by
/// closing the span of joint row vectors [π₁M₁(w) | π₂M₂(w)]. Vectors are
/// unit-scaled before the modified Gram–Schmidt residual test; a word's
/// children are explored only when its vector enlarges the span, so at most
/// n₁+n₂ words spawn children and the search always terminates.
pub fn blm_equivalent(b1: &Blm, b2: &Blm, tol: f64) -> Result<EquivalenceVerdict> {
    if b1.alphabet() != b2.alphabet() {
        return Err(Error::AlphabetMismatch(format!(
            "{:?} vs {:?}",
            b1.alphabet(),
            b2.alphabet()
        )));
    }
    if !(tol > 0.0 && tol.is_finite()) {
        return Err(Error::Unsupported(format!("tolerance must be positive, got {tol}")));
    }
    let length_bound = b1.dim() + b2.dim() - 1;
    let mut basis: Vec<ComplexVector> = Vec::new();
    let mut queue: VecDeque<(Vec<usize>, ComplexVector, ComplexVector)> = VecDeque::new();
    queue.push_back((Vec::new(), b1.pi().clone(), b2.pi().clone()));
    while let Some((word, v1, v2)) = queue.pop_front() {
        let diff = (v1.dot(b1.eta()) - v2.dot(b2.eta())).norm();
        if diff > tol {
            return Ok(EquivalenceVerdict {
                equivalent: false,
                witness: Some(word),
                length_bound,
                basis_size: basis.len(),
                max_abs_diff_at_witness: diff,
            });
        }
        let joint = join(&v1, &v2);
        let norm = joint.norm();
        if norm <= ZERO_VECTOR_FLOOR {
            continue;
        }
        let mut residual = joint.scale(Complex64::new(1.0 / norm, 0.0));
        for _ in 0..2 {
            for b in &basis {
                let overlap = b.inner(&residual);
                residual = residual.sub(&b.scale(overlap));
            }
        }
        let r = residual.norm();
        if r > tol {
            basis.push(residual.scale(Complex64::new(1.0 / r, 0.0)));
            for sym in 0..b1.alphabet().len() {
                let mut child = word.clone();
                child.push(sym);
                queue.push_back((child, b1.step(sym).row_mul(&v1)?, b2.step(sym).row_mul(&v2)?));
            }
        }
    }
    Ok(EquivalenceVerdict {
        equivalent: true,
        witness: None,
        length_bound,
        basis_size: basis.len(),
        max_abs_diff_at_witness: 0.0,
    })
}

fn join(a: &ComplexVector, b: &ComplexVector) -> ComplexVector {
    let mut data = Vec::with_capacity(a.dim() + b.dim());
    data.extend_from_slice(a.as_slice());
    data.extend_from_slice(b.as_slice());
    ComplexVector::new(data)
}

fn check_same_interface(a1: &Qfac, a2: &Qfac) -> Result<()> {
    if a1.alphabet() != a2.alphabet() {
        return Err(Error::AlphabetMismatch(format!(
            "{:?} vs {:?}",
            a1.alphabet(),
            a2.alphabet()
        )));
    }
    Ok(())
}

/// Decides whether two machines assign the same probability to `outcome` on
/// every word, via bilinearization. The reported length bound is
/// (k₁n₁)² + (k₂n₂)² − 1.
pub fn qfac_equivalent(a1: &Qfac, a2: &Qfac, outcome: &str, tol: f64) -> Result<EquivalenceVerdict> {
    check_same_interface(a1, a2)?;
    let b1 = bilinearize(a1, outcome)?;
    let b2 = bilinearize(a2, outcome)?;
    let verdict = blm_equivalent(&b1, &b2, tol)?;
    if let Some(w) = &verdict.witness {
        debug_assert!(
            (a1.outcome_prob(w, outcome)? - a2.outcome_prob(w, outcome)?).abs() > tol / 2.0,
            "witness must re-verify on direct evaluation"
        );
    }
    Ok(verdict)
}

/// Conjunction of `qfac_equivalent` over every outcome, short-circuiting on
/// the first inequivalent one, whose label is returned with the verdict.
/// The machines must declare identical outcome lists.
pub fn qfac_equivalent_all(
    a1: &Qfac,
    a2: &Qfac,
    tol: f64,
) -> Result<(EquivalenceVerdict, Option<String>)> {
    check_same_interface(a1, a2)?;
    if a1.outcomes() != a2.outcomes() {
        return Err(Error::AlphabetMismatch(format!(
            "outcome labels {:?} vs {:?}",
            a1.outcomes(),
            a2.outcomes()
        )));
    }
    let mut combined: Option<EquivalenceVerdict> = None;
    for outcome in a1.outcomes().to_vec() {
        let verdict = qfac_equivalent(a1, a2, &outcome, tol)?;
        if !verdict.equivalent {
            return Ok((verdict, Some(outcome)));
        }
        combined = Some(match combined {
            None => verdict,
            Some(prev) => EquivalenceVerdict {
                basis_size: prev.basis_size.max(verdict.basis_size),
                ..verdict
            },
        });
    }
    Ok((combined.expect("at least one outcome"), None))
}

/// Exhaustive comparison: the first word of length ≤ max_len, in
/// length-then-alphabet order, whose `outcome` probabilities differ by more
/// than the tolerance. Walks the word tree incrementally, carrying each
/// machine's configuration, and stops at the first difference. Exponential
/// in max_len when the machines agree.
pub fn brute_force_k_equiv(
    a1: &Qfac,
    a2: &Qfac,
    outcome: &str,
    max_len: usize,
    tol: f64,
) -> Result<Option<Vec<usize>>> {
    check_same_interface(a1, a2)?;
    let g1 = a1
        .outcome_index(outcome)
        .ok_or_else(|| Error::Unsupported(format!("unknown outcome `{outcome}`")))?;
    let g2 = a2
        .outcome_index(outcome)
        .ok_or_else(|| Error::Unsupported(format!("unknown outcome `{outcome}`")))?;
    struct Node {
        word: Vec<usize>,
        s1: usize,
        v1: ComplexVector,
        s2: usize,
        v2: ComplexVector,
    }
    let mut queue = VecDeque::new();
    queue.push_back(Node {
        word: Vec::new(),
        s1: a1.initial_classical(),
        v1: a1.initial_quantum().clone(),
        s2: a2.initial_classical(),
        v2: a2.initial_quantum().clone(),
    });
    while let Some(node) = queue.pop_front() {
        let p1 = a1.measurement(node.s1, g1).mat_vec(&node.v1)?.norm_sq();
        let p2 = a2.measurement(node.s2, g2).mat_vec(&node.v2)?.norm_sq();
        if (p1 - p2).abs() > tol {
            return Ok(Some(node.word));
        }
        if node.word.len() < max_len {
            for sym in 0..a1.alphabet().len() {
                let mut word = node.word.clone();
                word.push(sym);
                queue.push_back(Node {
                    word,
                    s1: a1.classical_step(node.s1, sym),
                    v1: a1.unitary(node.s1, sym).mat_vec(&node.v1)?,
                    s2: a2.classical_step(node.s2, sym),
                    v2: a2.unitary(node.s2, sym).mat_vec(&node.v2)?,
                });
            }
        }
    }
    Ok(None)
}
