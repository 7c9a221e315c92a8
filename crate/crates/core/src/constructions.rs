//! Builders for product machines and the recurring example families:
//! the "ends in 0" language, length-multiple languages, and their scattered
//! subword refinements, plus the rotation-based measure-once acceptor.

use crate::error::{Error, Result};
use crate::linalg::{rotation, Complex64, ComplexMatrix, ComplexVector};
use crate::machines::{Dfa, MoQfa, Qfac};

/// Boolean combination realized when pairing a DFA with a measure-once
/// machine. `DfaMinusQfa` keeps words the DFA accepts and the quantum part
/// rejects; `QfaMinusDfa` the reverse.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SetOp {
    Intersection,
    Union,
    DfaMinusQfa,
    QfaMinusDfa,
}

impl SetOp {
    pub const ALL: [SetOp; 4] = [
        SetOp::Intersection,
        SetOp::Union,
        SetOp::DfaMinusQfa,
        SetOp::QfaMinusDfa,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            SetOp::Intersection => "intersection",
            SetOp::Union => "union",
            SetOp::DfaMinusQfa => "diff-dfa-minus-qfa",
            SetOp::QfaMinusDfa => "diff-qfa-minus-dfa",
        }
    }

    pub fn parse(s: &str) -> Result<SetOp> {
        SetOp::ALL
            .into_iter()
            .find(|op| op.name() == s)
            .ok_or_else(|| Error::Parse(format!("unknown set operation {s:?}")))
    }
}

/// Embeds a DFA as a machine with a trivial one-dimensional quantum register:
/// outcome "a" has probability exactly 1 on accepted words and 0 otherwise.
pub fn dfa_to_qfac(d: &Dfa) -> Qfac {
    let k = d.state_count();
    let one = ComplexMatrix::identity(1);
    let zero = ComplexMatrix::zeros(1, 1);
    let delta: Vec<Vec<usize>> = d.transitions().to_vec();
    let unitaries = vec![vec![one.clone(); d.alphabet().len()]; k];
    let measurements = (0..k)
        .map(|s| {
            if d.is_accepting(s) {
                vec![one.clone(), zero.clone()]
            } else {
                vec![zero.clone(), one.clone()]
            }
        })
        .collect();
    Qfac::new(
        d.alphabet().to_vec(),
        vec!["a".into(), "r".into()],
        d.initial(),
        ComplexVector::basis_state(1, 0),
        delta,
        unitaries,
        measurements,
    )
    .expect("trivial quantum register is always valid")
}

/// Pairs a DFA with a measure-once machine over the same alphabet: the DFA
/// runs as the classical skeleton, the quantum register evolves identically
/// in every classical state, and the final measurement is chosen from the
/// DFA verdict so that outcome "a" realizes the requested combination.
pub fn combine(d: &Dfa, q: &MoQfa, op: SetOp) -> Result<Qfac> {
    if d.alphabet() != q.alphabet() {
        return Err(Error::AlphabetMismatch(format!(
            "DFA alphabet {:?} differs from quantum alphabet {:?}",
            d.alphabet(),
            q.alphabet()
        )));
    }
    let n = q.qdim();
    let identity = ComplexMatrix::identity(n);
    let zero = ComplexMatrix::zeros(n, n);
    let p_acc = q.accepting_proj().clone();
    let p_acc_complement = identity.sub(&p_acc)?;
    let k = d.state_count();
    let unitaries: Vec<Vec<ComplexMatrix>> = (0..k)
        .map(|_| (0..d.alphabet().len()).map(|sym| q.unitary(sym).clone()).collect())
        .collect();
    let measurements = (0..k)
        .map(|s| {
            let accept_part = match (op, d.is_accepting(s)) {
                (SetOp::Intersection, true) => p_acc.clone(),
                (SetOp::Intersection, false) => zero.clone(),
                (SetOp::Union, true) => identity.clone(),
                (SetOp::Union, false) => p_acc.clone(),
                (SetOp::DfaMinusQfa, true) => p_acc_complement.clone(),
                (SetOp::DfaMinusQfa, false) => zero.clone(),
                (SetOp::QfaMinusDfa, true) => zero.clone(),
                (SetOp::QfaMinusDfa, false) => p_acc.clone(),
            };
            let reject_part = identity.sub(&accept_part).expect("same shape");
            vec![accept_part, reject_part]
        })
        .collect();
    Qfac::new(
        d.alphabet().to_vec(),
        vec!["a".into(), "r".into()],
        d.initial(),
        q.initial_state().clone(),
        d.transitions().to_vec(),
        unitaries,
        measurements,
    )
}

/// Two-dimensional machine rotating by π/m on every symbol and accepting |0>:
/// acceptance probability cos²(|w|·π/m), which is 1 exactly on lengths that
/// are multiples of m (including ε).
pub fn build_rotation_mo1qfa(m: usize, alphabet: Vec<String>) -> Result<MoQfa> {
    if m < 2 {
        return Err(Error::validation("m", "rotation denominator must be at least 2"));
    }
    let u = rotation(std::f64::consts::PI / m as f64);
    let proj = ComplexMatrix::from_fn(2, 2, |i, j| {
        Complex64::new(if i == 0 && j == 0 { 1.0 } else { 0.0 }, 0.0)
    });
    let count = alphabet.len();
    MoQfa::new(
        alphabet,
        ComplexVector::basis_state(2, 0),
        vec![u; count],
        proj,
    )
}

/// Two-state DFA over {0,1} accepting the words that end in 0.
pub fn build_l0_dfa() -> Dfa {
    Dfa::new(
        vec!["0".into(), "1".into()],
        vec![vec![1, 0], vec![1, 0]],
        0,
        vec![false, true],
    )
    .expect("fixed machine is valid")
}

/// (m+1)-state DFA over {0,1} accepting words that end in 0 and whose length
/// is a positive multiple of m. A ring q0..q_{m-1} counts length mod m; the
/// extra state q_m is entered instead of q0 when the closing symbol is 0.
pub fn build_l0m_dfa(m: usize) -> Result<Dfa> {
    if m < 2 {
        return Err(Error::validation("m", "length modulus must be at least 2"));
    }
    let states = m + 1;
    let mut transitions = vec![vec![0usize; 2]; states];
    for i in 0..m - 1 {
        transitions[i] = vec![i + 1, i + 1];
    }
    transitions[m - 1] = vec![m, 0]; // closing 0 accepts, closing 1 wraps to q0
    transitions[m] = vec![1, 1];
    let mut accepting = vec![false; states];
    accepting[m] = true;
    Dfa::new(vec!["0".into(), "1".into()], transitions, 0, accepting)
}

/// DFA for "contains z as a scattered subword and has length a positive
/// multiple of m". States are (progress through z, length mod m) pairs laid
/// out row-major; progress advances only on the next missing letter of z.
/// `z` is given as symbol indices into `alphabet`, which may contain extra
/// symbols beyond those used by z.
pub fn build_lzm_dfa(z: &[usize], m: usize, alphabet: Vec<String>) -> Result<Dfa> {
    if z.is_empty() {
        return Err(Error::validation("z", "the scattered subword must be non-empty"));
    }
    if m < 1 {
        return Err(Error::validation("m", "length modulus must be at least 1"));
    }
    for (i, &s) in z.iter().enumerate() {
        if s >= alphabet.len() {
            return Err(Error::validation(
                format!("z.{i}"),
                format!("symbol index {s} outside alphabet of size {}", alphabet.len()),
            ));
        }
    }
    let n = z.len();
    // State (i, j): i in 0..=n letters of z matched, j in 0..m current length mod m.
    let id = |i: usize, j: usize| i * m + j;
    let states = (n + 1) * m;
    let mut transitions = vec![vec![0usize; alphabet.len()]; states];
    for i in 0..=n {
        for j in 0..m {
            for sym in 0..alphabet.len() {
                let ni = if i < n && z[i] == sym { i + 1 } else { i };
                transitions[id(i, j)][sym] = id(ni, (j + 1) % m);
            }
        }
    }
    let mut accepting = vec![false; states];
    accepting[id(n, 0)] = true;
    let initial = id(0, 0);
    Dfa::new(alphabet, transitions, initial, accepting)
}

/// Product of the "ends in 0" DFA and the π/m rotation machine under
/// intersection: accepts w0 with |w0| a positive multiple of m.
pub fn build_l0m_qfac(m: usize) -> Result<Qfac> {
    let d = build_l0_dfa();
    let q = build_rotation_mo1qfa(m, vec!["0".into(), "1".into()])?;
    combine(&d, &q, SetOp::Intersection)
}

/// Copy of `a` with the initial quantum state multiplied by a global phase.
/// Outcome probabilities are unchanged for every word.
pub fn phase_qfac(a: &Qfac, angle: f64) -> Result<Qfac> {
    let phase = Complex64::new(0.0, angle).exp();
    Qfac::new(
        a.alphabet().to_vec(),
        a.outcomes().to_vec(),
        a.initial_classical(),
        a.initial_quantum().scale(phase),
        a.delta().to_vec(),
        (0..a.classical_count())
            .map(|s| (0..a.alphabet().len()).map(|sym| a.unitary(s, sym).clone()).collect())
            .collect(),
        (0..a.classical_count())
            .map(|s| (0..a.outcomes().len()).map(|g| a.measurement(s, g).clone()).collect())
            .collect(),
    )
}

/// Copy of `a` rewritten in the basis given by the unitary `w`: the initial
/// state becomes w|ψ₀⟩ and every unitary and projector is conjugated by w.
/// Outcome probabilities are unchanged for every word.
pub fn conjugate_qfac(a: &Qfac, w: &ComplexMatrix) -> Result<Qfac> {
    if w.rows() != a.qdim() || w.cols() != a.qdim() {
        return Err(Error::DimensionMismatch(format!(
            "basis change is {}x{} but the quantum dimension is {}",
            w.rows(),
            w.cols(),
            a.qdim()
        )));
    }
    let wd = w.dagger();
    let conj = |m: &ComplexMatrix| w.mat_mul(m).unwrap().mat_mul(&wd).unwrap();
    Qfac::new(
        a.alphabet().to_vec(),
        a.outcomes().to_vec(),
        a.initial_classical(),
        w.mat_vec(a.initial_quantum())?,
        a.delta().to_vec(),
        (0..a.classical_count())
            .map(|s| (0..a.alphabet().len()).map(|sym| conj(a.unitary(s, sym))).collect())
            .collect(),
        (0..a.classical_count())
            .map(|s| (0..a.outcomes().len()).map(|g| conj(a.measurement(s, g))).collect())
            .collect(),
    )
}
