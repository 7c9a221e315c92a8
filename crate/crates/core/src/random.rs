//! Seedable random generators for matrices and machines, used by tests and
//! benchmarks. Callers pass their own RNG, so everything here is reproducible.

use crate::linalg::{Complex64, ComplexMatrix, ComplexVector};
use crate::machines::{Dfa, Qfac};
use rand::Rng;

fn standard_normal(rng: &mut impl Rng) -> f64 {
    // Box-Muller transform.
    let u1: f64 = rng.gen_range(f64::MIN_POSITIVE..1.0);
    let u2: f64 = rng.gen_range(0.0..1.0);
    (-2.0 * u1.ln()).sqrt() * (2.0 * std::f64::consts::PI * u2).cos()
}

fn random_complex(rng: &mut impl Rng) -> Complex64 {
    Complex64::new(standard_normal(rng), standard_normal(rng))
}

/// Random n×n unitary: Gram–Schmidt orthonormalization of a complex Gaussian
/// matrix (columns redrawn in the degenerate case of a near-zero residual).
pub fn random_unitary(rng: &mut impl Rng, n: usize) -> ComplexMatrix {
    let mut cols: Vec<ComplexVector> = Vec::with_capacity(n);
    while cols.len() < n {
        let mut v = ComplexVector::new((0..n).map(|_| random_complex(rng)).collect());
        for b in &cols {
            let c = b.inner(&v);
            v = v.sub(&b.scale(c));
        }
        let norm = v.norm();
        if norm < 1e-8 {
            continue;
        }
        cols.push(v.scale(Complex64::new(1.0 / norm, 0.0)));
    }
    ComplexMatrix::from_fn(n, n, |i, j| cols[j][i])
}

/// Random unit vector in dimension n.
pub fn random_state(rng: &mut impl Rng, n: usize) -> ComplexVector {
    random_unitary(rng, n).column(0)
}

/// Random rank-`rank` orthogonal projector on dimension n.
pub fn random_projector(rng: &mut impl Rng, n: usize, rank: usize) -> ComplexMatrix {
    assert!(rank <= n);
    let u = random_unitary(rng, n);
    let mut p = ComplexMatrix::zeros(n, n);
    for j in 0..rank {
        let col = u.column(j);
        p = p.add(&ComplexMatrix::outer(&col, &col)).unwrap();
    }
    p
}

/// Complete set of orthogonal projectors with the given ranks (must sum to n):
/// column groups of one random unitary, so they are pairwise orthogonal and
/// sum to the identity.
pub fn random_measurement(rng: &mut impl Rng, n: usize, ranks: &[usize]) -> Vec<ComplexMatrix> {
    assert_eq!(ranks.iter().sum::<usize>(), n);
    let u = random_unitary(rng, n);
    let mut out = Vec::with_capacity(ranks.len());
    let mut next = 0;
    for &r in ranks {
        let mut p = ComplexMatrix::zeros(n, n);
        for j in next..next + r {
            let col = u.column(j);
            p = p.add(&ComplexMatrix::outer(&col, &col)).unwrap();
        }
        next += r;
        out.push(p);
    }
    out
}

/// Splits n into `parts` non-negative ranks summing to n, uniformly choosing
/// each split point.
pub fn random_ranks(rng: &mut impl Rng, n: usize, parts: usize) -> Vec<usize> {
    assert!(parts >= 1);
    let mut cuts: Vec<usize> = (0..parts - 1).map(|_| rng.gen_range(0..=n)).collect();
    cuts.sort_unstable();
    let mut ranks = Vec::with_capacity(parts);
    let mut prev = 0;
    for c in cuts {
        ranks.push(c - prev);
        prev = c;
    }
    ranks.push(n - prev);
    ranks
}

/// Random total DFA over the given alphabet with each state accepting with
/// probability 1/2.
pub fn random_dfa(rng: &mut impl Rng, states: usize, alphabet: Vec<String>) -> Dfa {
    assert!(states >= 1);
    let transitions = (0..states)
        .map(|_| (0..alphabet.len()).map(|_| rng.gen_range(0..states)).collect())
        .collect();
    let accepting = (0..states).map(|_| rng.gen_bool(0.5)).collect();
    Dfa::new(alphabet, transitions, 0, accepting).expect("generated DFA is structurally valid")
}

/// Random machine with `k` classical states and quantum dimension `n` over a
/// two-symbol alphabet {0,1}, with the given outcome labels. Measurement
/// ranks are drawn per classical state; when n ≥ outcome count, outcome 0 is
/// guaranteed a non-zero, non-full projector so that its probability is not
/// constant by construction.
pub fn random_qfac(rng: &mut impl Rng, k: usize, n: usize, outcomes: &[&str]) -> Qfac {
    let alphabet: Vec<String> = vec!["0".into(), "1".into()];
    let delta = (0..k)
        .map(|_| (0..alphabet.len()).map(|_| rng.gen_range(0..k)).collect())
        .collect();
    let unitaries = (0..k)
        .map(|_| (0..alphabet.len()).map(|_| random_unitary(rng, n)).collect())
        .collect();
    let measurements = (0..k)
        .map(|_| {
            let mut ranks = random_ranks(rng, n, outcomes.len());
            if n >= 2 && outcomes.len() >= 2 && (ranks[0] == 0 || ranks[0] == n) {
                let r = rng.gen_range(1..n);
                ranks = vec![0; outcomes.len()];
                ranks[0] = r;
                ranks[1] = n - r;
            }
            random_measurement(rng, n, &ranks)
        })
        .collect();
    Qfac::new(
        alphabet,
        outcomes.iter().map(|s| s.to_string()).collect(),
        0,
        random_state(rng, n),
        delta,
        unitaries,
        measurements,
    )
    .expect("generated machine is structurally valid")
}
