//! Machine models: classical DFAs and the quantum automaton variants built
//! on them. Every constructor validates its structural invariants eagerly,
//! so a value that exists is safe to run.

mod dfa;
mod kletter;
mod mm;
mod mo;
mod qfac;
mod qfacl;

pub use dfa::Dfa;
pub use kletter::{reachable_windows, KLetterQfa, Window};
pub use mm::MmQfa;
pub use mo::MoQfa;
pub use qfac::{Qfac, RunTrace};
pub use qfacl::QfaCl;

use crate::error::{Error, Result};
use crate::linalg::{ComplexMatrix, ComplexVector};

pub(crate) fn check_alphabet(alphabet: &[String], path: &str) -> Result<()> {
    if alphabet.is_empty() {
        return Err(Error::validation(path, "alphabet must be non-empty"));
    }
    for (i, a) in alphabet.iter().enumerate() {
        if a.is_empty() {
            return Err(Error::validation(
                format!("{path}.{i}"),
                "symbols must be non-empty strings",
            ));
        }
        if alphabet[..i].contains(a) {
            return Err(Error::validation(
                format!("{path}.{i}"),
                format!("duplicate symbol {a:?}"),
            ));
        }
    }
    Ok(())
}

pub(crate) fn check_unit_vector(v: &ComplexVector, dim: usize, path: &str, tol: f64) -> Result<()> {
    if v.dim() != dim {
        return Err(Error::validation(
            path,
            format!("expected dimension {dim}, found {}", v.dim()),
        ));
    }
    if !v.is_finite() {
        return Err(Error::validation(path, "entries must be finite"));
    }
    if (v.norm_sq() - 1.0).abs() > tol {
        return Err(Error::validation(
            path,
            format!("not a unit vector: squared norm is {}", v.norm_sq()),
        ));
    }
    Ok(())
}

pub(crate) fn check_unitary(m: &ComplexMatrix, dim: usize, path: &str, tol: f64) -> Result<()> {
    if m.rows() != dim || m.cols() != dim {
        return Err(Error::validation(
            path,
            format!("expected a {dim}x{dim} matrix, found {}x{}", m.rows(), m.cols()),
        ));
    }
    if !m.is_finite() {
        return Err(Error::validation(path, "entries must be finite"));
    }
    if !m.is_unitary(tol) {
        return Err(Error::validation(path, "matrix is not unitary"));
    }
    Ok(())
}

pub(crate) fn check_projector(m: &ComplexMatrix, dim: usize, path: &str, tol: f64) -> Result<()> {
    if m.rows() != dim || m.cols() != dim {
        return Err(Error::validation(
            path,
            format!("expected a {dim}x{dim} matrix, found {}x{}", m.rows(), m.cols()),
        ));
    }
    if !m.is_finite() {
        return Err(Error::validation(path, "entries must be finite"));
    }
    if !m.is_projector(tol) {
        return Err(Error::validation(path, "matrix is not an orthogonal projector"));
    }
    Ok(())
}

/// Checks that the projectors are pairwise orthogonal and sum to the identity.
pub(crate) fn check_complete_measurement(
    projectors: &[&ComplexMatrix],
    dim: usize,
    path: &str,
    tol: f64,
) -> Result<()> {
    let mut sum = ComplexMatrix::zeros(dim, dim);
    for p in projectors {
        sum = sum.add(p)?;
    }
    if sum.max_diff(&ComplexMatrix::identity(dim)) > tol {
        return Err(Error::validation(path, "projectors do not sum to the identity"));
    }
    for (i, a) in projectors.iter().enumerate() {
        for b in projectors.iter().skip(i + 1) {
            if a.mat_mul(b)?.max_norm() > tol {
                return Err(Error::validation(path, "projectors are not pairwise orthogonal"));
            }
        }
    }
    Ok(())
}

pub(crate) fn check_outcome_labels(labels: &[String], path: &str) -> Result<()> {
    if labels.is_empty() {
        return Err(Error::validation(path, "at least one outcome is required"));
    }
    for (i, l) in labels.iter().enumerate() {
        if l.is_empty() {
            return Err(Error::validation(
                format!("{path}.{i}"),
                "outcome labels must be non-empty",
            ));
        }
        if labels[..i].contains(l) {
            return Err(Error::validation(
                format!("{path}.{i}"),
                format!("duplicate outcome label {l:?}"),
            ));
        }
    }
    Ok(())
}
