//! Dense complex vectors and matrices sized for automaton state spaces.
//!
//! Everything here is immutable: operations return fresh values. Matrices are
//! stored row-major. Dimensions stay small (products of classical-state and
//! quantum-state counts), so no sparse or blocked representations are used.

use crate::error::{Error, Result};
pub use num_complex::Complex64;

/// Default tolerance for structural predicates (unitarity, projector checks).
pub const DEFAULT_TOL: f64 = 1e-9;

#[derive(Clone, Debug, PartialEq)]
pub struct ComplexVector {
    data: Vec<Complex64>,
}

impl ComplexVector {
    pub fn new(data: Vec<Complex64>) -> Self {
        ComplexVector { data }
    }

    pub fn zeros(dim: usize) -> Self {
        ComplexVector {
            data: vec![Complex64::new(0.0, 0.0); dim],
        }
    }

    /// Standard basis vector |i> in a `dim`-dimensional space.
    pub fn basis_state(dim: usize, i: usize) -> Self {
        let mut v = Self::zeros(dim);
        v.data[i] = Complex64::new(1.0, 0.0);
        v
    }

    pub fn dim(&self) -> usize {
        self.data.len()
    }

    pub fn as_slice(&self) -> &[Complex64] {
        &self.data
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Complex64> {
        self.data.iter()
    }

    pub fn set(&mut self, i: usize, v: Complex64) {
        self.data[i] = v;
    }

    pub fn is_finite(&self) -> bool {
        self.data.iter().all(|c| c.re.is_finite() && c.im.is_finite())
    }

    pub fn norm_sq(&self) -> f64 {
        self.data.iter().map(|c| c.norm_sqr()).sum()
    }

    pub fn norm(&self) -> f64 {
        self.norm_sq().sqrt()
    }

    /// Hermitian inner product <self|other>, conjugate-linear in `self`.
    pub fn inner(&self, other: &ComplexVector) -> Complex64 {
        debug_assert_eq!(self.dim(), other.dim());
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| a.conj() * b)
            .sum()
    }

    /// Plain bilinear dot product (no conjugation).
    pub fn dot(&self, other: &ComplexVector) -> Complex64 {
        debug_assert_eq!(self.dim(), other.dim());
        self.data.iter().zip(&other.data).map(|(a, b)| a * b).sum()
    }

    pub fn scale(&self, s: Complex64) -> ComplexVector {
        ComplexVector {
            data: self.data.iter().map(|c| c * s).collect(),
        }
    }

    pub fn add(&self, other: &ComplexVector) -> ComplexVector {
        debug_assert_eq!(self.dim(), other.dim());
        ComplexVector {
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn sub(&self, other: &ComplexVector) -> ComplexVector {
        debug_assert_eq!(self.dim(), other.dim());
        ComplexVector {
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }

    pub fn conj(&self) -> ComplexVector {
        ComplexVector {
            data: self.data.iter().map(|c| c.conj()).collect(),
        }
    }

    /// Kronecker product: (u ⊗ v)[i*dim(v)+j] = u[i] * v[j].
    pub fn kron(&self, other: &ComplexVector) -> ComplexVector {
        let mut data = Vec::with_capacity(self.dim() * other.dim());
        for a in &self.data {
            for b in &other.data {
                data.push(a * b);
            }
        }
        ComplexVector { data }
    }

    /// Largest entry modulus of the difference.
    pub fn max_diff(&self, other: &ComplexVector) -> f64 {
        debug_assert_eq!(self.dim(), other.dim());
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }
}

impl std::ops::Index<usize> for ComplexVector {
    type Output = Complex64;
    fn index(&self, i: usize) -> &Complex64 {
        &self.data[i]
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ComplexMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Complex64>, // row-major
}

impl ComplexMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        ComplexMatrix {
            rows,
            cols,
            data: vec![Complex64::new(0.0, 0.0); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = Complex64::new(1.0, 0.0);
        }
        m
    }

    /// Builds from nested rows; rejects ragged shapes and non-finite entries.
    pub fn from_rows(rows: Vec<Vec<Complex64>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        let mut data = Vec::with_capacity(r * c);
        for row in &rows {
            if row.len() != c {
                return Err(Error::DimensionMismatch(format!(
                    "ragged matrix rows: expected {} columns, found {}",
                    c,
                    row.len()
                )));
            }
            for e in row {
                if !e.re.is_finite() || !e.im.is_finite() {
                    return Err(Error::DimensionMismatch(
                        "matrix entry is not finite".into(),
                    ));
                }
                data.push(*e);
            }
        }
        Ok(ComplexMatrix { rows: r, cols: c, data })
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Complex64) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        ComplexMatrix { rows, cols, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn is_finite(&self) -> bool {
        self.data.iter().all(|c| c.re.is_finite() && c.im.is_finite())
    }

    pub fn column(&self, j: usize) -> ComplexVector {
        ComplexVector::new((0..self.rows).map(|i| self[(i, j)]).collect())
    }

    pub fn set(&mut self, i: usize, j: usize, v: Complex64) {
        self.data[i * self.cols + j] = v;
    }

    /// Copies `block` into self with top-left corner at (row, col).
    pub fn set_block(&mut self, row: usize, col: usize, block: &ComplexMatrix) {
        debug_assert!(row + block.rows <= self.rows && col + block.cols <= self.cols);
        for i in 0..block.rows {
            for j in 0..block.cols {
                self.set(row + i, col + j, block[(i, j)]);
            }
        }
    }

    pub fn mat_mul(&self, rhs: &ComplexMatrix) -> Result<ComplexMatrix> {
        if self.cols != rhs.rows {
            return Err(Error::DimensionMismatch(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let mut out = ComplexMatrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.data[i * self.cols + k];
                if a == Complex64::new(0.0, 0.0) {
                    continue;
                }
                for j in 0..rhs.cols {
                    out.data[i * rhs.cols + j] += a * rhs.data[k * rhs.cols + j];
                }
            }
        }
        Ok(out)
    }

    pub fn mat_vec(&self, v: &ComplexVector) -> Result<ComplexVector> {
        if self.cols != v.dim() {
            return Err(Error::DimensionMismatch(format!(
                "cannot apply {}x{} matrix to vector of dim {}",
                self.rows,
                self.cols,
                v.dim()
            )));
        }
        let mut out = ComplexVector::zeros(self.rows);
        for i in 0..self.rows {
            let mut acc = Complex64::new(0.0, 0.0);
            for j in 0..self.cols {
                acc += self.data[i * self.cols + j] * v[j];
            }
            out.data[i] = acc;
        }
        Ok(out)
    }

    /// Row-vector application: returns v^T · self.
    pub fn row_mul(&self, v: &ComplexVector) -> Result<ComplexVector> {
        if self.rows != v.dim() {
            return Err(Error::DimensionMismatch(format!(
                "cannot apply vector of dim {} to {}x{} matrix on the left",
                v.dim(),
                self.rows,
                self.cols
            )));
        }
        let mut out = ComplexVector::zeros(self.cols);
        for i in 0..self.rows {
            let a = v[i];
            if a == Complex64::new(0.0, 0.0) {
                continue;
            }
            for j in 0..self.cols {
                out.data[j] += a * self.data[i * self.cols + j];
            }
        }
        Ok(out)
    }

    /// Kronecker product with block layout
    /// (A ⊗ B)[(ia*rB+ib, ja*cB+jb)] = A[ia,ja] * B[ib,jb].
    pub fn kron(&self, rhs: &ComplexMatrix) -> ComplexMatrix {
        let mut out = ComplexMatrix::zeros(self.rows * rhs.rows, self.cols * rhs.cols);
        for ia in 0..self.rows {
            for ja in 0..self.cols {
                let a = self[(ia, ja)];
                if a == Complex64::new(0.0, 0.0) {
                    continue;
                }
                for ib in 0..rhs.rows {
                    for jb in 0..rhs.cols {
                        out.set(ia * rhs.rows + ib, ja * rhs.cols + jb, a * rhs[(ib, jb)]);
                    }
                }
            }
        }
        out
    }

    pub fn transpose(&self) -> ComplexMatrix {
        ComplexMatrix::from_fn(self.cols, self.rows, |i, j| self[(j, i)])
    }

    pub fn conj(&self) -> ComplexMatrix {
        ComplexMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|c| c.conj()).collect(),
        }
    }

    /// Conjugate transpose.
    pub fn dagger(&self) -> ComplexMatrix {
        ComplexMatrix::from_fn(self.cols, self.rows, |i, j| self[(j, i)].conj())
    }

    pub fn add(&self, rhs: &ComplexMatrix) -> Result<ComplexMatrix> {
        if self.rows != rhs.rows || self.cols != rhs.cols {
            return Err(Error::DimensionMismatch(format!(
                "cannot add {}x{} and {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        Ok(ComplexMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(a, b)| a + b)
                .collect(),
        })
    }

    pub fn sub(&self, rhs: &ComplexMatrix) -> Result<ComplexMatrix> {
        if self.rows != rhs.rows || self.cols != rhs.cols {
            return Err(Error::DimensionMismatch(format!(
                "cannot subtract {}x{} and {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        Ok(ComplexMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(a, b)| a - b)
                .collect(),
        })
    }

    pub fn scale(&self, s: Complex64) -> ComplexMatrix {
        ComplexMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|c| c * s).collect(),
        }
    }

    pub fn trace(&self) -> Complex64 {
        debug_assert!(self.is_square());
        (0..self.rows).map(|i| self[(i, i)]).sum()
    }

    /// Largest entry modulus.
    pub fn max_norm(&self) -> f64 {
        self.data.iter().map(|c| c.norm()).fold(0.0, f64::max)
    }

    /// Largest entry modulus of the difference.
    pub fn max_diff(&self, other: &ComplexMatrix) -> f64 {
        debug_assert!(self.rows == other.rows && self.cols == other.cols);
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    /// True iff the matrix is square and ‖a†a − I‖_max ≤ tol.
    pub fn is_unitary(&self, tol: f64) -> bool {
        if !self.is_square() {
            return false;
        }
        let gram = self.dagger().mat_mul(self).unwrap();
        gram.max_diff(&ComplexMatrix::identity(self.rows)) <= tol
    }

    /// True iff the matrix is square, Hermitian (‖a† − a‖_max ≤ tol), and
    /// idempotent (‖a² − a‖_max ≤ tol).
    pub fn is_projector(&self, tol: f64) -> bool {
        if !self.is_square() {
            return false;
        }
        if self.dagger().max_diff(self) > tol {
            return false;
        }
        let sq = self.mat_mul(self).unwrap();
        sq.max_diff(self) <= tol
    }

    /// Outer product |u><v| (conjugating v).
    pub fn outer(u: &ComplexVector, v: &ComplexVector) -> ComplexMatrix {
        ComplexMatrix::from_fn(u.dim(), v.dim(), |i, j| u[i] * v[j].conj())
    }

    /// Flattens row-major into a vector of length rows*cols.
    pub fn flatten(&self) -> ComplexVector {
        ComplexVector::new(self.data.clone())
    }
}

impl std::ops::Index<(usize, usize)> for ComplexMatrix {
    type Output = Complex64;
    fn index(&self, (i, j): (usize, usize)) -> &Complex64 {
        &self.data[i * self.cols + j]
    }
}

/// 2x2 real rotation by `theta`: [[cos, -sin], [sin, cos]].
pub fn rotation(theta: f64) -> ComplexMatrix {
    let (s, c) = theta.sin_cos();
    ComplexMatrix::from_fn(2, 2, |i, j| {
        let v = match (i, j) {
            (0, 0) => c,
            (0, 1) => -s,
            (1, 0) => s,
            (1, 1) => c,
            _ => unreachable!(),
        };
        Complex64::new(v, 0.0)
    })
}

/// Orthonormal basis of the range of projector `p`.
///
/// Column-pivoted modified Gram–Schmidt over the columns of `p`: each round
/// picks the remaining column with the largest residual norm; columns whose
/// residual drops to `tol` or below are discarded. For a rank-r projector this
/// yields exactly r = round(trace(p)) vectors.
pub fn range_basis(p: &ComplexMatrix, tol: f64) -> Result<Vec<ComplexVector>> {
    if !p.is_square() {
        return Err(Error::DimensionMismatch(format!(
            "range_basis requires a square matrix, got {}x{}",
            p.rows(),
            p.cols()
        )));
    }
    if !p.is_projector(tol) {
        return Err(Error::Validation {
            path: "range_basis".into(),
            reason: "input is not a projector at the given tolerance".into(),
        });
    }
    let n = p.rows();
    let mut residuals: Vec<ComplexVector> = (0..n).map(|j| p.column(j)).collect();
    let mut basis: Vec<ComplexVector> = Vec::new();
    loop {
        let (best, best_norm) = residuals
            .iter()
            .enumerate()
            .map(|(j, v)| (j, v.norm()))
            .fold((0, -1.0), |acc, cur| if cur.1 > acc.1 { cur } else { acc });
        if best_norm <= tol {
            break;
        }
        let mut b = residuals[best].scale(Complex64::new(1.0 / best_norm, 0.0));
        // Second orthogonalization pass keeps the basis orthonormal to ~1e-15.
        for prev in &basis {
            let c = prev.inner(&b);
            b = b.sub(&prev.scale(c));
        }
        let norm = b.norm();
        b = b.scale(Complex64::new(1.0 / norm, 0.0));
        for v in residuals.iter_mut() {
            let c = b.inner(v);
            *v = v.sub(&b.scale(c));
        }
        basis.push(b);
    }
    Ok(basis)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::random::{random_projector, random_unitary};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;
    use std::f64::consts::PI;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn rotation_composition_matches_angle_sum() {
        let r = rotation(PI / 3.0);
        let rr = r.mat_mul(&r).unwrap();
        // cos(2π/3) = -1/2
        assert!((rr[(0, 0)].re - (-0.5)).abs() < 1e-12);
        assert!(rr.max_diff(&rotation(2.0 * PI / 3.0)) < 1e-12);
    }

    #[test]
    fn dagger_of_rotation_is_inverse_rotation() {
        for &theta in &[0.0, 0.3, PI / 7.0, 2.1, -0.9] {
            assert!(rotation(theta).dagger().max_diff(&rotation(-theta)) < 1e-12);
        }
    }

    #[test]
    fn norm_sq_of_superposition_is_one() {
        let v = ComplexVector::new(vec![
            c(1.0 / 2f64.sqrt(), 0.0),
            c(0.0, 1.0 / 2f64.sqrt()),
        ]);
        assert!((v.norm_sq() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn kron_places_scaled_blocks() {
        let a = ComplexMatrix::from_rows(vec![
            vec![c(1.0, 0.0), c(2.0, 0.0)],
            vec![c(3.0, 0.0), c(4.0, 0.0)],
        ])
        .unwrap();
        let b = ComplexMatrix::from_rows(vec![
            vec![c(0.0, 0.0), c(5.0, 0.0)],
            vec![c(6.0, 0.0), c(7.0, 0.0)],
        ])
        .unwrap();
        let k = a.kron(&b);
        assert_eq!(k.rows(), 4);
        assert_eq!(k[(0, 1)], c(5.0, 0.0)); // a00*b01
        assert_eq!(k[(2, 1)], c(15.0, 0.0)); // a10*b01
        assert_eq!(k[(3, 3)], c(28.0, 0.0)); // a11*b11
    }

    #[test]
    fn kron_mixed_product_law() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..20 {
            let a = random_unitary(&mut rng, 2);
            let b = random_unitary(&mut rng, 2);
            let lhs = a.kron(&a.conj()).mat_mul(&b.kron(&b.conj())).unwrap();
            let ab = a.mat_mul(&b).unwrap();
            let rhs = ab.kron(&ab.conj());
            assert!(lhs.max_diff(&rhs) < 1e-10);
        }
    }

    #[test]
    fn mat_mul_is_associative() {
        let mut rng = ChaCha8Rng::seed_from_u64(12);
        for &n in &[2usize, 3, 5, 8] {
            let a = random_unitary(&mut rng, n);
            let b = random_unitary(&mut rng, n);
            let d = random_unitary(&mut rng, n);
            let lhs = a.mat_mul(&b).unwrap().mat_mul(&d).unwrap();
            let rhs = a.mat_mul(&b.mat_mul(&d).unwrap()).unwrap();
            assert!(lhs.max_diff(&rhs) < 1e-10);
        }
    }

    #[test]
    fn products_of_unitaries_stay_unitary() {
        let mut rng = ChaCha8Rng::seed_from_u64(13);
        for &n in &[2usize, 3, 4] {
            let mut acc = ComplexMatrix::identity(n);
            for _ in 0..20 {
                acc = acc.mat_mul(&random_unitary(&mut rng, n)).unwrap();
            }
            assert!(acc.is_unitary(DEFAULT_TOL));
        }
    }

    #[test]
    fn unitary_and_projector_predicates() {
        assert!(ComplexMatrix::identity(3).is_unitary(DEFAULT_TOL));
        assert!(ComplexMatrix::identity(3).is_projector(DEFAULT_TOL));
        assert!(rotation(0.7).is_unitary(DEFAULT_TOL));
        assert!(!rotation(0.7).is_projector(DEFAULT_TOL));
        let p = ComplexMatrix::from_rows(vec![
            vec![c(1.0, 0.0), c(0.0, 0.0)],
            vec![c(0.0, 0.0), c(0.0, 0.0)],
        ])
        .unwrap();
        assert!(p.is_projector(DEFAULT_TOL));
        assert!(!p.is_unitary(DEFAULT_TOL));
        // Idempotent but not Hermitian.
        let skew = ComplexMatrix::from_rows(vec![
            vec![c(1.0, 0.0), c(1.0, 0.0)],
            vec![c(0.0, 0.0), c(0.0, 0.0)],
        ])
        .unwrap();
        assert!(!skew.is_projector(DEFAULT_TOL));
    }

    #[test]
    fn projector_never_grows_unit_vectors() {
        let mut rng = ChaCha8Rng::seed_from_u64(14);
        for _ in 0..50 {
            let p = random_projector(&mut rng, 4, 2);
            let u = random_unitary(&mut rng, 4);
            let v = u.column(0); // unit vector
            let pv = p.mat_vec(&v).unwrap();
            let ns = pv.norm_sq();
            assert!((0.0..=1.0 + 1e-9).contains(&ns));
        }
    }

    #[test]
    fn range_basis_reconstructs_projector() {
        let mut rng = ChaCha8Rng::seed_from_u64(15);
        for &(n, rank) in &[(2usize, 1usize), (3, 2), (4, 2), (4, 4), (3, 0)] {
            let p = random_projector(&mut rng, n, rank);
            let basis = range_basis(&p, DEFAULT_TOL).unwrap();
            assert_eq!(basis.len(), rank);
            assert_eq!(basis.len(), p.trace().re.round() as usize);
            for (i, a) in basis.iter().enumerate() {
                for (j, b) in basis.iter().enumerate() {
                    let expect = if i == j { 1.0 } else { 0.0 };
                    assert!((a.inner(b).norm() - expect).abs() < 1e-12);
                }
            }
            let mut recon = ComplexMatrix::zeros(n, n);
            for b in &basis {
                recon = recon.add(&ComplexMatrix::outer(b, b)).unwrap();
            }
            assert!(recon.max_diff(&p) < 1e-9);
        }
    }

    #[test]
    fn range_basis_rejects_non_projector() {
        assert!(range_basis(&rotation(0.4), DEFAULT_TOL).is_err());
    }

    #[test]
    fn mat_mul_rejects_mismatched_dims() {
        let a = ComplexMatrix::zeros(2, 3);
        let b = ComplexMatrix::zeros(2, 3);
        assert!(matches!(a.mat_mul(&b), Err(Error::DimensionMismatch(_))));
    }

    #[test]
    fn from_rows_rejects_ragged_and_non_finite() {
        assert!(ComplexMatrix::from_rows(vec![vec![c(1.0, 0.0)], vec![]]).is_err());
        assert!(ComplexMatrix::from_rows(vec![vec![c(f64::NAN, 0.0)]]).is_err());
    }
}
