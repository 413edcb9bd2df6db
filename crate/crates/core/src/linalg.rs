//! Dense complex matrices and the state types shared by the rest of the crate.
//!
//! Storage is row-major `Vec<Complex64>`. Dimensions in this crate are tiny
//! (a few hundred at most), so everything is dense and straightforward.

use std::fmt;

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub const ZERO: Complex64 = Complex64::new(0.0, 0.0);
pub const ONE: Complex64 = Complex64::new(1.0, 0.0);
pub const I: Complex64 = Complex64::new(0.0, 1.0);

/// Validation tolerances for the state types.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Tolerances {
    pub herm: f64,
    pub trace: f64,
    pub norm: f64,
    pub psd: f64,
}

impl Tolerances {
    pub const DEFAULT_VALUE: f64 = 1e-10;

    pub fn uniform(tol: f64) -> Self {
        Tolerances { herm: tol, trace: tol, norm: tol, psd: tol }
    }
}

impl Default for Tolerances {
    fn default() -> Self {
        Self::uniform(Self::DEFAULT_VALUE)
    }
}

#[derive(Clone, PartialEq)]
pub struct ComplexMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Complex64>,
}

impl fmt::Debug for ComplexMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ComplexMatrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            write!(f, "  ")?;
            for c in 0..self.cols {
                let z = self[(r, c)];
                write!(f, "{:+.6}{:+.6}i  ", z.re, z.im)?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}

impl std::ops::Index<(usize, usize)> for ComplexMatrix {
    type Output = Complex64;

    fn index(&self, (r, c): (usize, usize)) -> &Complex64 {
        &self.data[r * self.cols + c]
    }
}

impl std::ops::IndexMut<(usize, usize)> for ComplexMatrix {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut Complex64 {
        &mut self.data[r * self.cols + c]
    }
}

impl ComplexMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        ComplexMatrix { rows, cols, data: vec![ZERO; rows * cols] }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim, dim);
        for i in 0..dim {
            m[(i, i)] = ONE;
        }
        m
    }

    pub fn from_row_major(rows: usize, cols: usize, data: Vec<Complex64>) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(Error::shape("matrix dimensions must be positive"));
        }
        if data.len() != rows * cols {
            return Err(Error::shape(format!(
                "expected {} entries for a {rows}x{cols} matrix, got {}",
                rows * cols,
                data.len()
            )));
        }
        Ok(ComplexMatrix { rows, cols, data })
    }

    /// Builds a matrix from nested rows; every row must have the same length.
    pub fn from_rows(rows: &[Vec<Complex64>]) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::shape("ragged rows"));
        }
        Self::from_row_major(rows.len(), cols, rows.concat())
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Complex64) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                data.push(f(r, c));
            }
        }
        ComplexMatrix { rows, cols, data }
    }

    pub fn from_real_diagonal(diag: &[f64]) -> Self {
        let mut m = Self::zeros(diag.len(), diag.len());
        for (i, &v) in diag.iter().enumerate() {
            m[(i, i)] = Complex64::new(v, 0.0);
        }
        m
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

    pub fn as_slice(&self) -> &[Complex64] {
        &self.data
    }

    pub fn to_rows(&self) -> Vec<Vec<Complex64>> {
        self.data.chunks(self.cols).map(<[_]>::to_vec).collect()
    }

    pub fn matmul(&self, other: &ComplexMatrix) -> Result<ComplexMatrix> {
        if self.cols != other.rows {
            return Err(Error::shape(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(self.product(other))
    }

    /// Product without the shape check; callers guarantee compatible shapes.
    pub(crate) fn product(&self, other: &ComplexMatrix) -> ComplexMatrix {
        debug_assert_eq!(self.cols, other.rows);
        let mut out = Self::zeros(self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let lhs = self.data[r * self.cols + k];
                if lhs == ZERO {
                    continue;
                }
                let row = &other.data[k * other.cols..(k + 1) * other.cols];
                let dst = &mut out.data[r * other.cols..(r + 1) * other.cols];
                for (d, &b) in dst.iter_mut().zip(row) {
                    *d += lhs * b;
                }
            }
        }
        out
    }

    pub fn trace(&self) -> Result<Complex64> {
        if !self.is_square() {
            return Err(Error::shape(format!("trace of non-square {}x{} matrix", self.rows, self.cols)));
        }
        Ok((0..self.rows).map(|i| self[(i, i)]).sum())
    }

    /// Tr[AB] computed without forming the product.
    pub fn trace_of_product(&self, other: &ComplexMatrix) -> Result<Complex64> {
        if self.cols != other.rows || self.rows != other.cols {
            return Err(Error::shape("trace of product needs A: n x m and B: m x n"));
        }
        Ok(self.trace_product_unchecked(other))
    }

    pub(crate) fn trace_product_unchecked(&self, other: &ComplexMatrix) -> Complex64 {
        let mut acc = ZERO;
        for i in 0..self.rows {
            for j in 0..self.cols {
                acc += self.data[i * self.cols + j] * other.data[j * other.cols + i];
            }
        }
        acc
    }

    pub fn dagger(&self) -> ComplexMatrix {
        Self::from_fn(self.cols, self.rows, |r, c| self[(c, r)].conj())
    }

    pub fn scale(&self, s: Complex64) -> ComplexMatrix {
        ComplexMatrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|z| z * s).collect() }
    }

    pub fn scale_real(&self, s: f64) -> ComplexMatrix {
        self.scale(Complex64::new(s, 0.0))
    }

    pub fn add(&self, other: &ComplexMatrix) -> Result<ComplexMatrix> {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &ComplexMatrix) -> Result<ComplexMatrix> {
        self.zip_with(other, |a, b| a - b)
    }

    fn zip_with(&self, other: &ComplexMatrix, f: impl Fn(Complex64, Complex64) -> Complex64) -> Result<ComplexMatrix> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::shape(format!(
                "shape mismatch {}x{} vs {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let data = self.data.iter().zip(&other.data).map(|(&a, &b)| f(a, b)).collect();
        Ok(ComplexMatrix { rows: self.rows, cols: self.cols, data })
    }

    /// `self += s * other`, shapes must agree.
    pub(crate) fn add_scaled_in_place(&mut self, s: Complex64, other: &ComplexMatrix) {
        debug_assert_eq!(self.data.len(), other.data.len());
        for (d, &o) in self.data.iter_mut().zip(&other.data) {
            *d += s * o;
        }
    }

    /// Largest entrywise modulus of `self - other`; infinite on shape mismatch.
    pub fn max_abs_diff(&self, other: &ComplexMatrix) -> f64 {
        if self.rows != other.rows || self.cols != other.cols {
            return f64::INFINITY;
        }
        self.data.iter().zip(&other.data).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max)
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    pub fn hermiticity_defect(&self) -> f64 {
        if !self.is_square() {
            return f64::INFINITY;
        }
        let n = self.rows;
        let mut worst: f64 = 0.0;
        for r in 0..n {
            for c in r..n {
                worst = worst.max((self[(r, c)] - self[(c, r)].conj()).norm());
            }
        }
        worst
    }

    pub fn hermitian_part(&self) -> ComplexMatrix {
        Self::from_fn(self.rows, self.cols, |r, c| (self[(r, c)] + self[(c, r)].conj()) * 0.5)
    }

    pub fn commutator(&self, other: &ComplexMatrix) -> Result<ComplexMatrix> {
        self.matmul(other)?.sub(&other.product(self))
    }

    /// Eigen-decomposition of the Hermitian part. Eigenvalues ascend; column
    /// `k` of the returned matrix is the eigenvector for eigenvalue `k`.
    pub fn hermitian_eigen(&self, tol_herm: f64) -> Result<(Vec<f64>, ComplexMatrix)> {
        if !self.is_square() {
            return Err(Error::shape("eigen-decomposition needs a square matrix"));
        }
        let defect = self.hermiticity_defect();
        if defect > tol_herm {
            return Err(Error::validity(format!(
                "matrix is not Hermitian: max |A - A^dagger| = {defect:e} exceeds {tol_herm:e}"
            )));
        }
        let n = self.rows;
        let h = self.hermitian_part();
        let eig = DMatrix::from_row_slice(n, n, &h.data).symmetric_eigen();
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]));
        let values = order.iter().map(|&k| eig.eigenvalues[k]).collect();
        let vectors = Self::from_fn(n, n, |r, c| eig.eigenvectors[(r, order[c])]);
        Ok((values, vectors))
    }

    pub fn eigenvalues_hermitian(&self, tol_herm: f64) -> Result<Vec<f64>> {
        self.hermitian_eigen(tol_herm).map(|(v, _)| v)
    }

    /// Smallest eigenvalue of the Hermitian part, with the default Hermiticity tolerance.
    pub fn min_eigenvalue(&self) -> Result<f64> {
        self.min_eigenvalue_with(Tolerances::default().herm)
    }

    pub fn min_eigenvalue_with(&self, tol_herm: f64) -> Result<f64> {
        Ok(self.eigenvalues_hermitian(tol_herm)?[0])
    }

    /// Rank via eigenvalues of A†A, counting those above `cutoff`.
    pub fn rank(&self, cutoff: f64) -> usize {
        let gram = self.dagger().product(self);
        gram.eigenvalues_hermitian(f64::INFINITY)
            .map(|v| v.iter().filter(|&&x| x > cutoff).count())
            .unwrap_or(0)
    }

    /// `max |U†U - I|`; infinite for non-square input.
    pub fn unitarity_defect(&self) -> f64 {
        if !self.is_square() {
            return f64::INFINITY;
        }
        self.dagger().product(self).max_abs_diff(&Self::identity(self.rows))
    }

    pub fn column(&self, c: usize) -> Vec<Complex64> {
        (0..self.rows).map(|r| self[(r, c)]).collect()
    }
}

/// Trace distance ½‖A − B‖₁ between two Hermitian matrices.
pub fn trace_distance(a: &ComplexMatrix, b: &ComplexMatrix) -> Result<f64> {
    let diff = a.sub(b)?;
    let eig = diff.eigenvalues_hermitian(f64::INFINITY)?;
    Ok(0.5 * eig.iter().map(|x| x.abs()).sum::<f64>())
}

pub fn pauli_x() -> ComplexMatrix {
    ComplexMatrix { rows: 2, cols: 2, data: vec![ZERO, ONE, ONE, ZERO] }
}

pub fn pauli_y() -> ComplexMatrix {
    ComplexMatrix { rows: 2, cols: 2, data: vec![ZERO, -I, I, ZERO] }
}

pub fn pauli_z() -> ComplexMatrix {
    ComplexMatrix { rows: 2, cols: 2, data: vec![ONE, ZERO, ZERO, -ONE] }
}

pub fn inner(u: &[Complex64], v: &[Complex64]) -> Complex64 {
    u.iter().zip(v).map(|(a, b)| a.conj() * b).sum()
}

/// |v⟩⟨v| for an arbitrary amplitude slice.
pub(crate) fn outer_raw(v: &[Complex64]) -> ComplexMatrix {
    let n = v.len();
    ComplexMatrix::from_fn(n, n, |r, c| v[r] * v[c].conj())
}

/// A normalized state vector.
#[derive(Debug, Clone, PartialEq)]
pub struct UnitVector {
    amplitudes: Vec<Complex64>,
}

impl UnitVector {
    pub fn new(amplitudes: Vec<Complex64>, tol_norm: f64) -> Result<Self> {
        if amplitudes.is_empty() {
            return Err(Error::shape("vector must have positive dimension"));
        }
        let norm_sq: f64 = amplitudes.iter().map(Complex64::norm_sqr).sum();
        if (norm_sq - 1.0).abs() > tol_norm {
            return Err(Error::validity(format!("vector norm squared {norm_sq} differs from 1")));
        }
        Ok(UnitVector { amplitudes })
    }

    /// Scales an arbitrary nonzero vector to unit norm.
    pub fn normalized(amplitudes: Vec<Complex64>) -> Result<Self> {
        let norm: f64 = amplitudes.iter().map(Complex64::norm_sqr).sum::<f64>().sqrt();
        if amplitudes.is_empty() || norm == 0.0 || !norm.is_finite() {
            return Err(Error::validity("cannot normalize a zero or non-finite vector"));
        }
        Ok(UnitVector { amplitudes: amplitudes.into_iter().map(|z| z / norm).collect() })
    }

    pub fn basis(dim: usize, k: usize) -> Result<Self> {
        if k >= dim {
            return Err(Error::shape(format!("basis index {k} out of range for dimension {dim}")));
        }
        let mut amps = vec![ZERO; dim];
        amps[k] = ONE;
        Ok(UnitVector { amplitudes: amps })
    }

    pub fn dim(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    pub fn outer(&self) -> ComplexMatrix {
        outer_raw(&self.amplitudes)
    }
}

/// A validated density operator: Hermitian, unit trace, positive semidefinite.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    matrix: ComplexMatrix,
}

impl DensityMatrix {
    pub fn new(matrix: ComplexMatrix, tol: &Tolerances) -> Result<Self> {
        if !matrix.is_square() {
            return Err(Error::shape("density matrix must be square"));
        }
        let herm = matrix.hermiticity_defect();
        if herm > tol.herm {
            return Err(Error::validity(format!("density matrix not Hermitian (defect {herm:e})")));
        }
        let tr = matrix.trace()?;
        if (tr - ONE).norm() > tol.trace {
            return Err(Error::validity(format!("density matrix trace {} + {}i is not 1", tr.re, tr.im)));
        }
        let min = matrix.min_eigenvalue_with(tol.herm)?;
        if min < -tol.psd {
            return Err(Error::validity(format!("density matrix not positive semidefinite (min eigenvalue {min:e})")));
        }
        Ok(DensityMatrix { matrix })
    }

    pub fn pure(v: &UnitVector) -> Self {
        DensityMatrix { matrix: v.outer() }
    }

    pub fn maximally_mixed(dim: usize) -> Self {
        DensityMatrix { matrix: ComplexMatrix::identity(dim).scale_real(1.0 / dim as f64) }
    }

    /// Wraps a matrix that is known to be a state by construction.
    pub(crate) fn from_trusted(matrix: ComplexMatrix) -> Self {
        DensityMatrix { matrix }
    }

    pub fn dim(&self) -> usize {
        self.matrix.rows()
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    pub fn into_matrix(self) -> ComplexMatrix {
        self.matrix
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn real(rows: &[&[f64]]) -> ComplexMatrix {
        let rows: Vec<Vec<Complex64>> = rows.iter().map(|r| r.iter().map(|&x| c(x, 0.0)).collect()).collect();
        ComplexMatrix::from_rows(&rows).unwrap()
    }

    #[test]
    fn identity_times_identity() {
        let id = ComplexMatrix::identity(2);
        assert_eq!(id.matmul(&id).unwrap(), id);
    }

    #[test]
    fn pauli_product_x_y_is_i_z() {
        let xy = pauli_x().matmul(&pauli_y()).unwrap();
        assert!(xy.max_abs_diff(&pauli_z().scale(I)) < 1e-15);
    }

    #[test]
    fn hand_multiplication() {
        let a = real(&[&[1.0, 1.0], &[0.0, 1.0]]);
        let b = real(&[&[1.0, 0.0], &[1.0, 1.0]]);
        assert_eq!(a.matmul(&b).unwrap(), real(&[&[2.0, 1.0], &[1.0, 1.0]]));
    }

    #[test]
    fn matmul_shape_error() {
        let a = ComplexMatrix::zeros(2, 3);
        assert!(matches!(a.matmul(&a), Err(Error::Shape(_))));
    }

    #[test]
    fn traces() {
        assert_eq!(ComplexMatrix::identity(5).trace().unwrap(), c(5.0, 0.0));
        assert_eq!(pauli_z().trace().unwrap(), ZERO);
        let v = UnitVector::normalized(vec![c(1.0, 2.0), c(-0.5, 0.3), c(0.0, 1.0)]).unwrap();
        assert_abs_diff_eq!(v.outer().trace().unwrap().re, 1.0, epsilon = 1e-15);
        assert!(matches!(ComplexMatrix::zeros(2, 3).trace(), Err(Error::Shape(_))));
    }

    #[test]
    fn dagger_cases() {
        let sym = real(&[&[1.0, 2.0], &[2.0, 3.0]]);
        assert_eq!(sym.dagger(), sym);
        let a = ComplexMatrix::from_rows(&[vec![ZERO, I], vec![ZERO, ZERO]]).unwrap();
        let expected = ComplexMatrix::from_rows(&[vec![ZERO, ZERO], vec![-I, ZERO]]).unwrap();
        assert_eq!(a.dagger(), expected);
        assert_eq!(a.dagger().dagger(), a);
    }

    #[test]
    fn outer_products() {
        let zero = UnitVector::basis(2, 0).unwrap();
        assert_eq!(zero.outer(), ComplexMatrix::from_real_diagonal(&[1.0, 0.0]));
        let h = 1.0 / 2f64.sqrt();
        let plus = UnitVector::new(vec![c(h, 0.0), c(h, 0.0)], 1e-12).unwrap();
        assert!(plus.outer().max_abs_diff(&real(&[&[0.5, 0.5], &[0.5, 0.5]])) < 1e-15);
        let p = plus.outer();
        assert!(p.matmul(&p).unwrap().max_abs_diff(&p) < 1e-15);
    }

    #[test]
    fn min_eigenvalues() {
        assert_abs_diff_eq!(ComplexMatrix::identity(4).min_eigenvalue().unwrap(), 1.0, epsilon = 1e-14);
        assert_abs_diff_eq!(ComplexMatrix::from_real_diagonal(&[1.0, 0.0]).min_eigenvalue().unwrap(), 0.0, epsilon = 1e-14);
        // ½I + ¾σz = diag(5/4, -1/4)
        let m = ComplexMatrix::identity(2).scale_real(0.5).add(&pauli_z().scale_real(0.75)).unwrap();
        assert_abs_diff_eq!(m.min_eigenvalue().unwrap(), -0.25, epsilon = 1e-14);
    }

    #[test]
    fn min_eigenvalue_rejects_non_hermitian() {
        let m = ComplexMatrix::from_rows(&[vec![ZERO, ONE], vec![ZERO, ZERO]]).unwrap();
        assert!(matches!(m.min_eigenvalue(), Err(Error::Validity(_))));
    }

    #[test]
    fn density_matrix_validation() {
        let tol = Tolerances::default();
        assert!(DensityMatrix::new(ComplexMatrix::from_real_diagonal(&[0.3, 0.7]), &tol).is_ok());
        assert!(DensityMatrix::new(ComplexMatrix::from_real_diagonal(&[0.3, 0.8]), &tol).is_err());
        assert!(DensityMatrix::new(ComplexMatrix::from_real_diagonal(&[1.2, -0.2]), &tol).is_err());
        let m = ComplexMatrix::from_rows(&[vec![c(0.5, 0.0), I], vec![I, c(0.5, 0.0)]]).unwrap();
        assert!(DensityMatrix::new(m, &tol).is_err());
    }

    #[test]
    fn unit_vector_validation() {
        assert!(UnitVector::new(vec![c(1.1, 0.0)], 1e-10).is_err());
        assert!(UnitVector::normalized(vec![ZERO, ZERO]).is_err());
        assert!(UnitVector::basis(2, 2).is_err());
    }

    #[test]
    fn trace_distance_of_orthogonal_pure_states() {
        let a = ComplexMatrix::from_real_diagonal(&[1.0, 0.0]);
        let b = ComplexMatrix::from_real_diagonal(&[0.0, 1.0]);
        assert_abs_diff_eq!(trace_distance(&a, &b).unwrap(), 1.0, epsilon = 1e-14);
    }
}
