use nalgebra::DMatrix;
use num_complex::Complex64 as C64;

use super::ComplexMatrix;
use crate::error::{Error, Result};
use crate::tol;

/// Eigendecomposition of a Hermitian matrix.
#[derive(Debug, Clone)]
pub struct HermitianSpectrum {
    /// Sorted descending.
    pub eigenvalues: Vec<f64>,
    /// Orthonormal eigenvectors as columns, in the same order as `eigenvalues`.
    pub eigenvectors: ComplexMatrix,
    /// `max |m - m†|` of the input before symmetrization.
    pub asymmetry: f64,
}

impl HermitianSpectrum {
    pub fn min(&self) -> f64 {
        *self.eigenvalues.last().expect("empty spectrum")
    }

    pub fn max(&self) -> f64 {
        self.eigenvalues[0]
    }

    /// `V · diag(λ) · V†`
    pub fn reconstruct(&self) -> ComplexMatrix {
        let v = &self.eigenvectors;
        let n = v.rows();
        ComplexMatrix::from_fn(n, n, |r, c| {
            self.eigenvalues.iter().enumerate().map(|(k, &l)| v[(r, k)] * v[(c, k)].conj() * l).sum()
        })
    }

    /// `max |V†V - I|`
    pub fn orthonormality_residual(&self) -> f64 {
        let v = &self.eigenvectors;
        (&v.adjoint() * v).max_abs_diff(&ComplexMatrix::identity(v.cols()))
    }

    /// Moore–Penrose pseudo-inverse restricted to eigenvalues above `cutoff`.
    pub fn pseudo_inverse(&self, cutoff: f64) -> ComplexMatrix {
        let v = &self.eigenvectors;
        let n = v.rows();
        ComplexMatrix::from_fn(n, n, |r, c| {
            self.eigenvalues
                .iter()
                .enumerate()
                .filter(|(_, &l)| l > cutoff)
                .map(|(k, &l)| v[(r, k)] * v[(c, k)].conj() / l)
                .sum()
        })
    }

    /// Orthogonal projector onto the span of eigenvectors whose eigenvalue exceeds `cutoff`.
    pub fn support_projector(&self, cutoff: f64) -> ComplexMatrix {
        let v = &self.eigenvectors;
        let n = v.rows();
        ComplexMatrix::from_fn(n, n, |r, c| {
            self.eigenvalues
                .iter()
                .enumerate()
                .filter(|(_, &l)| l > cutoff)
                .map(|(k, _)| v[(r, k)] * v[(c, k)].conj())
                .sum()
        })
    }

    pub fn is_non_negative(&self) -> bool {
        self.min() >= -tol::POSITIVITY
    }
}

/// Diagonalize a Hermitian matrix. The input is symmetrized as `(m + m†)/2` first.
pub fn hermitian_eig(m: &ComplexMatrix) -> Result<HermitianSpectrum> {
    if !m.is_square() {
        return Err(Error::dims(format!("{0}x{0}", m.rows()), format!("{}x{}", m.rows(), m.cols())));
    }
    let asymmetry = m.hermiticity_residual();
    if asymmetry > tol::HERMITICITY {
        return Err(Error::NotHermitian { residual: asymmetry });
    }
    let n = m.rows();
    let h = m.hermitian_part();
    let dm = DMatrix::<C64>::from_row_slice(n, n, h.as_slice());
    let eig = dm.symmetric_eigen();

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[b].total_cmp(&eig.eigenvalues[a]));
    let eigenvalues = order.iter().map(|&k| eig.eigenvalues[k]).collect();
    let eigenvectors = ComplexMatrix::from_fn(n, n, |r, c| eig.eigenvectors[(r, order[c])]);
    Ok(HermitianSpectrum { eigenvalues, eigenvectors, asymmetry })
}

/// Eigenvalues only, sorted descending.
pub fn eigenvalues(m: &ComplexMatrix) -> Result<Vec<f64>> {
    Ok(hermitian_eig(m)?.eigenvalues)
}

pub fn min_eigenvalue(m: &ComplexMatrix) -> Result<f64> {
    Ok(hermitian_eig(m)?.min())
}
