//! Dense complex linear algebra for bipartite `D ⊗ D` systems.
//!
//! Basis convention throughout: `|ij⟩ = e_i ⊗ e_j` with the first particle as the major
//! index, so `|ij⟩` sits at flat position `i·D + j`.

mod eig;
mod matrix;
mod projectors;
mod random;

pub use eig::{eigenvalues, hermitian_eig, min_eigenvalue, HermitianSpectrum};
pub use matrix::{pauli, ComplexMatrix, Subsystem};
pub use projectors::{antisym_projector, basis, basis2, kron_vec, swap, sym_projector};
pub use random::{haar_unitary, RngState};

use num_complex::Complex64 as C64;

/// Von Neumann entropy `-Σ λ ln λ` in nats, with `0 ln 0 = 0`.
pub fn entropy_of_spectrum(eigenvalues: &[f64]) -> f64 {
    eigenvalues.iter().filter(|&&l| l > 0.0).map(|&l| -l * l.ln()).sum()
}

/// `Tr ρ²`, real part.
pub fn purity(rho: &ComplexMatrix) -> f64 {
    rho.trace_product(rho).map(|z| z.re).unwrap_or(f64::NAN)
}

pub(crate) fn c64(re: f64) -> C64 {
    C64::new(re, 0.0)
}
