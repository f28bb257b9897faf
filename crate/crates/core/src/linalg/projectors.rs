use num_complex::Complex64 as C64;

use super::ComplexMatrix;

/// Exchange operator `S|ij⟩ = |ji⟩` on `C^D ⊗ C^D`.
pub fn swap(dim: usize) -> ComplexMatrix {
    let n = dim * dim;
    let mut s = ComplexMatrix::zeros(n, n);
    for i in 0..dim {
        for j in 0..dim {
            s[(j * dim + i, i * dim + j)] = C64::new(1.0, 0.0);
        }
    }
    s
}

/// Projector onto the symmetric subspace, `(1 + S)/2`. Rank `D(D+1)/2`.
pub fn sym_projector(dim: usize) -> ComplexMatrix {
    (&ComplexMatrix::identity(dim * dim) + &swap(dim)).scale_re(0.5)
}

/// Projector onto the antisymmetric subspace, `(1 - S)/2`. Rank `D(D-1)/2`.
pub fn antisym_projector(dim: usize) -> ComplexMatrix {
    (&ComplexMatrix::identity(dim * dim) - &swap(dim)).scale_re(0.5)
}

/// Computational basis vector `|i⟩` in `C^dim` (0-based).
pub fn basis(dim: usize, i: usize) -> Vec<C64> {
    let mut v = vec![C64::new(0.0, 0.0); dim];
    v[i] = C64::new(1.0, 0.0);
    v
}

/// `|ij⟩` in `C^D ⊗ C^D` (0-based).
pub fn basis2(dim: usize, i: usize, j: usize) -> Vec<C64> {
    basis(dim * dim, i * dim + j)
}

/// `|a⟩ ⊗ |b⟩`
pub fn kron_vec(a: &[C64], b: &[C64]) -> Vec<C64> {
    a.iter().flat_map(|&x| b.iter().map(move |&y| x * y)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::hermitian_eig;

    fn rank(p: &ComplexMatrix) -> usize {
        hermitian_eig(p).unwrap().eigenvalues.iter().filter(|&&l| l > 0.5).count()
    }

    #[test]
    fn ranks_and_completeness() {
        for d in 2..=5 {
            let ps = sym_projector(d);
            let pa = antisym_projector(d);
            assert_eq!(rank(&pa), d * (d - 1) / 2);
            assert_eq!(rank(&ps), d * (d + 1) / 2);
            assert!((&ps + &pa).max_abs_diff(&ComplexMatrix::identity(d * d)) < 1e-15);
            assert!((&ps * &ps).max_abs_diff(&ps) < 1e-12);
            assert!((&pa * &pa).max_abs_diff(&pa) < 1e-12);
            assert!((&ps * &pa).max_abs() < 1e-12);
        }
    }

    #[test]
    fn qubit_antisym_is_singlet() {
        let s = std::f64::consts::FRAC_1_SQRT_2;
        let singlet = vec![C64::new(0.0, 0.0), C64::new(s, 0.0), C64::new(-s, 0.0), C64::new(0.0, 0.0)];
        assert!(antisym_projector(2).max_abs_diff(&ComplexMatrix::projector(&singlet)) < 1e-15);
    }
}
