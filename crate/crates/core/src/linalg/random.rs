use nalgebra::DMatrix;
use num_complex::Complex64 as C64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;
use rand_distr::StandardNormal;

use super::ComplexMatrix;

/// Seeded random source. Backed by ChaCha20, so a given seed always yields the same stream
/// regardless of platform.
#[derive(Debug, Clone)]
pub struct RngState {
    seed: u64,
    rng: ChaCha20Rng,
}

impl RngState {
    pub fn new(seed: u64) -> Self {
        Self { seed, rng: ChaCha20Rng::seed_from_u64(seed) }
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    /// Number of 32-bit words consumed so far.
    pub fn position(&self) -> u128 {
        self.rng.get_word_pos()
    }

    pub fn uniform(&mut self) -> f64 {
        self.rng.random::<f64>()
    }

    pub fn uniform_range(&mut self, lo: f64, hi: f64) -> f64 {
        self.rng.random_range(lo..hi)
    }

    pub fn normal(&mut self) -> f64 {
        self.rng.sample(StandardNormal)
    }

    /// Circular complex Gaussian with `E|z|² = 1`.
    pub fn complex_normal(&mut self) -> C64 {
        C64::new(self.normal(), self.normal()) * std::f64::consts::FRAC_1_SQRT_2
    }

    /// Uniformly distributed unit vector in `C^dim`.
    pub fn unit_vector(&mut self, dim: usize) -> Vec<C64> {
        loop {
            let v: Vec<C64> = (0..dim).map(|_| self.complex_normal()).collect();
            let norm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
            if norm > 1e-300 {
                return v.into_iter().map(|z| z / norm).collect();
            }
        }
    }
}

/// Haar-distributed unitary: QR of a complex Ginibre matrix with the phases of `diag(R)`
/// absorbed into `Q`.
pub fn haar_unitary(dim: usize, rng: &mut RngState) -> ComplexMatrix {
    let g = DMatrix::<C64>::from_fn(dim, dim, |_, _| rng.complex_normal());
    let qr = g.qr();
    let q = qr.q();
    let r = qr.r();
    ComplexMatrix::from_fn(dim, dim, |i, j| {
        let d = r[(j, j)];
        let phase = if d.norm() > 0.0 { d / d.norm() } else { C64::new(1.0, 0.0) };
        q[(i, j)] * phase
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unitarity_residual_small() {
        let mut rng = RngState::new(7);
        for _ in 0..1000 {
            let u = haar_unitary(4, &mut rng);
            let res = (&u * &u.adjoint()).max_abs_diff(&ComplexMatrix::identity(4));
            assert!(res < 1e-10, "residual {res}");
        }
    }

    #[test]
    fn same_seed_same_unitary() {
        let a = haar_unitary(3, &mut RngState::new(99));
        let b = haar_unitary(3, &mut RngState::new(99));
        assert_eq!(a, b);
        let c = haar_unitary(3, &mut RngState::new(100));
        assert_ne!(a, c);
    }

    #[test]
    fn stream_position_advances() {
        let mut rng = RngState::new(1);
        let p0 = rng.position();
        rng.normal();
        assert!(rng.position() > p0);
        assert_eq!(rng.seed(), 1);
    }

    #[test]
    fn second_moment_matches_haar() {
        // ⟨|U_11|²⟩ = 1/D; seed 2024.
        let mut rng = RngState::new(2024);
        let n = 10_000;
        let mean: f64 = (0..n).map(|_| haar_unitary(2, &mut rng)[(0, 0)].norm_sqr()).sum::<f64>() / n as f64;
        assert!((mean - 0.5).abs() < 0.02, "mean {mean}");
    }
}
