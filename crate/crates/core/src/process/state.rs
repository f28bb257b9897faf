use num_complex::Complex64 as C64;

use super::ProcessParams;
use crate::error::{Error, Result};
use crate::linalg::{self, c64, hermitian_eig, ComplexMatrix, Subsystem};
use crate::sud::{BlochVector, GeneratorSet, OneParticleState};
use crate::tol;

/// A validated `D² × D²` two-particle density operator.
#[derive(Debug, Clone, PartialEq)]
pub struct TwoParticleState {
    dim: usize,
    rho: ComplexMatrix,
}

impl TwoParticleState {
    /// Validates shape, Hermiticity, unit trace and positivity.
    pub fn new(dim: usize, rho: ComplexMatrix) -> Result<Self> {
        let n = dim * dim;
        if rho.rows() != n || rho.cols() != n {
            return Err(Error::dims(format!("{n}x{n}"), format!("{}x{}", rho.rows(), rho.cols())));
        }
        let residual = rho.hermiticity_residual();
        if residual > tol::HERMITICITY {
            return Err(Error::NotHermitian { residual });
        }
        let tr = rho.trace();
        if (tr - c64(1.0)).norm() > 1e-9 {
            return Err(Error::OutOfRange { name: "trace", value: tr.re, range: "must equal 1" });
        }
        let min = hermitian_eig(&rho)?.min();
        if min < -tol::POSITIVITY {
            return Err(Error::NotPositive { min_eigenvalue: min });
        }
        Ok(Self { dim, rho })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.rho
    }

    pub fn into_matrix(self) -> ComplexMatrix {
        self.rho
    }

    pub fn eigenvalues(&self) -> Vec<f64> {
        linalg::eigenvalues(&self.rho).expect("validated Hermitian")
    }

    /// Von Neumann entropy in nats.
    pub fn entropy(&self) -> f64 {
        linalg::entropy_of_spectrum(&self.eigenvalues())
    }

    pub fn purity(&self) -> f64 {
        linalg::purity(&self.rho)
    }

    /// Reduced state of the particle that is kept, i.e. the factor other than `traced`.
    pub fn reduced(&self, traced: Subsystem) -> OneParticleState {
        let r = self.rho.partial_trace(self.dim, traced).expect("shape checked at construction");
        OneParticleState::new(r).expect("partial trace of a state is a state")
    }

    pub fn partial_transpose(&self) -> ComplexMatrix {
        self.rho.partial_transpose(self.dim, Subsystem::Second).expect("shape checked at construction")
    }

    /// `(U⊗U) ρ (U⊗U)†`
    pub fn rotated(&self, u: &ComplexMatrix) -> Self {
        let uu = u.kron(u);
        Self { dim: self.dim, rho: self.rho.conjugate_by(&uu).expect("shape checked") }
    }
}

/// Output operator of a covariant process before any positivity check.
#[derive(Debug, Clone)]
pub struct OutputOperator {
    pub dim: usize,
    pub rho: ComplexMatrix,
    pub min_eigenvalue: f64,
}

impl OutputOperator {
    pub fn is_non_negative(&self) -> bool {
        self.min_eigenvalue >= -tol::POSITIVITY
    }

    pub fn into_state(self) -> Result<TwoParticleState> {
        if !self.is_non_negative() {
            return Err(Error::NotPositive { min_eigenvalue: self.min_eigenvalue });
        }
        TwoParticleState::new(self.dim, self.rho)
    }
}

fn check_dims(params: &ProcessParams, m: &BlochVector) -> Result<usize> {
    if params.dim != m.dim() {
        return Err(Error::dims(format!("D = {}", params.dim), format!("Bloch vector with D = {}", m.dim())));
    }
    if params.dim < 2 {
        return Err(Error::InvalidDimension { dim: params.dim, requirement: "D >= 2" });
    }
    Ok(params.dim)
}

/// The covariant output operator
///
/// `ρ_out = 1/D² + α⁽¹⁾ m_ij A_ij⊗1 + α⁽²⁾ m_ij 1⊗A_ij + C A_ij⊗A_ji + β m_il A_ij⊗A_jl + h.c.`
///
/// evaluated in closed form. With `M̃ = m − (Tr m/D)·1` and `S` the exchange operator:
///
/// * `m_ij A_ij = M̃`
/// * `A_ij⊗A_ji = S − 1/D`
/// * `m_il A_ij⊗A_jl = T(m) − (M⊗1 + 1⊗M)/D + (Tr m/D²)·1`, where `⟨ab|T(m)|cd⟩ = m_ad δ_bc`.
pub fn output_operator(params: &ProcessParams, m: &BlochVector) -> Result<ComplexMatrix> {
    let d = check_dims(params, m)?;
    let df = d as f64;
    let mm = m.coefficients();
    let tr_m = mm.trace();
    let beta = params.beta;
    let identity_coeff = 1.0 / (df * df) - params.c / df;

    let mut rho = ComplexMatrix::zeros(d * d, d * d);
    for a in 0..d {
        for b in 0..d {
            let row = a * d + b;
            for c in 0..d {
                for e in 0..d {
                    let col = c * d + e;
                    let mut z = C64::new(0.0, 0.0);
                    let (da, db) = (a == c, b == e);
                    if da && db {
                        z += identity_coeff;
                    }
                    // Local terms: α⁽¹⁾ M̃⊗1 + α⁽²⁾ 1⊗M̃.
                    if db {
                        z += params.alpha1 * traceless(mm, tr_m, df, a, c);
                    }
                    if da {
                        z += params.alpha2 * traceless(mm, tr_m, df, b, e);
                    }
                    // Exchange term C·S.
                    if a == e && b == c {
                        z += params.c;
                    }
                    // β-term and its adjoint.
                    let mut t = C64::new(0.0, 0.0);
                    if b == c {
                        t += mm[(a, e)];
                    }
                    if db {
                        t -= mm[(a, c)] / df;
                    }
                    if da {
                        t -= mm[(b, e)] / df;
                    }
                    if da && db {
                        t += tr_m / (df * df);
                    }
                    let mut t_adj = C64::new(0.0, 0.0);
                    // ⟨ab|X†|ce⟩ = conj⟨ce|X|ab⟩ for the β-term X.
                    if e == a {
                        t_adj += mm[(c, b)].conj();
                    }
                    if db {
                        t_adj -= mm[(c, a)].conj() / df;
                    }
                    if da {
                        t_adj -= mm[(e, b)].conj() / df;
                    }
                    if da && db {
                        t_adj += tr_m.conj() / (df * df);
                    }
                    z += beta * t + beta.conj() * t_adj;
                    rho[(row, col)] = z;
                }
            }
        }
    }
    Ok(rho)
}

fn traceless(mm: &ComplexMatrix, tr_m: C64, df: f64, i: usize, j: usize) -> C64 {
    if i == j {
        mm[(i, j)] - tr_m / df
    } else {
        mm[(i, j)]
    }
}

/// The same operator as [`output_operator`], summed term by term over the generator
/// representation. Costs `O(D⁷)`; meant for cross-checking at small `D`.
pub fn output_operator_einstein(params: &ProcessParams, m: &BlochVector) -> Result<ComplexMatrix> {
    let d = check_dims(params, m)?;
    let gens = GeneratorSet::new(d)?;
    let id = ComplexMatrix::identity(d);
    let mm = m.coefficients();
    let mut rho = ComplexMatrix::identity(d * d).scale_re(1.0 / (d * d) as f64);
    for i in 0..d {
        for j in 0..d {
            let a_ij = gens.get(i, j);
            let mij = mm[(i, j)];
            if mij != c64(0.0) {
                rho += &a_ij.kron(&id).scale(mij * params.alpha1);
                rho += &id.kron(a_ij).scale(mij * params.alpha2);
            }
            rho += &a_ij.kron(gens.get(j, i)).scale(c64(params.c));
            for l in 0..d {
                let mil = mm[(i, l)];
                if mil == c64(0.0) {
                    continue;
                }
                rho += &a_ij.kron(gens.get(j, l)).scale(params.beta * mil);
                rho += &gens.get(j, i).kron(gens.get(l, j)).scale(params.beta.conj() * mil.conj());
            }
        }
    }
    Ok(rho)
}

/// Output operator with its smallest eigenvalue; positivity is reported, not enforced.
pub fn build_output_operator(params: &ProcessParams, m: &BlochVector) -> Result<OutputOperator> {
    let rho = output_operator(params, m)?;
    let min_eigenvalue = hermitian_eig(&rho)?.min();
    Ok(OutputOperator { dim: params.dim, rho, min_eigenvalue })
}

/// Output state; fails with [`Error::NotPositive`] for inadmissible parameters.
pub fn build_output_state(params: &ProcessParams, m: &BlochVector) -> Result<TwoParticleState> {
    build_output_operator(params, m)?.into_state()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::RngState;
    use crate::sud::random_pure_input;

    fn random_params(dim: usize, rng: &mut RngState) -> ProcessParams {
        let s = 0.05 / (dim * dim) as f64;
        ProcessParams::new(
            dim,
            rng.normal() * s,
            rng.normal() * s,
            rng.normal() * s,
            C64::new(rng.normal() * s, rng.normal() * s),
        )
    }

    #[test]
    fn closed_form_matches_generator_sum() {
        let mut rng = RngState::new(17);
        for d in 2..=5 {
            for _ in 0..5 {
                let p = random_params(d, &mut rng);
                let (_, m) = random_pure_input(d, &mut rng);
                let fast = output_operator(&p, &m).unwrap();
                let slow = output_operator_einstein(&p, &m).unwrap();
                assert!(fast.max_abs_diff(&slow) < 1e-14, "D={d}: {}", fast.max_abs_diff(&slow));
                assert!(fast.hermiticity_residual() < 1e-15);
                assert!((fast.trace() - c64(1.0)).norm() < 1e-13);
            }
        }
    }

    #[test]
    fn zero_params_give_maximally_mixed_output() {
        let mut rng = RngState::new(4);
        for d in 2..=4 {
            let (_, m) = random_pure_input(d, &mut rng);
            let rho = output_operator(&ProcessParams::zero(d), &m).unwrap();
            assert!(rho.max_abs_diff(&ComplexMatrix::identity(d * d).scale_re(1.0 / (d * d) as f64)) < 1e-16);
        }
    }

    #[test]
    fn admissible_point_is_positive() {
        let p = super::super::params_from_probabilities(0.1, 0.1, 0.2, 0.0, 0.0, 3).unwrap();
        let out = build_output_operator(&p, &BlochVector::reference(3)).unwrap();
        assert!(out.min_eigenvalue >= -1e-10);
        assert!(out.into_state().is_ok());
    }

    #[test]
    fn inadmissible_point_is_built_but_rejected_as_state() {
        let p = ProcessParams::new(3, 0.5, 0.0, 0.0, C64::new(0.0, 0.0));
        let out = build_output_operator(&p, &BlochVector::reference(3)).unwrap();
        assert!(out.min_eigenvalue < -0.1);
        assert!(matches!(build_output_state(&p, &BlochVector::reference(3)), Err(Error::NotPositive { .. })));
    }

    #[test]
    fn dimension_mismatch() {
        assert!(output_operator(&ProcessParams::zero(3), &BlochVector::reference(4)).is_err());
    }

    #[test]
    fn two_particle_state_rejects_bad_input() {
        assert!(TwoParticleState::new(2, ComplexMatrix::identity(4)).is_err());
        assert!(TwoParticleState::new(3, ComplexMatrix::identity(4).scale_re(0.25)).is_err());
        let ok = TwoParticleState::new(2, ComplexMatrix::identity(4).scale_re(0.25)).unwrap();
        assert!((ok.entropy() - 4f64.ln()).abs() < 1e-12);
    }
}
