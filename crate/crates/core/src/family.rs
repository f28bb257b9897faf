//! The one-parameter family of optimal universal entanglement processes.
//!
//! Members have `p₁ = p₃ = 0`, `α⁽¹⁾ = α⁽²⁾` and real `β`, and are labelled by `p₄ ∈ [0, 1]`.
//! For the reference input the output is `(1−p₄)ρ₂ ⊕ p₄ρ₄`, a mixture of antisymmetric
//! states; other inputs follow by covariance. At `D = 2` only `p₄ = 0` exists and the output
//! is the singlet.

use num_complex::Complex64 as C64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{antisym_projector, basis2, hermitian_eig, kron_vec, sym_projector, ComplexMatrix, RngState};
use crate::process::{params_from_probabilities, ProcessParams, TwoParticleState};
use crate::sud::{unitary_for_bloch, BlochVector};
use crate::tol;

/// A member of the optimal family.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct OptimalProcess {
    dim: usize,
    p4: f64,
}

impl OptimalProcess {
    pub fn new(dim: usize, p4: f64) -> Result<Self> {
        if dim < 2 {
            return Err(Error::InvalidDimension { dim, requirement: "D >= 2" });
        }
        if !(0.0..=1.0).contains(&p4) {
            return Err(Error::OutOfRange { name: "p4", value: p4, range: "[0, 1]" });
        }
        if dim == 2 && p4 != 0.0 {
            return Err(Error::OutOfRange { name: "p4", value: p4, range: "must be 0 for D = 2" });
        }
        Ok(Self { dim, p4 })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn p4(&self) -> f64 {
        self.p4
    }

    pub fn params(&self) -> ProcessParams {
        let d = self.dim as f64;
        if self.dim == 2 {
            // p₃ = p₄ = 0, so C = 0, α⁽¹⁾+α⁽²⁾ = 0 and β+β* = −1/(D(D−1)).
            let beta_sum = -1.0 / (d * (d - 1.0));
            return ProcessParams::new(2, 0.0, 0.0, 0.0, C64::new(0.5 * beta_sum, 0.0));
        }
        params_from_probabilities(0.0, 0.0, self.p4, 0.0, 0.0, self.dim).expect("D >= 3")
    }

    /// Output for the reference input `m = D·e₁₁`, assembled from the antisymmetric blocks.
    pub fn reference_output(&self) -> ComplexMatrix {
        let d = self.dim;
        let df = d as f64;
        let n = d * d;
        let mut rho = ComplexMatrix::zeros(n, n);
        let w2 = (1.0 - self.p4) / (2.0 * (df - 1.0));
        for j in 1..d {
            rho += &antisym_pair(d, 0, j).scale_re(w2);
        }
        if d > 2 && self.p4 > 0.0 {
            let w4 = self.p4 / ((df - 1.0) * (df - 2.0));
            for i in 1..d {
                for j in (i + 1)..d {
                    rho += &antisym_pair(d, i, j).scale_re(w4);
                }
            }
        }
        rho
    }

    /// Output for an arbitrary pure input: the reference output rotated by `U⊗U` with
    /// `U|1⟩ = |m⟩`.
    pub fn output_state(&self, m: &BlochVector) -> Result<TwoParticleState> {
        if m.dim() != self.dim {
            return Err(Error::dims(self.dim, m.dim()));
        }
        let residual = m.purity_residual();
        if residual > tol::PURITY_LOOSE {
            return Err(Error::NotPure { residual });
        }
        let u = unitary_for_bloch(m)?;
        let rho = self.reference_output().conjugate_by(&u.kron(&u))?;
        TwoParticleState::new(self.dim, rho)
    }
}

/// `(|ij⟩ − |ji⟩)(⟨ij| − ⟨ji|)`, unnormalized (trace 2).
fn antisym_pair(d: usize, i: usize, j: usize) -> ComplexMatrix {
    let v: Vec<C64> = basis2(d, i, j).iter().zip(basis2(d, j, i)).map(|(a, b)| a - b).collect();
    ComplexMatrix::projector(&v)
}

/// Parameters of the family member with the given `p₄`.
pub fn optimal_params(dim: usize, p4: f64) -> Result<ProcessParams> {
    Ok(OptimalProcess::new(dim, p4)?.params())
}

pub fn optimal_output_state(dim: usize, p4: f64, m: &BlochVector) -> Result<TwoParticleState> {
    OptimalProcess::new(dim, p4)?.output_state(m)
}

/// `max |P_sym ρ P_sym|`
pub fn symmetric_residual(rho: &ComplexMatrix, dim: usize) -> f64 {
    let ps = sym_projector(dim);
    (&(&ps * rho) * &ps).max_abs()
}

/// `max |P_anti ρ P_anti − ρ|`
pub fn antisymmetric_support_residual(rho: &ComplexMatrix, dim: usize) -> f64 {
    let pa = antisym_projector(dim);
    (&(&pa * rho) * &pa).max_abs_diff(rho)
}

/// Result of probing a state for subtractable product components.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct OptimalityCertificate {
    pub samples: usize,
    /// Largest `λ` with `ρ − λ|ψ⟩⟨ψ| ≥ 0` over the sampled product vectors.
    pub max_subtractable_weight: f64,
    /// Smallest `⟨ψ|P_sym|ψ⟩` over the sampled product vectors.
    pub min_sym_overlap: f64,
}

/// Support data of a density operator, reused across many probe vectors.
pub struct SupportAnalysis {
    projector: ComplexMatrix,
    pseudo_inverse: ComplexMatrix,
}

impl SupportAnalysis {
    pub fn new(rho: &ComplexMatrix) -> Result<Self> {
        let spec = hermitian_eig(rho)?;
        Ok(Self {
            projector: spec.support_projector(tol::RANK_CUTOFF),
            pseudo_inverse: spec.pseudo_inverse(tol::RANK_CUTOFF),
        })
    }

    /// Largest `λ ≥ 0` with `ρ − λ|ψ⟩⟨ψ| ≥ 0` for a normalized `ψ`.
    ///
    /// Zero when `ψ` leaves the support of `ρ`; otherwise `1/⟨ψ|ρ⁺|ψ⟩`.
    pub fn subtractable_weight(&self, psi: &[C64]) -> f64 {
        let inside = self.projector.expectation(psi).re;
        let outside = 1.0 - inside;
        if outside > tol::RANK_CUTOFF {
            return 0.0;
        }
        let q = self.pseudo_inverse.expectation(psi).re;
        if q > 0.0 {
            1.0 / q
        } else {
            0.0
        }
    }
}

/// Probe `state` with Haar-random product vectors `|φ⟩⊗|χ⟩`.
///
/// The state must live on the antisymmetric subspace (within `1e-9`).
pub fn certify_optimal_entanglement(
    state: &TwoParticleState,
    rng: &mut RngState,
    samples: usize,
) -> Result<OptimalityCertificate> {
    let residual = symmetric_residual(state.matrix(), state.dim());
    if residual > 1e-9 {
        return Err(Error::NotAntisymmetric { residual });
    }
    certify_unchecked(state, rng, samples)
}

/// [`certify_optimal_entanglement`] without the antisymmetry precondition.
pub fn certify_unchecked(
    state: &TwoParticleState,
    rng: &mut RngState,
    samples: usize,
) -> Result<OptimalityCertificate> {
    let d = state.dim();
    let support = SupportAnalysis::new(state.matrix())?;
    let ps = sym_projector(d);
    let mut max_w = 0.0f64;
    let mut min_sym = f64::INFINITY;
    for _ in 0..samples {
        let phi = rng.unit_vector(d);
        let chi = rng.unit_vector(d);
        let psi = kron_vec(&phi, &chi);
        max_w = max_w.max(support.subtractable_weight(&psi));
        min_sym = min_sym.min(ps.expectation(&psi).re);
    }
    Ok(OptimalityCertificate { samples, max_subtractable_weight: max_w, min_sym_overlap: min_sym })
}

/// Distinguished members of the family for a given dimension.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct NamedProcesses {
    pub dim: usize,
    /// Output independent of the input (`α = β = 0`): `p₄ = (D−2)/D`.
    pub info_erasing: f64,
    /// Largest local information `α⁽¹⁾`: `p₄ = 0`.
    pub max_info: f64,
    /// Minimum output entropy; two members coexist at `D = 4`.
    pub min_entropy: Vec<f64>,
    /// Maximum output entropy: `p₄ = (D−2)/D`.
    pub max_entropy: f64,
}

pub fn named_processes(dim: usize) -> Result<NamedProcesses> {
    if dim < 2 {
        return Err(Error::InvalidDimension { dim, requirement: "D >= 2" });
    }
    let erasing = (dim as f64 - 2.0) / dim as f64;
    let min_entropy = match dim {
        2 => vec![0.0],
        3 => vec![1.0],
        4 => vec![0.0, 1.0],
        _ => vec![0.0],
    };
    Ok(NamedProcesses { dim, info_erasing: erasing, max_info: 0.0, min_entropy, max_entropy: erasing })
}
