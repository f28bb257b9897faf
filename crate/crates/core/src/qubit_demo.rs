//! Two-qubit total-angular-momentum projection `ρ₁ = ρ_in ⊗ 1/2 ↦ P_J ρ₁ P_J / Tr(·)`.
//!
//! `|J,M⟩` use the standard Clebsch–Gordan phases with `|1⟩ = ↑`, `|2⟩ = ↓`:
//! `|1,1⟩ = |11⟩`, `|1,0⟩ = (|12⟩ + |21⟩)/√2`, `|1,−1⟩ = |22⟩`, `|0,0⟩ = (|12⟩ − |21⟩)/√2`.

use num_complex::Complex64 as C64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{haar_unitary, ComplexMatrix, RngState};
use crate::process::TwoParticleState;
use crate::sud::{bloch_to_density, BlochVector};
use crate::tol;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum TotalSpin {
    Singlet,
    Triplet,
}

impl TotalSpin {
    pub fn j(self) -> u8 {
        match self {
            TotalSpin::Singlet => 0,
            TotalSpin::Triplet => 1,
        }
    }

    pub fn from_j(j: u8) -> Result<Self> {
        match j {
            0 => Ok(TotalSpin::Singlet),
            1 => Ok(TotalSpin::Triplet),
            _ => Err(Error::OutOfRange { name: "J", value: j as f64, range: "0 or 1" }),
        }
    }
}

/// `|J,M⟩` as a vector in the computational basis.
pub fn jm_state(j: u8, m: i8) -> Result<Vec<C64>> {
    let s = std::f64::consts::FRAC_1_SQRT_2;
    let v = match (j, m) {
        (1, 1) => [1.0, 0.0, 0.0, 0.0],
        (1, 0) => [0.0, s, s, 0.0],
        (1, -1) => [0.0, 0.0, 0.0, 1.0],
        (0, 0) => [0.0, s, -s, 0.0],
        _ => return Err(Error::OutOfRange { name: "(J, M)", value: f64::from(j), range: "|M| <= J <= 1" }),
    };
    Ok(v.iter().map(|&x| C64::new(x, 0.0)).collect())
}

/// `P_J = Σ_M |J M⟩⟨J M|`
pub fn angular_momentum_projector(spin: TotalSpin) -> ComplexMatrix {
    let ms: &[i8] = match spin {
        TotalSpin::Singlet => &[0],
        TotalSpin::Triplet => &[1, 0, -1],
    };
    let mut p = ComplexMatrix::zeros(4, 4);
    for &m in ms {
        p += &ComplexMatrix::projector(&jm_state(spin.j(), m).expect("valid (J, M)"));
    }
    p
}

#[derive(Debug, Clone)]
pub struct ProjectionOutcome {
    pub state: TwoParticleState,
    pub probability: f64,
}

/// Project `ρ_in(m) ⊗ 1/2` onto total spin `J` and renormalize.
pub fn project_process(m: &BlochVector, spin: TotalSpin) -> Result<ProjectionOutcome> {
    if m.dim() != 2 {
        return Err(Error::InvalidDimension { dim: m.dim(), requirement: "qubit input (D = 2)" });
    }
    let residual = m.purity_residual();
    if residual > tol::PURITY_LOOSE {
        return Err(Error::NotPure { residual });
    }
    let rho_in = bloch_to_density(m)?;
    let rho1 = rho_in.matrix().kron(&ComplexMatrix::identity(2).scale_re(0.5));
    let p = angular_momentum_projector(spin);
    let projected = &(&p * &rho1) * &p;
    let probability = projected.trace().re;
    if probability <= tol::EMPTY_BLOCK {
        return Err(Error::ZeroProbability);
    }
    let state = TwoParticleState::new(2, projected.scale_re(1.0 / probability))?;
    Ok(ProjectionOutcome { state, probability })
}

/// Populations `⟨1,M|ρ|1,M⟩` for `M = 1, 0, −1`.
pub fn triplet_weights(state: &TwoParticleState) -> [f64; 3] {
    let w = |m: i8| state.matrix().expectation(&jm_state(1, m).expect("valid")).re;
    [w(1), w(0), w(-1)]
}

/// Largest deviation from `ρ₂(U m₀) = (U⊗U) ρ₂(m₀) (U⊗U)†` over both branches.
pub fn covariance_demo(rng: &mut RngState, samples: usize) -> Result<f64> {
    let m0 = BlochVector::reference(2);
    let mut worst = 0.0f64;
    for spin in [TotalSpin::Singlet, TotalSpin::Triplet] {
        let base = project_process(&m0, spin)?.state;
        for _ in 0..samples {
            let u = haar_unitary(2, rng);
            worst = worst.max(branch_deviation(&m0, &base, spin, &u)?);
        }
    }
    Ok(worst)
}

/// Covariance deviation of one branch for one unitary.
pub fn branch_deviation(m0: &BlochVector, base: &TwoParticleState, spin: TotalSpin, u: &ComplexMatrix) -> Result<f64> {
    let moved = project_process(&m0.rotate(u)?, spin)?.state;
    Ok(moved.matrix().max_abs_diff(base.rotated(u).matrix()))
}
