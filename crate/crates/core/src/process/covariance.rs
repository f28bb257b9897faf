use super::{output_operator, ProcessParams};
use crate::error::Result;
use crate::linalg::{haar_unitary, ComplexMatrix, RngState};
use crate::sud::BlochVector;

/// Deviation from `ρ_out(U m₀ U†) = (U⊗U) ρ_out(m₀) (U⊗U)†` for one unitary, with `m₀ = D·e₁₁`.
pub fn covariance_deviation(params: &ProcessParams, u: &ComplexMatrix) -> Result<f64> {
    let m0 = BlochVector::reference(params.dim);
    let reference = output_operator(params, &m0)?;
    let rotated_input = output_operator(params, &m0.rotate(u)?)?;
    let rotated_output = reference.conjugate_by(&u.kron(u))?;
    Ok(rotated_input.max_abs_diff(&rotated_output))
}

/// Largest covariance deviation over `samples` Haar-random unitaries.
pub fn covariance_check(params: &ProcessParams, rng: &mut RngState, samples: usize) -> Result<f64> {
    let mut worst = 0.0f64;
    for _ in 0..samples {
        let u = haar_unitary(params.dim, rng);
        worst = worst.max(covariance_deviation(params, &u)?);
    }
    Ok(worst)
}
