//! Covariant two-particle processes `ρ_in(m) ⊗ ρ_ref → ρ_out(m)`.
//!
//! A process is fixed by `(C, α⁽¹⁾, α⁽²⁾, β)`. By covariance every property can be read off
//! the output for the reference input `m = D·e₁₁`, whose direct-sum structure gives block
//! weights `p₁..p₄` and closed-form eigenvalues.

mod admissible;
mod blocks;
mod covariance;
mod params;
mod spectrum;
mod state;

pub use admissible::{
    fmt_sig, is_admissible, positivity_region_scan, random_admissible_params, region_csv, Admissibility, RegionPoint,
};
pub use blocks::{block_decomposition, BlockDecomposition};
pub use covariance::{covariance_check, covariance_deviation};
pub use params::{params_from_probabilities, probabilities_from_params, ProbabilityQuadruple, ProcessParams};
pub use spectrum::{analytic_eigenvalues, analytic_multiset, spectrum_report, AnalyticEigenvalue, SpectrumReport};
pub use state::{
    build_output_operator, build_output_state, output_operator, output_operator_einstein, OutputOperator,
    TwoParticleState,
};
