use serde::Serialize;

use super::{output_operator, probabilities_from_params, ProcessParams};
use crate::error::Result;
use crate::linalg::{hermitian_eig, HermitianSpectrum};
use crate::sud::BlochVector;

/// One closed-form eigenvalue of `ρ_out(D·e₁₁)` with its multiplicity.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct AnalyticEigenvalue {
    pub label: &'static str,
    pub value: f64,
    pub multiplicity: usize,
}

/// The closed-form eigenvalues at `m₁₁ = D`:
///
/// * `λ₁ = p₁` (×1)
/// * `λ₂± = p₂/(2(D−1)) ± √(((α⁽¹⁾−α⁽²⁾)m₁₁/2)² + |C + m₁₁β|²)` (×(D−1) each)
/// * `λ₃ = p₃/(D−1)` (×(D−1))
/// * `λ₄± = p₄/((D−1)(D−2)) ± |C|` (×(D−1)(D−2)/2 each, absent for `D = 2`)
pub fn analytic_eigenvalues(params: &ProcessParams) -> Vec<AnalyticEigenvalue> {
    let d = params.dim;
    let df = d as f64;
    let m11 = df;
    let p = probabilities_from_params(params);
    let radius = ((params.alpha_diff() * m11 / 2.0).powi(2) + (params.beta * m11 + params.c).norm_sqr()).sqrt();
    let centre2 = p.p2 / (2.0 * (df - 1.0));

    let mut out = vec![
        AnalyticEigenvalue { label: "lambda1", value: p.p1, multiplicity: 1 },
        AnalyticEigenvalue { label: "lambda2+", value: centre2 + radius, multiplicity: d - 1 },
        AnalyticEigenvalue { label: "lambda2-", value: centre2 - radius, multiplicity: d - 1 },
        AnalyticEigenvalue { label: "lambda3", value: p.p3 / (df - 1.0), multiplicity: d - 1 },
    ];
    if d > 2 {
        let centre4 = p.p4 / ((df - 1.0) * (df - 2.0));
        let mult = (d - 1) * (d - 2) / 2;
        out.push(AnalyticEigenvalue { label: "lambda4+", value: centre4 + params.c.abs(), multiplicity: mult });
        out.push(AnalyticEigenvalue { label: "lambda4-", value: centre4 - params.c.abs(), multiplicity: mult });
    }
    out
}

/// Closed-form eigenvalues expanded by multiplicity, sorted descending.
pub fn analytic_multiset(params: &ProcessParams) -> Vec<f64> {
    let mut v: Vec<f64> =
        analytic_eigenvalues(params).iter().flat_map(|e| std::iter::repeat_n(e.value, e.multiplicity)).collect();
    v.sort_by(|a, b| b.total_cmp(a));
    v
}

/// Closed-form spectrum next to the numeric one of the explicitly built operator.
#[derive(Debug, Clone)]
pub struct SpectrumReport {
    pub analytic: Vec<AnalyticEigenvalue>,
    pub numeric: HermitianSpectrum,
}

impl SpectrumReport {
    /// Largest deviation between the sorted analytic and numeric multisets.
    pub fn max_deviation(&self) -> f64 {
        let mut analytic: Vec<f64> =
            self.analytic.iter().flat_map(|e| std::iter::repeat_n(e.value, e.multiplicity)).collect();
        analytic.sort_by(|a, b| b.total_cmp(a));
        if analytic.len() != self.numeric.eigenvalues.len() {
            return f64::INFINITY;
        }
        analytic.iter().zip(&self.numeric.eigenvalues).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max)
    }

    pub fn total_multiplicity(&self) -> usize {
        self.analytic.iter().map(|e| e.multiplicity).sum()
    }
}

pub fn spectrum_report(params: &ProcessParams) -> Result<SpectrumReport> {
    let rho = output_operator(params, &BlochVector::reference(params.dim))?;
    Ok(SpectrumReport { analytic: analytic_eigenvalues(params), numeric: hermitian_eig(&rho)? })
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_complex::Complex64 as C64;

    #[test]
    fn multiplicities_sum_to_d_squared() {
        for d in 2..=7 {
            let total: usize = analytic_eigenvalues(&ProcessParams::zero(d)).iter().map(|e| e.multiplicity).sum();
            assert_eq!(total, d * d);
        }
        assert_eq!(analytic_eigenvalues(&ProcessParams::zero(2)).len(), 4);
    }

    #[test]
    fn zero_params_all_equal() {
        for d in 2..=5 {
            for l in analytic_multiset(&ProcessParams::zero(d)) {
                assert!((l - 1.0 / (d * d) as f64).abs() < 1e-15);
            }
        }
    }

    #[test]
    fn matches_numeric_for_generic_point() {
        let p = ProcessParams::new(5, 0.003, 0.002, -0.001, C64::new(-0.001, 0.0015));
        let r = spectrum_report(&p).unwrap();
        assert_eq!(r.total_multiplicity(), 25);
        assert!(r.max_deviation() < 1e-12, "{}", r.max_deviation());
    }
}
