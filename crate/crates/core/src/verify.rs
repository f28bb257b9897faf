//! Analytic-versus-numeric check suite over a range of dimensions.

use serde::Serialize;

use crate::diagnostics::{
    alpha_ratio, entropy_analytic, index_of_correlation_analytic, index_of_correlation_numeric, negativity_check,
    p4_grid, reduced_state_analytic,
};
use crate::error::{Error, Result};
use crate::family::{antisymmetric_support_residual, certify_optimal_entanglement, OptimalProcess};
use crate::linalg::RngState;
use crate::process::{
    analytic_multiset, covariance_check, is_admissible, output_operator, output_operator_einstein,
    params_from_probabilities, probabilities_from_params, random_admissible_params, spectrum_report,
};
use crate::qubit_demo::{covariance_demo, project_process, triplet_weights, TotalSpin};
use crate::sud::{random_pure_input, BlochVector};

/// Threshold on the minimum partial-transpose eigenvalue of family states.
pub const NEGATIVITY_THRESHOLD: f64 = -1e-6;

#[derive(Debug, Clone, PartialEq)]
pub struct VerifyConfig {
    pub dim_max: usize,
    pub samples: usize,
    pub seed: u64,
    pub tol: f64,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        Self { dim_max: 6, samples: 50, seed: 42, tol: 1e-9 }
    }
}

impl VerifyConfig {
    pub fn validate(&self) -> Result<()> {
        if self.dim_max < 2 {
            return Err(Error::InvalidDimension { dim: self.dim_max, requirement: "dim-max >= 2" });
        }
        if self.tol.is_nan() || self.tol <= 0.0 || self.tol.is_infinite() {
            return Err(Error::OutOfRange { name: "tol", value: self.tol, range: "> 0" });
        }
        if self.samples == 0 {
            return Err(Error::OutOfRange { name: "samples", value: 0.0, range: ">= 1" });
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Check {
    pub name: String,
    /// Deviations must not exceed this; for `pt_negativity` the worst value must stay below it.
    pub tolerance: f64,
    pub worst_deviation: f64,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerifyReport {
    pub dim_max: usize,
    pub samples: usize,
    pub seed: u64,
    pub checks: Vec<Check>,
}

impl VerifyReport {
    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn summary(&self) -> String {
        let mut s = String::new();
        for c in &self.checks {
            s.push_str(&format!(
                "{} {:<34} worst {:>12.3e}  tol {:.1e}\n",
                if c.pass { "PASS" } else { "FAIL" },
                c.name,
                c.worst_deviation,
                c.tolerance
            ));
        }
        let failed = self.checks.iter().filter(|c| !c.pass).count();
        s.push_str(&format!("{} checks, {} failed\n", self.checks.len(), failed));
        s
    }
}

struct Suite {
    tol: f64,
    checks: Vec<Check>,
}

impl Suite {
    fn within(&mut self, name: &str, worst: f64) {
        self.push(name, self.tol, worst, worst <= self.tol);
    }

    fn push(&mut self, name: &str, tolerance: f64, worst: f64, pass: bool) {
        self.checks.push(Check { name: name.to_owned(), tolerance, worst_deviation: worst, pass });
    }
}

/// Run every check for `D ∈ [2, dim_max]`. Each check draws from its own seeded stream.
pub fn run_suite(config: &VerifyConfig) -> Result<VerifyReport> {
    config.validate()?;
    let dims = 2..=config.dim_max;
    let n = config.samples;
    let rng = |k: u64| RngState::new(config.seed.wrapping_mul(1_000_003).wrapping_add(k));
    let mut suite = Suite { tol: config.tol, checks: Vec::new() };

    let mut r = rng(1);
    let mut worst = 0.0f64;
    for d in dims.clone() {
        for _ in 0..n.min(20) {
            let p = random_admissible_params(d, &mut r)?;
            let (_, m) = random_pure_input(d, &mut r);
            worst = worst.max(output_operator(&p, &m)?.max_abs_diff(&output_operator_einstein(&p, &m)?));
        }
    }
    suite.within("closed_form_vs_generator_sum", worst);

    let mut r = rng(2);
    let mut worst = 0.0f64;
    for d in dims.clone() {
        for _ in 0..n {
            let p = random_admissible_params(d, &mut r)?;
            worst = worst.max(spectrum_report(&p)?.max_deviation());
        }
    }
    suite.within("spectrum_analytic_vs_numeric", worst);

    let mut r = rng(3);
    let mut worst = 0.0f64;
    for d in dims.clone().filter(|&d| d >= 3) {
        for _ in 0..n {
            let p = random_admissible_params(d, &mut r)?;
            let q = probabilities_from_params(&p);
            let back = params_from_probabilities(q.p1, q.p3, q.p4, p.alpha_diff(), p.beta.im, d)?;
            let dev = [back.c - p.c, back.alpha1 - p.alpha1, back.alpha2 - p.alpha2, (back.beta - p.beta).norm()]
                .iter()
                .fold(0.0f64, |a, x| a.max(x.abs()));
            worst = worst.max(dev);
        }
    }
    suite.within("probability_inversion_round_trip", worst);

    let mut r = rng(4);
    let mut worst = 0.0f64;
    for d in dims.clone() {
        let p = random_admissible_params(d, &mut r)?;
        worst = worst.max(covariance_check(&p, &mut r, n)?);
    }
    suite.within("covariance", worst);

    let mut r = rng(5);
    let mut worst = 0.0f64;
    let mut convexity_violations = 0usize;
    for d in dims.clone() {
        for _ in 0..n.min(10) {
            let a = random_admissible_params(d, &mut r)?;
            let b = random_admissible_params(d, &mut r)?;
            let (_, m1) = random_pure_input(d, &mut r);
            let (_, m2) = random_pure_input(d, &mut r);
            let mid = m1.midpoint(&m2)?;
            let lin = output_operator(&a, &mid)?
                .max_abs_diff(&(&output_operator(&a, &m1)? + &output_operator(&a, &m2)?).scale_re(0.5));
            let t = r.uniform();
            let blend = a.lerp(&b, t);
            convexity_violations += usize::from(!is_admissible(&blend).admissible);
            worst = worst.max(lin);
        }
    }
    suite.within("linearity_in_input", worst);
    let v = convexity_violations as f64;
    suite.push("admissible_set_convex", 0.0, v, convexity_violations == 0);

    let mut s_dev = 0.0f64;
    let mut ic_dev = 0.0f64;
    let mut red_dev = 0.0f64;
    let mut anti_dev = 0.0f64;
    let mut neg_worst = f64::NEG_INFINITY;
    let mut r = rng(6);
    for d in dims.clone() {
        for p4 in p4_grid(d, 10) {
            let process = OptimalProcess::new(d, p4)?;
            let (_, m) = random_pure_input(d, &mut r);
            let state = process.output_state(&m)?;
            s_dev = s_dev.max((state.entropy() - entropy_analytic(d, p4)?).abs());
            if d >= 3 {
                ic_dev =
                    ic_dev.max((index_of_correlation_numeric(&state) - index_of_correlation_analytic(d, p4)?).abs());
            }
            let r1 = state.reduced(crate::linalg::Subsystem::Second);
            red_dev = red_dev.max(r1.matrix().max_abs_diff(&reduced_state_analytic(process.params().alpha1, &m)));
            anti_dev = anti_dev.max(antisymmetric_support_residual(state.matrix(), d));
            neg_worst = neg_worst.max(negativity_check(d, p4)?.min_pt_eigenvalue);
        }
    }
    suite.within("family_entropy", s_dev);
    suite.within("family_index_of_correlation", ic_dev);
    suite.within("family_reduced_state", red_dev);
    suite.within("family_antisymmetric_support", anti_dev);
    suite.push("family_pt_negativity", NEGATIVITY_THRESHOLD, neg_worst, neg_worst < NEGATIVITY_THRESHOLD);

    let mut r = rng(7);
    let mut worst = 0.0f64;
    for d in dims.clone() {
        for p4 in if d == 2 { vec![0.0] } else { vec![0.0, 0.5, (d as f64 - 2.0) / d as f64, 1.0] } {
            let state = OptimalProcess::new(d, p4)?.reference_output();
            let state = crate::process::TwoParticleState::new(d, state)?;
            worst = worst.max(certify_optimal_entanglement(&state, &mut r, n)?.max_subtractable_weight);
        }
    }
    suite.within("optimality_certificate", worst);

    let mut worst = 0.0f64;
    for d in dims.clone() {
        let a = analytic_multiset(&OptimalProcess::new(d, 0.0)?.params());
        worst = worst.max(a.iter().fold(0.0, |acc, &l| acc.max(-l)));
    }
    suite.within("family_positive_at_reference", worst);

    let m0 = BlochVector::reference(2);
    let triplet = project_process(&m0, TotalSpin::Triplet)?;
    let singlet = project_process(&m0, TotalSpin::Singlet)?;
    let w = triplet_weights(&triplet.state);
    let dev = [w[0] - 2.0 / 3.0, w[1] - 1.0 / 3.0, w[2], singlet.probability - 0.25, triplet.probability - 0.75]
        .iter()
        .fold(0.0f64, |a, x| a.max(x.abs()));
    suite.within("qubit_projection_weights", dev);
    suite.within("qubit_projection_covariance", covariance_demo(&mut rng(8), n)?);

    let ratios: Vec<f64> = dims.clone().map(alpha_ratio).collect();
    let violations = ratios.windows(2).filter(|w| w[1] < w[0]).count() as f64;
    suite.push("alpha_ratio_monotone", 0.0, violations, violations == 0.0 && ratios[0] == 0.0);

    Ok(VerifyReport { dim_max: config.dim_max, samples: n, seed: config.seed, checks: suite.checks })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_suite_passes() {
        let report = run_suite(&VerifyConfig { dim_max: 4, samples: 5, ..Default::default() }).unwrap();
        assert!(report.all_pass(), "{}", report.summary());
    }

    #[test]
    fn impossible_tolerance_fails() {
        let report = run_suite(&VerifyConfig { dim_max: 3, samples: 3, tol: 1e-30, ..Default::default() }).unwrap();
        assert!(!report.all_pass());
    }

    #[test]
    fn bad_config() {
        assert!(run_suite(&VerifyConfig { dim_max: 1, ..Default::default() }).is_err());
        assert!(run_suite(&VerifyConfig { tol: 0.0, ..Default::default() }).is_err());
    }
}
