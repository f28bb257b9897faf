//! Entropy, correlation and entanglement diagnostics for the optimal family.
//!
//! All entropies are in nats.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::family::OptimalProcess;
use crate::linalg::{self, ComplexMatrix, Subsystem};
use crate::process::{fmt_sig, TwoParticleState};
use crate::sud::{BlochVector, GeneratorSet, OneParticleState};

/// `x·ln(c/x)` with the continuous extension `0` at `x = 0`.
fn x_ln_ratio(x: f64, c: f64) -> f64 {
    if x <= 0.0 {
        0.0
    } else {
        x * (c / x).ln()
    }
}

fn check_family_point(dim: usize, p4: f64) -> Result<()> {
    OptimalProcess::new(dim, p4).map(|_| ())
}

/// `S(p₄) = p₄ ln((D−1)(D−2)/(2p₄)) + (1−p₄) ln((D−1)/(1−p₄))`; zero for the `D = 2` singlet.
pub fn entropy_analytic(dim: usize, p4: f64) -> Result<f64> {
    check_family_point(dim, p4)?;
    if dim == 2 {
        return Ok(0.0);
    }
    let d = dim as f64;
    Ok(x_ln_ratio(p4, (d - 1.0) * (d - 2.0) / 2.0) + x_ln_ratio(1.0 - p4, d - 1.0))
}

/// `IC(p₄) = ln(4/(1+p₄)) + p₄ ln(2p₄(D−1)/((1+p₄)(D−2)))`, defined for `D ≥ 3`.
pub fn index_of_correlation_analytic(dim: usize, p4: f64) -> Result<f64> {
    check_family_point(dim, p4)?;
    if dim < 3 {
        return Err(Error::InvalidDimension { dim, requirement: "D >= 3 (use the numeric value for D = 2)" });
    }
    let d = dim as f64;
    let tail = if p4 > 0.0 { p4 * (2.0 * p4 * (d - 1.0) / ((1.0 + p4) * (d - 2.0))).ln() } else { 0.0 };
    Ok((4.0 / (1.0 + p4)).ln() + tail)
}

/// `(R₁, R₂) = (Tr₂ ρ, Tr₁ ρ)`
pub fn reduced_states(state: &TwoParticleState) -> (OneParticleState, OneParticleState) {
    (state.reduced(Subsystem::Second), state.reduced(Subsystem::First))
}

/// `1/D + D·α·m_ij A_ij`, the closed-form marginal of a covariant output.
pub fn reduced_state_analytic(alpha: f64, m: &BlochVector) -> ComplexMatrix {
    let d = m.dim();
    let gens = GeneratorSet::new(d).expect("Bloch vectors have D >= 2");
    let local = gens.contract(m.coefficients()).scale_re(d as f64 * alpha);
    &ComplexMatrix::identity(d).scale_re(1.0 / d as f64) + &local
}

/// `S(R₁) + S(R₂) − S(ρ)`
pub fn index_of_correlation_numeric(state: &TwoParticleState) -> f64 {
    let (r1, r2) = reduced_states(state);
    r1.entropy() + r2.entropy() - state.entropy()
}

/// Closed-form partial-transpose eigenvalue as printed, with `{p₄/(D−1)}²` read as
/// `(p₄/(D−1))²`. Reported for comparison only; the numeric spectrum is authoritative.
pub fn lambda_formula(dim: usize, p2: f64, p3: f64, p4: f64) -> f64 {
    let d = dim as f64;
    let bracket = 0.5 - p3 * (d - 2.0) / (2.0 * (d - 1.0)) - p4 / 2.0 - p2 * d / (2.0 * (d - 1.0));
    -p4 / (2.0 * (d - 1.0)) - ((p4 / (d - 1.0)).powi(2) + 4.0 * (d - 1.0) * bracket * bracket).sqrt()
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct NegativityCheck {
    pub min_pt_eigenvalue: f64,
    pub lambda_formula: f64,
}

/// Smallest eigenvalue of the partial transpose of a family output at the reference input,
/// next to the printed closed form evaluated with `p₃ = 0`, `p₂ = 1 − p₄`.
pub fn negativity_check(dim: usize, p4: f64) -> Result<NegativityCheck> {
    let process = OptimalProcess::new(dim, p4)?;
    let rho = process.reference_output();
    let pt = rho.partial_transpose(dim, Subsystem::Second)?;
    Ok(NegativityCheck {
        min_pt_eigenvalue: linalg::min_eigenvalue(&pt)?,
        lambda_formula: lambda_formula(dim, 1.0 - p4, 0.0, p4),
    })
}

/// Closed-form local information of the `p₄ = 0` member, `(D−2)/(4D²(D−1))`.
pub fn alpha_max(dim: usize) -> f64 {
    let d = dim as f64;
    (d - 2.0) / (4.0 * d * d * (d - 1.0))
}

/// Closed-form comparison value for optimal cloning, `(D−2)/(4D²(D−1)) + 1/(2D²(D−1)(D+1))`.
pub fn alpha_clone(dim: usize) -> f64 {
    let d = dim as f64;
    alpha_max(dim) + 1.0 / (2.0 * d * d * (d - 1.0) * (d + 1.0))
}

pub fn alpha_ratio(dim: usize) -> f64 {
    alpha_max(dim) / alpha_clone(dim)
}

/// Everything measured for one family member and one input.
#[derive(Debug, Clone, Serialize)]
pub struct DiagnosticsReport {
    pub dim: usize,
    pub p4: f64,
    pub entropy_numeric: f64,
    pub entropy_analytic: f64,
    pub ic_numeric: f64,
    /// `None` for `D = 2`, where the closed form is degenerate.
    pub ic_analytic: Option<f64>,
    pub min_pt_eigenvalue: f64,
    pub lambda_formula: f64,
    #[serde(skip)]
    pub reduced1: OneParticleState,
    #[serde(skip)]
    pub reduced2: OneParticleState,
    /// `α⁽¹⁾ + α⁽²⁾`
    pub alpha_sum: f64,
    /// `β + β*`
    pub beta_sum: f64,
}

pub fn diagnostics_report(dim: usize, p4: f64, m: &BlochVector) -> Result<DiagnosticsReport> {
    let process = OptimalProcess::new(dim, p4)?;
    let params = process.params();
    let state = process.output_state(m)?;
    let (reduced1, reduced2) = reduced_states(&state);
    let pt = state.partial_transpose();
    Ok(DiagnosticsReport {
        dim,
        p4,
        entropy_numeric: state.entropy(),
        entropy_analytic: entropy_analytic(dim, p4)?,
        ic_numeric: reduced1.entropy() + reduced2.entropy() - state.entropy(),
        ic_analytic: if dim >= 3 { Some(index_of_correlation_analytic(dim, p4)?) } else { None },
        min_pt_eigenvalue: linalg::min_eigenvalue(&pt)?,
        lambda_formula: lambda_formula(dim, 1.0 - p4, 0.0, p4),
        reduced1,
        reduced2,
        alpha_sum: params.alpha_sum(),
        beta_sum: params.beta_sum(),
    })
}

/// `{k/n : k = 0..n} ∪ {(D−2)/D}` (just `{0}` for `D = 2`), sorted and deduplicated.
pub fn p4_grid(dim: usize, n: usize) -> Vec<f64> {
    if dim == 2 {
        return vec![0.0];
    }
    let mut g: Vec<f64> = (0..=n).map(|k| k as f64 / n as f64).collect();
    g.push((dim as f64 - 2.0) / dim as f64);
    g.sort_by(f64::total_cmp);
    g.dedup_by(|a, b| (*a - *b).abs() < 1e-12);
    g
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EntropyScanRow {
    pub dim: usize,
    pub p4: f64,
    pub s_analytic: f64,
    pub s_numeric: f64,
    pub ic_analytic: Option<f64>,
    pub ic_numeric: f64,
    pub min_pt_eig: f64,
}

/// Family diagnostics at the reference input over `p4_grid(D, grid)` for each dimension.
pub fn entropy_scan(dims: std::ops::RangeInclusive<usize>, grid: usize) -> Result<Vec<EntropyScanRow>> {
    use rayon::prelude::*;
    let points: Vec<(usize, f64)> = dims.flat_map(|d| p4_grid(d, grid).into_iter().map(move |p| (d, p))).collect();
    points
        .par_iter()
        .map(|&(d, p4)| {
            let r = diagnostics_report(d, p4, &BlochVector::reference(d))?;
            Ok(EntropyScanRow {
                dim: d,
                p4,
                s_analytic: r.entropy_analytic,
                s_numeric: r.entropy_numeric,
                ic_analytic: r.ic_analytic,
                ic_numeric: r.ic_numeric,
                min_pt_eig: r.min_pt_eigenvalue,
            })
        })
        .collect()
}

/// `D,p4,S_analytic,S_numeric,IC_analytic,IC_numeric,min_pt_eig`; the analytic IC is `nan`
/// for `D = 2`.
pub fn entropy_scan_csv(rows: &[EntropyScanRow]) -> String {
    use std::fmt::Write as _;
    let mut s = String::from("D,p4,S_analytic,S_numeric,IC_analytic,IC_numeric,min_pt_eig\n");
    for r in rows {
        let ic = r.ic_analytic.map(fmt_sig).unwrap_or_else(|| "nan".into());
        let _ = writeln!(
            s,
            "{},{},{},{},{},{},{}",
            r.dim,
            fmt_sig(r.p4),
            fmt_sig(r.s_analytic),
            fmt_sig(r.s_numeric),
            ic,
            fmt_sig(r.ic_numeric),
            fmt_sig(r.min_pt_eig)
        );
    }
    s
}

/// Minimum output entropy over the family and the `p₄` values attaining it (within `1e-12`).
pub fn minimal_entropy(dim: usize) -> Result<(f64, Vec<f64>)> {
    let candidates = if dim == 2 { vec![0.0] } else { vec![0.0, 1.0] };
    let values: Vec<(f64, f64)> =
        candidates.iter().map(|&p| entropy_analytic(dim, p).map(|s| (p, s))).collect::<Result<_>>()?;
    let smin = values.iter().map(|v| v.1).fold(f64::INFINITY, f64::min);
    let argmin = values.iter().filter(|v| (v.1 - smin).abs() < 1e-12).map(|v| v.0).collect();
    Ok((smin, argmin))
}

/// `D,alpha_max,alpha_clone,ratio`
pub fn alpha_ratio_csv(dims: std::ops::RangeInclusive<usize>) -> String {
    use std::fmt::Write as _;
    let mut s = String::from("D,alpha_max,alpha_clone,ratio\n");
    for d in dims {
        let _ = writeln!(s, "{},{},{},{}", d, fmt_sig(alpha_max(d)), fmt_sig(alpha_clone(d)), fmt_sig(alpha_ratio(d)));
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::family::{optimal_output_state, optimal_params};

    #[test]
    fn entropy_endpoints() {
        for d in 3..=8 {
            let df = d as f64;
            assert!((entropy_analytic(d, 0.0).unwrap() - (df - 1.0).ln()).abs() < 1e-15);
            assert!((entropy_analytic(d, 1.0).unwrap() - ((df - 1.0) * (df - 2.0) / 2.0).ln()).abs() < 1e-15);
            let pm = (df - 2.0) / df;
            assert!((entropy_analytic(d, pm).unwrap() - (df * (df - 1.0) / 2.0).ln()).abs() < 1e-14);
        }
        assert_eq!(entropy_analytic(2, 0.0).unwrap(), 0.0);
        assert!(entropy_analytic(2, 0.5).is_err());
    }

    #[test]
    fn ic_endpoints() {
        for d in 3..=8 {
            assert!((index_of_correlation_analytic(d, 0.0).unwrap() - 4f64.ln()).abs() < 1e-15);
        }
        assert!(index_of_correlation_analytic(2, 0.0).is_err());
    }

    #[test]
    fn ic_local_minimum_at_info_erasing_point() {
        for d in 3..=8 {
            let pm = (d as f64 - 2.0) / d as f64;
            let at = index_of_correlation_analytic(d, pm).unwrap();
            for dp in [-0.01, 0.01] {
                let p = pm + dp;
                if (0.0..=1.0).contains(&p) {
                    assert!(index_of_correlation_analytic(d, p).unwrap() > at);
                }
            }
        }
    }

    #[test]
    fn ic_analytic_matches_numeric_d5() {
        let rho = optimal_output_state(5, 0.6, &BlochVector::reference(5)).unwrap();
        let num = index_of_correlation_numeric(&rho);
        assert!((num - index_of_correlation_analytic(5, 0.6).unwrap()).abs() < 1e-9);
    }

    #[test]
    fn reduced_states_match_closed_form() {
        // p₄ = 0, D = 4: α⁽¹⁾ = (D−2)/(2D²(D−1)) = 1/48.
        let m = BlochVector::reference(4);
        let rho = optimal_output_state(4, 0.0, &m).unwrap();
        let (r1, r2) = reduced_states(&rho);
        let alpha = optimal_params(4, 0.0).unwrap().alpha1;
        assert!((alpha - 1.0 / 48.0).abs() < 1e-15);
        let expect = reduced_state_analytic(alpha, &m);
        assert!(r1.matrix().max_abs_diff(&expect) < 1e-12);
        assert!(r2.matrix().max_abs_diff(&expect) < 1e-12);
        let rho = optimal_output_state(4, 0.5, &m).unwrap();
        let (r1, _) = reduced_states(&rho);
        assert!(r1.matrix().max_abs_diff(&ComplexMatrix::identity(4).scale_re(0.25)) < 1e-12);
    }

    #[test]
    fn singlet_negativity() {
        let n = negativity_check(2, 0.0).unwrap();
        assert!((n.min_pt_eigenvalue + 0.5).abs() < 1e-12);
    }

    #[test]
    fn maximally_mixed_control_has_positive_pt() {
        let rho = ComplexMatrix::identity(9).scale_re(1.0 / 9.0);
        let pt = rho.partial_transpose(3, Subsystem::Second).unwrap();
        assert!((linalg::min_eigenvalue(&pt).unwrap() - 1.0 / 9.0).abs() < 1e-14);
    }

    #[test]
    fn alpha_comparison() {
        assert_eq!(alpha_max(2), 0.0);
        assert_eq!(alpha_ratio(2), 0.0);
        assert!((alpha_max(3) - 1.0 / 72.0).abs() < 1e-16);
        assert!(alpha_ratio(16) > 0.99);
        for d in 3..=32 {
            let df = d as f64;
            assert!((1.0 - alpha_ratio(d) - 2.0 / (df * (df - 1.0))).abs() < 1e-14);
        }
    }

    #[test]
    fn grid_contains_special_point() {
        let g = p4_grid(3, 10);
        assert_eq!(g.len(), 12);
        assert!(g.iter().any(|&p| (p - 1.0 / 3.0).abs() < 1e-15));
        assert_eq!(p4_grid(4, 10).len(), 11);
        assert_eq!(p4_grid(2, 10), vec![0.0]);
    }

    #[test]
    fn minimal_entropy_coexistence() {
        assert_eq!(minimal_entropy(4).unwrap().1, vec![0.0, 1.0]);
        assert_eq!(minimal_entropy(3).unwrap().1, vec![1.0]);
        assert_eq!(minimal_entropy(7).unwrap().1, vec![0.0]);
    }

    #[test]
    fn report_fields() {
        let r = diagnostics_report(4, 0.3, &BlochVector::reference(4)).unwrap();
        assert!((r.entropy_numeric - r.entropy_analytic).abs() < 1e-9);
        assert!(r.min_pt_eigenvalue < -1e-6);
        assert!(diagnostics_report(2, 0.0, &BlochVector::reference(2)).unwrap().ic_analytic.is_none());
    }
}
