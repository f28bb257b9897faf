use std::fmt::Write as _;

use rayon::prelude::*;
use serde::Serialize;

use super::{analytic_eigenvalues, params_from_probabilities, probabilities_from_params, ProcessParams};
use crate::error::{Error, Result};
use crate::linalg::RngState;
use crate::tol;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Admissibility {
    pub admissible: bool,
    /// Smallest block weight or closed-form eigenvalue; negative means violated.
    pub margin: f64,
    /// `|Σ p_k − 1|`
    pub normalization_error: f64,
}

/// Whether the parameters describe a non-negative output.
///
/// Requires every `p_k` and every closed-form eigenvalue to be at least `-1e-10` and the
/// weights to sum to one within `1e-10`.
pub fn is_admissible(params: &ProcessParams) -> Admissibility {
    let probs = probabilities_from_params(params);
    let eig_min = analytic_eigenvalues(params).iter().map(|e| e.value).fold(f64::INFINITY, f64::min);
    let weights = probs.as_array();
    // No fourth block exists at D = 2.
    let used = if params.dim > 2 { &weights[..] } else { &weights[..3] };
    let margin = used.iter().copied().fold(eig_min, f64::min);
    let normalization_error = (probs.sum() - 1.0).abs();
    Admissibility {
        admissible: margin >= -tol::POSITIVITY && normalization_error <= tol::POSITIVITY,
        margin,
        normalization_error,
    }
}

/// Rejection-sample an admissible parameter point.
///
/// For `D ≥ 3` the weights are uniform on the simplex and `α⁽¹⁾ − α⁽²⁾`, `Im β` are drawn on a
/// scale set by `λ₂−`; for `D = 2` the four parameters are drawn directly.
pub fn random_admissible_params(dim: usize, rng: &mut RngState) -> Result<ProcessParams> {
    if dim < 2 {
        return Err(Error::InvalidDimension { dim, requirement: "D >= 2" });
    }
    let d = dim as f64;
    for _ in 0..100_000 {
        let params = if dim == 2 {
            let mut draw = || rng.uniform_range(-0.15, 0.15);
            let (c, a1, a2, br, bi) = (draw(), draw(), draw(), draw(), draw());
            ProcessParams::new(2, c, a1, a2, num_complex::Complex64::new(br, bi))
        } else {
            let e: Vec<f64> = (0..4).map(|_| -rng.uniform().max(f64::MIN_POSITIVE).ln()).collect();
            let total: f64 = e.iter().sum();
            let p: Vec<f64> = e.iter().map(|x| x / total).collect();
            let scale = p[1] / (2.0 * (d - 1.0) * d);
            let alpha_diff = rng.uniform_range(-scale, scale);
            let beta_imag = rng.uniform_range(-scale, scale) / 2.0;
            params_from_probabilities(p[0], p[2], p[3], alpha_diff, beta_imag, dim)?
        };
        if is_admissible(&params).admissible {
            return Ok(params);
        }
    }
    Err(Error::OutOfRange { name: "admissible sample", value: d, range: "rejection sampling exhausted" })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RegionPoint {
    pub p2: f64,
    pub p3: f64,
    pub p4: f64,
    pub p1: f64,
    pub admissible: bool,
    pub margin: f64,
}

/// Scan the simplex `p₂ + p₃ + p₄ ≤ 1` with step `1/grid` on the slice `α⁽¹⁾ = α⁽²⁾`, `β = β*`.
///
/// Rows are ordered lexicographically by `(p₂, p₃, p₄)` lattice index.
pub fn positivity_region_scan(dim: usize, grid: usize) -> Result<Vec<RegionPoint>> {
    if dim < 3 {
        return Err(Error::InvalidDimension { dim, requirement: "D >= 3 for the region scan" });
    }
    if grid < 1 {
        return Err(Error::OutOfRange { name: "grid", value: grid as f64, range: ">= 1" });
    }
    let mut lattice = Vec::new();
    for a in 0..=grid {
        for b in 0..=(grid - a) {
            for c in 0..=(grid - a - b) {
                lattice.push((a, b, c));
            }
        }
    }
    let n = grid as f64;
    lattice
        .par_iter()
        .map(|&(a, b, c)| {
            let (p2, p3, p4) = (a as f64 / n, b as f64 / n, c as f64 / n);
            let p1 = (grid - a - b - c) as f64 / n;
            let params = params_from_probabilities(p1, p3, p4, 0.0, 0.0, dim)?;
            let adm = is_admissible(&params);
            Ok(RegionPoint { p2, p3, p4, p1, admissible: adm.admissible, margin: adm.margin })
        })
        .collect()
}

/// `p2,p3,p4,p1,admissible,margin` with 12 significant digits.
pub fn region_csv(points: &[RegionPoint]) -> String {
    let mut s = String::from("p2,p3,p4,p1,admissible,margin\n");
    for p in points {
        let _ = writeln!(
            s,
            "{},{},{},{},{},{}",
            fmt_sig(p.p2),
            fmt_sig(p.p3),
            fmt_sig(p.p4),
            fmt_sig(p.p1),
            u8::from(p.admissible),
            fmt_sig(p.margin)
        );
    }
    s
}

/// Scientific notation with 12 significant digits.
pub fn fmt_sig(x: f64) -> String {
    // Avoid "-0.00000000000e0" style output for signed zeros.
    let x = if x == 0.0 { 0.0 } else { x };
    format!("{x:.11e}")
}
