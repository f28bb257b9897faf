use num_complex::Complex64 as C64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::tol;

/// Coordinates `(C, α⁽¹⁾, α⁽²⁾, β)` of a covariant two-particle process in dimension `D`.
///
/// Any values are constructible; whether they describe a physical (non-negative) output is
/// decided by [`is_admissible`](super::is_admissible).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ProcessParams {
    pub dim: usize,
    #[serde(rename = "C")]
    pub c: f64,
    pub alpha1: f64,
    pub alpha2: f64,
    #[serde(with = "complex_parts")]
    pub beta: C64,
}

impl ProcessParams {
    pub fn new(dim: usize, c: f64, alpha1: f64, alpha2: f64, beta: C64) -> Self {
        Self { dim, c, alpha1, alpha2, beta }
    }

    /// All-zero parameters: the input-independent maximally mixed output.
    pub fn zero(dim: usize) -> Self {
        Self::new(dim, 0.0, 0.0, 0.0, C64::new(0.0, 0.0))
    }

    pub fn alpha_sum(&self) -> f64 {
        self.alpha1 + self.alpha2
    }

    pub fn alpha_diff(&self) -> f64 {
        self.alpha1 - self.alpha2
    }

    /// `β + β*`
    pub fn beta_sum(&self) -> f64 {
        2.0 * self.beta.re
    }

    /// Entrywise convex combination `(1−t)·self + t·other`.
    pub fn lerp(&self, other: &Self, t: f64) -> Self {
        let mix = |a: f64, b: f64| (1.0 - t) * a + t * b;
        Self {
            dim: self.dim,
            c: mix(self.c, other.c),
            alpha1: mix(self.alpha1, other.alpha1),
            alpha2: mix(self.alpha2, other.alpha2),
            beta: self.beta * (1.0 - t) + other.beta * t,
        }
    }
}

mod complex_parts {
    use num_complex::Complex64 as C64;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    #[derive(Serialize, Deserialize)]
    struct Parts {
        re: f64,
        im: f64,
    }

    pub fn serialize<S: Serializer>(z: &C64, s: S) -> Result<S::Ok, S::Error> {
        Parts { re: z.re, im: z.im }.serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<C64, D::Error> {
        let p = Parts::deserialize(d)?;
        Ok(C64::new(p.re, p.im))
    }
}

/// Block weights `p₁..p₄` of the output for the reference input `m = D·e₁₁`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ProbabilityQuadruple {
    pub p1: f64,
    pub p2: f64,
    pub p3: f64,
    pub p4: f64,
}

impl ProbabilityQuadruple {
    pub fn as_array(&self) -> [f64; 4] {
        [self.p1, self.p2, self.p3, self.p4]
    }

    pub fn sum(&self) -> f64 {
        self.p1 + self.p2 + self.p3 + self.p4
    }

    pub fn min(&self) -> f64 {
        self.as_array().into_iter().fold(f64::INFINITY, f64::min)
    }

    /// Every weight at least `-1e-10` and total weight one within `1e-10`.
    pub fn is_valid(&self) -> bool {
        self.min() >= -tol::POSITIVITY && (self.sum() - 1.0).abs() <= tol::POSITIVITY
    }
}

/// Block weights at `m₁₁ = D`. At `D = 2` the `(D−2)` prefactor makes `p₄` vanish.
pub fn probabilities_from_params(params: &ProcessParams) -> ProbabilityQuadruple {
    let d = params.dim as f64;
    let m11 = d;
    let s = params.alpha_sum();
    let c = params.c;
    let bb = params.beta_sum();
    let q = 1.0 - 1.0 / d;

    let p1 = 1.0 / (d * d) + s * m11 * q + c * q + bb * m11 * q * q;
    let p2 = (d - 1.0) * (2.0 / (d * d) + s * m11 * (1.0 - 2.0 / d) - 2.0 * c / d - 2.0 * bb * m11 * q / d);
    let p3 = (d - 1.0) * (1.0 / (d * d) - s * m11 / d + c * q + bb * m11 / (d * d));
    let p4 = if params.dim > 2 {
        (d - 1.0) * (d - 2.0) * (1.0 / (d * d) - s * m11 / d - c / d + bb * m11 / (d * d))
    } else {
        0.0
    };
    ProbabilityQuadruple { p1, p2, p3, p4 }
}

/// Inverse of [`probabilities_from_params`] for `D ≥ 3`.
///
/// `(p₁, p₃, p₄)` fix `β + β*`, `α⁽¹⁾ + α⁽²⁾` and `C`; `alpha_diff` and `beta_imag` supply
/// `α⁽¹⁾ − α⁽²⁾` and `Im β`.
pub fn params_from_probabilities(
    p1: f64,
    p3: f64,
    p4: f64,
    alpha_diff: f64,
    beta_imag: f64,
    dim: usize,
) -> Result<ProcessParams> {
    if dim < 3 {
        return Err(Error::InvalidDimension { dim, requirement: "D >= 3 for probability coordinates" });
    }
    let d = dim as f64;
    let beta_sum = -1.0 / (d * (d - 1.0)) + p4 / ((d - 1.0) * (d - 2.0)) + p1 / (d - 1.0);
    let alpha_sum = ((d - 2.0) / d + p1 - p3 - p4) / (d * (d - 1.0));
    let c = p3 / (d - 1.0) - p4 / ((d - 1.0) * (d - 2.0));
    Ok(ProcessParams {
        dim,
        c,
        alpha1: 0.5 * (alpha_sum + alpha_diff),
        alpha2: 0.5 * (alpha_sum - alpha_diff),
        beta: C64::new(0.5 * beta_sum, beta_imag),
    })
}
