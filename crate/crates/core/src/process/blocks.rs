use num_complex::Complex64 as C64;

use super::{probabilities_from_params, ProbabilityQuadruple, ProcessParams};
use crate::error::{Error, Result};
use crate::linalg::{c64, ComplexMatrix};
use crate::tol;

/// Direct-sum split of `ρ_out(m = D·e₁₁)` into four blocks:
///
/// 1. `|11⟩`
/// 2. `span{|1j⟩, |j1⟩ : j ≥ 2}`
/// 3. `span{|jj⟩ : j ≥ 2}`
/// 4. `span{|ij⟩, |ji⟩ : 2 ≤ i < j}` (empty for `D = 2`)
///
/// Blocks are stored weighted (`p_k ρ_k`) and embedded in the full `D² × D²` space, so the
/// sum is well defined even where some `p_k` vanish.
#[derive(Debug, Clone)]
pub struct BlockDecomposition {
    pub dim: usize,
    pub probs: ProbabilityQuadruple,
    weighted: [ComplexMatrix; 4],
}

impl BlockDecomposition {
    /// `p_k ρ_k` for `k ∈ 1..=4`.
    pub fn weighted_block(&self, k: usize) -> &ComplexMatrix {
        &self.weighted[k - 1]
    }

    /// The normalized block `ρ_k`, or `None` when `p_k ≤ 1e-12`.
    pub fn block(&self, k: usize) -> Option<ComplexMatrix> {
        let p = self.probs.as_array()[k - 1];
        (p > tol::EMPTY_BLOCK).then(|| self.weighted[k - 1].scale_re(1.0 / p))
    }

    /// `Σ_k p_k ρ_k`
    pub fn reconstruct(&self) -> ComplexMatrix {
        let mut out = self.weighted[0].clone();
        for w in &self.weighted[1..] {
            out += w;
        }
        out
    }
}

/// Blocks and weights built from the closed-form block entries at `m₁₁ = D`.
pub fn block_decomposition(params: &ProcessParams) -> Result<BlockDecomposition> {
    let d = params.dim;
    if d < 2 {
        return Err(Error::InvalidDimension { dim: d, requirement: "D >= 2" });
    }
    let df = d as f64;
    let m11 = df;
    let probs = probabilities_from_params(params);
    let n = d * d;
    let idx = |i: usize, j: usize| i * d + j;
    let mut w: [ComplexMatrix; 4] = std::array::from_fn(|_| ComplexMatrix::zeros(n, n));

    w[0][(0, 0)] = c64(probs.p1);

    let diag2 = probs.p2 / (2.0 * (df - 1.0));
    let skew = params.alpha_diff() * m11 / 2.0;
    let coh: C64 = params.beta * m11 + params.c;
    for j in 1..d {
        w[1][(idx(0, j), idx(0, j))] = c64(diag2 + skew);
        w[1][(idx(j, 0), idx(j, 0))] = c64(diag2 - skew);
        w[1][(idx(0, j), idx(j, 0))] = coh;
        w[1][(idx(j, 0), idx(0, j))] = coh.conj();
    }

    for j in 1..d {
        w[2][(idx(j, j), idx(j, j))] = c64(probs.p3 / (df - 1.0));
    }

    if d > 2 {
        let diag4 = probs.p4 / ((df - 1.0) * (df - 2.0));
        for i in 1..d {
            for j in (i + 1)..d {
                w[3][(idx(i, j), idx(i, j))] = c64(diag4);
                w[3][(idx(j, i), idx(j, i))] = c64(diag4);
                w[3][(idx(i, j), idx(j, i))] = c64(params.c);
                w[3][(idx(j, i), idx(i, j))] = c64(params.c);
            }
        }
    }

    Ok(BlockDecomposition { dim: d, probs, weighted: w })
}
