//! Numerical thresholds shared across the crate.

/// An operator counts as non-negative iff its smallest eigenvalue is at least `-POSITIVITY`.
pub const POSITIVITY: f64 = 1e-10;

/// Maximum entrywise asymmetry `|m - m†|` accepted by the Hermitian eigensolver.
pub const HERMITICITY: f64 = 1e-9;

/// Purity constraint tolerance for generalized Bloch vectors.
pub const PURITY: f64 = 1e-9;

/// Looser purity check used when an input only needs to be "pure enough" to define a direction.
pub const PURITY_LOOSE: f64 = 1e-6;

/// Probabilities below this are treated as empty blocks.
pub const EMPTY_BLOCK: f64 = 1e-12;

/// Rank cutoff for pseudo-inverses on the support of a density operator.
pub const RANK_CUTOFF: f64 = 1e-10;
