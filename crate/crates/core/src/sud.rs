//! SU(D) generators `A_ij` and the generalized Bloch-vector parametrization of one-particle
//! states, `ρ = (1/D)(1 + m_ij A_ij)` (summed over `i, j`).
//!
//! The `D²` generators are stored in full even though `Σ_i A_ii = 0` makes one redundant.
//! That redundancy also makes `m` non-unique: `m → m + c·1` leaves `ρ` unchanged. Pure
//! inputs use the representative with `Σ_i m_ii = D`, so `|1⟩⟨1|` has `m = D·e₁₁`. This
//! choice matters because the two-particle output depends on `m` itself, not only on `ρ`.

use num_complex::Complex64 as C64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{self, basis, c64, hermitian_eig, ComplexMatrix, RngState};
use crate::tol;

/// The matrices `(A_ij)_{kl} = δ_ik δ_jl − (1/D) δ_ij δ_kl`.
#[derive(Debug, Clone)]
pub struct GeneratorSet {
    dim: usize,
    mats: Vec<ComplexMatrix>,
}

impl GeneratorSet {
    pub fn new(dim: usize) -> Result<Self> {
        if dim < 2 {
            return Err(Error::InvalidDimension { dim, requirement: "D >= 2" });
        }
        let mut mats = Vec::with_capacity(dim * dim);
        for i in 0..dim {
            for j in 0..dim {
                mats.push(generator(dim, i, j));
            }
        }
        Ok(Self { dim, mats })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// `A_ij`, 0-based indices.
    pub fn get(&self, i: usize, j: usize) -> &ComplexMatrix {
        &self.mats[i * self.dim + j]
    }

    /// `[A_ij, A_mn]`
    pub fn commutator(&self, i: usize, j: usize, m: usize, n: usize) -> ComplexMatrix {
        let a = self.get(i, j);
        let b = self.get(m, n);
        &(a * b) - &(b * a)
    }

    /// `δ_jm A_in − δ_in A_mj`
    pub fn commutator_rhs(&self, i: usize, j: usize, m: usize, n: usize) -> ComplexMatrix {
        let mut out = ComplexMatrix::zeros(self.dim, self.dim);
        if j == m {
            out += self.get(i, n);
        }
        if i == n {
            out = &out - self.get(m, j);
        }
        out
    }

    /// `Σ_ij c_ij A_ij`
    pub fn contract(&self, coeffs: &ComplexMatrix) -> ComplexMatrix {
        let mut out = ComplexMatrix::zeros(self.dim, self.dim);
        for i in 0..self.dim {
            for j in 0..self.dim {
                let c = coeffs[(i, j)];
                if c != c64(0.0) {
                    out += &self.get(i, j).scale(c);
                }
            }
        }
        out
    }
}

/// A single generator `A_ij` (0-based).
pub fn generator(dim: usize, i: usize, j: usize) -> ComplexMatrix {
    let mut a = ComplexMatrix::zeros(dim, dim);
    a[(i, j)] = c64(1.0);
    if i == j {
        for k in 0..dim {
            a[(k, k)] -= c64(1.0 / dim as f64);
        }
    }
    a
}

/// Generalized Bloch coefficients `m_ij` with `m_ij* = m_ji`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "BlochJson", into = "BlochJson")]
pub struct BlochVector {
    dim: usize,
    m: ComplexMatrix,
}

impl BlochVector {
    pub fn new(m: ComplexMatrix) -> Result<Self> {
        if !m.is_square() || m.rows() < 2 {
            return Err(Error::InvalidDimension { dim: m.rows(), requirement: "square D x D with D >= 2" });
        }
        let residual = m.hermiticity_residual();
        if residual > tol::HERMITICITY {
            return Err(Error::NotConjugateSymmetric { residual });
        }
        Ok(Self { dim: m.rows(), m })
    }

    pub fn zero(dim: usize) -> Self {
        Self { dim, m: ComplexMatrix::zeros(dim, dim) }
    }

    /// `m = D·e₁₁`, the Bloch vector of `|1⟩⟨1|`.
    pub fn reference(dim: usize) -> Self {
        let mut m = ComplexMatrix::zeros(dim, dim);
        m[(0, 0)] = c64(dim as f64);
        Self { dim, m }
    }

    /// `m = D·|ψ⟩⟨ψ|` for a normalized `ψ`.
    pub fn from_pure_vector(psi: &[C64]) -> Self {
        let dim = psi.len();
        Self { dim, m: ComplexMatrix::projector(psi).scale_re(dim as f64) }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn coefficients(&self) -> &ComplexMatrix {
        &self.m
    }

    /// `m_ij`, 0-based.
    pub fn get(&self, i: usize, j: usize) -> C64 {
        self.m[(i, j)]
    }

    pub fn trace(&self) -> C64 {
        self.m.trace()
    }

    /// `m − (Tr m / D)·1`, the gauge-independent part.
    pub fn traceless_part(&self) -> ComplexMatrix {
        let shift = self.m.trace() / self.dim as f64;
        &self.m - &ComplexMatrix::identity(self.dim).scale(shift)
    }

    /// `Σ|m_ij|² − (1/D)(Σ_i m_ii)²`, which equals `D(D−1)` exactly for pure states.
    pub fn purity_value(&self) -> f64 {
        let sq: f64 = self.m.as_slice().iter().map(|z| z.norm_sqr()).sum();
        let tr = self.m.trace();
        sq - (tr * tr).re / self.dim as f64
    }

    pub fn purity_residual(&self) -> f64 {
        let d = self.dim as f64;
        (self.purity_value() - d * (d - 1.0)).abs()
    }

    pub fn is_pure(&self) -> bool {
        self.purity_residual() <= tol::PURITY
    }

    /// Midpoint `(m + m')/2`.
    pub fn midpoint(&self, other: &Self) -> Result<Self> {
        if self.dim != other.dim {
            return Err(Error::dims(self.dim, other.dim));
        }
        Ok(Self { dim: self.dim, m: (&self.m + &other.m).scale_re(0.5) })
    }

    /// `(U m U†)`, the Bloch vector of the rotated state.
    pub fn rotate(&self, u: &ComplexMatrix) -> Result<Self> {
        Ok(Self { dim: self.dim, m: self.m.conjugate_by(u)? })
    }

    /// State vector `|m⟩` of a pure Bloch vector, with the phase fixed so that its largest
    /// component is real and positive.
    pub fn pure_state_vector(&self) -> Result<Vec<C64>> {
        let residual = self.purity_residual();
        if residual > tol::PURITY_LOOSE {
            return Err(Error::NotPure { residual });
        }
        let rho = bloch_to_operator(self);
        let spec = hermitian_eig(&rho)?;
        let v = spec.eigenvectors.column(0);
        let (k, _) = v.iter().enumerate().max_by(|a, b| a.1.norm().total_cmp(&b.1.norm())).expect("nonempty vector");
        let phase = v[k].conj() / v[k].norm();
        Ok(v.into_iter().map(|z| z * phase).collect())
    }
}

#[derive(Serialize, Deserialize)]
struct BlochJson {
    dim: usize,
    /// Row-major `m_ij` real parts; entry `(i−1)·D + (j−1)` holds `m_ij` for 1-based `i, j`.
    m_re: Vec<f64>,
    m_im: Vec<f64>,
}

impl From<BlochVector> for BlochJson {
    fn from(b: BlochVector) -> Self {
        BlochJson {
            dim: b.dim,
            m_re: b.m.as_slice().iter().map(|z| z.re).collect(),
            m_im: b.m.as_slice().iter().map(|z| z.im).collect(),
        }
    }
}

impl TryFrom<BlochJson> for BlochVector {
    type Error = Error;
    fn try_from(j: BlochJson) -> Result<Self> {
        let n = j.dim * j.dim;
        if j.m_re.len() != n || j.m_im.len() != n {
            return Err(Error::Schema(format!("expected {n} coefficients for dim {}", j.dim)));
        }
        let data = j.m_re.iter().zip(&j.m_im).map(|(&re, &im)| C64::new(re, im)).collect();
        BlochVector::new(ComplexMatrix::from_row_major(j.dim, j.dim, data)?)
    }
}

/// A validated one-particle density operator.
#[derive(Debug, Clone, PartialEq)]
pub struct OneParticleState {
    dim: usize,
    rho: ComplexMatrix,
}

impl OneParticleState {
    /// Validates Hermiticity, unit trace and positivity.
    pub fn new(rho: ComplexMatrix) -> Result<Self> {
        let residual = rho.hermiticity_residual();
        if residual > tol::HERMITICITY {
            return Err(Error::NotHermitian { residual });
        }
        let tr = rho.trace();
        if (tr - c64(1.0)).norm() > 1e-9 {
            return Err(Error::OutOfRange { name: "trace", value: tr.re, range: "must equal 1" });
        }
        let min = hermitian_eig(&rho)?.min();
        if min < -tol::POSITIVITY {
            return Err(Error::NotPositive { min_eigenvalue: min });
        }
        Ok(Self { dim: rho.rows(), rho })
    }

    pub fn pure(psi: &[C64]) -> Self {
        Self { dim: psi.len(), rho: ComplexMatrix::projector(psi) }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.rho
    }

    pub fn into_matrix(self) -> ComplexMatrix {
        self.rho
    }

    pub fn entropy(&self) -> f64 {
        let ev = linalg::eigenvalues(&self.rho).expect("validated Hermitian");
        linalg::entropy_of_spectrum(&ev)
    }
}

/// `(1/D)(1 + m_ij A_ij)` without any positivity check.
pub fn bloch_to_operator(m: &BlochVector) -> ComplexMatrix {
    let d = m.dim;
    let gens = GeneratorSet::new(d).expect("BlochVector has D >= 2");
    (&ComplexMatrix::identity(d) + &gens.contract(&m.m)).scale_re(1.0 / d as f64)
}

/// `ρ = (1/D)(1 + m_ij A_ij)`; fails if the result is not a valid density operator.
pub fn bloch_to_density(m: &BlochVector) -> Result<OneParticleState> {
    OneParticleState::new(bloch_to_operator(m))
}

/// Inverse of [`bloch_to_density`] via `D·Tr(ρ A_ji) = D·ρ_ij − δ_ij`, shifted by `δ_ij` to the
/// `Tr m = D` representative.
pub fn density_to_bloch(rho: &OneParticleState) -> BlochVector {
    let d = rho.dim;
    let gens = GeneratorSet::new(d).expect("state has D >= 2");
    let m = ComplexMatrix::from_fn(d, d, |i, j| {
        let traceless = rho.rho.trace_product(gens.get(j, i)).expect("square") * d as f64;
        if i == j {
            traceless + c64(1.0)
        } else {
            traceless
        }
    });
    BlochVector { dim: d, m }
}

/// Haar-random pure state `U|1⟩⟨1|U†` with its Bloch vector.
pub fn random_pure_input(dim: usize, rng: &mut RngState) -> (OneParticleState, BlochVector) {
    let u = linalg::haar_unitary(dim, rng);
    let psi = u.column(0);
    (OneParticleState::pure(&psi), BlochVector::from_pure_vector(&psi))
}

/// Householder-type unitary with `U|1⟩ = ψ` for a normalized `ψ`.
pub fn unitary_mapping_first_basis_to(psi: &[C64]) -> ComplexMatrix {
    let d = psi.len();
    let theta = if psi[0].norm() > 1e-300 { psi[0] / psi[0].norm() } else { c64(1.0) };
    let mut v: Vec<C64> = psi.iter().map(|z| -z).collect();
    v[0] += theta;
    let vv: f64 = v.iter().map(|z| z.norm_sqr()).sum();
    let mut h = ComplexMatrix::identity(d);
    if vv > 1e-28 {
        h = &h - &ComplexMatrix::outer(&v, &v).scale_re(2.0 / vv);
    }
    let mut phase = ComplexMatrix::identity(d);
    phase[(0, 0)] = theta;
    &h * &phase
}

/// Maps `|1⟩` onto the pure state of `m`.
pub fn unitary_for_bloch(m: &BlochVector) -> Result<ComplexMatrix> {
    Ok(unitary_mapping_first_basis_to(&m.pure_state_vector()?))
}

pub fn basis_state(dim: usize, i: usize) -> OneParticleState {
    OneParticleState::pure(&basis(dim, i))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::pauli;

    fn i() -> C64 {
        C64::new(0.0, 1.0)
    }

    #[test]
    fn rejects_dimension_one() {
        assert!(GeneratorSet::new(1).is_err());
    }

    #[test]
    fn qubit_generators_are_spherical_pauli_components() {
        let g = GeneratorSet::new(2).unwrap();
        assert!(g.get(0, 0).scale_re(2.0).max_abs_diff(&pauli::z()) < 1e-15);
        let plus = &pauli::x() + &pauli::y().scale(i());
        let minus = &pauli::x() - &pauli::y().scale(i());
        assert!(g.get(0, 1).scale_re(2.0).max_abs_diff(&plus) < 1e-15);
        assert!(g.get(1, 0).scale_re(2.0).max_abs_diff(&minus) < 1e-15);
    }

    #[test]
    fn diagonal_generators_sum_to_zero() {
        let g = GeneratorSet::new(3).unwrap();
        let mut s = ComplexMatrix::zeros(3, 3);
        for k in 0..3 {
            s += g.get(k, k);
        }
        assert!(s.max_abs() < 1e-15);
    }

    #[test]
    fn adjoint_relation() {
        let g = GeneratorSet::new(4).unwrap();
        for a in 0..4 {
            for b in 0..4 {
                assert_eq!(g.get(a, b).adjoint(), *g.get(b, a));
            }
        }
    }

    #[test]
    fn commutator_a12_a23_is_a13() {
        let g = GeneratorSet::new(4).unwrap();
        assert!(g.commutator(0, 1, 1, 2).max_abs_diff(g.get(0, 2)) < 1e-15);
    }

    #[test]
    fn zero_bloch_is_maximally_mixed() {
        let rho = bloch_to_density(&BlochVector::zero(4)).unwrap();
        assert!(rho.matrix().max_abs_diff(&ComplexMatrix::identity(4).scale_re(0.25)) < 1e-15);
    }

    #[test]
    fn reference_bloch_is_first_basis_projector() {
        for d in 2..=5 {
            let rho = bloch_to_density(&BlochVector::reference(d)).unwrap();
            assert!(rho.matrix().max_abs_diff(basis_state(d, 0).matrix()) < 1e-14);
            assert!(BlochVector::reference(d).is_pure());
        }
    }

    #[test]
    fn density_to_bloch_examples() {
        let mixed = OneParticleState::new(ComplexMatrix::identity(3).scale_re(1.0 / 3.0)).unwrap();
        assert!(density_to_bloch(&mixed).traceless_part().max_abs() < 1e-15);
        let m = density_to_bloch(&basis_state(3, 0));
        assert!(m.coefficients().max_abs_diff(BlochVector::reference(3).coefficients()) < 1e-14);
    }

    #[test]
    fn unit_qubit_direction_gives_rank_one() {
        // n = (1,2,2)/3; ρ = (1 + n·σ)/2, so m_11 = 1 + n_z, m_12 = n_x − i n_y.
        let (nx, ny, nz) = (1.0 / 3.0, 2.0 / 3.0, 2.0 / 3.0);
        let m = ComplexMatrix::from_row_major(
            2,
            2,
            vec![C64::new(1.0 + nz, 0.0), C64::new(nx, -ny), C64::new(nx, ny), C64::new(1.0 - nz, 0.0)],
        )
        .unwrap();
        let b = BlochVector::new(m).unwrap();
        assert!(b.is_pure());
        let rho = bloch_to_density(&b).unwrap();
        let ev = linalg::eigenvalues(rho.matrix()).unwrap();
        assert!((ev[0] - 1.0).abs() < 1e-12 && ev[1].abs() < 1e-12);
        let expect = (&ComplexMatrix::identity(2)
            + &(&(&pauli::x().scale_re(nx) + &pauli::y().scale_re(ny)) + &pauli::z().scale_re(nz)))
            .scale_re(0.5);
        assert!(rho.matrix().max_abs_diff(&expect) < 1e-14);
    }

    #[test]
    fn non_positive_bloch_vector_is_reported() {
        let mut m = ComplexMatrix::zeros(3, 3);
        m[(0, 0)] = c64(-5.0);
        let b = BlochVector::new(m).unwrap();
        assert!(matches!(bloch_to_density(&b), Err(Error::NotPositive { .. })));
    }

    #[test]
    fn conjugate_symmetry_is_enforced() {
        let mut m = ComplexMatrix::zeros(2, 2);
        m[(0, 1)] = c64(1.0);
        assert!(matches!(BlochVector::new(m), Err(Error::NotConjugateSymmetric { .. })));
    }

    #[test]
    fn random_pure_inputs_are_pure_and_deterministic() {
        let mut rng = RngState::new(11);
        for d in 2..=6 {
            for _ in 0..20 {
                let (rho, m) = random_pure_input(d, &mut rng);
                assert!((linalg::purity(rho.matrix()) - 1.0).abs() < 1e-10);
                assert!(m.purity_residual() < 1e-9);
                assert!(bloch_to_density(&m).unwrap().matrix().max_abs_diff(rho.matrix()) < 1e-12);
            }
        }
        let a = random_pure_input(3, &mut RngState::new(5)).1;
        let b = random_pure_input(3, &mut RngState::new(5)).1;
        assert_eq!(a, b);
    }

    #[test]
    fn householder_maps_first_basis_vector() {
        let mut rng = RngState::new(3);
        for d in 2..=6 {
            let psi = rng.unit_vector(d);
            let u = unitary_mapping_first_basis_to(&psi);
            assert!((&u * &u.adjoint()).max_abs_diff(&ComplexMatrix::identity(d)) < 1e-13);
            let col = u.column(0);
            let err = col.iter().zip(&psi).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max);
            assert!(err < 1e-13);
        }
        let e1 = basis(3, 0);
        assert!(unitary_mapping_first_basis_to(&e1).max_abs_diff(&ComplexMatrix::identity(3)) < 1e-15);
    }

    #[test]
    fn pure_state_vector_recovers_projector() {
        let mut rng = RngState::new(8);
        let (rho, m) = random_pure_input(4, &mut rng);
        let psi = m.pure_state_vector().unwrap();
        assert!(ComplexMatrix::projector(&psi).max_abs_diff(rho.matrix()) < 1e-12);
        assert!(matches!(BlochVector::zero(3).pure_state_vector(), Err(Error::NotPure { .. })));
    }

    #[test]
    fn bloch_json_schema() {
        let b = BlochVector::reference(2);
        let s = serde_json::to_string(&b).unwrap();
        assert_eq!(s, r#"{"dim":2,"m_re":[2.0,0.0,0.0,0.0],"m_im":[0.0,0.0,0.0,0.0]}"#);
        let back: BlochVector = serde_json::from_str(&s).unwrap();
        assert_eq!(back, b);
        assert!(serde_json::from_str::<BlochVector>(r#"{"dim":2,"m_re":[1],"m_im":[0]}"#).is_err());
    }
}
