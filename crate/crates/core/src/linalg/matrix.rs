use std::fmt;
use std::ops::{Add, AddAssign, Index, IndexMut, Mul, Neg, Sub};

use num_complex::Complex64 as C64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Dense complex matrix stored in row-major order.
#[derive(Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "MatrixJson", into = "MatrixJson")]
pub struct ComplexMatrix {
    rows: usize,
    cols: usize,
    data: Vec<C64>,
}

/// Which factor of a bipartite `D ⊗ D` space an operation acts on.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Subsystem {
    First,
    Second,
}

impl ComplexMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, cols, data: vec![C64::new(0.0, 0.0); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = C64::new(1.0, 0.0);
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> C64) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                data.push(f(r, c));
            }
        }
        Self { rows, cols, data }
    }

    pub fn from_row_major(rows: usize, cols: usize, data: Vec<C64>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::dims(rows * cols, data.len()));
        }
        Ok(Self { rows, cols, data })
    }

    pub fn from_real_diagonal(diag: &[f64]) -> Self {
        let mut m = Self::zeros(diag.len(), diag.len());
        for (i, &d) in diag.iter().enumerate() {
            m[(i, i)] = C64::new(d, 0.0);
        }
        m
    }

    /// `|v⟩⟨w|`
    pub fn outer(v: &[C64], w: &[C64]) -> Self {
        Self::from_fn(v.len(), w.len(), |r, c| v[r] * w[c].conj())
    }

    /// `|v⟩⟨v|`
    pub fn projector(v: &[C64]) -> Self {
        Self::outer(v, v)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn as_slice(&self) -> &[C64] {
        &self.data
    }

    pub fn column(&self, c: usize) -> Vec<C64> {
        (0..self.rows).map(|r| self[(r, c)]).collect()
    }

    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |r, c| self[(c, r)].conj())
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |r, c| self[(c, r)])
    }

    pub fn scale(&self, s: C64) -> Self {
        Self { rows: self.rows, cols: self.cols, data: self.data.iter().map(|&x| x * s).collect() }
    }

    pub fn scale_re(&self, s: f64) -> Self {
        self.scale(C64::new(s, 0.0))
    }

    pub fn trace(&self) -> C64 {
        (0..self.rows.min(self.cols)).map(|i| self[(i, i)]).sum()
    }

    /// Largest entry modulus.
    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|x| x.norm()).fold(0.0, f64::max)
    }

    /// Largest entrywise deviation `max |a_ij - b_ij|`; infinite on shape mismatch.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        if self.rows != other.rows || self.cols != other.cols {
            return f64::INFINITY;
        }
        self.data.iter().zip(&other.data).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max)
    }

    /// `max |m - m†|`
    pub fn hermiticity_residual(&self) -> f64 {
        if !self.is_square() {
            return f64::INFINITY;
        }
        let mut worst = 0.0f64;
        for r in 0..self.rows {
            for c in r..self.cols {
                worst = worst.max((self[(r, c)] - self[(c, r)].conj()).norm());
            }
        }
        worst
    }

    /// `(m + m†)/2`
    pub fn hermitian_part(&self) -> Self {
        Self::from_fn(self.rows, self.cols, |r, c| (self[(r, c)] + self[(c, r)].conj()) * 0.5)
    }

    pub fn matmul(&self, rhs: &Self) -> Result<Self> {
        if self.cols != rhs.rows {
            return Err(Error::dims(format!("{} rows", self.cols), format!("{} rows", rhs.rows)));
        }
        let mut out = Self::zeros(self.rows, rhs.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.data[r * self.cols + k];
                if a == C64::new(0.0, 0.0) {
                    continue;
                }
                let row = &rhs.data[k * rhs.cols..(k + 1) * rhs.cols];
                let dst = &mut out.data[r * rhs.cols..(r + 1) * rhs.cols];
                for (d, &b) in dst.iter_mut().zip(row) {
                    *d += a * b;
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[C64]) -> Vec<C64> {
        assert_eq!(self.cols, v.len(), "matrix-vector shape mismatch");
        (0..self.rows)
            .map(|r| self.data[r * self.cols..(r + 1) * self.cols].iter().zip(v).map(|(a, b)| a * b).sum())
            .collect()
    }

    /// `⟨v|m|v⟩`
    pub fn expectation(&self, v: &[C64]) -> C64 {
        let mv = self.mul_vec(v);
        v.iter().zip(&mv).map(|(a, b)| a.conj() * b).sum()
    }

    /// `u · m · u†`
    pub fn conjugate_by(&self, u: &Self) -> Result<Self> {
        u.matmul(self)?.matmul(&u.adjoint())
    }

    /// `Tr(a·b)` without forming the product.
    pub fn trace_product(&self, rhs: &Self) -> Result<C64> {
        if self.cols != rhs.rows || self.rows != rhs.cols {
            return Err(Error::dims(format!("{}x{}", self.cols, self.rows), format!("{}x{}", rhs.rows, rhs.cols)));
        }
        let mut acc = C64::new(0.0, 0.0);
        for r in 0..self.rows {
            for k in 0..self.cols {
                acc += self[(r, k)] * rhs[(k, r)];
            }
        }
        Ok(acc)
    }

    /// Kronecker product with the first factor as the major index: `|ij⟩ = e_i ⊗ e_j`.
    pub fn kron(&self, b: &Self) -> Self {
        let rows = self.rows * b.rows;
        let cols = self.cols * b.cols;
        let mut out = Self::zeros(rows, cols);
        for ar in 0..self.rows {
            for ac in 0..self.cols {
                let a = self[(ar, ac)];
                if a == C64::new(0.0, 0.0) {
                    continue;
                }
                for br in 0..b.rows {
                    for bc in 0..b.cols {
                        out[(ar * b.rows + br, ac * b.cols + bc)] = a * b[(br, bc)];
                    }
                }
            }
        }
        out
    }

    fn check_bipartite(&self, dim: usize) -> Result<()> {
        let n = dim * dim;
        if self.rows != n || self.cols != n {
            return Err(Error::dims(format!("{n}x{n}"), format!("{}x{}", self.rows, self.cols)));
        }
        Ok(())
    }

    /// Trace out one factor of a `D² × D²` operator, returning a `D × D` operator on the other.
    pub fn partial_trace(&self, dim: usize, traced: Subsystem) -> Result<Self> {
        self.check_bipartite(dim)?;
        let d = dim;
        let out = match traced {
            Subsystem::Second => Self::from_fn(d, d, |i, k| (0..d).map(|j| self[(i * d + j, k * d + j)]).sum()),
            Subsystem::First => Self::from_fn(d, d, |j, l| (0..d).map(|i| self[(i * d + j, i * d + l)]).sum()),
        };
        Ok(out)
    }

    /// Transpose the indices of one factor of a `D² × D²` operator.
    pub fn partial_transpose(&self, dim: usize, which: Subsystem) -> Result<Self> {
        self.check_bipartite(dim)?;
        let d = dim;
        let out = Self::from_fn(d * d, d * d, |r, c| {
            let (i, j) = (r / d, r % d);
            let (k, l) = (c / d, c % d);
            match which {
                Subsystem::Second => self[(i * d + l, k * d + j)],
                Subsystem::First => self[(k * d + j, i * d + l)],
            }
        });
        Ok(out)
    }
}

impl Index<(usize, usize)> for ComplexMatrix {
    type Output = C64;
    fn index(&self, (r, c): (usize, usize)) -> &C64 {
        debug_assert!(r < self.rows && c < self.cols);
        &self.data[r * self.cols + c]
    }
}

impl IndexMut<(usize, usize)> for ComplexMatrix {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut C64 {
        debug_assert!(r < self.rows && c < self.cols);
        &mut self.data[r * self.cols + c]
    }
}

impl Add for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn add(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols), "shape mismatch in add");
        ComplexMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect(),
        }
    }
}

impl Sub for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn sub(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols), "shape mismatch in sub");
        ComplexMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect(),
        }
    }
}

impl Neg for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn neg(self) -> ComplexMatrix {
        self.scale_re(-1.0)
    }
}

impl AddAssign<&ComplexMatrix> for ComplexMatrix {
    fn add_assign(&mut self, rhs: &ComplexMatrix) {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols), "shape mismatch in add_assign");
        for (a, b) in self.data.iter_mut().zip(&rhs.data) {
            *a += b;
        }
    }
}

impl Mul for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn mul(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        self.matmul(rhs).expect("shape mismatch in mul")
    }
}

impl fmt::Debug for ComplexMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ComplexMatrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            write!(f, "  ")?;
            for c in 0..self.cols {
                let z = self[(r, c)];
                write!(f, "{:+.4}{:+.4}i ", z.re, z.im)?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}

/// Wire form: `{"rows":N,"cols":M,"re":[...],"im":[...]}`, row-major.
#[derive(Serialize, Deserialize)]
struct MatrixJson {
    rows: usize,
    cols: usize,
    re: Vec<f64>,
    im: Vec<f64>,
}

impl From<ComplexMatrix> for MatrixJson {
    fn from(m: ComplexMatrix) -> Self {
        MatrixJson {
            rows: m.rows,
            cols: m.cols,
            re: m.data.iter().map(|z| z.re).collect(),
            im: m.data.iter().map(|z| z.im).collect(),
        }
    }
}

impl TryFrom<MatrixJson> for ComplexMatrix {
    type Error = Error;
    fn try_from(j: MatrixJson) -> Result<Self> {
        if j.rows == 0 || j.cols == 0 {
            return Err(Error::Schema("rows and cols must be positive".into()));
        }
        if j.re.len() != j.rows * j.cols || j.im.len() != j.rows * j.cols {
            return Err(Error::Schema(format!(
                "expected {} entries, got re={} im={}",
                j.rows * j.cols,
                j.re.len(),
                j.im.len()
            )));
        }
        let data = j.re.iter().zip(&j.im).map(|(&re, &im)| C64::new(re, im)).collect();
        Ok(ComplexMatrix { rows: j.rows, cols: j.cols, data })
    }
}

/// Pauli matrices in the computational basis.
pub mod pauli {
    use super::*;

    pub fn x() -> ComplexMatrix {
        ComplexMatrix::from_fn(2, 2, |r, c| if r != c { C64::new(1.0, 0.0) } else { C64::new(0.0, 0.0) })
    }

    pub fn y() -> ComplexMatrix {
        let mut m = ComplexMatrix::zeros(2, 2);
        m[(0, 1)] = C64::new(0.0, -1.0);
        m[(1, 0)] = C64::new(0.0, 1.0);
        m
    }

    pub fn z() -> ComplexMatrix {
        ComplexMatrix::from_real_diagonal(&[1.0, -1.0])
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64) -> C64 {
        C64::new(re, 0.0)
    }

    #[test]
    fn kron_of_identities_is_identity() {
        let i2 = ComplexMatrix::identity(2);
        assert_eq!(i2.kron(&i2), ComplexMatrix::identity(4));
    }

    #[test]
    fn kron_basis_ordering_first_factor_major() {
        let a = ComplexMatrix::from_real_diagonal(&[1.0, 0.0]);
        let b = ComplexMatrix::from_real_diagonal(&[0.0, 1.0]);
        assert_eq!(a.kron(&b), ComplexMatrix::from_real_diagonal(&[0.0, 1.0, 0.0, 0.0]));
    }

    #[test]
    fn kron_xx_flips_both_qubits() {
        // |11⟩ (1-based) is index 0, |22⟩ is index 3.
        let xx = pauli::x().kron(&pauli::x());
        let v = xx.mul_vec(&[c(1.0), c(0.0), c(0.0), c(0.0)]);
        assert_eq!(v, vec![c(0.0), c(0.0), c(0.0), c(1.0)]);
    }

    #[test]
    fn partial_trace_rejects_wrong_shape() {
        let m = ComplexMatrix::identity(5);
        assert!(matches!(m.partial_trace(2, Subsystem::Second), Err(Error::DimensionMismatch { .. })));
        assert!(m.partial_transpose(2, Subsystem::Second).is_err());
    }

    #[test]
    fn partial_trace_of_product_state() {
        let a = ComplexMatrix::from_fn(3, 3, |r, c| C64::new((r + 2 * c) as f64, (r as f64) - (c as f64)));
        let b = ComplexMatrix::from_real_diagonal(&[0.2, 0.3, 0.5]);
        let ab = a.kron(&b);
        assert!(ab.partial_trace(3, Subsystem::Second).unwrap().max_abs_diff(&a) < 1e-12);
        let a_tr = a.trace();
        let expect_b = b.scale(a_tr);
        assert!(ab.partial_trace(3, Subsystem::First).unwrap().max_abs_diff(&expect_b) < 1e-12);
    }

    #[test]
    fn partial_transpose_of_product_and_involution() {
        let a = ComplexMatrix::from_fn(2, 2, |r, c| C64::new(r as f64 + 1.0, c as f64));
        let b = ComplexMatrix::from_fn(2, 2, |r, c| C64::new((r * 2 + c) as f64, 1.0 - r as f64));
        let pt = a.kron(&b).partial_transpose(2, Subsystem::Second).unwrap();
        assert!(pt.max_abs_diff(&a.kron(&b.transpose())) < 1e-15);
        let pt1 = a.kron(&b).partial_transpose(2, Subsystem::First).unwrap();
        assert!(pt1.max_abs_diff(&a.transpose().kron(&b)) < 1e-15);
        assert_eq!(pt.partial_transpose(2, Subsystem::Second).unwrap(), a.kron(&b));
    }

    #[test]
    fn json_schema_round_trip_and_rejects_bad_lengths() {
        let m = ComplexMatrix::from_fn(2, 3, |r, c| C64::new(r as f64, c as f64));
        let s = serde_json::to_string(&m).unwrap();
        assert!(s.starts_with(r#"{"rows":2,"cols":3,"re":["#));
        let back: ComplexMatrix = serde_json::from_str(&s).unwrap();
        assert_eq!(back, m);
        let bad = r#"{"rows":2,"cols":2,"re":[1,2,3],"im":[0,0,0,0]}"#;
        assert!(serde_json::from_str::<ComplexMatrix>(bad).is_err());
    }

    #[test]
    fn hermitian_part_removes_asymmetry() {
        let mut m = ComplexMatrix::identity(3);
        m[(0, 1)] = C64::new(1.0, 1.0);
        assert!(m.hermiticity_residual() > 1.0);
        assert_eq!(m.hermitian_part().hermiticity_residual(), 0.0);
    }
}
