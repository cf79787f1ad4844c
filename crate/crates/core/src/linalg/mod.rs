//! Dense complex linear algebra sized for dimensions up to ~16.
//!
//! [`ComplexMatrix`] is the universal carrier for operators, unitaries and
//! witnesses. Tensor products use the row-major composite index
//! `i = j * d2 + k` for `|j>_A ⊗ |k>_B`.

mod algebra;
mod eig;
mod gram;
pub mod vec;

pub use algebra::algebra_span_dim;
pub use eig::{hermitian_eig, HermitianEig};
pub use gram::gram_schmidt_complete;

use crate::{Error, Result};
use num_complex::Complex64;
use std::ops::{Add, Index, IndexMut, Mul, Sub};

pub type C64 = Complex64;

/// Which tensor factor an operation acts on.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Subsystem {
    A,
    B,
}

/// Dense square matrix of complex scalars, row-major storage.
#[derive(Clone, PartialEq)]
pub struct ComplexMatrix {
    dim: usize,
    data: Vec<C64>,
}

impl std::fmt::Debug for ComplexMatrix {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "ComplexMatrix({}x{})", self.dim, self.dim)?;
        for i in 0..self.dim {
            for j in 0..self.dim {
                let z = self[(i, j)];
                write!(f, " {:+.4}{:+.4}i", z.re, z.im)?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

impl ComplexMatrix {
    pub fn zeros(dim: usize) -> Self {
        Self {
            dim,
            data: vec![C64::new(0.0, 0.0); dim * dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m[(i, i)] = C64::new(1.0, 0.0);
        }
        m
    }

    pub fn from_rows(rows: &[Vec<C64>]) -> Result<Self> {
        let dim = rows.len();
        if rows.iter().any(|r| r.len() != dim) {
            return Err(Error::DimensionMismatch("matrix must be square".into()));
        }
        let data: Vec<C64> = rows.iter().flatten().copied().collect();
        if data.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::NonFinite);
        }
        Ok(Self { dim, data })
    }

    pub fn from_real_rows(rows: &[Vec<f64>]) -> Result<Self> {
        let complex: Vec<Vec<C64>> = rows
            .iter()
            .map(|r| r.iter().map(|&x| C64::new(x, 0.0)).collect())
            .collect();
        Self::from_rows(&complex)
    }

    pub fn from_diag(diag: &[f64]) -> Self {
        let mut m = Self::zeros(diag.len());
        for (i, &x) in diag.iter().enumerate() {
            m[(i, i)] = C64::new(x, 0.0);
        }
        m
    }

    /// Rank-one matrix `|v><w|`.
    pub fn outer(v: &[C64], w: &[C64]) -> Self {
        let dim = v.len();
        assert_eq!(dim, w.len());
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            for j in 0..dim {
                m[(i, j)] = v[i] * w[j].conj();
            }
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn is_finite(&self) -> bool {
        self.data.iter().all(|z| z.re.is_finite() && z.im.is_finite())
    }

    pub fn row(&self, i: usize) -> &[C64] {
        &self.data[i * self.dim..(i + 1) * self.dim]
    }

    pub fn column(&self, j: usize) -> Vec<C64> {
        (0..self.dim).map(|i| self[(i, j)]).collect()
    }

    pub fn scale(&self, s: C64) -> Self {
        Self {
            dim: self.dim,
            data: self.data.iter().map(|&z| z * s).collect(),
        }
    }

    pub fn scale_re(&self, s: f64) -> Self {
        self.scale(C64::new(s, 0.0))
    }

    pub fn transpose(&self) -> Self {
        let mut m = Self::zeros(self.dim);
        for i in 0..self.dim {
            for j in 0..self.dim {
                m[(j, i)] = self[(i, j)];
            }
        }
        m
    }

    pub fn adjoint(&self) -> Self {
        let mut m = Self::zeros(self.dim);
        for i in 0..self.dim {
            for j in 0..self.dim {
                m[(j, i)] = self[(i, j)].conj();
            }
        }
        m
    }

    pub fn conj(&self) -> Self {
        Self {
            dim: self.dim,
            data: self.data.iter().map(|z| z.conj()).collect(),
        }
    }

    pub fn trace(&self) -> C64 {
        (0..self.dim).map(|i| self[(i, i)]).sum()
    }

    pub fn mul_vec(&self, v: &[C64]) -> Vec<C64> {
        assert_eq!(v.len(), self.dim);
        (0..self.dim)
            .map(|i| self.row(i).iter().zip(v).map(|(&a, &x)| a * x).sum())
            .collect()
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        assert_eq!(self.dim, other.dim);
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    /// Max-abs deviation from hermiticity.
    pub fn hermiticity_defect(&self) -> f64 {
        let mut worst = 0.0f64;
        for i in 0..self.dim {
            for j in i..self.dim {
                worst = worst.max((self[(i, j)] - self[(j, i)].conj()).norm());
            }
        }
        worst
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        self.hermiticity_defect() <= tol
    }

    /// True iff the max-abs entry of `m† m - I` is at most `tol`.
    pub fn is_unitary(&self, tol: f64) -> bool {
        let gram = &self.adjoint() * self;
        gram.max_abs_diff(&Self::identity(self.dim)) <= tol
    }

    /// Kronecker product, row-major composite index `i = j * b.dim + k`.
    pub fn kron(&self, other: &Self) -> Self {
        let (da, db) = (self.dim, other.dim);
        let mut m = Self::zeros(da * db);
        for i in 0..da {
            for j in 0..da {
                let a = self[(i, j)];
                for k in 0..db {
                    for l in 0..db {
                        m[(i * db + k, j * db + l)] = a * other[(k, l)];
                    }
                }
            }
        }
        m
    }

    /// Partial trace over the discarded subsystem; `keep` names the survivor.
    pub fn partial_trace(&self, dims: (usize, usize), keep: Subsystem) -> Result<Self> {
        let (d1, d2) = dims;
        if d1 * d2 != self.dim {
            return Err(Error::DimensionMismatch(format!(
                "dims ({d1},{d2}) do not factor matrix dim {}",
                self.dim
            )));
        }
        match keep {
            Subsystem::A => {
                let mut m = Self::zeros(d1);
                for j in 0..d1 {
                    for jp in 0..d1 {
                        let mut s = C64::new(0.0, 0.0);
                        for k in 0..d2 {
                            s += self[(j * d2 + k, jp * d2 + k)];
                        }
                        m[(j, jp)] = s;
                    }
                }
                Ok(m)
            }
            Subsystem::B => {
                let mut m = Self::zeros(d2);
                for k in 0..d2 {
                    for kp in 0..d2 {
                        let mut s = C64::new(0.0, 0.0);
                        for j in 0..d1 {
                            s += self[(j * d2 + k, j * d2 + kp)];
                        }
                        m[(k, kp)] = s;
                    }
                }
                Ok(m)
            }
        }
    }

    /// Partial transpose with respect to one subsystem.
    pub fn partial_transpose(&self, dims: (usize, usize), which: Subsystem) -> Result<Self> {
        let (d1, d2) = dims;
        if d1 * d2 != self.dim {
            return Err(Error::DimensionMismatch(format!(
                "dims ({d1},{d2}) do not factor matrix dim {}",
                self.dim
            )));
        }
        let mut m = Self::zeros(self.dim);
        for j in 0..d1 {
            for jp in 0..d1 {
                for k in 0..d2 {
                    for kp in 0..d2 {
                        let src = self[(j * d2 + k, jp * d2 + kp)];
                        match which {
                            // transpose the A indices
                            Subsystem::A => m[(jp * d2 + k, j * d2 + kp)] = src,
                            // transpose the B indices
                            Subsystem::B => m[(j * d2 + kp, jp * d2 + k)] = src,
                        }
                    }
                }
            }
        }
        Ok(m)
    }

    /// Unitary conjugation `u * self * u†`.
    pub fn conjugate_by(&self, u: &Self) -> Self {
        &(u * self) * &u.adjoint()
    }

    /// Flatten to a vector in C^{d²} (row-major), for span computations.
    pub fn flatten(&self) -> Vec<C64> {
        self.data.clone()
    }

    pub fn from_flat(dim: usize, data: Vec<C64>) -> Self {
        assert_eq!(data.len(), dim * dim);
        Self { dim, data }
    }
}

impl Index<(usize, usize)> for ComplexMatrix {
    type Output = C64;
    fn index(&self, (i, j): (usize, usize)) -> &C64 {
        &self.data[i * self.dim + j]
    }
}

impl IndexMut<(usize, usize)> for ComplexMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut C64 {
        &mut self.data[i * self.dim + j]
    }
}

impl Add for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn add(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!(self.dim, rhs.dim);
        ComplexMatrix {
            dim: self.dim,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect(),
        }
    }
}

impl Sub for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn sub(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!(self.dim, rhs.dim);
        ComplexMatrix {
            dim: self.dim,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect(),
        }
    }
}

impl Mul for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn mul(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!(self.dim, rhs.dim);
        let n = self.dim;
        let mut m = ComplexMatrix::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = self[(i, k)];
                if a.norm_sqr() == 0.0 {
                    continue;
                }
                for j in 0..n {
                    m[(i, j)] += a * rhs[(k, j)];
                }
            }
        }
        m
    }
}

/// Hilbert-Schmidt inner product `<A|B> = Tr(A† B)`.
pub fn hs_inner(a: &ComplexMatrix, b: &ComplexMatrix) -> Result<C64> {
    if a.dim() != b.dim() {
        return Err(Error::DimensionMismatch(format!(
            "hs_inner: {} vs {}",
            a.dim(),
            b.dim()
        )));
    }
    Ok(a.data.iter().zip(&b.data).map(|(x, y)| x.conj() * y).sum())
}

/// Hilbert-Schmidt (Frobenius) norm.
pub fn hs_norm(a: &ComplexMatrix) -> f64 {
    a.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

/// Hilbert-Schmidt distance `δ(A,B) = ||A - B||`.
pub fn hs_distance(a: &ComplexMatrix, b: &ComplexMatrix) -> Result<f64> {
    if a.dim() != b.dim() {
        return Err(Error::DimensionMismatch(format!(
            "hs_distance: {} vs {}",
            a.dim(),
            b.dim()
        )));
    }
    Ok(hs_norm(&(a - b)))
}

/// The three Pauli matrices.
pub fn pauli() -> [ComplexMatrix; 3] {
    let i = C64::new(0.0, 1.0);
    let o = C64::new(0.0, 0.0);
    let one = C64::new(1.0, 0.0);
    let sx = ComplexMatrix::from_rows(&[vec![o, one], vec![one, o]]).unwrap();
    let sy = ComplexMatrix::from_rows(&[vec![o, -i], vec![i, o]]).unwrap();
    let sz = ComplexMatrix::from_rows(&[vec![one, o], vec![o, -one]]).unwrap();
    [sx, sy, sz]
}

/// Spin operators (S_x, S_y, S_z) of the d-dimensional irreducible
/// representation of su(2), with s = (d-1)/2 and S_z = diag(s, s-1, ..., -s).
pub fn spin_operators(dim: usize) -> [ComplexMatrix; 3] {
    assert!(dim >= 1);
    let s = (dim as f64 - 1.0) / 2.0;
    let mut sz = ComplexMatrix::zeros(dim);
    let mut sp = ComplexMatrix::zeros(dim);
    for k in 0..dim {
        let m = s - k as f64;
        sz[(k, k)] = C64::new(m, 0.0);
        // S+ |s,m> = sqrt(s(s+1) - m(m+1)) |s,m+1>
        if k > 0 {
            let c = (s * (s + 1.0) - m * (m + 1.0)).sqrt();
            sp[(k - 1, k)] = C64::new(c, 0.0);
        }
    }
    let sm = sp.adjoint();
    let sx = (&sp + &sm).scale_re(0.5);
    let sy = (&sp - &sm).scale(C64::new(0.0, -0.5));
    [sx, sy, sz]
}
