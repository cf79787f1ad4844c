//! Cyclic Jacobi eigensolver for complex Hermitian matrices.
//!
//! Each sweep annihilates every off-diagonal pivot with the exact unitary
//! diagonalizing the corresponding 2x2 Hermitian block. Convergence is
//! declared when the off-diagonal Frobenius mass drops below the configured
//! threshold; at the target dimensions (<= 16) a handful of sweeps suffices.

use super::{ComplexMatrix, C64};
use crate::{Error, Result, Tolerances};

/// Eigendecomposition of a Hermitian matrix: real eigenvalues sorted
/// descending, matching orthonormal eigenvectors as matrix columns.
#[derive(Debug, Clone)]
pub struct HermitianEig {
    pub eigenvalues: Vec<f64>,
    pub eigenvectors: ComplexMatrix,
}

impl HermitianEig {
    /// Column `i` of the eigenvector matrix.
    pub fn eigenvector(&self, i: usize) -> Vec<C64> {
        self.eigenvectors.column(i)
    }

    /// `V diag(λ) V†`.
    pub fn reconstruct(&self) -> ComplexMatrix {
        let n = self.eigenvalues.len();
        let mut d = ComplexMatrix::zeros(n);
        for i in 0..n {
            d[(i, i)] = C64::new(self.eigenvalues[i], 0.0);
        }
        (&(&self.eigenvectors * &d)) * &self.eigenvectors.adjoint()
    }
}

fn offdiag_frobenius(a: &ComplexMatrix) -> f64 {
    let n = a.dim();
    let mut s = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                s += a[(i, j)].norm_sqr();
            }
        }
    }
    s.sqrt()
}

pub fn hermitian_eig(m: &ComplexMatrix, tol: &Tolerances) -> Result<HermitianEig> {
    if !m.is_finite() {
        return Err(Error::NonFinite);
    }
    let defect = m.hermiticity_defect();
    if defect > tol.hermitian {
        return Err(Error::NotHermitian(defect));
    }
    let n = m.dim();
    // symmetrize to remove sub-tolerance asymmetry
    let mut a = (&(m + &m.adjoint())).scale_re(0.5);
    let mut v = ComplexMatrix::identity(n);

    let mut converged = n < 2;
    for _ in 0..tol.jacobi_sweeps {
        if offdiag_frobenius(&a) < tol.jacobi_off {
            converged = true;
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                let beta = a[(p, q)];
                if beta.norm() < 1e-300 {
                    continue;
                }
                let alpha = a[(p, p)].re;
                let gamma = a[(q, q)].re;
                let delta = 0.5 * (alpha - gamma);
                let r = (delta * delta + beta.norm_sqr()).sqrt();
                // eigenvectors of [[alpha, beta], [conj(beta), gamma]]:
                // v_k = (beta, l_k - alpha), pairwise orthogonal; the
                // differences r - delta and -(r + delta) are rewritten via
                // |beta|^2/(r ± delta) to dodge cancellation when |beta| << r
                let t1 = if delta >= 0.0 {
                    beta.norm_sqr() / (r + delta)
                } else {
                    r - delta
                };
                let t2 = if delta >= 0.0 {
                    -(r + delta)
                } else {
                    -beta.norm_sqr() / (r - delta)
                };
                let v1 = [beta, C64::new(t1, 0.0)];
                let v2 = [beta, C64::new(t2, 0.0)];
                let n1 = (v1[0].norm_sqr() + v1[1].norm_sqr()).sqrt();
                let n2 = (v2[0].norm_sqr() + v2[1].norm_sqr()).sqrt();
                if n1 < 1e-300 || n2 < 1e-300 {
                    continue;
                }
                let (c1, s1) = (v1[0] / n1, v1[1] / n1);
                let (c2, s2) = (v2[0] / n2, v2[1] / n2);
                // columns p, q of A <- A * J
                for i in 0..n {
                    let aip = a[(i, p)];
                    let aiq = a[(i, q)];
                    a[(i, p)] = aip * c1 + aiq * s1;
                    a[(i, q)] = aip * c2 + aiq * s2;
                }
                // rows p, q of A <- J† * A
                for j in 0..n {
                    let apj = a[(p, j)];
                    let aqj = a[(q, j)];
                    a[(p, j)] = c1.conj() * apj + s1.conj() * aqj;
                    a[(q, j)] = c2.conj() * apj + s2.conj() * aqj;
                }
                a[(p, q)] = C64::new(0.0, 0.0);
                a[(q, p)] = C64::new(0.0, 0.0);
                // accumulate V <- V * J
                for i in 0..n {
                    let vip = v[(i, p)];
                    let viq = v[(i, q)];
                    v[(i, p)] = vip * c1 + viq * s1;
                    v[(i, q)] = vip * c2 + viq * s2;
                }
            }
        }
    }
    if !converged && offdiag_frobenius(&a) >= tol.jacobi_off {
        return Err(Error::NoConvergence(tol.jacobi_sweeps));
    }

    // sort descending, stable in the Jacobi output order
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[(j, j)].re.partial_cmp(&a[(i, i)].re).unwrap());
    let eigenvalues: Vec<f64> = order.iter().map(|&i| a[(i, i)].re).collect();
    let mut vectors = ComplexMatrix::zeros(n);
    for (new, &old) in order.iter().enumerate() {
        for i in 0..n {
            vectors[(i, new)] = v[(i, old)];
        }
    }
    Ok(HermitianEig {
        eigenvalues,
        eigenvectors: vectors,
    })
}
