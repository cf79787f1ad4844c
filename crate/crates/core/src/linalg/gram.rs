//! Gram-Schmidt orthonormalization and basis completion.

use super::{vec, C64};
use crate::{Error, Result, Tolerances};

/// Orthonormalize `seeds` and complete them to a full orthonormal basis of
/// C^dim, taking completion candidates from the canonical basis vectors in
/// index order and discarding candidates whose residual norm falls below the
/// configured threshold. Errors if the seeds are linearly dependent.
pub fn gram_schmidt_complete(
    seeds: &[Vec<C64>],
    dim: usize,
    tol: &Tolerances,
) -> Result<Vec<Vec<C64>>> {
    if seeds.len() > dim {
        return Err(Error::DimensionMismatch(format!(
            "{} seeds exceed dimension {dim}",
            seeds.len()
        )));
    }
    let mut basis: Vec<Vec<C64>> = Vec::with_capacity(dim);
    for seed in seeds {
        if seed.len() != dim {
            return Err(Error::DimensionMismatch(format!(
                "seed length {} != dim {dim}",
                seed.len()
            )));
        }
        match orthonormalize_against(seed, &basis, tol.gram_schmidt) {
            Some(v) => basis.push(v),
            None => return Err(Error::DependentSeeds),
        }
    }
    for index in 0..dim {
        if basis.len() == dim {
            break;
        }
        let candidate = vec::basis_vector(dim, index);
        if let Some(v) = orthonormalize_against(&candidate, &basis, tol.gram_schmidt) {
            basis.push(v);
        }
    }
    debug_assert_eq!(basis.len(), dim);
    Ok(basis)
}

/// Project out the span of `basis` and normalize; `None` when the residual
/// is below `threshold`. Projects twice to keep orthogonality near machine
/// precision.
fn orthonormalize_against(v: &[C64], basis: &[Vec<C64>], threshold: f64) -> Option<Vec<C64>> {
    let mut residual = v.to_vec();
    for _ in 0..2 {
        for b in basis {
            let overlap = vec::inner(b, &residual);
            residual = vec::sub(&residual, &vec::scale(b, overlap));
        }
    }
    let n = vec::norm(&residual);
    if n < threshold {
        None
    } else {
        Some(vec::scale(&residual, C64::new(1.0 / n, 0.0)))
    }
}
