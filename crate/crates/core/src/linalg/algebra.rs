//! Dimension of the unital associative algebra generated by a set of matrices.

use super::{vec, ComplexMatrix};
use crate::Tolerances;
use num_complex::Complex64;

/// Iterate S <- span(S ∪ {ab : a, b ∈ S}) starting from {I} ∪ generators,
/// tracking the span dimension through an orthonormal basis of flattened
/// matrices, until a fixpoint. The result is at most d².
pub fn algebra_span_dim(generators: &[ComplexMatrix], tol: &Tolerances) -> usize {
    if generators.is_empty() {
        return 1;
    }
    let d = generators[0].dim();
    assert!(generators.iter().all(|g| g.dim() == d));
    let max_dim = d * d;

    // orthonormal basis of the current span, kept both flattened and as
    // matrices so products can be formed
    let mut flat: Vec<Vec<Complex64>> = Vec::new();
    let mut mats: Vec<ComplexMatrix> = Vec::new();

    let try_add = |m: &ComplexMatrix, flat: &mut Vec<Vec<Complex64>>, mats: &mut Vec<ComplexMatrix>| {
        let v = m.flatten();
        let n = vec::norm(&v);
        if n < 1e-14 {
            return false;
        }
        let unit = vec::scale(&v, Complex64::new(1.0 / n, 0.0));
        let mut residual = unit;
        for _ in 0..2 {
            for b in flat.iter() {
                let overlap = vec::inner(b, &residual);
                residual = vec::sub(&residual, &vec::scale(b, overlap));
            }
        }
        let r = vec::norm(&residual);
        if r < tol.algebra_rank {
            return false;
        }
        let unit = vec::scale(&residual, Complex64::new(1.0 / r, 0.0));
        mats.push(ComplexMatrix::from_flat(d, unit.clone()));
        flat.push(unit);
        true
    };

    try_add(&ComplexMatrix::identity(d), &mut flat, &mut mats);
    for g in generators {
        try_add(g, &mut flat, &mut mats);
        if flat.len() == max_dim {
            return max_dim;
        }
    }

    loop {
        let count = mats.len();
        let mut grew = false;
        for i in 0..count {
            for j in 0..count {
                let prod = &mats[i] * &mats[j];
                if try_add(&prod, &mut flat, &mut mats) {
                    grew = true;
                    if flat.len() == max_dim {
                        return max_dim;
                    }
                }
            }
        }
        if !grew {
            break;
        }
    }
    flat.len()
}
