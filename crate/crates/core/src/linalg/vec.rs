//! Small helpers for complex vectors.

use super::C64;

pub fn inner(a: &[C64], b: &[C64]) -> C64 {
    a.iter().zip(b).map(|(x, y)| x.conj() * y).sum()
}

pub fn norm(a: &[C64]) -> f64 {
    a.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

pub fn scale(a: &[C64], s: C64) -> Vec<C64> {
    a.iter().map(|&z| z * s).collect()
}

pub fn sub(a: &[C64], b: &[C64]) -> Vec<C64> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn normalized(a: &[C64]) -> Vec<C64> {
    let n = norm(a);
    scale(a, C64::new(1.0 / n, 0.0))
}

pub fn basis_vector(dim: usize, index: usize) -> Vec<C64> {
    let mut v = vec![C64::new(0.0, 0.0); dim];
    v[index] = C64::new(1.0, 0.0);
    v
}

pub fn kron_vec(a: &[C64], b: &[C64]) -> Vec<C64> {
    let mut out = Vec::with_capacity(a.len() * b.len());
    for &x in a {
        for &y in b {
            out.push(x * y);
        }
    }
    out
}

/// Rotate by a global phase so the largest-magnitude entry is real positive.
/// Ties break on the lowest index. Used whenever vectors are compared modulo
/// a global phase.
pub fn fix_global_phase(a: &[C64]) -> Vec<C64> {
    let mut best = 0usize;
    let mut best_mag = -1.0f64;
    for (i, z) in a.iter().enumerate() {
        if z.norm() > best_mag + 1e-15 {
            best_mag = z.norm();
            best = i;
        }
    }
    if best_mag <= 0.0 {
        return a.to_vec();
    }
    let phase = a[best] / a[best].norm();
    scale(a, phase.conj())
}

/// Max-abs difference after aligning global phases.
pub fn dist_up_to_phase(a: &[C64], b: &[C64]) -> f64 {
    let fa = fix_global_phase(a);
    let fb = fix_global_phase(b);
    fa.iter()
        .zip(&fb)
        .map(|(x, y)| (x - y).norm())
        .fold(0.0, f64::max)
}
