//! Seeded random sampling of states and unitaries.
//!
//! A density matrix is drawn as ρ = G²/Tr(G²) from a Gaussian Hermitian G;
//! unitaries come from orthonormalizing a complex Gaussian matrix. All
//! sampling is deterministic under a seed.

use crate::linalg::{gram_schmidt_complete, vec, ComplexMatrix, C64};
use crate::states::{DensityMatrix, PureState};
use crate::Tolerances;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn gaussian(rng: &mut ChaCha8Rng) -> f64 {
    // Box-Muller
    loop {
        let u: f64 = rng.gen();
        let v: f64 = rng.gen();
        if u > f64::MIN_POSITIVE {
            return (-2.0 * u.ln()).sqrt() * (2.0 * std::f64::consts::PI * v).cos();
        }
    }
}

fn gaussian_c64(rng: &mut ChaCha8Rng) -> C64 {
    C64::new(gaussian(rng), gaussian(rng))
}

/// Random Hermitian matrix with Gaussian entries.
pub fn random_hermitian(dim: usize, rng: &mut ChaCha8Rng) -> ComplexMatrix {
    let mut m = ComplexMatrix::zeros(dim);
    for i in 0..dim {
        m[(i, i)] = C64::new(gaussian(rng), 0.0);
        for j in (i + 1)..dim {
            let z = gaussian_c64(rng);
            m[(i, j)] = z;
            m[(j, i)] = z.conj();
        }
    }
    m
}

/// Random density matrix ρ = G²/Tr(G²) with G Gaussian Hermitian.
pub fn random_density(dims: (usize, usize), rng: &mut ChaCha8Rng) -> DensityMatrix {
    let g = random_hermitian(dims.0 * dims.1, rng);
    let sq = &g * &g;
    DensityMatrix::normalized(sq, dims).expect("G² is hermitian PSD")
}

/// Haar-ish random unitary: orthonormalized complex Gaussian columns.
pub fn random_unitary(dim: usize, rng: &mut ChaCha8Rng) -> ComplexMatrix {
    let tol = Tolerances::default();
    loop {
        let cols: Vec<Vec<C64>> = (0..dim)
            .map(|_| (0..dim).map(|_| gaussian_c64(rng)).collect())
            .collect();
        if let Ok(basis) = gram_schmidt_complete(&cols, dim, &tol) {
            let mut u = ComplexMatrix::zeros(dim);
            for (j, col) in basis.iter().enumerate() {
                for i in 0..dim {
                    u[(i, j)] = col[i];
                }
            }
            return u;
        }
    }
}

/// Random unit vector in C^dim.
pub fn random_unit_vector(dim: usize, rng: &mut ChaCha8Rng) -> Vec<C64> {
    loop {
        let v: Vec<C64> = (0..dim).map(|_| gaussian_c64(rng)).collect();
        if vec::norm(&v) > 1e-8 {
            return vec::normalized(&v);
        }
    }
}

/// Random bipartite pure state.
pub fn random_pure(dims: (usize, usize), rng: &mut ChaCha8Rng) -> PureState {
    PureState::new(random_unit_vector(dims.0 * dims.1, rng), dims).expect("unit norm")
}

/// Random product pure state |φ>⊗|ψ>.
pub fn random_product_pure(dims: (usize, usize), rng: &mut ChaCha8Rng) -> PureState {
    let a = random_unit_vector(dims.0, rng);
    let b = random_unit_vector(dims.1, rng);
    PureState::new(vec::kron_vec(&a, &b), dims).expect("unit norm")
}
