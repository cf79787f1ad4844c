//! Constructive factorization machinery: Schmidt decomposition, tailored
//! observables, the mixed-state separating unitary and the subspace
//! entangling operator.

use crate::linalg::{
    self, gram_schmidt_complete, hermitian_eig, spin_operators, vec, ComplexMatrix, Subsystem, C64,
};
use crate::states::{DensityMatrix, PureState};
use crate::{Error, Result, Tolerances};

/// Schmidt form of a bipartite pure state: nonnegative coefficients sorted
/// descending, orthonormal bases per subsystem.
#[derive(Debug, Clone)]
pub struct SchmidtForm {
    pub coefficients: Vec<f64>,
    pub basis_a: Vec<Vec<C64>>,
    pub basis_b: Vec<Vec<C64>>,
}

impl SchmidtForm {
    /// Σ λ_i |i>_A |i>_B.
    pub fn reconstruct(&self) -> Vec<C64> {
        let d1 = self.basis_a[0].len();
        let d2 = self.basis_b[0].len();
        let mut out = vec![C64::new(0.0, 0.0); d1 * d2];
        for (i, &c) in self.coefficients.iter().enumerate() {
            if c == 0.0 {
                continue;
            }
            let term = vec::kron_vec(&self.basis_a[i], &self.basis_b[i]);
            for (o, t) in out.iter_mut().zip(term) {
                *o += t * c;
            }
        }
        out
    }
}

/// A factorization of C^(k·l): the algebras U(M_k ⊗ I_l)U† and
/// U(I_k ⊗ M_l)U†.
#[derive(Debug, Clone)]
pub struct Factorization {
    pub u: ComplexMatrix,
    pub dims: (usize, usize),
}

impl Factorization {
    pub fn new(u: ComplexMatrix, dims: (usize, usize)) -> Result<Self> {
        if u.dim() != dims.0 * dims.1 {
            return Err(Error::DimensionMismatch(format!(
                "unitary dim {} != k*l = {}",
                u.dim(),
                dims.0 * dims.1
            )));
        }
        if !u.is_unitary(1e-9) {
            let defect = (&u.adjoint() * &u).max_abs_diff(&ComplexMatrix::identity(u.dim()));
            return Err(Error::NotUnitary(defect));
        }
        Ok(Self { u, dims })
    }

    /// `U m U†`.
    pub fn apply(&self, m: &ComplexMatrix) -> ComplexMatrix {
        m.conjugate_by(&self.u)
    }
}

/// Schmidt decomposition via the eigensystem of the reduced density matrix.
/// The coefficient count is min(d1, d2); subsystem-B vectors absorb all
/// phases so the reconstruction matches the input exactly.
pub fn schmidt_decompose(psi: &PureState) -> Result<SchmidtForm> {
    schmidt_decompose_with(psi, &Tolerances::default())
}

pub fn schmidt_decompose_with(psi: &PureState, tol: &Tolerances) -> Result<SchmidtForm> {
    let (d1, d2) = psi.dims();
    let n = d1.min(d2);
    let amps = psi.amplitudes();
    // reduced density on A: (C C†)_{a a'} with C_{ab} = amplitude(a,b)
    let mut rho_a = ComplexMatrix::zeros(d1);
    for a in 0..d1 {
        for ap in 0..d1 {
            let mut s = C64::new(0.0, 0.0);
            for b in 0..d2 {
                s += amps[a * d2 + b] * amps[ap * d2 + b].conj();
            }
            rho_a[(a, ap)] = s;
        }
    }
    let eig = hermitian_eig(&rho_a, tol)?;
    let mut coefficients = Vec::with_capacity(n);
    let mut basis_a = Vec::with_capacity(n);
    let mut basis_b: Vec<Vec<C64>> = Vec::with_capacity(n);
    for i in 0..n {
        let c2 = eig.eigenvalues[i].max(0.0);
        let c = c2.sqrt();
        coefficients.push(c);
        let a_vec = eig.eigenvector(i);
        // |B_i> = (1/λ_i) Σ_b (Σ_a conj(u_i[a]) c_{ab}) |b>
        if c > 1e-12 {
            let mut b_vec = vec![C64::new(0.0, 0.0); d2];
            for b in 0..d2 {
                let mut s = C64::new(0.0, 0.0);
                for a in 0..d1 {
                    s += a_vec[a].conj() * amps[a * d2 + b];
                }
                b_vec[b] = s / c;
            }
            basis_b.push(b_vec);
        }
        basis_a.push(a_vec);
    }
    // complete the B basis for vanishing coefficients
    if basis_b.len() < n {
        let full = gram_schmidt_complete(&basis_b, d2, tol)?;
        basis_b = full.into_iter().take(n).collect();
    }
    Ok(SchmidtForm {
        coefficients,
        basis_a,
        basis_b,
    })
}

/// True iff the second-largest Schmidt coefficient is at most `tol`.
pub fn pure_is_factorized(psi: &PureState, tol: f64) -> bool {
    let form = schmidt_decompose(psi).expect("pure state decomposes");
    form.coefficients.get(1).copied().unwrap_or(0.0) <= tol
}

/// A tailored factorization together with the six algebra generators.
#[derive(Debug, Clone)]
pub struct TailoredFactorization {
    pub factorization: Factorization,
    pub generators_a: [ComplexMatrix; 3],
    pub generators_b: [ComplexMatrix; 3],
}

/// Construct a factorization of C^(k·l) in which `psi` has Schmidt
/// coefficients |λ_i|: map the model state Σ λ_i |i>_A |i>_B onto `psi`
/// through a basis-to-basis unitary, then pull the spin generators of the
/// model factorization back through it. Basis completion is seeded from the
/// canonical basis, which makes the output deterministic.
pub fn tailor(psi: &[C64], k: usize, l: usize, lambdas: &[C64]) -> Result<TailoredFactorization> {
    tailor_with(psi, k, l, lambdas, &Tolerances::default())
}

pub fn tailor_with(
    psi: &[C64],
    k: usize,
    l: usize,
    lambdas: &[C64],
    tol: &Tolerances,
) -> Result<TailoredFactorization> {
    let d = k * l;
    if psi.len() != d {
        return Err(Error::DimensionMismatch(format!(
            "state length {} != k*l = {d}",
            psi.len()
        )));
    }
    if lambdas.len() != k.min(l) {
        return Err(Error::InvalidArgument(format!(
            "need min(k,l) = {} lambdas, got {}",
            k.min(l),
            lambdas.len()
        )));
    }
    if (vec::norm(psi) - 1.0).abs() > tol.density {
        return Err(Error::InvalidState("state is not normalized".into()));
    }
    let lam_norm: f64 = lambdas.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    if (lam_norm - 1.0).abs() > tol.density {
        return Err(Error::InvalidArgument(
            "lambda vector is not normalized".into(),
        ));
    }

    // model state Σ λ_i |i>_A |i>_B in the row-major product basis
    let mut phi = vec![C64::new(0.0, 0.0); d];
    for (i, &lam) in lambdas.iter().enumerate() {
        phi[i * l + i] = lam;
    }
    let model_basis = gram_schmidt_complete(&[phi], d, tol)?;
    let target_basis = gram_schmidt_complete(&[psi.to_vec()], d, tol)?;
    // U maps model basis vectors onto target basis vectors, so U φ = ψ
    let mut u = ComplexMatrix::zeros(d);
    for (m, t) in model_basis.iter().zip(&target_basis) {
        let term = ComplexMatrix::outer(t, m);
        u = &u + &term;
    }
    let factorization = Factorization::new(u, (k, l))?;

    let spins_a = spin_operators(k);
    let spins_b = spin_operators(l);
    let id_k = ComplexMatrix::identity(k);
    let id_l = ComplexMatrix::identity(l);
    let generators_a = [
        factorization.apply(&spins_a[0].kron(&id_l)),
        factorization.apply(&spins_a[1].kron(&id_l)),
        factorization.apply(&spins_a[2].kron(&id_l)),
    ];
    let generators_b = [
        factorization.apply(&id_k.kron(&spins_b[0])),
        factorization.apply(&id_k.kron(&spins_b[1])),
        factorization.apply(&id_k.kron(&spins_b[2])),
    ];
    Ok(TailoredFactorization {
        factorization,
        generators_a,
        generators_b,
    })
}

/// Unitary that diagonalizes `rho` in the product basis: eigenvector i(j,k)
/// is sent to the product basis vector |j>_A ⊗ |k>_B through the row-major
/// bijection i = j·d2 + k. The conjugated state ζ = UρU† is diagonal, hence
/// separable.
pub fn separating_unitary(rho: &DensityMatrix) -> Result<Factorization> {
    separating_unitary_with(rho, &Tolerances::default())
}

pub fn separating_unitary_with(rho: &DensityMatrix, tol: &Tolerances) -> Result<Factorization> {
    let eig = hermitian_eig(rho.matrix(), tol)?;
    let d = rho.dim();
    // U = Σ_i |e_i><v_i| sends eigenvector v_i to basis vector e_i
    let mut u = ComplexMatrix::zeros(d);
    for i in 0..d {
        let v = eig.eigenvector(i);
        for row in 0..d {
            u[(i, row)] = v[row].conj();
        }
    }
    Factorization::new(u, rho.dims())
}

/// Output of [`subspace_entangle`].
#[derive(Debug, Clone)]
pub struct SubspaceEntanglement {
    pub k: ComplexMatrix,
    pub rho_k: DensityMatrix,
    pub entangled: bool,
    /// ρ_K restricted to the chosen 4-dim subspace, in the 2x2 product basis.
    pub restricted: ComplexMatrix,
    /// Partial transpose of the restricted block.
    pub restricted_pt: ComplexMatrix,
    /// Closed-form PT eigenvalues: e1 (doubly degenerate), e2+, e2-.
    pub e1: f64,
    pub e2_plus: f64,
    pub e2_minus: f64,
}

/// Entangle a state over the subspace spanned by eigenvectors 1, d²-2,
/// d²-1 and d² (eigenvalues sorted descending): apply a unitary K that acts
/// as identity outside the subspace and rotates |1> and |d²-1> into the pair
/// (|↑↑> ± |↓↓>)/√2 of a 2x2 product structure on it. The PT of the
/// restricted block goes negative whenever ρ₁ > 3/d².
pub fn subspace_entangle(rho: &DensityMatrix) -> Result<SubspaceEntanglement> {
    subspace_entangle_with(rho, &Tolerances::default())
}

pub fn subspace_entangle_with(
    rho: &DensityMatrix,
    tol: &Tolerances,
) -> Result<SubspaceEntanglement> {
    let (d1, d2) = rho.dims();
    if d1 != d2 {
        return Err(Error::DimensionMismatch(format!(
            "square split required, got ({d1},{d2})"
        )));
    }
    let dd = rho.dim();
    if dd < 4 {
        return Err(Error::DimensionMismatch(
            "need dimension at least 4".into(),
        ));
    }
    let eig = hermitian_eig(rho.matrix(), tol)?;
    let vals = &eig.eigenvalues;
    // proof ordering of the subspace basis: |1>, |d²-2>, |d²>, |d²-1>
    let idx = [0, dd - 3, dd - 1, dd - 2];
    let w: Vec<Vec<C64>> = idx.iter().map(|&i| eig.eigenvector(i)).collect();
    let spectrum = [vals[idx[0]], vals[idx[1]], vals[idx[2]], vals[idx[3]]];

    // K restricted to the subspace, in the (w1..w4) basis
    let h = std::f64::consts::FRAC_1_SQRT_2;
    let block = ComplexMatrix::from_real_rows(&[
        vec![h, 0.0, 0.0, h],
        vec![0.0, 1.0, 0.0, 0.0],
        vec![0.0, 0.0, 1.0, 0.0],
        vec![h, 0.0, 0.0, -h],
    ])
    .unwrap();

    // full-space K: identity plus the block correction on span(w)
    let mut k = ComplexMatrix::identity(dd);
    for m in 0..4 {
        for n in 0..4 {
            let delta = if m == n { C64::new(1.0, 0.0) } else { C64::new(0.0, 0.0) };
            let coeff = block[(m, n)] - delta;
            if coeff.norm() == 0.0 {
                continue;
            }
            let term = ComplexMatrix::outer(&w[m], &w[n]).scale(coeff);
            k = &k + &term;
        }
    }

    let rho_k_matrix = rho.matrix().conjugate_by(&k);
    let rho_k = DensityMatrix::new_with(rho_k_matrix, rho.dims(), tol)?;

    // restricted block of ρ_K in the product basis of the subspace
    let diag = ComplexMatrix::from_diag(&spectrum);
    let restricted = diag.conjugate_by(&block);
    let restricted_pt = restricted.partial_transpose((2, 2), Subsystem::B)?;
    let pt_eig = hermitian_eig(&restricted_pt, tol)?;
    let min_pt = *pt_eig
        .eigenvalues
        .last()
        .expect("4x4 block has eigenvalues");
    let entangled = min_pt < -tol.decision;

    let (r1, ra, rb, r2) = (spectrum[0], spectrum[1], spectrum[2], spectrum[3]);
    let e1 = 0.5 * (r1 + r2);
    let disc = (0.25 * (ra + rb) * (ra + rb) - ra * rb + 0.25 * (r1 - r2) * (r1 - r2)).sqrt();
    let e2_plus = 0.5 * (ra + rb) + disc;
    let e2_minus = 0.5 * (ra + rb) - disc;

    Ok(SubspaceEntanglement {
        k,
        rho_k,
        entangled,
        restricted,
        restricted_pt,
        e1,
        e2_plus,
        e2_minus,
    })
}

/// Schmidt coefficients of `psi` with respect to a factorization: decompose
/// U†ψ over the (k, l) product structure.
pub fn schmidt_in_factorization(psi: &[C64], fact: &Factorization) -> Result<Vec<f64>> {
    let mapped = fact.u.adjoint().mul_vec(psi);
    let state = PureState::new(mapped, fact.dims)?;
    Ok(schmidt_decompose(&state)?.coefficients)
}

/// Max pairwise commutator norm between the two generator families.
pub fn max_cross_commutator(gens_a: &[ComplexMatrix], gens_b: &[ComplexMatrix]) -> f64 {
    let mut worst = 0.0f64;
    for a in gens_a {
        for b in gens_b {
            let comm = &(a * b) - &(b * a);
            worst = worst.max(linalg::hs_norm(&comm));
        }
    }
    worst
}
