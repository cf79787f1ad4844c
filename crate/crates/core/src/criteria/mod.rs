//! Separability and entanglement decision procedures: PPT, entanglement
//! witnesses, the KZ ball and two-qubit absolute separability.

mod nearest;

pub use nearest::{nearest_separable, nearest_separable_with, NearestSeparable, SearchParams};

use crate::factorization::schmidt_decompose;
use crate::linalg::{self, hermitian_eig, ComplexMatrix, Subsystem, C64};
use crate::states::{DensityMatrix, PureState};
use crate::{Error, Result, Tolerances};

/// Hermitian operator with Tr(ρ_sep E) >= 0 for every separable ρ_sep.
#[derive(Debug, Clone)]
pub struct Witness {
    e: ComplexMatrix,
}

impl Witness {
    pub fn new(e: ComplexMatrix) -> Result<Self> {
        let defect = e.hermiticity_defect();
        if defect > 1e-9 {
            return Err(Error::NotHermitian(defect));
        }
        Ok(Self { e })
    }

    pub fn operator(&self) -> &ComplexMatrix {
        &self.e
    }
}

/// Certificate attached to an `Entangled` verdict.
#[derive(Debug, Clone)]
pub enum Evidence {
    NegativePtEigenvalue { value: f64, eigenvector: Vec<C64> },
    WitnessViolation { expectation: f64 },
}

/// Outcome of a separability decision.
#[derive(Debug, Clone)]
pub enum Verdict {
    Entangled(Evidence),
    Separable,
    /// PPT held but the criterion is only sufficient in 2x2 and 2x3.
    PptUndecided,
}

impl Verdict {
    pub fn label(&self) -> &'static str {
        match self {
            Verdict::Entangled(_) => "entangled",
            Verdict::Separable => "separable",
            Verdict::PptUndecided => "ppt-undecided",
        }
    }
}

/// Result of the Peres-Horodecki test.
#[derive(Debug, Clone)]
pub struct PptResult {
    pub is_ppt: bool,
    pub min_eigenvalue: f64,
    pub eigenvector: Vec<C64>,
}

/// Peres-Horodecki: a separable state has positive partial transpose, so a
/// negative PT eigenvalue certifies entanglement in any dimension.
pub fn ppt_check(rho: &DensityMatrix) -> PptResult {
    ppt_check_with(rho, &Tolerances::default())
}

pub fn ppt_check_with(rho: &DensityMatrix, tol: &Tolerances) -> PptResult {
    let pt = rho
        .matrix()
        .partial_transpose(rho.dims(), Subsystem::B)
        .expect("density dims are consistent");
    let eig = hermitian_eig(&pt, tol).expect("partial transpose stays hermitian");
    let last = eig.eigenvalues.len() - 1;
    PptResult {
        is_ppt: eig.eigenvalues[last] >= -tol.decision,
        min_eigenvalue: eig.eigenvalues[last],
        eigenvector: eig.eigenvector(last),
    }
}

/// Full decision: PPT failure means entangled everywhere; PPT success means
/// separable only in 2x2 and 2x3, otherwise undecided.
pub fn decide_separability(rho: &DensityMatrix) -> Verdict {
    decide_separability_with(rho, &Tolerances::default())
}

pub fn decide_separability_with(rho: &DensityMatrix, tol: &Tolerances) -> Verdict {
    let ppt = ppt_check_with(rho, tol);
    if !ppt.is_ppt {
        return Verdict::Entangled(Evidence::NegativePtEigenvalue {
            value: ppt.min_eigenvalue,
            eigenvector: ppt.eigenvector,
        });
    }
    let dims = rho.dims();
    let low = matches!(dims, (2, 2) | (2, 3) | (3, 2));
    if low {
        Verdict::Separable
    } else {
        Verdict::PptUndecided
    }
}

/// Tr(ρE); a negative value certifies entanglement for a valid witness.
pub fn witness_eval(rho: &DensityMatrix, w: &Witness) -> Result<f64> {
    if rho.dim() != w.e.dim() {
        return Err(Error::DimensionMismatch(format!(
            "state dim {} vs witness dim {}",
            rho.dim(),
            w.e.dim()
        )));
    }
    Ok(linalg::hs_inner(rho.matrix(), &w.e)?.re)
}

/// The splitted-state witness A = I - dπ for a maximally entangled projector
/// π. Optimal: some product state reaches expectation zero.
pub fn splitted_witness(pi: &DensityMatrix, d: usize) -> Result<Witness> {
    splitted_witness_with(pi, d, &Tolerances::default())
}

pub fn splitted_witness_with(pi: &DensityMatrix, d: usize, tol: &Tolerances) -> Result<Witness> {
    if pi.dims() != (d, d) {
        return Err(Error::DimensionMismatch(format!(
            "projector dims {:?}, expected ({d},{d})",
            pi.dims()
        )));
    }
    let eig = hermitian_eig(pi.matrix(), tol)?;
    if (eig.eigenvalues[0] - 1.0).abs() > tol.density
        || eig.eigenvalues.iter().skip(1).any(|&v| v.abs() > tol.density)
    {
        return Err(Error::InvalidArgument(
            "projector is not rank one".into(),
        ));
    }
    let state = PureState::new_with(eig.eigenvector(0), (d, d), tol)?;
    let form = schmidt_decompose(&state)?;
    let want = 1.0 / (d as f64).sqrt();
    if form.coefficients.iter().any(|&c| (c - want).abs() > 1e-9) {
        return Err(Error::InvalidArgument(format!(
            "projector state is not maximally entangled: schmidt coefficients {:?}",
            form.coefficients
        )));
    }
    let e = &ComplexMatrix::identity(d * d) - &pi.matrix().scale_re(d as f64);
    Witness::new(e)
}

/// The optimal witness built from an entangled state and its nearest
/// separable state: (ρ₀ - ρ_e - <ρ₀|ρ₀-ρ_e> I) / ||ρ₀ - ρ_e||.
pub fn optimal_witness(rho_ent: &DensityMatrix, rho0: &DensityMatrix) -> Result<Witness> {
    if rho_ent.dim() != rho0.dim() {
        return Err(Error::DimensionMismatch(format!(
            "{} vs {}",
            rho_ent.dim(),
            rho0.dim()
        )));
    }
    let diff = rho0.matrix() - rho_ent.matrix();
    let denom = linalg::hs_norm(&diff);
    if denom < 1e-12 {
        return Err(Error::InvalidArgument(
            "states coincide: witness denominator is zero".into(),
        ));
    }
    let shift = linalg::hs_inner(rho0.matrix(), &diff)?.re;
    let e = (&diff - &ComplexMatrix::identity(rho0.dim()).scale_re(shift)).scale_re(1.0 / denom);
    Witness::new(e)
}

/// KZ-ball radius 1/sqrt(D(D-1)) for total dimension D.
pub fn kz_radius(total_dim: usize) -> f64 {
    let d = total_dim as f64;
    1.0 / (d * (d - 1.0)).sqrt()
}

/// True iff the state lies within the KZ ball around the tracial state.
pub fn kz_ball_member(rho: &DensityMatrix) -> bool {
    kz_ball_member_with(rho, &Tolerances::default())
}

pub fn kz_ball_member_with(rho: &DensityMatrix, tol: &Tolerances) -> bool {
    let d = rho.dim();
    let center = ComplexMatrix::identity(d).scale_re(1.0 / d as f64);
    let dist = linalg::hs_distance(rho.matrix(), &center).expect("same dims");
    dist <= kz_radius(d) + tol.boundary
}

/// Left-hand side of the two-qubit absolute-separability inequality
/// ρ₁ - ρ₃ - 2√(ρ₂ρ₄) on the descending spectrum.
pub fn abs_sep_lemma_value(rho: &DensityMatrix) -> Result<f64> {
    if rho.dims() != (2, 2) {
        return Err(Error::DimensionMismatch(format!(
            "two-qubit lemma needs dims (2,2), got {:?}",
            rho.dims()
        )));
    }
    let v = rho.eigenvalues();
    let p2 = v[1].max(0.0);
    let p4 = v[3].max(0.0);
    Ok(v[0] - v[2] - 2.0 * (p2 * p4).sqrt())
}

/// Sufficient condition: a two-qubit state with lemma value <= 0 stays
/// separable under every global unitary.
pub fn absolutely_separable_2q(rho: &DensityMatrix) -> Result<bool> {
    Ok(abs_sep_lemma_value(rho)? <= 1e-12)
}
