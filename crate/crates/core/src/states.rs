//! Validated quantum-state types and the standard constructors.
//!
//! Constructors never silently renormalize: a matrix that violates the three
//! density properties beyond tolerance is rejected, and [`DensityMatrix::normalized`]
//! exists as the one explicit fixup.

use crate::linalg::{self, hermitian_eig, vec, ComplexMatrix, C64};
use crate::{Error, Result, Tolerances};

/// Density matrix with a bipartite dimension split (d1, d2).
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    matrix: ComplexMatrix,
    dims: (usize, usize),
}

impl DensityMatrix {
    /// Validate trace 1, hermiticity, positive semidefiniteness and the
    /// dimension split, with the default tolerances.
    pub fn new(matrix: ComplexMatrix, dims: (usize, usize)) -> Result<Self> {
        Self::new_with(matrix, dims, &Tolerances::default())
    }

    pub fn new_with(matrix: ComplexMatrix, dims: (usize, usize), tol: &Tolerances) -> Result<Self> {
        let (d1, d2) = dims;
        if d1 == 0 || d2 == 0 || matrix.dim() != d1 * d2 {
            return Err(Error::DimensionMismatch(format!(
                "matrix dim {} does not equal d1*d2 = {}",
                matrix.dim(),
                d1 * d2
            )));
        }
        if !matrix.is_finite() {
            return Err(Error::NonFinite);
        }
        let tr = matrix.trace();
        if (tr.re - 1.0).abs() > tol.density || tr.im.abs() > tol.density {
            return Err(Error::InvalidDensity(format!(
                "trace = {:.12}+{:.3e}i, expected 1",
                tr.re, tr.im
            )));
        }
        let defect = matrix.hermiticity_defect();
        if defect > tol.density {
            return Err(Error::InvalidDensity(format!(
                "not hermitian (max deviation {defect:.3e})"
            )));
        }
        let eig = hermitian_eig(&matrix, tol)?;
        let min = eig.eigenvalues.last().copied().unwrap_or(0.0);
        if min < -tol.density {
            return Err(Error::InvalidDensity(format!(
                "smallest eigenvalue {min:.3e} is negative"
            )));
        }
        Ok(Self { matrix, dims })
    }

    /// Explicitly renormalize a Hermitian PSD matrix with nonzero trace.
    pub fn normalized(matrix: ComplexMatrix, dims: (usize, usize)) -> Result<Self> {
        let tr = matrix.trace();
        if tr.norm() < 1e-14 {
            return Err(Error::InvalidDensity("trace is zero".into()));
        }
        Self::new(matrix.scale(C64::new(1.0, 0.0) / tr), dims)
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    pub fn dims(&self) -> (usize, usize) {
        self.dims
    }

    pub fn dim(&self) -> usize {
        self.matrix.dim()
    }

    pub fn eigenvalues(&self) -> Vec<f64> {
        hermitian_eig(&self.matrix, &Tolerances::default())
            .expect("validated density matrix is hermitian")
            .eigenvalues
    }

    pub fn purity(&self) -> f64 {
        linalg::hs_inner(&self.matrix, &self.matrix).unwrap().re
    }

    /// True iff `||ρ² - ρ|| <= tol`.
    pub fn is_pure(&self, tol: f64) -> bool {
        let sq = &self.matrix * &self.matrix;
        linalg::hs_norm(&(&sq - &self.matrix)) <= tol
    }
}

/// Bipartite pure state: unit-norm amplitudes with a dimension split.
#[derive(Debug, Clone, PartialEq)]
pub struct PureState {
    amplitudes: Vec<C64>,
    dims: (usize, usize),
}

impl PureState {
    pub fn new(amplitudes: Vec<C64>, dims: (usize, usize)) -> Result<Self> {
        Self::new_with(amplitudes, dims, &Tolerances::default())
    }

    pub fn new_with(amplitudes: Vec<C64>, dims: (usize, usize), tol: &Tolerances) -> Result<Self> {
        let (d1, d2) = dims;
        if d1 == 0 || d2 == 0 || amplitudes.len() != d1 * d2 {
            return Err(Error::DimensionMismatch(format!(
                "amplitude length {} does not equal d1*d2 = {}",
                amplitudes.len(),
                d1 * d2
            )));
        }
        if amplitudes.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::NonFinite);
        }
        let n = vec::norm(&amplitudes);
        if (n - 1.0).abs() > tol.density {
            return Err(Error::InvalidState(format!("norm = {n:.12}, expected 1")));
        }
        Ok(Self { amplitudes, dims })
    }

    pub fn amplitudes(&self) -> &[C64] {
        &self.amplitudes
    }

    pub fn dims(&self) -> (usize, usize) {
        self.dims
    }

    pub fn dim(&self) -> usize {
        self.amplitudes.len()
    }

    /// `|ψ><ψ|` as a density matrix.
    pub fn to_density(&self) -> DensityMatrix {
        let m = ComplexMatrix::outer(&self.amplitudes, &self.amplitudes);
        DensityMatrix {
            matrix: m,
            dims: self.dims,
        }
    }
}

/// Bloch vector of a single qubit, `|s| <= 1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BlochVector {
    pub s: [f64; 3],
}

impl BlochVector {
    pub fn new(s: [f64; 3]) -> Result<Self> {
        let n = (s[0] * s[0] + s[1] * s[1] + s[2] * s[2]).sqrt();
        if n > 1.0 + 1e-9 {
            return Err(Error::InvalidState(format!("|s| = {n:.12} > 1")));
        }
        Ok(Self { s })
    }

    pub fn norm(&self) -> f64 {
        (self.s[0] * self.s[0] + self.s[1] * self.s[1] + self.s[2] * self.s[2]).sqrt()
    }
}

/// The four Bell states.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BellState {
    PhiPlus,
    PhiMinus,
    PsiPlus,
    PsiMinus,
}

impl BellState {
    pub const ALL: [BellState; 4] = [
        BellState::PhiPlus,
        BellState::PhiMinus,
        BellState::PsiPlus,
        BellState::PsiMinus,
    ];

    pub fn label(&self) -> &'static str {
        match self {
            BellState::PhiPlus => "phi+",
            BellState::PhiMinus => "phi-",
            BellState::PsiPlus => "psi+",
            BellState::PsiMinus => "psi-",
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "phi+" | "phiplus" | "Φ+" => Ok(BellState::PhiPlus),
            "phi-" | "phiminus" | "Φ-" => Ok(BellState::PhiMinus),
            "psi+" | "psiplus" | "Ψ+" => Ok(BellState::PsiPlus),
            "psi-" | "psiminus" | "Ψ-" => Ok(BellState::PsiMinus),
            other => Err(Error::InvalidArgument(format!("unknown Bell label: {other}"))),
        }
    }
}

/// `|Φ±> = (|↑↑> ± |↓↓>)/√2`, `|Ψ±> = (|↑↓> ± |↓↑>)/√2`.
pub fn bell_state(label: BellState) -> PureState {
    let h = std::f64::consts::FRAC_1_SQRT_2;
    let amps = match label {
        BellState::PhiPlus => [h, 0.0, 0.0, h],
        BellState::PhiMinus => [h, 0.0, 0.0, -h],
        BellState::PsiPlus => [0.0, h, h, 0.0],
        BellState::PsiMinus => [0.0, h, -h, 0.0],
    };
    PureState {
        amplitudes: amps.iter().map(|&x| C64::new(x, 0.0)).collect(),
        dims: (2, 2),
    }
}

/// The tracial state I/(d1·d2), invariant under every unitary.
pub fn tracial(d1: usize, d2: usize) -> DensityMatrix {
    let d = d1 * d2;
    DensityMatrix {
        matrix: ComplexMatrix::identity(d).scale_re(1.0 / d as f64),
        dims: (d1, d2),
    }
}

/// One-qubit state `(I + s·σ)/2`, reported with dims (2, 1).
pub fn from_bloch(s: BlochVector) -> DensityMatrix {
    let [sx, sy, sz] = linalg::pauli();
    let m = &(&(&ComplexMatrix::identity(2) + &sx.scale_re(s.s[0])) + &sy.scale_re(s.s[1]))
        + &sz.scale_re(s.s[2]);
    DensityMatrix {
        matrix: m.scale_re(0.5),
        dims: (2, 1),
    }
}

/// Two-qubit worked example: ρ_U = (I⊗I + σ_x⊗σ_x)/4, spectrum {1/2, 1/2, 0, 0}.
pub fn rho_u() -> DensityMatrix {
    let m = ComplexMatrix::from_real_rows(&[
        vec![1.0, 0.0, 0.0, 1.0],
        vec![0.0, 1.0, 1.0, 0.0],
        vec![0.0, 1.0, 1.0, 0.0],
        vec![1.0, 0.0, 0.0, 1.0],
    ])
    .unwrap()
    .scale_re(0.25);
    DensityMatrix {
        matrix: m,
        dims: (2, 2),
    }
}

/// Two-qubit worked example ρ_V, stored normalized with spectrum
/// {3/8, 3/8, 1/8, 1/8}.
pub fn rho_v() -> DensityMatrix {
    let m = ComplexMatrix::from_real_rows(&[
        vec![1.0, 0.0, 0.0, 0.5],
        vec![0.0, 1.0, 0.5, 0.0],
        vec![0.0, 0.5, 1.0, 0.0],
        vec![0.5, 0.0, 0.0, 1.0],
    ])
    .unwrap()
    .scale_re(0.25);
    DensityMatrix {
        matrix: m,
        dims: (2, 2),
    }
}

/// The entangling unitary K of the worked example.
pub fn k_matrix() -> ComplexMatrix {
    let h = std::f64::consts::FRAC_1_SQRT_2;
    ComplexMatrix::from_real_rows(&[
        vec![h, 0.0, 0.0, h],
        vec![0.0, 1.0, 0.0, 0.0],
        vec![0.0, 0.0, 1.0, 0.0],
        vec![-h, 0.0, 0.0, h],
    ])
    .unwrap()
}

/// ρ_KU = K ρ_U K†, entangled (not PPT).
pub fn rho_ku() -> DensityMatrix {
    let m = rho_u().matrix.conjugate_by(&k_matrix());
    DensityMatrix {
        matrix: m,
        dims: (2, 2),
    }
}

/// ρ_KV = K ρ_V K†, still separable.
pub fn rho_kv() -> DensityMatrix {
    let m = rho_v().matrix.conjugate_by(&k_matrix());
    DensityMatrix {
        matrix: m,
        dims: (2, 2),
    }
}

/// Named worked-example matrices, for the CLI and the golden suite.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PaperState {
    RhoU,
    RhoV,
    RhoKU,
    RhoKV,
}

impl PaperState {
    pub fn parse(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "rho_u" | "rhou" => Ok(PaperState::RhoU),
            "rho_v" | "rhov" => Ok(PaperState::RhoV),
            "rho_ku" | "rhoku" => Ok(PaperState::RhoKU),
            "rho_kv" | "rhokv" => Ok(PaperState::RhoKV),
            other => Err(Error::InvalidArgument(format!("unknown state name: {other}"))),
        }
    }

    pub fn build(&self) -> DensityMatrix {
        match self {
            PaperState::RhoU => rho_u(),
            PaperState::RhoV => rho_v(),
            PaperState::RhoKU => rho_ku(),
            PaperState::RhoKV => rho_kv(),
        }
    }
}
