//! Geometry of the two-qubit Bell-diagonal family
//! ρ(c) = ¼(I⊗I + c_x σ_x⊗σ_x + c_y σ_y⊗σ_y + c_z σ_z⊗σ_z).
//!
//! The physical states fill a tetrahedron with the Bell projectors at its
//! vertices, the separable states form the double pyramid |c_x|+|c_y|+|c_z| ≤ 1
//! (its intersection with the mirrored tetrahedron), and the KZ ball sits
//! inside the pyramid. Eigenvalues are hard-coded in closed form, with the
//! numerical eigensolver as a permanent cross-check in the tests.
//!
//! Derived vertex ↔ Bell correspondence: Φ+ at (1,−1,1), Φ- at (−1,1,1),
//! Ψ+ at (1,1,−1), Ψ- at (−1,−1,−1).

use crate::criteria;
use crate::linalg::{self, ComplexMatrix};
use crate::states::DensityMatrix;
use crate::{Error, Result, Tolerances};

/// Correlation coordinates (c_x, c_y, c_z).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CVector {
    pub c: [f64; 3],
}

impl CVector {
    pub fn new(cx: f64, cy: f64, cz: f64) -> Self {
        Self { c: [cx, cy, cz] }
    }

    pub fn norm(&self) -> f64 {
        (self.c[0] * self.c[0] + self.c[1] * self.c[1] + self.c[2] * self.c[2]).sqrt()
    }

    /// l1 norm; the double pyramid is `one_norm() <= 1`.
    pub fn one_norm(&self) -> f64 {
        self.c[0].abs() + self.c[1].abs() + self.c[2].abs()
    }
}

/// Classification regions, from outermost to innermost.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RegionLabel {
    Unphysical,
    EntangledTetra,
    SeparablePyramid,
    KzBall,
}

impl RegionLabel {
    pub fn label(&self) -> &'static str {
        match self {
            RegionLabel::Unphysical => "unphysical",
            RegionLabel::EntangledTetra => "entangled-tetra",
            RegionLabel::SeparablePyramid => "separable-pyramid",
            RegionLabel::KzBall => "kz-ball",
        }
    }
}

/// Closed-form eigenvalues of ρ(c), in Bell order (Φ+, Φ-, Ψ+, Ψ-). Their
/// zero-sets are the four face planes of the tetrahedron.
pub fn eigenvalues_of_c(c: &CVector) -> [f64; 4] {
    let [cx, cy, cz] = c.c;
    [
        (1.0 + cx - cy + cz) / 4.0,
        (1.0 - cx + cy + cz) / 4.0,
        (1.0 + cx + cy - cz) / 4.0,
        (1.0 - cx - cy - cz) / 4.0,
    ]
}

/// Build ρ(c); errors when c lies outside the tetrahedron.
pub fn state_from_c(c: &CVector) -> Result<DensityMatrix> {
    state_from_c_with(c, &Tolerances::default())
}

pub fn state_from_c_with(c: &CVector, tol: &Tolerances) -> Result<DensityMatrix> {
    let eigs = eigenvalues_of_c(c);
    if eigs.iter().any(|&v| v < -tol.boundary) {
        return Err(Error::InvalidState(format!(
            "unphysical c = {:?}: eigenvalues {eigs:?}",
            c.c
        )));
    }
    let [sx, sy, sz] = linalg::pauli();
    let mut m = ComplexMatrix::identity(4);
    for (ci, s) in c.c.iter().zip([&sx, &sy, &sz]) {
        m = &m + &s.kron(s).scale_re(*ci);
    }
    DensityMatrix::new_with(m.scale_re(0.25), (2, 2), tol)
}

/// Correlation coordinates c_i = Tr(ρ σ_i⊗σ_i) of any two-qubit state.
pub fn c_from_state(rho: &DensityMatrix) -> Result<CVector> {
    if rho.dims() != (2, 2) {
        return Err(Error::DimensionMismatch(format!(
            "expected dims (2,2), got {:?}",
            rho.dims()
        )));
    }
    let [sx, sy, sz] = linalg::pauli();
    let mut c = [0.0; 3];
    for (ci, s) in c.iter_mut().zip([&sx, &sy, &sz]) {
        *ci = linalg::hs_inner(&s.kron(s), rho.matrix())?.re;
    }
    Ok(CVector { c })
}

/// Classify c into its region. Boundary points fall into the more separable
/// region, so the labeling is deterministic.
pub fn classify(c: &CVector) -> RegionLabel {
    classify_with(c, &Tolerances::default())
}

pub fn classify_with(c: &CVector, tol: &Tolerances) -> RegionLabel {
    let eigs = eigenvalues_of_c(c);
    if eigs.iter().any(|&v| v < -tol.boundary) {
        return RegionLabel::Unphysical;
    }
    // ||ρ(c) - I/4|| = |c|/2, so KZ membership is a radius test in c space
    let state = state_from_c_with(c, tol).expect("eigenvalues checked nonnegative");
    if criteria::kz_ball_member_with(&state, tol) {
        return RegionLabel::KzBall;
    }
    if c.one_norm() <= 1.0 + tol.boundary {
        return RegionLabel::SeparablePyramid;
    }
    RegionLabel::EntangledTetra
}

/// Counts per region over a sample.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct RegionCounts {
    pub unphysical: usize,
    pub entangled: usize,
    pub pyramid: usize,
    pub kz_ball: usize,
}

impl RegionCounts {
    pub fn tally(samples: &[(CVector, RegionLabel)]) -> Self {
        let mut counts = Self::default();
        for (_, label) in samples {
            match label {
                RegionLabel::Unphysical => counts.unphysical += 1,
                RegionLabel::EntangledTetra => counts.entangled += 1,
                RegionLabel::SeparablePyramid => counts.pyramid += 1,
                RegionLabel::KzBall => counts.kz_ball += 1,
            }
        }
        counts
    }

    pub fn physical(&self) -> usize {
        self.entangled + self.pyramid + self.kz_ball
    }

    pub fn separable(&self) -> usize {
        self.pyramid + self.kz_ball
    }
}

/// Enumerate a `resolution`³ grid over [−1,1]³ in fixed index order
/// (z fastest) and classify every point.
pub fn sample_grid(resolution: usize) -> Result<Vec<(CVector, RegionLabel)>> {
    sample_grid_with(resolution, &Tolerances::default())
}

pub fn sample_grid_with(
    resolution: usize,
    tol: &Tolerances,
) -> Result<Vec<(CVector, RegionLabel)>> {
    if resolution < 2 {
        return Err(Error::InvalidArgument(format!(
            "grid resolution {resolution} < 2"
        )));
    }
    let coord = |k: usize| -1.0 + 2.0 * k as f64 / (resolution - 1) as f64;
    let mut out = Vec::with_capacity(resolution.pow(3));
    for ix in 0..resolution {
        for iy in 0..resolution {
            for iz in 0..resolution {
                let c = CVector::new(coord(ix), coord(iy), coord(iz));
                let label = classify_with(&c, tol);
                out.push((c, label));
            }
        }
    }
    Ok(out)
}
