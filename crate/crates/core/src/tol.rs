//! Centralized numerical tolerances.
//!
//! Every threshold used by the library lives here so that a single
//! configuration record controls validation, convergence and decision slack.

/// Named tolerances with library-wide defaults.
#[derive(Debug, Clone, PartialEq)]
pub struct Tolerances {
    /// Maximum allowed deviation from hermiticity on eigensolver inputs.
    pub hermitian: f64,
    /// Off-diagonal Frobenius mass below which the Jacobi sweep stops.
    pub jacobi_off: f64,
    /// Maximum number of Jacobi sweeps.
    pub jacobi_sweeps: usize,
    /// Residual norm below which a Gram-Schmidt candidate is discarded.
    pub gram_schmidt: f64,
    /// Rank tolerance for the algebra-span fixpoint.
    pub algebra_rank: f64,
    /// Slack for density-matrix validation (trace, hermiticity, PSD).
    pub density: f64,
    /// Slack for separability decisions (PPT, witness expectations).
    pub decision: f64,
    /// Slack for the KZ-ball radius comparison and geometry boundaries.
    pub boundary: f64,
    /// Convergence threshold for the alternating product-state oracle.
    pub oracle: f64,
    /// Eigenvalue gap below which eigenvectors count as one degenerate cluster.
    pub degeneracy: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            hermitian: 1e-10,
            jacobi_off: 1e-12,
            jacobi_sweeps: 100,
            gram_schmidt: 1e-9,
            algebra_rank: 1e-8,
            density: 1e-9,
            decision: 1e-9,
            boundary: 1e-12,
            oracle: 1e-10,
            degeneracy: 1e-9,
        }
    }
}

impl Tolerances {
    /// Set a tolerance by name, for CLI `--tol-override NAME=VALUE` support.
    pub fn set(&mut self, name: &str, value: f64) -> Result<(), String> {
        match name {
            "hermitian" => self.hermitian = value,
            "jacobi_off" => self.jacobi_off = value,
            "jacobi_sweeps" => self.jacobi_sweeps = value as usize,
            "gram_schmidt" => self.gram_schmidt = value,
            "algebra_rank" => self.algebra_rank = value,
            "density" => self.density = value,
            "decision" => self.decision = value,
            "boundary" => self.boundary = value,
            "oracle" => self.oracle = value,
            "degeneracy" => self.degeneracy = value,
            _ => return Err(format!("unknown tolerance name: {name}")),
        }
        Ok(())
    }
}
