//! On-disk formats. Complex numbers are always `[re, im]` pairs; floats go
//! through serde_json's shortest round-trip encoding, so write-then-read
//! reproduces every matrix bit-exactly.

use serde::{Deserialize, Serialize};

use entsep::linalg::{ComplexMatrix, C64};
use entsep::{DensityMatrix, PureState, Tolerances};

use crate::CliError;

pub type Complex = [f64; 2];

pub fn matrix_to_rows(m: &ComplexMatrix) -> Vec<Vec<Complex>> {
    (0..m.dim())
        .map(|i| m.row(i).iter().map(|z| [z.re, z.im]).collect())
        .collect()
}

pub fn rows_to_matrix(rows: &[Vec<Complex>]) -> Result<ComplexMatrix, CliError> {
    let data: Vec<Vec<C64>> = rows
        .iter()
        .map(|r| r.iter().map(|&[re, im]| C64::new(re, im)).collect())
        .collect();
    ComplexMatrix::from_rows(&data).map_err(CliError::invalid)
}

/// A density matrix on disk.
#[derive(Debug, Serialize, Deserialize)]
pub struct StateFile {
    pub dims: [usize; 2],
    pub matrix: Vec<Vec<Complex>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
}

impl StateFile {
    pub fn to_density(&self, tol: &Tolerances) -> Result<DensityMatrix, CliError> {
        let m = rows_to_matrix(&self.matrix)?;
        DensityMatrix::new_with(m, (self.dims[0], self.dims[1]), tol).map_err(CliError::invalid)
    }
}

/// A pure state on disk, as a flat amplitude vector in row-major index
/// order i = j·d2 + k.
#[derive(Debug, Serialize, Deserialize)]
pub struct PureStateFile {
    pub dims: [usize; 2],
    pub amplitudes: Vec<Complex>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
}

impl PureStateFile {
    pub fn to_pure(&self, tol: &Tolerances) -> Result<PureState, CliError> {
        let amps: Vec<C64> = self.amplitudes.iter().map(|&[re, im]| C64::new(re, im)).collect();
        PureState::new_with(amps, (self.dims[0], self.dims[1]), tol).map_err(CliError::invalid)
    }
}

/// A bare unitary on disk (for the tailor `--unitary` override).
#[derive(Debug, Serialize, Deserialize)]
pub struct UnitaryFile {
    pub matrix: Vec<Vec<Complex>>,
}

pub fn read_json<T: for<'de> Deserialize<'de>>(path: &str) -> Result<T, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::invalid(format!("cannot read {path}: {e}")))?;
    serde_json::from_str(&text).map_err(|e| CliError::invalid(format!("malformed {path}: {e}")))
}

pub fn emit(output: Option<&str>, text: &str) -> Result<(), CliError> {
    match output {
        Some(path) => std::fs::write(path, text)
            .map_err(|e| CliError::invalid(format!("cannot write {path}: {e}"))),
        None => {
            println!("{text}");
            Ok(())
        }
    }
}

pub fn to_json<T: Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("reports serialize")
}
