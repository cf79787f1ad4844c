//! Entanglement and separability of small bipartite quantum systems, treated
//! as a property of the chosen factorization of the observable algebra.
//!
//! The crate builds factorizations on demand (tailored observables, separating
//! unitaries, subspace-entangling unitaries) and tests density matrices
//! against the standard separability criteria: partial transpose, entanglement
//! witnesses, the Kuś–Życzkowski ball and the two-qubit absolute-separability
//! inequality. Everything is dense complex linear algebra sized for dimensions
//! up to ~16, with no external LAPACK dependency.

pub mod criteria;
pub mod error;
pub mod factorization;
pub mod geometry;
pub mod linalg;
pub mod sample;
pub mod states;
pub mod teleport;
pub mod tol;

pub use error::Error;
pub use linalg::{ComplexMatrix, HermitianEig, C64};
pub use states::{BellState, BlochVector, DensityMatrix, PureState};
pub use tol::Tolerances;

pub type Result<T> = std::result::Result<T, Error>;
