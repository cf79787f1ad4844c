//! Teleportation of a d-level state through a maximally entangled resource.
//!
//! A resource |φ> with coefficient matrix R (φ = Σ R[j,k] |jk>) is maximally
//! entangled iff √d·R is unitary; that unitary transposed is the isometry
//! J_AB pairing Alice's basis with Bob's. Alice measures in the generalized
//! Bell basis |B_m> = (V_m ⊗ I)|Φ+> with V_m = Z^q X^p, m = p·d + q; Bob's
//! conditional state is w_m = (1/d)·J_AB·V_m†·ψ and the correction
//! U_m = V_m·J_AB† recovers ψ exactly, phase included. For d = 2 the index
//! order m = 0..3 is Φ+, Φ-, Ψ+, Ψ-.

use crate::factorization::schmidt_decompose;
use crate::linalg::{vec, ComplexMatrix, C64};
use crate::sample;
use crate::states::{bell_state, BellState, PureState};
use crate::{Error, Result, Tolerances};
use rand::Rng;

/// Maximally entangled resource state with its decoding isometry J_AB.
#[derive(Debug, Clone)]
pub struct ResourceState {
    state: PureState,
    isometry: ComplexMatrix,
}

impl ResourceState {
    pub fn new(state: PureState) -> Result<Self> {
        Self::new_with(state, &Tolerances::default())
    }

    pub fn new_with(state: PureState, tol: &Tolerances) -> Result<Self> {
        let (d1, d2) = state.dims();
        if d1 != d2 {
            return Err(Error::DimensionMismatch(format!(
                "resource needs equal local dims, got ({d1},{d2})"
            )));
        }
        let d = d1;
        let form = schmidt_decompose(&state)?;
        let want = 1.0 / (d as f64).sqrt();
        if form.coefficients.iter().any(|&c| (c - want).abs() > 1e-9) {
            return Err(Error::InvalidState(format!(
                "resource is not maximally entangled: schmidt coefficients {:?}, expected all {want:.9}",
                form.coefficients
            )));
        }
        // J_AB = √d · Rᵀ with R the coefficient matrix
        let mut j = ComplexMatrix::zeros(d);
        let amps = state.amplitudes();
        let root_d = (d as f64).sqrt();
        for a in 0..d {
            for b in 0..d {
                j[(b, a)] = amps[a * d + b] * root_d;
            }
        }
        let _ = tol;
        Ok(Self { state, isometry: j })
    }

    /// The d = 2 Bell resources.
    pub fn bell(label: BellState) -> Self {
        Self::new(bell_state(label)).expect("Bell states are maximally entangled")
    }

    /// The canonical resource |Φ+>_d = Σ|kk>/√d.
    pub fn canonical(d: usize) -> Result<Self> {
        if d < 2 {
            return Err(Error::InvalidArgument("resource needs d >= 2".into()));
        }
        let mut amps = vec![C64::new(0.0, 0.0); d * d];
        let a = 1.0 / (d as f64).sqrt();
        for k in 0..d {
            amps[k * d + k] = C64::new(a, 0.0);
        }
        Self::new(PureState::new(amps, (d, d))?)
    }

    pub fn state(&self) -> &PureState {
        &self.state
    }

    pub fn isometry(&self) -> &ComplexMatrix {
        &self.isometry
    }

    pub fn dim(&self) -> usize {
        self.isometry.dim()
    }
}

/// Alice's measurement outcome, sent to Bob as ⌈log₂ d²⌉ classical bits.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ClassicalMessage {
    pub outcome: usize,
    pub dim: usize,
}

impl ClassicalMessage {
    pub fn new(outcome: usize, dim: usize) -> Result<Self> {
        if outcome >= dim * dim {
            return Err(Error::InvalidArgument(format!(
                "outcome {outcome} out of range [0, {})",
                dim * dim
            )));
        }
        Ok(Self { outcome, dim })
    }

    /// Number of classical bits the message occupies.
    pub fn bits(&self) -> u32 {
        let n = (self.dim * self.dim) as u32;
        u32::BITS - (n - 1).leading_zeros()
    }
}

/// One full protocol run for a single forced or sampled outcome.
#[derive(Debug, Clone)]
pub struct ProtocolTrace {
    pub input: PureState,
    pub outcome: ClassicalMessage,
    pub probability: f64,
    pub bob_before: PureState,
    pub correction: ComplexMatrix,
    pub bob_after: PureState,
    pub fidelity: f64,
}

/// How Alice's outcome is chosen.
#[derive(Debug, Clone, Copy)]
pub enum OutcomeSelector {
    Forced(usize),
    Random { seed: u64 },
}

/// One term of the Bell-basis expansion: Bob's conditional state with the
/// scalar amplitude in front of it.
#[derive(Debug, Clone)]
pub struct BellTerm {
    pub index: usize,
    pub conditional: Vec<C64>,
    pub amplitude: C64,
}

/// Generalized Bell-basis unitary V_m = Z^q · X^p for m = p·d + q.
pub fn bell_basis_unitary(d: usize, m: usize) -> Result<ComplexMatrix> {
    if m >= d * d {
        return Err(Error::InvalidArgument(format!(
            "Bell index {m} out of range [0, {})",
            d * d
        )));
    }
    let (p, q) = (m / d, m % d);
    let omega = 2.0 * std::f64::consts::PI / d as f64;
    let mut v = ComplexMatrix::zeros(d);
    // Z^q X^p in one pass: |k> -> ω^{q(k+p)} |k+p>
    for k in 0..d {
        let row = (k + p) % d;
        v[(row, k)] = C64::from_polar(1.0, omega * (q * row) as f64);
    }
    Ok(v)
}

/// Bob's unnormalized conditional state w_m = (1/d)·J·V_m†·ψ.
fn conditional(psi: &[C64], resource: &ResourceState, m: usize) -> Result<Vec<C64>> {
    let d = resource.dim();
    let v = bell_basis_unitary(d, m)?;
    let w = resource.isometry.mul_vec(&v.adjoint().mul_vec(psi));
    Ok(vec::scale(&w, C64::new(1.0 / d as f64, 0.0)))
}

/// Expand ψ ⊗ φ over Alice's Bell basis: d² terms of amplitude times Bob
/// conditional. Conditionals are unit norm with the largest entry made real
/// positive; the amplitude carries the rest.
pub fn decompose_over_bell(psi: &PureState, resource: &ResourceState) -> Result<Vec<BellTerm>> {
    let d = resource.dim();
    if psi.dims() != (d, 1) {
        return Err(Error::DimensionMismatch(format!(
            "input dims {:?}, expected ({d}, 1)",
            psi.dims()
        )));
    }
    let mut terms = Vec::with_capacity(d * d);
    for m in 0..d * d {
        let w = conditional(psi.amplitudes(), resource, m)?;
        let norm = vec::norm(&w);
        let unit = vec::fix_global_phase(&vec::normalized(&w));
        // amplitude · conditional reproduces w exactly
        let k = (0..d).max_by(|&a, &b| unit[a].norm().total_cmp(&unit[b].norm())).unwrap();
        let phase = w[k] / (unit[k] * norm);
        terms.push(BellTerm {
            index: m,
            conditional: unit,
            amplitude: phase * norm,
        });
    }
    Ok(terms)
}

/// Bob's correction unitary U_m = V_m · J_AB†.
pub fn correction_for(outcome: ClassicalMessage, resource: &ResourceState) -> Result<ComplexMatrix> {
    let d = resource.dim();
    if outcome.dim != d {
        return Err(Error::DimensionMismatch(format!(
            "message dim {} vs resource dim {d}",
            outcome.dim
        )));
    }
    let v = bell_basis_unitary(d, outcome.outcome)?;
    Ok(&v * &resource.isometry.adjoint())
}

/// Composition of decoding isometries, J_AB ∘ J_CA = J_CB.
pub fn compose_isometries(j_ab: &ComplexMatrix, j_ca: &ComplexMatrix) -> Result<ComplexMatrix> {
    if j_ab.dim() != j_ca.dim() {
        return Err(Error::DimensionMismatch(format!(
            "{} vs {}",
            j_ab.dim(),
            j_ca.dim()
        )));
    }
    Ok(j_ab * j_ca)
}

/// Run the protocol once: Alice measures, the two-bit message crosses, Bob
/// corrects. The exchange is an explicit value pass (`ClassicalMessage`), so
/// runs are independent pure computations.
pub fn run_protocol(
    psi: &PureState,
    resource: &ResourceState,
    selector: OutcomeSelector,
) -> Result<ProtocolTrace> {
    let d = resource.dim();
    if psi.dims() != (d, 1) {
        return Err(Error::DimensionMismatch(format!(
            "input dims {:?}, expected ({d}, 1)",
            psi.dims()
        )));
    }
    let probabilities: Vec<f64> = (0..d * d)
        .map(|m| Ok(vec::norm(&conditional(psi.amplitudes(), resource, m)?).powi(2)))
        .collect::<Result<_>>()?;
    let m = match selector {
        OutcomeSelector::Forced(m) => {
            if m >= d * d {
                return Err(Error::InvalidArgument(format!(
                    "outcome {m} out of range [0, {})",
                    d * d
                )));
            }
            m
        }
        OutcomeSelector::Random { seed } => {
            let mut rng = sample::rng(seed);
            let u: f64 = rng.gen();
            let mut acc = 0.0;
            let mut chosen = d * d - 1;
            for (i, &p) in probabilities.iter().enumerate() {
                acc += p;
                if u < acc {
                    chosen = i;
                    break;
                }
            }
            chosen
        }
    };
    let outcome = ClassicalMessage::new(m, d)?;
    let w = conditional(psi.amplitudes(), resource, m)?;
    let before = PureState::new(vec::normalized(&w), (d, 1))?;
    let correction = correction_for(outcome, resource)?;
    let after_raw = correction.mul_vec(before.amplitudes());
    let after = PureState::new(vec::normalized(&after_raw), (d, 1))?;
    let fidelity = vec::inner(psi.amplitudes(), after.amplitudes()).norm_sqr();
    Ok(ProtocolTrace {
        input: psi.clone(),
        outcome,
        probability: probabilities[m],
        bob_before: before,
        correction,
        bob_after: after,
        fidelity,
    })
}

/// One trace per outcome, in index order.
pub fn run_all_outcomes(psi: &PureState, resource: &ResourceState) -> Result<Vec<ProtocolTrace>> {
    let d = resource.dim();
    (0..d * d)
        .map(|m| run_protocol(psi, resource, OutcomeSelector::Forced(m)))
        .collect()
}

/// Bob's reduced state before the message arrives: the probability-weighted
/// mixture of conditionals. Equals I/d for a maximally entangled resource.
pub fn bob_premessage_state(psi: &PureState, resource: &ResourceState) -> Result<ComplexMatrix> {
    let d = resource.dim();
    let mut rho = ComplexMatrix::zeros(d);
    for m in 0..d * d {
        let w = conditional(psi.amplitudes(), resource, m)?;
        rho = &rho + &ComplexMatrix::outer(&w, &w);
    }
    Ok(rho)
}
