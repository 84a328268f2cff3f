//! Observable estimation through basis rotations with an injectable
//! coherent over-/under-rotation on the readout pulse.

use std::f64::consts::{FRAC_PI_2, PI};

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::pauli::{PauliAxis, PauliString, QubitHamiltonian};
use crate::state::{Statevector, Unitary1Q};

/// Miscalibration of the readout `U2` pulse, in degrees.
///
/// Positive values over-rotate, negative values under-rotate. By default
/// only the X-basis rotation is perturbed.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RotationError {
    degrees: f64,
    perturb_y: bool,
}

impl RotationError {
    pub fn new(degrees: f64) -> Result<Self> {
        if !degrees.is_finite() {
            return Err(Error::Validation(format!(
                "rotation error must be finite, got {degrees}"
            )));
        }
        Ok(Self {
            degrees,
            perturb_y: false,
        })
    }

    pub fn none() -> Self {
        Self {
            degrees: 0.0,
            perturb_y: false,
        }
    }

    /// Also perturb the Y-basis rotation by the same angle.
    pub fn with_y(mut self, perturb_y: bool) -> Self {
        self.perturb_y = perturb_y;
        self
    }

    pub fn degrees(&self) -> f64 {
        self.degrees
    }

    pub fn radians(&self) -> f64 {
        self.degrees.to_radians()
    }

    pub fn perturbs_y(&self) -> bool {
        self.perturb_y
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EstimatorMode {
    /// Exact infinite-shot expectation.
    Analytic,
    /// Average over a fresh batch of projective shots per term.
    Sampled { shots: u64 },
}

impl EstimatorMode {
    pub fn validate(&self) -> Result<()> {
        match self {
            EstimatorMode::Sampled { shots: 0 } => Err(Error::Validation(
                "sampled mode needs at least one shot".into(),
            )),
            _ => Ok(()),
        }
    }
}

/// Rotation applied before a Z-basis readout of `axis`.
///
/// X uses `U2(0, π + ε)`; Y uses `U2(0, π/2)` (plus `ε` only when the
/// error is configured to perturb Y); I and Z need no rotation.
pub fn prerotation_for(axis: PauliAxis, err: &RotationError) -> Unitary1Q {
    match axis {
        PauliAxis::X => Unitary1Q::u2(0.0, PI + err.radians()),
        PauliAxis::Y if err.perturb_y => Unitary1Q::u2(0.0, FRAC_PI_2 + err.radians()),
        PauliAxis::Y => Unitary1Q::u2(0.0, FRAC_PI_2),
        PauliAxis::I | PauliAxis::Z => Unitary1Q::identity(),
    }
}

/// Per-qubit readout rotations for one Pauli string.
#[derive(Debug, Clone, PartialEq)]
pub struct MeasurementPlan {
    pub pauli: PauliString,
    pub prerotations: Vec<Unitary1Q>,
    /// Qubits entering the parity (non-identity axes).
    pub measured_mask: usize,
}

impl MeasurementPlan {
    pub fn new(pauli: &PauliString, err: &RotationError) -> Self {
        Self {
            pauli: pauli.clone(),
            prerotations: pauli
                .axes()
                .iter()
                .map(|&a| prerotation_for(a, err))
                .collect(),
            measured_mask: pauli.support_mask(),
        }
    }

    /// The state after all readout rotations.
    pub fn rotate(&self, s: &Statevector) -> Result<Statevector> {
        if s.n_qubits() != self.pauli.len() {
            return Err(Error::Dimension {
                expected: s.n_qubits(),
                found: self.pauli.len(),
            });
        }
        let mut out = s.clone();
        for (q, (u, &axis)) in self.prerotations.iter().zip(self.pauli.axes()).enumerate() {
            if matches!(axis, PauliAxis::X | PauliAxis::Y) {
                out.apply_single_qubit_in_place(q, u)?;
            }
        }
        Ok(out)
    }
}

fn parity_sign(outcome: usize, mask: usize) -> f64 {
    if (outcome & mask).count_ones().is_multiple_of(2) {
        1.0
    } else {
        -1.0
    }
}

/// Estimate of `⟨P⟩` read out through the (possibly miscalibrated) rotations.
pub fn estimate_pauli<R: Rng + ?Sized>(
    s: &Statevector,
    p: &PauliString,
    err: &RotationError,
    mode: EstimatorMode,
    rng: &mut R,
) -> Result<f64> {
    mode.validate()?;
    let plan = MeasurementPlan::new(p, err);
    let rotated = plan.rotate(s)?;
    let mask = plan.measured_mask;
    if mask == 0 {
        return Ok(1.0);
    }
    let value = match mode {
        EstimatorMode::Analytic => rotated
            .probabilities()
            .iter()
            .enumerate()
            .map(|(k, prob)| prob * parity_sign(k, mask))
            .sum::<f64>(),
        EstimatorMode::Sampled { shots } => {
            let counts = rotated.sample_z_basis(shots, rng)?;
            let total: f64 = counts
                .iter()
                .enumerate()
                .map(|(k, &c)| c as f64 * parity_sign(k, mask))
                .sum();
            total / shots as f64
        }
    };
    Ok(value.clamp(-1.0, 1.0))
}

/// Derives an independent 64-bit seed from a parent seed and a stream index.
pub fn derive_seed(parent: u64, index: u64) -> u64 {
    fn mix(mut z: u64) -> u64 {
        z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }
    mix(parent ^ mix(index))
}

/// `Σ ω_α · estimate(P_α)`. Term `k` draws its shots from a stream seeded
/// by `derive_seed(seed, k)`; identity terms contribute `ω` exactly.
pub fn estimate_energy(
    s: &Statevector,
    h: &QubitHamiltonian,
    err: &RotationError,
    mode: EstimatorMode,
    seed: u64,
) -> Result<f64> {
    if s.n_qubits() != h.n_qubits() {
        return Err(Error::Dimension {
            expected: h.n_qubits(),
            found: s.n_qubits(),
        });
    }
    let mut energy = 0.0;
    for (k, term) in h.terms().iter().enumerate() {
        if term.coefficient.im.abs() > crate::pauli::DEFAULT_TOL {
            return Err(Error::Validation(format!(
                "coefficient of {} is not real",
                term.string
            )));
        }
        let w = term.coefficient.re;
        if term.string.is_identity() {
            energy += w;
            continue;
        }
        let mut rng = ChaCha8Rng::seed_from_u64(derive_seed(seed, k as u64));
        energy += w * estimate_pauli(s, &term.string, err, mode, &mut rng)?;
    }
    Ok(energy)
}
