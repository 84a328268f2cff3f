use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::measure::{derive_seed, estimate_energy, EstimatorMode, RotationError};
use crate::optimize::{minimize_traced, Evaluation, OptimizerConfig};
use crate::pauli::QubitHamiltonian;
use crate::pulse::{build_ansatz, propagate, AnsatzSpec, ParamVector};
use crate::state::Statevector;

/// Starting point of the parameter search.
#[derive(Debug, Clone, PartialEq)]
pub enum InitialParams {
    /// Every magnitude set to the value, phases zero.
    Constant(f64),
    /// Magnitudes uniform in `[0, 1)`, phases uniform in `[-π, π)`.
    Random {
        seed: u64,
    },
    Explicit(Vec<f64>),
}

impl Default for InitialParams {
    fn default() -> Self {
        InitialParams::Constant(0.05)
    }
}

impl InitialParams {
    pub fn materialize(&self, spec: &AnsatzSpec) -> Result<ParamVector> {
        let theta = match self {
            InitialParams::Constant(m) => ParamVector::uniform(spec, *m),
            InitialParams::Random { seed } => {
                let mut rng = ChaCha8Rng::seed_from_u64(*seed);
                ParamVector(
                    (0..spec.parameter_count())
                        .map(|i| {
                            if i % 2 == 0 {
                                rng.random::<f64>()
                            } else {
                                rng.random_range(-std::f64::consts::PI..std::f64::consts::PI)
                            }
                        })
                        .collect(),
                )
            }
            InitialParams::Explicit(v) => ParamVector(v.clone()),
        };
        if theta.len() != spec.parameter_count() {
            return Err(Error::Dimension {
                expected: spec.parameter_count(),
                found: theta.len(),
            });
        }
        Ok(theta)
    }
}

/// Basis state the pulse schedule is applied to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Reference {
    /// `|0…0⟩`.
    Zero,
    /// Basis state with the lowest diagonal energy, i.e. the Hartree-Fock
    /// determinant for the bundled molecules.
    #[default]
    LowestDiagonal,
    Basis(usize),
}

impl Reference {
    pub fn state(&self, h: &QubitHamiltonian) -> Result<Statevector> {
        let n = h.n_qubits();
        match *self {
            Reference::Zero => Statevector::zero_state(n),
            Reference::Basis(i) => Statevector::basis_state(n, i),
            Reference::LowestDiagonal => {
                Statevector::zero_state(n)?; // size check before scanning 2^n states
                let diag = |b: usize| -> f64 {
                    h.terms()
                        .iter()
                        .filter(|t| t.string.is_diagonal())
                        .map(|t| {
                            let odd = (b & t.string.support_mask()).count_ones() % 2 == 1;
                            if odd {
                                -t.coefficient.re
                            } else {
                                t.coefficient.re
                            }
                        })
                        .sum()
                };
                let mut best = (0, diag(0));
                for b in 1..1usize << n {
                    let e = diag(b);
                    if e < best.1 - 1e-12 {
                        best = (b, e);
                    }
                }
                Statevector::basis_state(n, best.0)
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct VqeConfig {
    pub mode: EstimatorMode,
    pub optimizer: OptimizerConfig,
    pub initial: InitialParams,
    pub reference: Reference,
}

impl Default for VqeConfig {
    fn default() -> Self {
        Self {
            mode: EstimatorMode::Sampled { shots: 1024 },
            optimizer: OptimizerConfig::default(),
            initial: InitialParams::default(),
            reference: Reference::default(),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct VqeOutcome {
    /// Best objective value seen by the optimizer (E_VQE).
    pub energy: f64,
    /// Exact `⟨H⟩` of the final state with ideal readout.
    pub exact_energy: f64,
    pub iterations: usize,
    pub converged: bool,
    pub best_params: ParamVector,
}

/// Applies the ansatz schedule for `theta` to `reference`.
pub fn prepare_state(
    reference: &Statevector,
    spec: &AnsatzSpec,
    theta: &[f64],
) -> Result<Statevector> {
    let sched = build_ansatz(spec, &ParamVector(theta.to_vec()))?;
    propagate(reference, &sched)
}

pub fn run_vqe(
    h: &QubitHamiltonian,
    spec: &AnsatzSpec,
    err: &RotationError,
    cfg: &VqeConfig,
    seed: u64,
) -> Result<VqeOutcome> {
    run_vqe_traced(h, spec, err, cfg, seed, |_| {})
}

/// Minimizes the measured energy over the pulse parameters. Evaluation `k`
/// draws its shots from `derive_seed(seed, k)`.
pub fn run_vqe_traced<T>(
    h: &QubitHamiltonian,
    spec: &AnsatzSpec,
    err: &RotationError,
    cfg: &VqeConfig,
    seed: u64,
    trace: T,
) -> Result<VqeOutcome>
where
    T: FnMut(&Evaluation<'_>),
{
    if h.n_qubits() != spec.n_qubits {
        return Err(Error::Dimension {
            expected: spec.n_qubits,
            found: h.n_qubits(),
        });
    }
    cfg.mode.validate()?;
    spec.validate()?;
    let h = h.hermitian_part()?;
    let x0 = cfg.initial.materialize(spec)?;
    let reference = cfg.reference.state(&h)?;

    let mut evaluation = 0u64;
    let objective = |theta: &[f64]| {
        let state = prepare_state(&reference, spec, theta)?;
        let e = estimate_energy(&state, &h, err, cfg.mode, derive_seed(seed, evaluation))?;
        evaluation += 1;
        Ok(e)
    };
    let result = minimize_traced(objective, x0.as_slice(), &cfg.optimizer, trace)?;

    let state = prepare_state(&reference, spec, &result.best_params)?;
    let exact_energy = h
        .terms()
        .iter()
        .map(|t| Ok(t.coefficient.re * state.expectation(&t.string)?))
        .sum::<Result<f64>>()?;
    Ok(VqeOutcome {
        energy: result.best_value,
        exact_energy,
        iterations: result.iterations,
        converged: result.converged,
        best_params: ParamVector(result.best_params),
    })
}
