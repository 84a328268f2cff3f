use num_complex::Complex64;

use super::{ChannelTarget, PulseSchedule};
use crate::error::{Error, Result};
use crate::linalg::{unitary_step, CMatrix};
use crate::pauli::{PauliAxis, PauliString, PauliTerm, QubitHamiltonian};
use crate::state::Statevector;

/// Truncation order of the Dyson series.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DysonOrder {
    First,
    Second,
}

/// One interval on which every channel holds a constant amplitude.
struct Step {
    hamiltonian: CMatrix,
    duration: f64,
    zero: bool,
}

fn drive_terms(sched: &PulseSchedule, t: f64) -> Vec<PauliTerm> {
    let n = sched.n_qubits();
    let mut terms = Vec::new();
    for ch in sched.channels() {
        let env = &ch.envelope;
        let k = ((t - ch.offset) / env.dt()).floor();
        if k < 0.0 || k >= env.samples().len() as f64 {
            continue;
        }
        let amp = env.samples()[k as usize] * Complex64::from_polar(1.0, ch.phase);
        if amp == Complex64::default() {
            continue;
        }
        let (cx, cy) = (0.5 * ch.rabi_rate * amp.re, 0.5 * ch.rabi_rate * amp.im);
        let string = |axis| {
            let mut axes = vec![PauliAxis::I; n];
            match ch.target {
                ChannelTarget::Qubit(q) => axes[q] = axis,
                ChannelTarget::Coupling { control, target } => {
                    axes[control] = PauliAxis::Z;
                    axes[target] = axis;
                }
            }
            PauliString::new(axes).expect("n >= 1")
        };
        terms.push(PauliTerm::new(cx, string(PauliAxis::X)));
        terms.push(PauliTerm::new(cy, string(PauliAxis::Y)));
    }
    terms
}

/// Splits the schedule at every sample edge and returns the constant
/// Hamiltonian of each interval, in time order.
fn steps(sched: &PulseSchedule) -> Vec<Step> {
    let mut edges: Vec<f64> = sched
        .channels()
        .iter()
        .flat_map(|ch| {
            let dt = ch.envelope.dt();
            (0..=ch.envelope.samples().len()).map(move |k| ch.offset + k as f64 * dt)
        })
        .chain(std::iter::once(0.0))
        .collect();
    edges.sort_by(f64::total_cmp);
    edges.dedup_by(|a, b| (*a - *b).abs() <= 1e-12 * (1.0 + b.abs()));

    let n = sched.n_qubits();
    let mut out: Vec<Step> = Vec::with_capacity(edges.len());
    let mut prev_terms: Option<Vec<PauliTerm>> = None;
    for w in edges.windows(2) {
        let (t0, t1) = (w[0], w[1]);
        let terms = drive_terms(sched, 0.5 * (t0 + t1));
        let duration = t1 - t0;
        if prev_terms.as_ref() == Some(&terms) {
            let last = out.last().expect("previous step exists");
            out.push(Step {
                hamiltonian: last.hamiltonian.clone(),
                duration,
                zero: last.zero,
            });
            continue;
        }
        let zero = terms.is_empty();
        let hamiltonian = QubitHamiltonian::new(n, terms.clone())
            .and_then(|h| h.dense_matrix())
            .expect("drive terms match the register");
        out.push(Step {
            hamiltonian,
            duration,
            zero,
        });
        prev_terms = Some(terms);
    }
    out
}

/// Per-step unitaries with consecutive identical steps sharing one exponential.
fn step_unitaries(sched: &PulseSchedule) -> Vec<Option<CMatrix>> {
    let mut cache: Option<(CMatrix, f64, CMatrix)> = None;
    steps(sched)
        .into_iter()
        .map(|s| {
            if s.zero {
                return None;
            }
            if let Some((h, d, u)) = &cache {
                if *d == s.duration && *h == s.hamiltonian {
                    return Some(u.clone());
                }
            }
            let u = unitary_step(&s.hamiltonian, s.duration);
            cache = Some((s.hamiltonian, s.duration, u.clone()));
            Some(u)
        })
        .collect()
}

/// Evolves `state` through the schedule with the exact exponential of each
/// piecewise-constant interval, applied in time order.
pub fn propagate(state: &Statevector, sched: &PulseSchedule) -> Result<Statevector> {
    if state.n_qubits() != sched.n_qubits() {
        return Err(Error::Dimension {
            expected: sched.n_qubits(),
            found: state.n_qubits(),
        });
    }
    let mut psi = nalgebra::DVector::from_column_slice(state.amplitudes());
    for u in step_unitaries(sched).into_iter().flatten() {
        psi = u * psi;
    }
    Statevector::normalized(psi.iter().copied().collect())
}

/// Full time-ordered propagator `U = U_K ⋯ U_1`.
pub fn propagator(sched: &PulseSchedule) -> CMatrix {
    let dim = 1 << sched.n_qubits();
    step_unitaries(sched)
        .into_iter()
        .flatten()
        .fold(CMatrix::identity(dim, dim), |acc, u| u * acc)
}

/// Truncated Dyson series of the time-ordered exponential.
///
/// For piecewise-constant drives the integrals reduce to sums over the
/// interval grid:
/// first order `−i Σ_k H_k Δ_k`, second order
/// `−(Σ_{k>j} H_k Δ_k H_j Δ_j + ½ Σ_k (H_k Δ_k)²)`.
pub fn dyson_propagator(sched: &PulseSchedule, order: DysonOrder) -> CMatrix {
    let dim = 1 << sched.n_qubits();
    let minus_i = Complex64::new(0.0, -1.0);
    let mut first = CMatrix::zeros(dim, dim);
    let mut second = CMatrix::zeros(dim, dim);
    for s in steps(sched).into_iter().filter(|s| !s.zero) {
        let hd = s.hamiltonian * Complex64::new(s.duration, 0.0);
        if order == DysonOrder::Second {
            second += &hd * &first + &hd * &hd * Complex64::new(0.5, 0.0);
        }
        first += hd;
    }
    let mut u = CMatrix::identity(dim, dim) + first * minus_i;
    if order == DysonOrder::Second {
        u -= second;
    }
    u
}

#[cfg(test)]
mod tests {
    use super::super::{DriveChannel, Envelope};
    use super::*;
    use crate::linalg::max_abs_diff;
    use crate::state::Unitary1Q;

    fn single(amp: f64, len: usize, dt: f64) -> PulseSchedule {
        PulseSchedule::new(
            1,
            vec![DriveChannel {
                target: ChannelTarget::Qubit(0),
                envelope: Envelope::constant(Complex64::new(amp, 0.0), len, dt).unwrap(),
                phase: 0.0,
                rabi_rate: 0.2,
                offset: 0.0,
            }],
        )
        .unwrap()
    }

    #[test]
    fn zero_drive_is_identity() {
        let s = single(0.0, 8, 0.5);
        let psi =
            Statevector::normalized(vec![Complex64::new(0.6, 0.1), Complex64::new(0.2, -0.7)])
                .unwrap();
        assert_eq!(propagate(&psi, &s).unwrap(), psi);
        assert_eq!(
            dyson_propagator(&s, DysonOrder::Second),
            CMatrix::identity(2, 2)
        );
    }

    #[test]
    fn constant_drive_is_rx() {
        let (a, len, dt) = (0.7, 20, 0.5);
        let s = single(a, len, dt);
        let theta = 0.2 * a * len as f64 * dt;
        let got = propagate(&Statevector::zero_state(1).unwrap(), &s).unwrap();
        let want = Statevector::zero_state(1)
            .unwrap()
            .apply_single_qubit(0, &Unitary1Q::rx(theta))
            .unwrap();
        for (x, y) in got.amplitudes().iter().zip(want.amplitudes()) {
            assert!((x - y).norm() < 1e-13);
        }
    }

    #[test]
    fn splitting_a_sample_is_exact() {
        let coarse = propagator(&single(0.9, 1, 5.0));
        let fine = propagator(&single(0.9, 10, 0.5));
        assert!(max_abs_diff(&coarse, &fine) < 1e-12);
    }

    #[test]
    fn weak_drive_dyson_orders() {
        // rabi · a · t = 0.01 rad
        let s = single(0.05, 2, 0.5);
        let exact = propagator(&s);
        let e1 = max_abs_diff(&dyson_propagator(&s, DysonOrder::First), &exact);
        let e2 = max_abs_diff(&dyson_propagator(&s, DysonOrder::Second), &exact);
        assert!(e2 < 1e-6, "{e2}");
        assert!(e1 > e2);
    }

    #[test]
    fn dimension_mismatch() {
        let s = single(0.1, 2, 0.5);
        assert!(propagate(&Statevector::zero_state(2).unwrap(), &s).is_err());
    }
}
