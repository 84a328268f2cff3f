use num_complex::Complex64;

use super::{ChannelTarget, DriveChannel, Envelope, PulseSchedule};
use crate::error::{Error, Result};

/// Layout of the trainable pulse ansatz.
///
/// The schedule is split into `blocks` equal time slots. In each slot every
/// qubit carries a square drive and every coupling pair a square
/// cross-resonance drive; each drive has a magnitude in `[0, 1]` and a phase.
#[derive(Debug, Clone, PartialEq)]
pub struct AnsatzSpec {
    pub n_qubits: usize,
    pub blocks: usize,
    pub pairs: Vec<(usize, usize)>,
    pub samples_per_block: usize,
    /// ns
    pub dt: f64,
    /// rad/ns
    pub rabi_rate: f64,
}

impl AnsatzSpec {
    /// Three blocks of 16 × 0.5 ns samples at 0.2 rad/ns with nearest-neighbour couplings.
    pub fn linear_chain(n_qubits: usize) -> Self {
        Self {
            n_qubits,
            blocks: 3,
            pairs: (1..n_qubits).map(|q| (q - 1, q)).collect(),
            samples_per_block: 16,
            dt: 0.5,
            rabi_rate: 0.2,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.n_qubits == 0 || self.blocks == 0 || self.samples_per_block == 0 {
            return Err(Error::Validation(
                "ansatz needs at least one qubit, block and sample".into(),
            ));
        }
        if !(self.dt > 0.0 && self.rabi_rate > 0.0) {
            return Err(Error::Validation(
                "dt and rabi rate must be positive".into(),
            ));
        }
        for &(c, t) in &self.pairs {
            if c >= self.n_qubits || t >= self.n_qubits || c == t {
                return Err(Error::Validation(format!(
                    "invalid coupling pair ({c}, {t})"
                )));
            }
        }
        Ok(())
    }

    pub fn parameter_count(&self) -> usize {
        (self.n_qubits + self.pairs.len()) * self.blocks * 2
    }

    pub fn block_duration(&self) -> f64 {
        self.samples_per_block as f64 * self.dt
    }
}

/// Ordered parameters, block-major: for each block, `(magnitude, phase)` for
/// every qubit, then for every coupling pair.
#[derive(Debug, Clone, PartialEq)]
pub struct ParamVector(pub Vec<f64>);

impl ParamVector {
    /// Magnitudes set to `magnitude`, phases zero.
    pub fn uniform(spec: &AnsatzSpec, magnitude: f64) -> Self {
        let mut v = vec![0.0; spec.parameter_count()];
        v.iter_mut().step_by(2).for_each(|m| *m = magnitude);
        ParamVector(v)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.0
    }
}

pub fn build_ansatz(spec: &AnsatzSpec, theta: &ParamVector) -> Result<PulseSchedule> {
    spec.validate()?;
    if theta.len() != spec.parameter_count() {
        return Err(Error::Dimension {
            expected: spec.parameter_count(),
            found: theta.len(),
        });
    }
    let drives = spec.n_qubits + spec.pairs.len();
    let targets = (0..spec.n_qubits).map(ChannelTarget::Qubit).chain(
        spec.pairs
            .iter()
            .map(|&(control, target)| ChannelTarget::Coupling { control, target }),
    );

    let mut channels = Vec::with_capacity(drives);
    for (d, target) in targets.enumerate() {
        let mut samples = Vec::with_capacity(spec.blocks * spec.samples_per_block);
        for b in 0..spec.blocks {
            let base = 2 * (b * drives + d);
            let magnitude = theta.0[base].clamp(0.0, 1.0);
            let phase = theta.0[base + 1];
            let amp = Complex64::from_polar(magnitude, phase);
            samples.extend(std::iter::repeat_n(amp, spec.samples_per_block));
        }
        channels.push(DriveChannel {
            target,
            envelope: Envelope::new(samples, spec.dt)?,
            phase: 0.0,
            rabi_rate: spec.rabi_rate,
            offset: 0.0,
        });
    }
    PulseSchedule::new(spec.n_qubits, channels)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parameter_count_example() {
        let spec = AnsatzSpec {
            n_qubits: 2,
            blocks: 2,
            pairs: vec![(0, 1)],
            samples_per_block: 16,
            dt: 0.5,
            rabi_rate: 0.2,
        };
        assert_eq!(spec.parameter_count(), 12);
    }

    #[test]
    fn deterministic_and_clamped() {
        let spec = AnsatzSpec::linear_chain(2);
        let theta = ParamVector(
            (0..spec.parameter_count())
                .map(|i| i as f64 * 0.37 - 2.0)
                .collect(),
        );
        let a = build_ansatz(&spec, &theta).unwrap();
        let b = build_ansatz(&spec, &theta).unwrap();
        assert_eq!(a, b);
        for ch in a.channels() {
            assert!(ch
                .envelope
                .samples()
                .iter()
                .all(|s| s.norm() <= 1.0 + 1e-15));
        }
        assert_eq!(a.duration(), 3.0 * 16.0 * 0.5);
    }

    #[test]
    fn wrong_length() {
        let spec = AnsatzSpec::linear_chain(2);
        assert!(matches!(
            build_ansatz(&spec, &ParamVector(vec![0.0; 3])),
            Err(Error::Dimension { .. })
        ));
    }

    #[test]
    fn layout_is_block_major() {
        let spec = AnsatzSpec::linear_chain(2);
        let mut theta = ParamVector(vec![0.0; spec.parameter_count()]);
        // block 1, coupling drive (index 2): magnitude slot
        theta.0[2 * (3 + 2)] = 0.5;
        let s = build_ansatz(&spec, &theta).unwrap();
        let cr = &s.channels()[2];
        assert!(matches!(
            cr.target,
            ChannelTarget::Coupling {
                control: 0,
                target: 1
            }
        ));
        assert_eq!(cr.envelope.samples()[15].re, 0.0);
        assert_eq!(cr.envelope.samples()[16].re, 0.5);
        assert_eq!(cr.envelope.samples()[32].re, 0.0);
    }
}
