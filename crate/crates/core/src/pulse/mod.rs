//! Piecewise-constant drive schedules and their time evolution.
//!
//! Drives are modeled in the rotating frame of resonant qubits: a
//! single-qubit channel with complex amplitude `Ω` contributes
//! `rabi·|Ω|·(cos φ X + sin φ Y)/2`, `φ = arg Ω + phase`, and a coupling
//! channel contributes the cross-resonance form `rabi·|Ω|·(cos φ Z⊗X + sin φ Z⊗Y)/2`.

mod ansatz;
mod propagate;

use std::fmt::{self, Write};

use num_complex::Complex64;

use crate::error::{Error, Result};

pub use ansatz::{build_ansatz, AnsatzSpec, ParamVector};
pub use propagate::{dyson_propagator, propagate, propagator, DysonOrder};

/// Amplitude samples held for `dt` nanoseconds each.
#[derive(Debug, Clone, PartialEq)]
pub struct Envelope {
    samples: Vec<Complex64>,
    dt: f64,
}

impl Envelope {
    pub fn new(samples: Vec<Complex64>, dt: f64) -> Result<Self> {
        if !(dt > 0.0 && dt.is_finite()) {
            return Err(Error::Validation(format!(
                "sample duration must be positive, got {dt}"
            )));
        }
        if let Some(s) = samples.iter().find(|s| !(s.norm() <= 1.0 + 1e-12)) {
            return Err(Error::Validation(format!(
                "envelope sample {s} exceeds unit magnitude"
            )));
        }
        Ok(Self { samples, dt })
    }

    /// `len` copies of the same amplitude.
    pub fn constant(amplitude: Complex64, len: usize, dt: f64) -> Result<Self> {
        Self::new(vec![amplitude; len], dt)
    }

    pub fn samples(&self) -> &[Complex64] {
        &self.samples
    }

    pub fn dt(&self) -> f64 {
        self.dt
    }

    pub fn duration(&self) -> f64 {
        self.samples.len() as f64 * self.dt
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ChannelTarget {
    Qubit(usize),
    Coupling { control: usize, target: usize },
}

impl fmt::Display for ChannelTarget {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ChannelTarget::Qubit(q) => write!(f, "q{q}"),
            ChannelTarget::Coupling { control, target } => write!(f, "cr{control}-{target}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct DriveChannel {
    pub target: ChannelTarget,
    pub envelope: Envelope,
    /// Frame phase added to every sample's argument, radians.
    pub phase: f64,
    /// Angular frequency per unit amplitude, rad/ns.
    pub rabi_rate: f64,
    /// Start time, ns.
    pub offset: f64,
}

impl DriveChannel {
    pub fn end(&self) -> f64 {
        self.offset + self.envelope.duration()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct PulseSchedule {
    n_qubits: usize,
    channels: Vec<DriveChannel>,
}

impl PulseSchedule {
    pub fn new(n_qubits: usize, channels: Vec<DriveChannel>) -> Result<Self> {
        if n_qubits == 0 {
            return Err(Error::Validation(
                "schedule needs at least one qubit".into(),
            ));
        }
        let check = |q: usize| {
            if q >= n_qubits {
                Err(Error::IndexOutOfRange {
                    what: "qubits",
                    index: q,
                    len: n_qubits,
                })
            } else {
                Ok(())
            }
        };
        for ch in &channels {
            match ch.target {
                ChannelTarget::Qubit(q) => check(q)?,
                ChannelTarget::Coupling { control, target } => {
                    check(control)?;
                    check(target)?;
                    if control == target {
                        return Err(Error::Validation(format!(
                            "coupling channel needs two distinct qubits, got {control}"
                        )));
                    }
                }
            }
            if !(ch.rabi_rate > 0.0 && ch.rabi_rate.is_finite()) {
                return Err(Error::Validation(format!(
                    "rabi rate must be positive, got {}",
                    ch.rabi_rate
                )));
            }
            if !(ch.offset >= 0.0 && ch.offset.is_finite() && ch.phase.is_finite()) {
                return Err(Error::Validation(
                    "channel offset and phase must be finite, offset ≥ 0".into(),
                ));
            }
        }
        let sched = Self { n_qubits, channels };
        if !(sched.duration() > 0.0) {
            return Err(Error::Validation(
                "schedule duration must be positive".into(),
            ));
        }
        Ok(sched)
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn channels(&self) -> &[DriveChannel] {
        &self.channels
    }

    /// Latest channel end time, ns.
    pub fn duration(&self) -> f64 {
        self.channels
            .iter()
            .map(DriveChannel::end)
            .fold(0.0, f64::max)
    }

    /// Same schedule with every sample multiplied by `factor` (clamped to unit magnitude).
    pub fn scaled(&self, factor: f64) -> Self {
        let channels = self
            .channels
            .iter()
            .map(|ch| {
                let samples = ch
                    .envelope
                    .samples
                    .iter()
                    .map(|s| {
                        let v = s * factor;
                        if v.norm() > 1.0 {
                            v / v.norm()
                        } else {
                            v
                        }
                    })
                    .collect();
                DriveChannel {
                    envelope: Envelope {
                        samples,
                        dt: ch.envelope.dt,
                    },
                    ..ch.clone()
                }
            })
            .collect();
        Self {
            n_qubits: self.n_qubits,
            channels,
        }
    }

    /// Text listing of every channel; runs of equal samples are collapsed
    /// to `value xCOUNT`.
    pub fn dump(&self) -> String {
        let mut out = String::new();
        writeln!(
            out,
            "schedule n_qubits={} duration={}",
            self.n_qubits,
            self.duration()
        )
        .unwrap();
        for (i, ch) in self.channels.iter().enumerate() {
            let env = &ch.envelope;
            writeln!(
                out,
                "channel {i} target={} offset={} dt={} phase={} rabi_rate={} samples={}",
                ch.target,
                ch.offset,
                env.dt,
                ch.phase,
                ch.rabi_rate,
                env.samples.len()
            )
            .unwrap();
            let mut k = 0;
            while k < env.samples.len() {
                let s = env.samples[k];
                let run = env.samples[k..].iter().take_while(|&&v| v == s).count();
                // adding +0 turns -0 into 0
                let s = s + Complex64::new(0.0, 0.0);
                let sign = if s.im.is_sign_negative() { '-' } else { '+' };
                writeln!(out, "  {}{}{}i x{}", s.re, sign, s.im.abs(), run).unwrap();
                k += run;
            }
        }
        out
    }
}

/// Latest channel end time of `sched`, ns.
pub fn schedule_duration(sched: &PulseSchedule) -> f64 {
    sched.duration()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn channel(target: ChannelTarget, len: usize, offset: f64) -> DriveChannel {
        DriveChannel {
            target,
            envelope: Envelope::constant(Complex64::new(0.5, 0.0), len, 0.5).unwrap(),
            phase: 0.0,
            rabi_rate: 0.2,
            offset,
        }
    }

    #[test]
    fn duration_examples() {
        let s = PulseSchedule::new(1, vec![channel(ChannelTarget::Qubit(0), 64, 0.0)]).unwrap();
        assert_eq!(schedule_duration(&s), 32.0);

        let s = PulseSchedule::new(
            2,
            vec![
                channel(ChannelTarget::Qubit(0), 64, 0.0),
                channel(ChannelTarget::Qubit(1), 64, 16.0),
            ],
        )
        .unwrap();
        assert_eq!(schedule_duration(&s), 48.0);

        assert!(matches!(
            PulseSchedule::new(1, vec![]),
            Err(Error::Validation(_))
        ));
    }

    #[test]
    fn invalid_channels() {
        assert!(PulseSchedule::new(1, vec![channel(ChannelTarget::Qubit(1), 4, 0.0)]).is_err());
        let same = ChannelTarget::Coupling {
            control: 0,
            target: 0,
        };
        assert!(PulseSchedule::new(2, vec![channel(same, 4, 0.0)]).is_err());
        let mut ch = channel(ChannelTarget::Qubit(0), 4, 0.0);
        ch.rabi_rate = 0.0;
        assert!(PulseSchedule::new(1, vec![ch]).is_err());
    }

    #[test]
    fn envelope_bounds() {
        assert!(Envelope::new(vec![Complex64::new(1.5, 0.0)], 0.5).is_err());
        assert!(Envelope::new(vec![Complex64::new(0.5, 0.0)], 0.0).is_err());
        assert!(Envelope::new(vec![Complex64::new(0.6, 0.8)], 1.0).is_ok());
    }
}
