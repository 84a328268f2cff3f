use std::fmt;

use rayon::prelude::*;

use super::metrics::{self, accuracy, accuracy_deviation, iteration_deviation};
use super::vqe::{run_vqe_traced, VqeConfig};
use crate::error::{Error, Result};
use crate::measure::{derive_seed, RotationError};
use crate::pauli::QubitHamiltonian;
use crate::pulse::AnsatzSpec;

/// Outcome at one error angle.
#[derive(Debug, Clone, PartialEq)]
pub struct RunRecord {
    pub epsilon_degrees: f64,
    /// E_VQE in Hartree (mean over repeats).
    pub energy: f64,
    /// Objective evaluations (mean over repeats).
    pub iterations: f64,
    /// Fraction relative to the N = 0 record.
    pub iteration_deviation: f64,
    /// Percent.
    pub accuracy: f64,
    /// Percentage points relative to the N = 0 record.
    pub accuracy_deviation: f64,
    pub seed: u64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepSummary {
    pub accuracy_at_zero: f64,
    pub average_accuracy: f64,
    /// Largest-magnitude accuracy deviation, sign kept.
    pub max_accuracy_deviation: f64,
    pub iteration_deviation_mean: f64,
    pub iteration_deviation_std: f64,
    /// Largest-magnitude iteration deviation, sign kept.
    pub iteration_deviation_max: f64,
    /// Correlation of iteration deviation with N over N > 0.
    pub correlation_positive: Option<f64>,
    /// Correlation of iteration deviation with |N| over N < 0.
    pub correlation_negative: Option<f64>,
}

impl fmt::Display for SweepSummary {
    /// `key = value` lines; undefined correlations print as `undefined`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let opt = |v: Option<f64>| v.map_or_else(|| "undefined".to_string(), |x| x.to_string());
        writeln!(f, "accuracy_at_zero = {}", self.accuracy_at_zero)?;
        writeln!(f, "average_accuracy = {}", self.average_accuracy)?;
        writeln!(
            f,
            "max_accuracy_deviation = {}",
            self.max_accuracy_deviation
        )?;
        writeln!(
            f,
            "iteration_deviation_mean = {}",
            self.iteration_deviation_mean
        )?;
        writeln!(
            f,
            "iteration_deviation_std = {}",
            self.iteration_deviation_std
        )?;
        writeln!(
            f,
            "iteration_deviation_max = {}",
            self.iteration_deviation_max
        )?;
        writeln!(
            f,
            "correlation_positive = {}",
            opt(self.correlation_positive)
        )?;
        writeln!(
            f,
            "correlation_negative = {}",
            opt(self.correlation_negative)
        )
    }
}

fn is_baseline(n: f64) -> bool {
    n.abs() < 1e-9
}

fn baseline(records: &[RunRecord]) -> Result<&RunRecord> {
    records
        .iter()
        .find(|r| is_baseline(r.epsilon_degrees))
        .ok_or_else(|| Error::Config("no N = 0 baseline record".into()))
}

/// Recomputes both deviation columns against the N = 0 record.
pub fn fill_deviations(records: &mut [RunRecord]) -> Result<()> {
    let base = baseline(records)?.clone();
    for r in records.iter_mut() {
        r.accuracy_deviation = accuracy_deviation(r.accuracy, base.accuracy);
        r.iteration_deviation = iteration_deviation(r.iterations, base.iterations)?;
    }
    Ok(())
}

pub fn summarize(records: &[RunRecord]) -> Result<SweepSummary> {
    let base = baseline(records)?;
    let accs: Vec<f64> = records.iter().map(|r| r.accuracy).collect();
    let acc_devs: Vec<f64> = records.iter().map(|r| r.accuracy_deviation).collect();
    let it_devs: Vec<f64> = records.iter().map(|r| r.iteration_deviation).collect();
    let branch = |positive: bool| {
        let (xs, ys): (Vec<f64>, Vec<f64>) = records
            .iter()
            .filter(|r| {
                if positive {
                    r.epsilon_degrees > 0.0 && !is_baseline(r.epsilon_degrees)
                } else {
                    r.epsilon_degrees < 0.0 && !is_baseline(r.epsilon_degrees)
                }
            })
            .map(|r| (r.epsilon_degrees.abs(), r.iteration_deviation))
            .unzip();
        metrics::pearson(&xs, &ys)
    };
    Ok(SweepSummary {
        accuracy_at_zero: base.accuracy,
        average_accuracy: metrics::mean(&accs),
        max_accuracy_deviation: metrics::max_by_magnitude(&acc_devs),
        iteration_deviation_mean: metrics::mean(&it_devs),
        iteration_deviation_std: metrics::std_dev(&it_devs),
        iteration_deviation_max: metrics::max_by_magnitude(&it_devs),
        correlation_positive: branch(true),
        correlation_negative: branch(false),
    })
}

/// Error angles `start, start + step, …, ≤ end`, rounded to 1e-9 degrees.
pub fn error_grid(start: f64, end: f64, step: f64) -> Result<Vec<f64>> {
    if !(step > 0.0) || !(start <= end) || !start.is_finite() || !end.is_finite() {
        return Err(Error::Config(format!(
            "need n_step > 0 and n_start ≤ n_end, got start={start} end={end} step={step}"
        )));
    }
    let count = ((end - start) / step + 1e-9).floor() as usize + 1;
    let grid: Vec<f64> = (0..count)
        .map(|i| {
            let v = ((start + i as f64 * step) * 1e9).round() / 1e9;
            if is_baseline(v) {
                0.0
            } else {
                v
            }
        })
        .collect();
    if !grid.contains(&0.0) {
        return Err(Error::Config(
            "error grid must contain N = 0 for the baseline".into(),
        ));
    }
    Ok(grid)
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentConfig {
    pub hamiltonian: QubitHamiltonian,
    pub ansatz: AnsatzSpec,
    pub n_start: f64,
    pub n_end: f64,
    pub n_step: f64,
    pub vqe: VqeConfig,
    pub master_seed: u64,
    /// Perturb the Y readout rotation too.
    pub inject_y: bool,
    /// Worker threads; `None` uses the rayon default.
    pub workers: Option<usize>,
    /// Runs averaged per grid point.
    pub repeats: usize,
    /// Keep per-evaluation optimizer traces.
    pub trace: bool,
}

impl ExperimentConfig {
    /// Defaults: −15° to 15° in 0.5° steps, 1024 shots, 100 evaluations, rhobeg 0.1.
    pub fn new(hamiltonian: QubitHamiltonian) -> Self {
        let ansatz = AnsatzSpec::linear_chain(hamiltonian.n_qubits());
        Self {
            hamiltonian,
            ansatz,
            n_start: -15.0,
            n_end: 15.0,
            n_step: 0.5,
            vqe: VqeConfig::default(),
            master_seed: 0,
            inject_y: false,
            workers: None,
            repeats: 1,
            trace: false,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepOutput {
    pub e_fci: f64,
    pub records: Vec<RunRecord>,
    pub summary: SweepSummary,
    /// Optimizer trace lines per grid point (first repeat), when requested.
    pub traces: Vec<Vec<String>>,
}

struct PointResult {
    energy: f64,
    iterations: f64,
    seed: u64,
    trace: Vec<String>,
}

fn run_point(cfg: &ExperimentConfig, index: usize, n: f64) -> Result<PointResult> {
    let seed = derive_seed(cfg.master_seed, index as u64);
    let err = RotationError::new(n)?.with_y(cfg.inject_y);
    let (mut energy, mut iterations) = (0.0, 0.0);
    let mut trace = Vec::new();
    for rep in 0..cfg.repeats {
        let mut lines = Vec::new();
        let out = run_vqe_traced(
            &cfg.hamiltonian,
            &cfg.ansatz,
            &err,
            &cfg.vqe,
            derive_seed(seed, rep as u64),
            |e| {
                if cfg.trace && rep == 0 {
                    lines.push(e.to_line());
                }
            },
        )?;
        if rep == 0 {
            trace = lines;
        }
        energy += out.energy;
        iterations += out.iterations as f64;
    }
    let r = cfg.repeats as f64;
    Ok(PointResult {
        energy: energy / r,
        iterations: iterations / r,
        seed,
        trace,
    })
}

/// Runs one VQE per grid angle (in parallel), then derives the metrics.
pub fn sweep(cfg: &ExperimentConfig) -> Result<SweepOutput> {
    if cfg.repeats == 0 {
        return Err(Error::Config("repeats must be at least 1".into()));
    }
    if cfg.workers == Some(0) {
        return Err(Error::Config("workers must be at least 1".into()));
    }
    cfg.vqe.mode.validate()?;
    cfg.vqe.optimizer.validate()?;
    let grid = error_grid(cfg.n_start, cfg.n_end, cfg.n_step)?;
    let e_fci = cfg.hamiltonian.exact_ground_energy()?;

    let pool = {
        let mut b = rayon::ThreadPoolBuilder::new();
        if let Some(w) = cfg.workers {
            b = b.num_threads(w);
        }
        b.build()
            .map_err(|e| Error::Config(format!("cannot start worker pool: {e}")))?
    };
    let points: Vec<PointResult> = pool.install(|| {
        grid.par_iter()
            .enumerate()
            .map(|(i, &n)| run_point(cfg, i, n))
            .collect::<Result<Vec<_>>>()
    })?;

    let mut records = grid
        .iter()
        .zip(&points)
        .map(|(&n, p)| {
            Ok(RunRecord {
                epsilon_degrees: n,
                energy: p.energy,
                iterations: p.iterations,
                iteration_deviation: 0.0,
                accuracy: accuracy(p.energy, e_fci)?,
                accuracy_deviation: 0.0,
                seed: p.seed,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    fill_deviations(&mut records)?;
    let summary = summarize(&records)?;
    let traces = if cfg.trace {
        points.into_iter().map(|p| p.trace).collect()
    } else {
        Vec::new()
    };
    Ok(SweepOutput {
        e_fci,
        records,
        summary,
        traces,
    })
}
