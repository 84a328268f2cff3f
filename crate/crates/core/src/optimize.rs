//! Derivative-free minimization by linear interpolation over a simplex
//! inside a shrinking trust region (Powell's COBYLA, without constraints).

use nalgebra::{DMatrix, DVector};

use crate::error::{Error, Result};

// Simplex acceptability and step constants from Powell's method.
const ALPHA: f64 = 0.25;
const BETA: f64 = 2.1;
const GAMMA: f64 = 0.5;
const DELTA: f64 = 1.1;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OptimizerConfig {
    /// Budget of objective evaluations.
    pub max_iterations: usize,
    /// Initial trust-region radius.
    pub rhobeg: f64,
    /// Final trust-region radius.
    pub rhoend: f64,
}

impl Default for OptimizerConfig {
    fn default() -> Self {
        Self {
            max_iterations: 100,
            rhobeg: 0.1,
            rhoend: 1e-4,
        }
    }
}

impl OptimizerConfig {
    pub fn validate(&self) -> Result<()> {
        if self.max_iterations == 0 {
            return Err(Error::Config("max_iterations must be at least 1".into()));
        }
        if !(self.rhoend > 0.0 && self.rhoend < self.rhobeg && self.rhobeg.is_finite()) {
            return Err(Error::Config(format!(
                "need 0 < rhoend < rhobeg, got rhoend={} rhobeg={}",
                self.rhoend, self.rhobeg
            )));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct OptimizerResult {
    pub best_params: Vec<f64>,
    /// Objective value recorded when `best_params` was evaluated.
    pub best_value: f64,
    /// Objective evaluations consumed.
    pub iterations: usize,
    /// True when the trust radius reached `rhoend` before the budget ran out.
    pub converged: bool,
}

/// One objective evaluation, in call order.
#[derive(Debug, Clone, PartialEq)]
pub struct Evaluation<'a> {
    pub index: usize,
    pub params: &'a [f64],
    pub value: f64,
}

impl Evaluation<'_> {
    /// `index value p0,p1,...`
    pub fn to_line(&self) -> String {
        let params: Vec<String> = self.params.iter().map(|p| p.to_string()).collect();
        format!("{} {} {}", self.index, self.value, params.join(","))
    }
}

struct Budget;

/// Simplex of `n + 1` vertices stored as a pole plus `n` displacements.
struct Simplex {
    pole: DVector<f64>,
    f_pole: f64,
    sim: DMatrix<f64>,
    fvals: Vec<f64>,
}

impl Simplex {
    /// Moves the pole to the lowest vertex.
    fn reorder(&mut self) {
        let n = self.fvals.len();
        let Some(j) = (0..n)
            .filter(|&j| self.fvals[j] < self.f_pole)
            .min_by(|&a, &b| self.fvals[a].total_cmp(&self.fvals[b]))
        else {
            return;
        };
        let dj = self.sim.column(j).into_owned();
        self.pole += &dj;
        for k in 0..n {
            if k == j {
                self.sim.set_column(k, &(-&dj));
            } else {
                let col = self.sim.column(k) - &dj;
                self.sim.set_column(k, &col);
            }
        }
        std::mem::swap(&mut self.f_pole, &mut self.fvals[j]);
    }

    fn gradient(&self, simi: &DMatrix<f64>) -> DVector<f64> {
        let df =
            DVector::from_iterator(self.fvals.len(), self.fvals.iter().map(|f| f - self.f_pole));
        simi.transpose() * df
    }
}

struct Run<'o, F, T> {
    objective: &'o mut F,
    trace: &'o mut T,
    evaluations: usize,
    max: usize,
}

impl<F, T> Run<'_, F, T>
where
    F: FnMut(&[f64]) -> Result<f64>,
    T: FnMut(&Evaluation<'_>),
{
    fn eval(&mut self, x: &DVector<f64>) -> Result<std::result::Result<f64, Budget>> {
        if self.evaluations >= self.max {
            return Ok(Err(Budget));
        }
        let value = (self.objective)(x.as_slice())?;
        let index = self.evaluations;
        self.evaluations += 1;
        if !value.is_finite() {
            return Err(Error::NonFinite {
                evaluation: index,
                value,
            });
        }
        (self.trace)(&Evaluation {
            index,
            params: x.as_slice(),
            value,
        });
        Ok(Ok(value))
    }
}

/// Minimizes an infallible objective.
pub fn minimize<F>(mut objective: F, x0: &[f64], cfg: &OptimizerConfig) -> Result<OptimizerResult>
where
    F: FnMut(&[f64]) -> f64,
{
    minimize_traced(|x| Ok(objective(x)), x0, cfg, |_| {})
}

/// Minimizes a fallible objective, reporting every evaluation to `trace`.
///
/// The run is deterministic: identical inputs produce an identical
/// evaluation sequence.
pub fn minimize_traced<F, T>(
    mut objective: F,
    x0: &[f64],
    cfg: &OptimizerConfig,
    mut trace: T,
) -> Result<OptimizerResult>
where
    F: FnMut(&[f64]) -> Result<f64>,
    T: FnMut(&Evaluation<'_>),
{
    cfg.validate()?;
    let n = x0.len();
    if n == 0 {
        return Err(Error::Validation(
            "cannot minimize over zero parameters".into(),
        ));
    }
    if let Some(v) = x0.iter().find(|v| !v.is_finite()) {
        return Err(Error::Validation(format!(
            "initial point has non-finite entry {v}"
        )));
    }
    let mut run = Run {
        objective: &mut objective,
        trace: &mut trace,
        evaluations: 0,
        max: cfg.max_iterations,
    };
    let mut rho = cfg.rhobeg;

    let pole = DVector::from_column_slice(x0);
    let f0 = match run.eval(&pole)? {
        Ok(v) => v,
        Err(Budget) => unreachable!("budget is at least one evaluation"),
    };
    let mut simplex = Simplex {
        pole,
        f_pole: f0,
        sim: DMatrix::zeros(n, n),
        fvals: vec![f0; n],
    };

    let finish = |s: &Simplex, evaluations: usize, converged: bool| OptimizerResult {
        best_params: s.pole.as_slice().to_vec(),
        best_value: s.f_pole,
        iterations: evaluations,
        converged,
    };

    // Initial simplex: step rho along each coordinate from the current pole.
    for j in 0..n {
        let mut x = simplex.pole.clone();
        x[j] += rho;
        let f = match run.eval(&x)? {
            Ok(v) => v,
            Err(Budget) => return Ok(finish(&simplex, run.evaluations, false)),
        };
        if f < simplex.f_pole {
            // new point becomes the pole; earlier vertices sit at -rho along j
            for k in 0..j {
                simplex.sim[(j, k)] = -rho;
            }
            simplex.sim[(j, j)] = -rho;
            simplex.fvals[j] = simplex.f_pole;
            simplex.pole = x;
            simplex.f_pole = f;
        } else {
            simplex.sim[(j, j)] = rho;
            simplex.fvals[j] = f;
        }
    }

    let mut trust_pending = false;
    loop {
        simplex.reorder();
        let simi = match simplex.sim.clone().try_inverse() {
            Some(m) => m,
            None => {
                // Re-span a collapsed simplex from the pole.
                for j in 0..n {
                    let mut x = simplex.pole.clone();
                    x[j] += rho;
                    let f = match run.eval(&x)? {
                        Ok(v) => v,
                        Err(Budget) => return Ok(finish(&simplex, run.evaluations, false)),
                    };
                    simplex.sim.set_column(j, &(DVector::from_element(n, 0.0)));
                    simplex.sim[(j, j)] = rho;
                    simplex.fvals[j] = f;
                }
                continue;
            }
        };

        let parsig = ALPHA * rho;
        let pareta = BETA * rho;
        let vsig: Vec<f64> = (0..n).map(|j| 1.0 / simi.row(j).norm()).collect();
        let veta: Vec<f64> = (0..n).map(|j| simplex.sim.column(j).norm()).collect();
        let acceptable = (0..n).all(|j| vsig[j] >= parsig && veta[j] <= pareta);
        let grad = simplex.gradient(&simi);

        if !trust_pending && !acceptable {
            // Geometry step: replace the worst-shaped vertex.
            let jdrop = match (0..n)
                .filter(|&j| veta[j] > pareta)
                .max_by(|&a, &b| veta[a].total_cmp(&veta[b]))
            {
                Some(j) => j,
                None => (0..n)
                    .filter(|&j| vsig[j] < parsig)
                    .min_by(|&a, &b| vsig[a].total_cmp(&vsig[b]))
                    .expect("unacceptable simplex has a flat vertex"),
            };
            let mut dx = simi.row(jdrop).transpose() * (GAMMA * rho * vsig[jdrop]);
            if grad.dot(&dx) > 0.0 {
                dx = -dx;
            }
            let f = match run.eval(&(&simplex.pole + &dx))? {
                Ok(v) => v,
                Err(Budget) => return Ok(finish(&simplex, run.evaluations, false)),
            };
            simplex.sim.set_column(jdrop, &dx);
            simplex.fvals[jdrop] = f;
            continue;
        }

        let gnorm = grad.norm();
        let mut improved = false;
        if gnorm > 0.0 {
            let dx = &grad * (-rho / gnorm);
            let predicted = rho * gnorm;
            let f = match run.eval(&(&simplex.pole + &dx))? {
                Ok(v) => v,
                Err(Budget) => return Ok(finish(&simplex, run.evaluations, false)),
            };
            trust_pending = true;
            let actual = simplex.f_pole - f;

            // Pick the vertex the new point replaces.
            let t = &simi * &dx;
            let mut best = if actual <= 0.0 { 1.0 } else { 0.0 };
            let mut jdrop = None;
            for j in 0..n {
                if t[j].abs() > best {
                    best = t[j].abs();
                    jdrop = Some(j);
                }
            }
            let mut edgmax = DELTA * rho;
            for j in 0..n {
                let sigbar = t[j].abs() * vsig[j];
                if sigbar >= parsig || sigbar >= vsig[j] {
                    let dist = if actual > 0.0 {
                        (&dx - simplex.sim.column(j)).norm()
                    } else {
                        veta[j]
                    };
                    if dist > edgmax {
                        edgmax = dist;
                        jdrop = Some(j);
                    }
                }
            }
            if let Some(j) = jdrop {
                simplex.sim.set_column(j, &dx);
                simplex.fvals[j] = f;
            }
            improved = actual > 0.0 && actual >= 0.1 * predicted;
        } else {
            trust_pending = true;
        }
        if improved {
            continue;
        }
        if !acceptable {
            trust_pending = false;
            continue;
        }
        if rho <= cfg.rhoend {
            simplex.reorder();
            return Ok(finish(&simplex, run.evaluations, true));
        }
        rho *= 0.5;
        if rho <= 1.5 * cfg.rhoend {
            rho = cfg.rhoend;
        }
    }
}
