//! Accuracy and iteration metrics for a sweep over readout errors.

use crate::error::{Error, Result};

/// `100·(1 − |(e_vqe − e_fci)/e_fci|)`, in percent.
pub fn accuracy(e_vqe: f64, e_fci: f64) -> Result<f64> {
    if e_fci == 0.0 {
        return Err(Error::UndefinedMetric(
            "accuracy relative to a zero reference energy".into(),
        ));
    }
    Ok(100.0 * (1.0 - ((e_vqe - e_fci) / e_fci).abs()))
}

/// `Accuracy(N) − Accuracy(0)`, in percentage points.
pub fn accuracy_deviation(accuracy: f64, baseline_accuracy: f64) -> f64 {
    accuracy - baseline_accuracy
}

/// `(Iter(N) − Iter(0)) / Iter(0)`, as a fraction.
pub fn iteration_deviation(iterations: f64, baseline_iterations: f64) -> Result<f64> {
    if !(baseline_iterations > 0.0) {
        return Err(Error::UndefinedMetric(format!(
            "iteration deviation against a baseline of {baseline_iterations} iterations"
        )));
    }
    Ok((iterations - baseline_iterations) / baseline_iterations)
}

/// Pearson correlation; `None` for fewer than two points or a constant series.
pub fn pearson(xs: &[f64], ys: &[f64]) -> Option<f64> {
    if xs.len() != ys.len() || xs.len() < 2 {
        return None;
    }
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let (mut sxy, mut sxx, mut syy) = (0.0, 0.0, 0.0);
    for (x, y) in xs.iter().zip(ys) {
        sxy += (x - mx) * (y - my);
        sxx += (x - mx) * (x - mx);
        syy += (y - my) * (y - my);
    }
    if sxx == 0.0 || syy == 0.0 {
        return None;
    }
    Some(sxy / (sxx * syy).sqrt())
}

pub fn mean(xs: &[f64]) -> f64 {
    xs.iter().sum::<f64>() / xs.len() as f64
}

/// Population standard deviation.
pub fn std_dev(xs: &[f64]) -> f64 {
    let m = mean(xs);
    (xs.iter().map(|x| (x - m) * (x - m)).sum::<f64>() / xs.len() as f64).sqrt()
}

/// Entry with the largest magnitude, sign kept.
pub fn max_by_magnitude(xs: &[f64]) -> f64 {
    xs.iter()
        .copied()
        .fold(0.0, |best, x| if x.abs() > best.abs() { x } else { best })
}
