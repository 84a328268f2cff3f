use std::collections::BTreeMap;
use std::fs;
use std::path::Path;

use super::sweep::{RunRecord, SweepSummary};
use crate::error::{Error, Result};

pub const RECORD_HEADER: [&str; 7] = [
    "epsilon_deg",
    "energy_hartree",
    "iterations",
    "iteration_deviation",
    "accuracy_pct",
    "accuracy_deviation_pct",
    "seed",
];

/// Writes the per-angle CSV. Accuracy is rounded to 5 decimals; every
/// other float is written in shortest round-trip form.
pub fn write_records(records: &[RunRecord], path: &Path) -> Result<()> {
    let to_io = |e: csv::Error| Error::io(path, e.into());
    let mut w = csv::Writer::from_path(path).map_err(to_io)?;
    w.write_record(RECORD_HEADER).map_err(to_io)?;
    for r in records {
        w.write_record([
            r.epsilon_degrees.to_string(),
            r.energy.to_string(),
            r.iterations.to_string(),
            r.iteration_deviation.to_string(),
            format!("{:.5}", r.accuracy),
            r.accuracy_deviation.to_string(),
            r.seed.to_string(),
        ])
        .map_err(to_io)?;
    }
    w.flush().map_err(|e| Error::io(path, e))
}

pub fn read_records(path: &Path) -> Result<Vec<RunRecord>> {
    let mut rd = csv::Reader::from_path(path).map_err(|e| Error::io(path, e.into()))?;
    let header = rd.headers().map_err(|e| Error::io(path, e.into()))?.clone();
    if header.iter().ne(RECORD_HEADER) {
        return Err(Error::Parse {
            line: 1,
            message: format!("unexpected header {:?}", header.iter().collect::<Vec<_>>()),
        });
    }
    let mut out = Vec::new();
    for (i, row) in rd.records().enumerate() {
        let line = i + 2;
        let row = row.map_err(|e| Error::Parse {
            line,
            message: e.to_string(),
        })?;
        let float = |k: usize| -> Result<f64> {
            row[k].parse().map_err(|_| Error::Parse {
                line,
                message: format!("bad {} value {:?}", RECORD_HEADER[k], &row[k]),
            })
        };
        out.push(RunRecord {
            epsilon_degrees: float(0)?,
            energy: float(1)?,
            iterations: float(2)?,
            iteration_deviation: float(3)?,
            accuracy: float(4)?,
            accuracy_deviation: float(5)?,
            seed: row[6].parse().map_err(|_| Error::Parse {
                line,
                message: format!("bad seed {:?}", &row[6]),
            })?,
        });
    }
    Ok(out)
}

/// Run settings stored next to the summary statistics.
#[derive(Debug, Clone, PartialEq)]
pub struct RunInfo {
    pub label: String,
    pub e_fci: f64,
    /// `analytic` or `sampled`.
    pub mode: String,
    pub shots: u64,
    pub master_seed: u64,
    pub repeats: usize,
    pub inject_y: bool,
}

/// Writes the run settings followed by the summary, as `key = value` lines.
pub fn write_summary(summary: &SweepSummary, info: &RunInfo, path: &Path) -> Result<()> {
    let text = format!(
        "label = {}\n\
         e_fci = {}\n\
         mode = {}\n\
         shots = {}\n\
         master_seed = {}\n\
         repeats = {}\n\
         inject_y = {}\n\
         {summary}",
        info.label,
        info.e_fci,
        info.mode,
        info.shots,
        info.master_seed,
        info.repeats,
        info.inject_y,
    );
    fs::write(path, text).map_err(|e| Error::io(path, e))
}

pub fn read_summary(path: &Path) -> Result<(SweepSummary, RunInfo)> {
    let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    let mut kv = BTreeMap::new();
    for (i, line) in text.lines().enumerate() {
        let line_no = i + 1;
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (k, v) = line.split_once('=').ok_or_else(|| Error::Parse {
            line: line_no,
            message: "expected `key = value`".into(),
        })?;
        kv.insert(k.trim().to_string(), (line_no, v.trim().to_string()));
    }
    let get = |k: &str| -> Result<&(usize, String)> {
        kv.get(k).ok_or_else(|| Error::Parse {
            line: 0,
            message: format!("missing key {k}"),
        })
    };
    fn parse<T: std::str::FromStr>(e: &(usize, String), k: &str) -> Result<T> {
        e.1.parse().map_err(|_| Error::Parse {
            line: e.0,
            message: format!("bad value for {k}: {:?}", e.1),
        })
    }
    let f = |k: &str| parse::<f64>(get(k)?, k);
    let opt = |k: &str| -> Result<Option<f64>> {
        let e = get(k)?;
        if e.1 == "undefined" {
            Ok(None)
        } else {
            parse(e, k).map(Some)
        }
    };
    let summary = SweepSummary {
        accuracy_at_zero: f("accuracy_at_zero")?,
        average_accuracy: f("average_accuracy")?,
        max_accuracy_deviation: f("max_accuracy_deviation")?,
        iteration_deviation_mean: f("iteration_deviation_mean")?,
        iteration_deviation_std: f("iteration_deviation_std")?,
        iteration_deviation_max: f("iteration_deviation_max")?,
        correlation_positive: opt("correlation_positive")?,
        correlation_negative: opt("correlation_negative")?,
    };
    let info = RunInfo {
        label: get("label")?.1.clone(),
        e_fci: f("e_fci")?,
        mode: get("mode")?.1.clone(),
        shots: parse(get("shots")?, "shots")?,
        master_seed: parse(get("master_seed")?, "master_seed")?,
        repeats: parse(get("repeats")?, "repeats")?,
        inject_y: parse(get("inject_y")?, "inject_y")?,
    };
    Ok((summary, info))
}
