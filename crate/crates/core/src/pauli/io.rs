//! Line-oriented molecule files.
//!
//! ```text
//! # comment
//! format: pauli
//! n: 2
//! ZI 0.5
//! ```
//!
//! Fermion files use `format: fermion` and body lines
//! `onebody p q value` / `twobody p q r s value`.

use std::fmt::Write;

use super::{jordan_wigner, FermionHamiltonian, FermionTerm, PauliTerm, QubitHamiltonian};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
pub enum MoleculeHamiltonian {
    Fermion(FermionHamiltonian),
    Pauli(QubitHamiltonian),
}

impl MoleculeHamiltonian {
    /// Qubit form; fermion files go through Jordan–Wigner.
    pub fn into_qubit(self) -> Result<QubitHamiltonian> {
        match self {
            MoleculeHamiltonian::Fermion(f) => jordan_wigner(&f),
            MoleculeHamiltonian::Pauli(q) => Ok(q),
        }
    }
}

#[derive(Clone, Copy, PartialEq)]
enum Format {
    Fermion,
    Pauli,
}

fn parse_err(line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        message: message.into(),
    }
}

fn parse_num<T: std::str::FromStr>(tok: &str, line: usize) -> Result<T> {
    tok.parse()
        .map_err(|_| parse_err(line, format!("cannot parse {tok:?} as a number")))
}

pub fn load_hamiltonian(text: &str) -> Result<MoleculeHamiltonian> {
    let mut format = None;
    let mut n = None;
    let mut fermion = Vec::new();
    let mut pauli = Vec::new();

    for (i, raw) in text.lines().enumerate() {
        let lineno = i + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        if let Some(v) = line.strip_prefix("format:") {
            format = Some(match v.trim() {
                "fermion" => Format::Fermion,
                "pauli" => Format::Pauli,
                other => return Err(parse_err(lineno, format!("unknown format {other:?}"))),
            });
            continue;
        }
        if let Some(v) = line.strip_prefix("n:") {
            n = Some(parse_num::<usize>(v.trim(), lineno)?);
            continue;
        }
        let (fmt, size) = match (format, n) {
            (Some(f), Some(n)) => (f, n),
            _ => {
                return Err(parse_err(
                    lineno,
                    "body line before `format:` and `n:` header",
                ))
            }
        };
        let toks: Vec<&str> = line.split_whitespace().collect();
        match fmt {
            Format::Pauli => {
                let [axes, coef] = toks[..] else {
                    return Err(parse_err(lineno, "expected `<axes> <coefficient>`"));
                };
                let coef: f64 = parse_num(coef, lineno)?;
                let term =
                    PauliTerm::parse(coef, axes).map_err(|e| parse_err(lineno, e.to_string()))?;
                if term.string.len() != size {
                    return Err(Error::Validation(format!(
                        "line {lineno}: string {axes} has length {} but n = {size}",
                        term.string.len()
                    )));
                }
                pauli.push(term);
            }
            Format::Fermion => {
                let idx = |k: usize| parse_num::<usize>(toks[k], lineno);
                let term = match toks.first().copied() {
                    Some("onebody") if toks.len() == 4 => FermionTerm::OneBody {
                        p: idx(1)?,
                        q: idx(2)?,
                        value: parse_num(toks[3], lineno)?,
                    },
                    Some("twobody") if toks.len() == 6 => FermionTerm::TwoBody {
                        p: idx(1)?,
                        q: idx(2)?,
                        r: idx(3)?,
                        s: idx(4)?,
                        value: parse_num(toks[5], lineno)?,
                    },
                    _ => {
                        return Err(parse_err(
                            lineno,
                            "expected `onebody p q v` or `twobody p q r s v`",
                        ))
                    }
                };
                fermion.push(term);
            }
        }
    }

    match (format, n) {
        (Some(Format::Pauli), Some(n)) => {
            Ok(MoleculeHamiltonian::Pauli(QubitHamiltonian::new(n, pauli)?))
        }
        (Some(Format::Fermion), Some(n)) => Ok(MoleculeHamiltonian::Fermion(
            FermionHamiltonian::new(n, fermion)?,
        )),
        _ => Err(parse_err(
            text.lines().count(),
            "missing `format:` or `n:` header",
        )),
    }
}

/// Serializes in the loader's format. Coefficients use the shortest
/// round-trip decimal form; imaginary parts are not representable and
/// must be zero.
pub fn format_hamiltonian(h: &MoleculeHamiltonian) -> Result<String> {
    let mut out = String::new();
    match h {
        MoleculeHamiltonian::Pauli(q) => {
            writeln!(out, "format: pauli\nn: {}", q.n_qubits()).unwrap();
            for t in q.terms() {
                if t.coefficient.im != 0.0 {
                    return Err(Error::Validation(format!(
                        "complex coefficient on {} cannot be written",
                        t.string
                    )));
                }
                writeln!(out, "{} {}", t.string, t.coefficient.re).unwrap();
            }
        }
        MoleculeHamiltonian::Fermion(f) => {
            writeln!(out, "format: fermion\nn: {}", f.n_orbitals()).unwrap();
            for t in f.terms() {
                match *t {
                    FermionTerm::OneBody { p, q, value } => {
                        writeln!(out, "onebody {p} {q} {value}").unwrap()
                    }
                    FermionTerm::TwoBody { p, q, r, s, value } => {
                        writeln!(out, "twobody {p} {q} {r} {s} {value}").unwrap()
                    }
                }
            }
        }
    }
    Ok(out)
}
