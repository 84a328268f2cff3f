//! Second-quantized Hamiltonians and the Jordan–Wigner mapping.

use std::collections::BTreeMap;

use num_complex::Complex64;

use super::{pauli_multiply, PauliAxis, PauliString, PauliTerm, QubitHamiltonian};
use crate::error::{Error, Result};

/// Upper bound on spin orbitals accepted by the mapping.
pub const MAX_ORBITALS: usize = 16;

/// One- or two-body operator coefficient.
///
/// `OneBody { p, q, value }` contributes `value · a†_p a_q`;
/// `TwoBody { p, q, r, s, value }` contributes `½ · value · a†_p a†_q a_r a_s`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum FermionTerm {
    OneBody {
        p: usize,
        q: usize,
        value: f64,
    },
    TwoBody {
        p: usize,
        q: usize,
        r: usize,
        s: usize,
        value: f64,
    },
}

impl FermionTerm {
    pub fn value(&self) -> f64 {
        match *self {
            FermionTerm::OneBody { value, .. } | FermionTerm::TwoBody { value, .. } => value,
        }
    }

    pub fn indices(&self) -> Vec<usize> {
        match *self {
            FermionTerm::OneBody { p, q, .. } => vec![p, q],
            FermionTerm::TwoBody { p, q, r, s, .. } => vec![p, q, r, s],
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct FermionHamiltonian {
    n_orbitals: usize,
    terms: Vec<FermionTerm>,
}

impl FermionHamiltonian {
    pub fn new(n_orbitals: usize, terms: Vec<FermionTerm>) -> Result<Self> {
        if n_orbitals == 0 {
            return Err(Error::Validation("n_orbitals must be positive".into()));
        }
        if n_orbitals > MAX_ORBITALS {
            return Err(Error::Capacity {
                what: "spin orbitals",
                value: n_orbitals,
                max: MAX_ORBITALS,
            });
        }
        if terms.is_empty() {
            return Err(Error::Validation("fermion Hamiltonian has no terms".into()));
        }
        for t in &terms {
            if let Some(&idx) = t.indices().iter().find(|&&i| i >= n_orbitals) {
                return Err(Error::IndexOutOfRange {
                    what: "spin orbitals",
                    index: idx,
                    len: n_orbitals,
                });
            }
            if !t.value().is_finite() {
                return Err(Error::Validation(format!("non-finite integral in {t:?}")));
            }
        }
        Ok(Self { n_orbitals, terms })
    }

    pub fn n_orbitals(&self) -> usize {
        self.n_orbitals
    }

    pub fn terms(&self) -> &[FermionTerm] {
        &self.terms
    }
}

type PauliSum = Vec<(Complex64, PauliString)>;

/// `a_p` (or `a†_p` when `dagger`) as `½(X_p ± iY_p) ∏_{j<p} Z_j`.
fn ladder(n: usize, p: usize, dagger: bool) -> PauliSum {
    let with = |axis| {
        let mut axes = vec![PauliAxis::Z; p];
        axes.push(axis);
        axes.resize(n, PauliAxis::I);
        PauliString::new(axes).expect("n >= 1")
    };
    let y_sign = if dagger { -0.5 } else { 0.5 };
    vec![
        (Complex64::new(0.5, 0.0), with(PauliAxis::X)),
        (Complex64::new(0.0, y_sign), with(PauliAxis::Y)),
    ]
}

fn product(a: &PauliSum, b: &PauliSum) -> PauliSum {
    let mut out = Vec::with_capacity(a.len() * b.len());
    for (ca, sa) in a {
        for (cb, sb) in b {
            let (phase, s) = pauli_multiply(sa, sb).expect("equal lengths");
            out.push((ca * cb * phase, s));
        }
    }
    out
}

/// Maps a fermionic Hamiltonian onto qubits, one qubit per spin orbital.
///
/// The result is simplified and has real coefficients; integral data that
/// does not describe a Hermitian operator is rejected.
pub fn jordan_wigner(h: &FermionHamiltonian) -> Result<QubitHamiltonian> {
    let n = h.n_orbitals;
    let create: Vec<PauliSum> = (0..n).map(|p| ladder(n, p, true)).collect();
    let annihilate: Vec<PauliSum> = (0..n).map(|p| ladder(n, p, false)).collect();

    let mut acc: BTreeMap<PauliString, Complex64> = BTreeMap::new();
    for term in &h.terms {
        let (weight, op) = match *term {
            FermionTerm::OneBody { p, q, value } => (value, product(&create[p], &annihilate[q])),
            FermionTerm::TwoBody { p, q, r, s, value } => {
                let left = product(&create[p], &create[q]);
                let right = product(&annihilate[r], &annihilate[s]);
                (0.5 * value, product(&left, &right))
            }
        };
        for (c, s) in op {
            *acc.entry(s).or_default() += c * weight;
        }
    }
    let terms = acc
        .into_iter()
        .map(|(string, coefficient)| PauliTerm {
            coefficient,
            string,
        })
        .collect();
    QubitHamiltonian::new(n, terms)?.hermitian_part()
}
