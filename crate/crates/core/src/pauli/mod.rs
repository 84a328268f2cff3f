//! Pauli-string algebra and qubit Hamiltonians.
//!
//! Strings are written with qubit 0 leftmost, and qubit 0 is the least
//! significant bit of a basis-state index. `"XZ"` is therefore `Z₁ ⊗ X₀`
//! as a matrix acting on `|q1 q0⟩`.

mod fermion;
mod io;

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{Error, Result};

pub use fermion::{jordan_wigner, FermionHamiltonian, FermionTerm, MAX_ORBITALS};
pub use io::{format_hamiltonian, load_hamiltonian, MoleculeHamiltonian};

/// Largest register for which dense matrices are built.
pub const MAX_DENSE_QUBITS: usize = 12;

/// Default tolerance for dropping coefficients and checking Hermiticity.
pub const DEFAULT_TOL: f64 = 1e-12;

const C_ONE: Complex64 = Complex64::new(1.0, 0.0);
const C_I: Complex64 = Complex64::new(0.0, 1.0);

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum PauliAxis {
    I,
    X,
    Y,
    Z,
}

impl PauliAxis {
    pub const ALL: [PauliAxis; 4] = [PauliAxis::I, PauliAxis::X, PauliAxis::Y, PauliAxis::Z];

    /// Single-qubit product `self · other = phase · result`.
    pub fn multiply(self, other: PauliAxis) -> (Complex64, PauliAxis) {
        use PauliAxis::*;
        match (self, other) {
            (I, p) | (p, I) => (C_ONE, p),
            (X, X) | (Y, Y) | (Z, Z) => (C_ONE, I),
            (X, Y) => (C_I, Z),
            (Y, X) => (-C_I, Z),
            (Y, Z) => (C_I, X),
            (Z, Y) => (-C_I, X),
            (Z, X) => (C_I, Y),
            (X, Z) => (-C_I, Y),
        }
    }

    /// Whether the axis flips the computational-basis bit.
    pub fn flips(self) -> bool {
        matches!(self, PauliAxis::X | PauliAxis::Y)
    }

    /// Matrix element `⟨row|σ|col⟩` for single bits; zero unless
    /// `col == row ^ flips`.
    pub fn element(self, row: bool, col: bool) -> Complex64 {
        use PauliAxis::*;
        match (self, row, col) {
            (I, r, c) | (Z, r, c) if r != c => Complex64::new(0.0, 0.0),
            (X, r, c) | (Y, r, c) if r == c => Complex64::new(0.0, 0.0),
            (I, _, _) | (X, _, _) => C_ONE,
            (Z, r, _) => {
                if r {
                    -C_ONE
                } else {
                    C_ONE
                }
            }
            (Y, r, _) => {
                if r {
                    C_I
                } else {
                    -C_I
                }
            }
        }
    }

    pub fn as_char(self) -> char {
        match self {
            PauliAxis::I => 'I',
            PauliAxis::X => 'X',
            PauliAxis::Y => 'Y',
            PauliAxis::Z => 'Z',
        }
    }

    pub fn from_char(c: char) -> Option<PauliAxis> {
        match c {
            'I' => Some(PauliAxis::I),
            'X' => Some(PauliAxis::X),
            'Y' => Some(PauliAxis::Y),
            'Z' => Some(PauliAxis::Z),
            _ => None,
        }
    }
}

/// Tensor product of single-qubit Pauli operators, one per qubit.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PauliString {
    axes: Box<[PauliAxis]>,
}

impl PauliString {
    pub fn new(axes: Vec<PauliAxis>) -> Result<Self> {
        if axes.is_empty() {
            return Err(Error::Validation(
                "Pauli string must act on at least one qubit".into(),
            ));
        }
        Ok(Self {
            axes: axes.into_boxed_slice(),
        })
    }

    pub fn identity(n_qubits: usize) -> Result<Self> {
        Self::new(vec![PauliAxis::I; n_qubits])
    }

    /// `axis` on `qubit`, identity elsewhere.
    pub fn single(n_qubits: usize, qubit: usize, axis: PauliAxis) -> Result<Self> {
        if qubit >= n_qubits {
            return Err(Error::IndexOutOfRange {
                what: "qubits",
                index: qubit,
                len: n_qubits,
            });
        }
        let mut axes = vec![PauliAxis::I; n_qubits];
        axes[qubit] = axis;
        Self::new(axes)
    }

    pub fn len(&self) -> usize {
        self.axes.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn axes(&self) -> &[PauliAxis] {
        &self.axes
    }

    pub fn axis(&self, qubit: usize) -> PauliAxis {
        self.axes[qubit]
    }

    /// Number of non-identity factors.
    pub fn weight(&self) -> usize {
        self.axes.iter().filter(|&&a| a != PauliAxis::I).count()
    }

    pub fn is_identity(&self) -> bool {
        self.weight() == 0
    }

    /// Only I and Z factors.
    pub fn is_diagonal(&self) -> bool {
        self.axes
            .iter()
            .all(|a| matches!(a, PauliAxis::I | PauliAxis::Z))
    }

    /// Bit mask of qubits whose axis flips the basis state (X or Y).
    pub fn flip_mask(&self) -> usize {
        self.axes
            .iter()
            .enumerate()
            .filter(|(_, a)| a.flips())
            .fold(0, |m, (q, _)| m | (1 << q))
    }

    /// Bit mask of qubits with a non-identity axis.
    pub fn support_mask(&self) -> usize {
        self.axes
            .iter()
            .enumerate()
            .filter(|(_, &a)| a != PauliAxis::I)
            .fold(0, |m, (q, _)| m | (1 << q))
    }

    /// Returns `(col, value)` with `⟨row|P|col⟩ = value`, the single
    /// non-zero entry of `row`.
    pub fn row_entry(&self, row: usize) -> (usize, Complex64) {
        let col = row ^ self.flip_mask();
        let value = self.axes.iter().enumerate().fold(C_ONE, |acc, (q, a)| {
            acc * a.element((row >> q) & 1 == 1, (col >> q) & 1 == 1)
        });
        (col, value)
    }
}

impl fmt::Display for PauliString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for a in self.axes.iter() {
            write!(f, "{}", a.as_char())?;
        }
        Ok(())
    }
}

impl FromStr for PauliString {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let axes = s
            .chars()
            .map(|c| {
                PauliAxis::from_char(c)
                    .ok_or_else(|| Error::Validation(format!("invalid Pauli axis {c:?} in {s:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(axes)
    }
}

/// Product of two strings: `a · b = phase · product`.
pub fn pauli_multiply(a: &PauliString, b: &PauliString) -> Result<(Complex64, PauliString)> {
    if a.len() != b.len() {
        return Err(Error::Dimension {
            expected: a.len(),
            found: b.len(),
        });
    }
    let mut phase = C_ONE;
    let axes = a
        .axes
        .iter()
        .zip(b.axes.iter())
        .map(|(&x, &y)| {
            let (p, r) = x.multiply(y);
            phase *= p;
            r
        })
        .collect();
    Ok((phase, PauliString::new(axes)?))
}

#[derive(Debug, Clone, PartialEq)]
pub struct PauliTerm {
    pub coefficient: Complex64,
    pub string: PauliString,
}

impl PauliTerm {
    pub fn new(coefficient: impl Into<Complex64>, string: PauliString) -> Self {
        Self {
            coefficient: coefficient.into(),
            string,
        }
    }

    /// Real-coefficient term from axes text, e.g. `PauliTerm::parse(0.5, "XZ")`.
    pub fn parse(coefficient: f64, axes: &str) -> Result<Self> {
        Ok(Self::new(coefficient, axes.parse()?))
    }
}

/// Weighted sum of Pauli strings on a fixed register.
#[derive(Debug, Clone, PartialEq)]
pub struct QubitHamiltonian {
    n_qubits: usize,
    terms: Vec<PauliTerm>,
}

impl QubitHamiltonian {
    pub fn new(n_qubits: usize, terms: Vec<PauliTerm>) -> Result<Self> {
        if n_qubits == 0 {
            return Err(Error::Validation(
                "Hamiltonian needs at least one qubit".into(),
            ));
        }
        for t in &terms {
            if t.string.len() != n_qubits {
                return Err(Error::Dimension {
                    expected: n_qubits,
                    found: t.string.len(),
                });
            }
            if !(t.coefficient.re.is_finite() && t.coefficient.im.is_finite()) {
                return Err(Error::Validation(format!(
                    "non-finite coefficient on {}",
                    t.string
                )));
            }
        }
        Ok(Self { n_qubits, terms })
    }

    /// Builds from `(coefficient, axes)` pairs; convenient for tests and fixtures.
    pub fn from_pairs(n_qubits: usize, pairs: &[(f64, &str)]) -> Result<Self> {
        let terms = pairs
            .iter()
            .map(|&(c, s)| PauliTerm::parse(c, s))
            .collect::<Result<Vec<_>>>()?;
        Self::new(n_qubits, terms)
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn terms(&self) -> &[PauliTerm] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Combines like terms, drops `|coefficient| ≤ tol`, sorts by axes.
    pub fn simplify(&self, tol: f64) -> QubitHamiltonian {
        let mut acc: BTreeMap<PauliString, Complex64> = BTreeMap::new();
        for t in &self.terms {
            *acc.entry(t.string.clone()).or_default() += t.coefficient;
        }
        let terms = acc
            .into_iter()
            .filter(|(_, c)| c.norm() > tol)
            .map(|(string, coefficient)| PauliTerm {
                coefficient,
                string,
            })
            .collect();
        QubitHamiltonian {
            n_qubits: self.n_qubits,
            terms,
        }
    }

    /// True when every coefficient is real within `tol`.
    pub fn is_hermitian(&self, tol: f64) -> bool {
        self.terms.iter().all(|t| t.coefficient.im.abs() <= tol)
    }

    /// Simplified copy with imaginary parts verified negligible and zeroed.
    pub fn hermitian_part(&self) -> Result<QubitHamiltonian> {
        let s = self.simplify(DEFAULT_TOL);
        if let Some(t) = s
            .terms
            .iter()
            .find(|t| t.coefficient.im.abs() > DEFAULT_TOL)
        {
            return Err(Error::Validation(format!(
                "Hamiltonian is not Hermitian: {} has coefficient {}",
                t.string, t.coefficient
            )));
        }
        let terms = s
            .terms
            .into_iter()
            .map(|t| PauliTerm::new(t.coefficient.re, t.string))
            .collect();
        Ok(QubitHamiltonian {
            n_qubits: self.n_qubits,
            terms,
        })
    }

    /// Sum of `|ω|` over non-identity terms.
    pub fn one_norm(&self) -> f64 {
        self.terms
            .iter()
            .filter(|t| !t.string.is_identity())
            .map(|t| t.coefficient.norm())
            .sum()
    }

    pub fn dense_matrix(&self) -> Result<DMatrix<Complex64>> {
        if self.n_qubits > MAX_DENSE_QUBITS {
            return Err(Error::Capacity {
                what: "qubits",
                value: self.n_qubits,
                max: MAX_DENSE_QUBITS,
            });
        }
        let dim = 1usize << self.n_qubits;
        let mut m = DMatrix::zeros(dim, dim);
        for t in &self.terms {
            for row in 0..dim {
                let (col, v) = t.string.row_entry(row);
                m[(row, col)] += t.coefficient * v;
            }
        }
        Ok(m)
    }

    /// Lowest eigenvalue of the dense matrix; the exact (FCI) reference energy.
    pub fn exact_ground_energy(&self) -> Result<f64> {
        let h = self.hermitian_part()?;
        let m = h.dense_matrix()?;
        Ok(crate::linalg::hermitian_eigenvalues(m)
            .into_iter()
            .fold(f64::INFINITY, f64::min))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn ps(s: &str) -> PauliString {
        s.parse().unwrap()
    }

    #[test]
    fn multiply_examples() {
        assert_eq!(
            pauli_multiply(&ps("X"), &ps("X")).unwrap(),
            (C_ONE, ps("I"))
        );
        assert_eq!(pauli_multiply(&ps("X"), &ps("Y")).unwrap(), (C_I, ps("Z")));
        assert_eq!(
            pauli_multiply(&ps("XZ"), &ps("YI")).unwrap(),
            (C_I, ps("ZZ"))
        );
    }

    #[test]
    fn multiply_length_mismatch() {
        assert!(matches!(
            pauli_multiply(&ps("X"), &ps("XY")),
            Err(Error::Dimension { .. })
        ));
    }

    #[test]
    fn empty_string_rejected() {
        assert!("".parse::<PauliString>().is_err());
        assert!("XQ".parse::<PauliString>().is_err());
    }

    #[test]
    fn simplify_examples() {
        let h = QubitHamiltonian::from_pairs(1, &[(1.0, "X"), (2.0, "X")]).unwrap();
        let s = h.simplify(DEFAULT_TOL);
        assert_eq!(s.terms(), &[PauliTerm::parse(3.0, "X").unwrap()]);

        let h = QubitHamiltonian::from_pairs(1, &[(1e-15, "Z")]).unwrap();
        assert!(h.simplify(1e-12).is_empty());

        let h = QubitHamiltonian::from_pairs(2, &[(0.5, "ZI"), (0.5, "IZ"), (-0.5, "ZI")]).unwrap();
        assert_eq!(
            h.simplify(DEFAULT_TOL).terms(),
            &[PauliTerm::parse(0.5, "IZ").unwrap()]
        );
    }

    #[test]
    fn simplify_orders_lexicographically() {
        let h = QubitHamiltonian::from_pairs(2, &[(1.0, "ZZ"), (1.0, "XI"), (1.0, "IY")]).unwrap();
        let order: Vec<String> = h
            .simplify(0.0)
            .terms()
            .iter()
            .map(|t| t.string.to_string())
            .collect();
        assert_eq!(order, ["IY", "XI", "ZZ"]);
    }

    #[test]
    fn dense_examples() {
        let z = QubitHamiltonian::from_pairs(1, &[(1.0, "Z")])
            .unwrap()
            .dense_matrix()
            .unwrap();
        assert_eq!(z[(0, 0)], C_ONE);
        assert_eq!(z[(1, 1)], -C_ONE);
        assert_eq!(z[(0, 1)], Complex64::default());

        let xx = QubitHamiltonian::from_pairs(2, &[(1.0, "XX")])
            .unwrap()
            .dense_matrix()
            .unwrap();
        for r in 0..4 {
            for c in 0..4 {
                let expect = if r + c == 3 {
                    C_ONE
                } else {
                    Complex64::default()
                };
                assert_eq!(xx[(r, c)], expect);
            }
        }

        let empty = QubitHamiltonian::new(2, vec![])
            .unwrap()
            .dense_matrix()
            .unwrap();
        assert!(empty.iter().all(|v| *v == Complex64::default()));
    }

    #[test]
    fn dense_capacity() {
        let h = QubitHamiltonian::new(13, vec![]).unwrap();
        assert!(matches!(h.dense_matrix(), Err(Error::Capacity { .. })));
    }

    #[test]
    fn ground_energy_examples() {
        let z = QubitHamiltonian::from_pairs(1, &[(1.0, "Z")]).unwrap();
        assert_abs_diff_eq!(z.exact_ground_energy().unwrap(), -1.0, epsilon = 1e-12);
        let xz = QubitHamiltonian::from_pairs(1, &[(0.5, "X"), (0.5, "Z")]).unwrap();
        assert_abs_diff_eq!(
            xz.exact_ground_energy().unwrap(),
            -std::f64::consts::FRAC_1_SQRT_2,
            epsilon = 1e-12
        );
    }

    #[test]
    fn ground_energy_rejects_non_hermitian() {
        let h = QubitHamiltonian::new(1, vec![PauliTerm::new(Complex64::new(0.0, 1.0), ps("X"))])
            .unwrap();
        assert!(matches!(h.exact_ground_energy(), Err(Error::Validation(_))));
    }
}
