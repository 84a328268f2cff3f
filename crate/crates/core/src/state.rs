//! Dense statevectors and single-qubit operations.
//!
//! Qubit 0 is the least significant bit of an amplitude index.

use num_complex::Complex64;
use rand::Rng;
use rand_distr::{Binomial, Distribution};

use crate::error::{Error, Result};
use crate::pauli::PauliString;

pub const MAX_QUBITS: usize = 12;

const NORM_TOL: f64 = 1e-10;
const UNITARY_TOL: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq)]
pub struct Statevector {
    n_qubits: usize,
    amplitudes: Vec<Complex64>,
}

/// 2×2 unitary, row-major.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Unitary1Q([[Complex64; 2]; 2]);

impl Unitary1Q {
    pub fn new(m: [[Complex64; 2]; 2]) -> Result<Self> {
        let u = Unitary1Q(m);
        let err = u.unitarity_error();
        if err > UNITARY_TOL {
            return Err(Error::Validation(format!(
                "matrix is not unitary (max |U†U - I| = {err:e})"
            )));
        }
        Ok(u)
    }

    pub fn identity() -> Self {
        let (o, z) = (Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0));
        Unitary1Q([[o, z], [z, o]])
    }

    pub fn hadamard() -> Self {
        let h = Complex64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
        Unitary1Q([[h, h], [h, -h]])
    }

    pub fn pauli_x() -> Self {
        let (o, z) = (Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0));
        Unitary1Q([[z, o], [o, z]])
    }

    /// `exp(-i θ X / 2)`.
    pub fn rx(theta: f64) -> Self {
        let c = Complex64::new((theta / 2.0).cos(), 0.0);
        let s = Complex64::new(0.0, -(theta / 2.0).sin());
        Unitary1Q([[c, s], [s, c]])
    }

    /// `U2(φ, λ) = 1/√2 [[1, −e^{iλ}], [e^{iφ}, e^{i(φ+λ)}]]`.
    pub fn u2(phi: f64, lambda: f64) -> Self {
        let r = std::f64::consts::FRAC_1_SQRT_2;
        Unitary1Q([
            [Complex64::new(r, 0.0), -Complex64::from_polar(r, lambda)],
            [
                Complex64::from_polar(r, phi),
                Complex64::from_polar(r, phi + lambda),
            ],
        ])
    }

    pub fn matrix(&self) -> [[Complex64; 2]; 2] {
        self.0
    }

    pub fn unitarity_error(&self) -> f64 {
        let m = &self.0;
        let mut err: f64 = 0.0;
        for i in 0..2 {
            for j in 0..2 {
                let dot: Complex64 = (0..2).map(|k| m[k][i].conj() * m[k][j]).sum();
                let target = if i == j { 1.0 } else { 0.0 };
                err = err.max((dot - target).norm());
            }
        }
        err
    }
}

impl Statevector {
    pub fn zero_state(n_qubits: usize) -> Result<Self> {
        check_size(n_qubits)?;
        let mut amplitudes = vec![Complex64::default(); 1 << n_qubits];
        amplitudes[0] = Complex64::new(1.0, 0.0);
        Ok(Self {
            n_qubits,
            amplitudes,
        })
    }

    /// Computational basis state `|index⟩`.
    pub fn basis_state(n_qubits: usize, index: usize) -> Result<Self> {
        let mut s = Self::zero_state(n_qubits)?;
        if index >= s.amplitudes.len() {
            return Err(Error::IndexOutOfRange {
                what: "basis states",
                index,
                len: s.amplitudes.len(),
            });
        }
        s.amplitudes.swap(0, index);
        Ok(s)
    }

    /// Wraps amplitudes that must already be normalized.
    pub fn from_amplitudes(amplitudes: Vec<Complex64>) -> Result<Self> {
        let n_qubits = register_size(amplitudes.len())?;
        let norm = norm_sqr(&amplitudes);
        if (norm - 1.0).abs() > NORM_TOL {
            return Err(Error::Validation(format!(
                "state norm² is {norm}, expected 1"
            )));
        }
        Ok(Self {
            n_qubits,
            amplitudes,
        })
    }

    /// Rescales arbitrary non-zero amplitudes to unit norm.
    pub fn normalized(mut amplitudes: Vec<Complex64>) -> Result<Self> {
        let norm = norm_sqr(&amplitudes).sqrt();
        if norm == 0.0 || !norm.is_finite() {
            return Err(Error::Validation("cannot normalize a zero vector".into()));
        }
        amplitudes.iter_mut().for_each(|a| *a /= norm);
        Self::from_amplitudes(amplitudes)
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    pub fn norm_sqr(&self) -> f64 {
        norm_sqr(&self.amplitudes)
    }

    pub fn probabilities(&self) -> Vec<f64> {
        self.amplitudes.iter().map(|a| a.norm_sqr()).collect()
    }

    fn check_qubit(&self, qubit: usize) -> Result<()> {
        if qubit >= self.n_qubits {
            return Err(Error::IndexOutOfRange {
                what: "qubits",
                index: qubit,
                len: self.n_qubits,
            });
        }
        Ok(())
    }

    pub fn apply_single_qubit_in_place(&mut self, qubit: usize, u: &Unitary1Q) -> Result<()> {
        self.check_qubit(qubit)?;
        let m = u.0;
        let bit = 1 << qubit;
        for i in 0..self.amplitudes.len() {
            if i & bit != 0 {
                continue;
            }
            let (a0, a1) = (self.amplitudes[i], self.amplitudes[i | bit]);
            self.amplitudes[i] = m[0][0] * a0 + m[0][1] * a1;
            self.amplitudes[i | bit] = m[1][0] * a0 + m[1][1] * a1;
        }
        Ok(())
    }

    pub fn apply_single_qubit(&self, qubit: usize, u: &Unitary1Q) -> Result<Self> {
        let mut out = self.clone();
        out.apply_single_qubit_in_place(qubit, u)?;
        Ok(out)
    }

    pub fn apply_u2(&self, qubit: usize, phi: f64, lambda: f64) -> Result<Self> {
        self.apply_single_qubit(qubit, &Unitary1Q::u2(phi, lambda))
    }

    /// `⟨ψ|P|ψ⟩`.
    pub fn expectation(&self, p: &PauliString) -> Result<f64> {
        if p.len() != self.n_qubits {
            return Err(Error::Dimension {
                expected: self.n_qubits,
                found: p.len(),
            });
        }
        let value: Complex64 = self
            .amplitudes
            .iter()
            .enumerate()
            .map(|(row, a)| {
                let (col, v) = p.row_entry(row);
                a.conj() * v * self.amplitudes[col]
            })
            .sum();
        Ok(value.re.clamp(-1.0, 1.0))
    }

    /// Multinomial draw of `shots` computational-basis outcomes; entry `k`
    /// of the result counts outcome `k`.
    pub fn sample_z_basis<R: Rng + ?Sized>(&self, shots: u64, rng: &mut R) -> Result<Vec<u64>> {
        if shots == 0 {
            return Err(Error::Validation("shots must be at least 1".into()));
        }
        let probs = self.probabilities();
        let total: f64 = probs.iter().sum();
        let mut counts = vec![0u64; probs.len()];
        let mut remaining = shots;
        let mut mass = total;
        for (k, &p) in probs.iter().enumerate() {
            if remaining == 0 {
                break;
            }
            if k == probs.len() - 1 || mass <= 0.0 {
                counts[k] = remaining;
                break;
            }
            let q = (p / mass).clamp(0.0, 1.0);
            let draw = Binomial::new(remaining, q)
                .expect("probability clamped to [0, 1]")
                .sample(rng);
            counts[k] = draw;
            remaining -= draw;
            mass -= p;
        }
        Ok(counts)
    }
}

fn norm_sqr(a: &[Complex64]) -> f64 {
    a.iter().map(|x| x.norm_sqr()).sum()
}

fn check_size(n_qubits: usize) -> Result<()> {
    if n_qubits == 0 {
        return Err(Error::Validation(
            "register needs at least one qubit".into(),
        ));
    }
    if n_qubits > MAX_QUBITS {
        return Err(Error::Capacity {
            what: "qubits",
            value: n_qubits,
            max: MAX_QUBITS,
        });
    }
    Ok(())
}

fn register_size(len: usize) -> Result<usize> {
    if len < 2 || !len.is_power_of_two() {
        return Err(Error::Validation(format!(
            "amplitude count {len} is not a power of two ≥ 2"
        )));
    }
    let n = len.trailing_zeros() as usize;
    check_size(n)?;
    Ok(n)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    fn plus() -> Statevector {
        Statevector::zero_state(1)
            .unwrap()
            .apply_single_qubit(0, &Unitary1Q::hadamard())
            .unwrap()
    }

    #[test]
    fn zero_state_examples() {
        assert_eq!(
            Statevector::zero_state(1).unwrap().amplitudes(),
            &[c(1.0), c(0.0)]
        );
        assert_eq!(
            Statevector::zero_state(2).unwrap().amplitudes(),
            &[c(1.0), c(0.0), c(0.0), c(0.0)]
        );
        assert!(matches!(
            Statevector::zero_state(13),
            Err(Error::Capacity { .. })
        ));
        assert!(Statevector::zero_state(0).is_err());
    }

    #[test]
    fn hadamard_on_zero() {
        let s = plus();
        let r = std::f64::consts::FRAC_1_SQRT_2;
        assert_abs_diff_eq!(s.amplitudes()[0].re, r, epsilon = 1e-15);
        assert_abs_diff_eq!(s.amplitudes()[1].re, r, epsilon = 1e-15);
    }

    #[test]
    fn identity_is_noop() {
        let s = Statevector::normalized(vec![c(0.3), Complex64::new(0.1, 0.9), c(-0.2), c(0.5)])
            .unwrap();
        assert_eq!(s.apply_single_qubit(1, &Unitary1Q::identity()).unwrap(), s);
    }

    #[test]
    fn x_on_qubit_one_sets_bit_one() {
        let s = Statevector::zero_state(2)
            .unwrap()
            .apply_single_qubit(1, &Unitary1Q::pauli_x())
            .unwrap();
        assert_eq!(s.amplitudes()[0b10], c(1.0));
        assert_eq!(s.probabilities().iter().sum::<f64>(), 1.0);
    }

    #[test]
    fn out_of_range_qubit() {
        let s = Statevector::zero_state(2).unwrap();
        assert!(matches!(
            s.apply_single_qubit(2, &Unitary1Q::hadamard()),
            Err(Error::IndexOutOfRange { .. })
        ));
    }

    #[test]
    fn u2_zero_pi_is_hadamard() {
        let u = Unitary1Q::u2(0.0, std::f64::consts::PI).matrix();
        let h = Unitary1Q::hadamard().matrix();
        for i in 0..2 {
            for j in 0..2 {
                assert!((u[i][j] - h[i][j]).norm() <= 1e-15);
            }
        }
    }

    #[test]
    fn u2_over_rotation_on_plus() {
        let eps: f64 = 0.3;
        let s = plus().apply_u2(0, 0.0, std::f64::consts::PI + eps).unwrap();
        let z = s.expectation(&"Z".parse().unwrap()).unwrap();
        assert_abs_diff_eq!(z, eps.cos(), epsilon = 1e-14);
    }

    #[test]
    fn u2_half_pi_reads_y() {
        // |+i⟩ = (|0⟩ + i|1⟩)/√2 has ⟨Y⟩ = 1
        let r = std::f64::consts::FRAC_1_SQRT_2;
        let s = Statevector::from_amplitudes(vec![c(r), Complex64::new(0.0, r)]).unwrap();
        let z = s
            .apply_u2(0, 0.0, std::f64::consts::FRAC_PI_2)
            .unwrap()
            .expectation(&"Z".parse().unwrap())
            .unwrap();
        assert_abs_diff_eq!(z, 1.0, epsilon = 1e-14);
    }

    #[test]
    fn expectation_examples() {
        let z0 = Statevector::zero_state(1).unwrap();
        assert_eq!(z0.expectation(&"Z".parse().unwrap()).unwrap(), 1.0);
        assert_abs_diff_eq!(
            plus().expectation(&"X".parse().unwrap()).unwrap(),
            1.0,
            epsilon = 1e-15
        );
        assert!(matches!(
            z0.expectation(&"ZZ".parse().unwrap()),
            Err(Error::Dimension { .. })
        ));
    }

    #[test]
    fn non_unitary_rejected() {
        assert!(Unitary1Q::new([[c(1.0), c(1.0)], [c(0.0), c(1.0)]]).is_err());
    }

    #[test]
    fn sampling_examples() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let counts = Statevector::zero_state(2)
            .unwrap()
            .sample_z_basis(1024, &mut rng)
            .unwrap();
        assert_eq!(counts, vec![1024, 0, 0, 0]);

        let a = plus()
            .sample_z_basis(1_000_000, &mut ChaCha8Rng::seed_from_u64(11))
            .unwrap();
        let b = plus()
            .sample_z_basis(1_000_000, &mut ChaCha8Rng::seed_from_u64(11))
            .unwrap();
        assert_eq!(a, b);
        assert_eq!(a.iter().sum::<u64>(), 1_000_000);
        for k in a {
            assert!((k as f64 - 500_000.0).abs() <= 5.0 * 500.0, "{k}");
        }
        assert!(plus().sample_z_basis(0, &mut rng).is_err());
    }
}
