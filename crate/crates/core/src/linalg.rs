//! Small dense helpers on top of nalgebra.

use nalgebra::DMatrix;
use num_complex::Complex64;

pub type CMatrix = DMatrix<Complex64>;

pub fn hermitian_eigenvalues(m: CMatrix) -> Vec<f64> {
    m.symmetric_eigen().eigenvalues.iter().copied().collect()
}

/// `exp(-i·h·t)` for Hermitian `h`, via its eigendecomposition.
pub fn unitary_step(h: &CMatrix, t: f64) -> CMatrix {
    let eig = h.clone().symmetric_eigen();
    let v = &eig.eigenvectors;
    let phases = CMatrix::from_diagonal(&nalgebra::DVector::from_iterator(
        eig.eigenvalues.len(),
        eig.eigenvalues
            .iter()
            .map(|&e| Complex64::from_polar(1.0, -e * t)),
    ));
    v * phases * v.adjoint()
}

/// Kronecker product with `a` acting on the more significant qubits.
pub fn kron(a: &CMatrix, b: &CMatrix) -> CMatrix {
    a.kronecker(b)
}

/// Largest absolute entry of `a - b`.
pub fn max_abs_diff(a: &CMatrix, b: &CMatrix) -> f64 {
    a.iter()
        .zip(b.iter())
        .map(|(x, y)| (x - y).norm())
        .fold(0.0, f64::max)
}
