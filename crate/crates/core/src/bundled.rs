//! Molecule files shipped with the crate.

use crate::error::Result;
use crate::pauli::{load_hamiltonian, QubitHamiltonian};

/// H₂ at 0.735 Å, STO-3G, two-qubit parity-reduced form.
pub const H2: &str = include_str!("../molecules/h2.txt");
/// HeH⁺ at 0.9965 Å, STO-3G, two-qubit parity-reduced form.
pub const HEH_PLUS: &str = include_str!("../molecules/heh_plus.txt");
/// H₂ spin-orbital integrals (four orbitals).
pub const H2_FERMION: &str = include_str!("../molecules/h2_fermion.txt");
/// HeH⁺ spin-orbital integrals (four orbitals).
pub const HEH_PLUS_FERMION: &str = include_str!("../molecules/heh_plus_fermion.txt");

pub fn h2() -> Result<QubitHamiltonian> {
    load_hamiltonian(H2)?.into_qubit()
}

pub fn heh_plus() -> Result<QubitHamiltonian> {
    load_hamiltonian(HEH_PLUS)?.into_qubit()
}

/// Looks up a bundled molecule by name (`h2`, `heh_plus`, or `heh+`).
pub fn by_name(name: &str) -> Option<&'static str> {
    match name.to_ascii_lowercase().as_str() {
        "h2" => Some(H2),
        "heh_plus" | "heh+" | "hehplus" => Some(HEH_PLUS),
        "h2_fermion" => Some(H2_FERMION),
        "heh_plus_fermion" => Some(HEH_PLUS_FERMION),
        _ => None,
    }
}
