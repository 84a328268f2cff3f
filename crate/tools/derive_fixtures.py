#!/usr/bin/env python3
"""Derive the bundled molecule fixtures.

Pipeline: PySCF RHF/STO-3G -> MO integrals -> spin-orbital operator
coefficients (block ordering: alpha orbitals first, then beta) -> dense
Jordan-Wigner matrix -> parity basis -> fix the two symmetry qubits
(alpha-electron parity and total parity) -> Pauli decomposition of the
remaining two-qubit block.

Energies are electronic only (no nuclear repulsion).

Usage: python3 tools/derive_fixtures.py <outdir>
"""
import itertools
import sys

import numpy as np
from pyscf import fci, gto, scf

I2 = np.eye(2, dtype=complex)
X = np.array([[0, 1], [1, 0]], dtype=complex)
Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
Z = np.diag([1.0, -1.0]).astype(complex)
PAULI = {"I": I2, "X": X, "Y": Y, "Z": Z}


def kron_qubits(ops):
    # qubit 0 is the least significant bit of the basis index
    m = np.array([[1.0 + 0j]])
    for op in ops:
        m = np.kron(op, m)
    return m


def annihilation(p, n):
    ops = [Z] * p + [(X + 1j * Y) / 2] + [I2] * (n - p - 1)
    return kron_qubits(ops)


def spin_orbital_terms(h1, eri):
    """Operator coefficients for H = sum h_pq a+p a_q + 1/2 sum g_pqrs a+p a+q a_r a_s."""
    norb = h1.shape[0]
    n = 2 * norb
    one = {}
    two = {}
    for p in range(n):
        for q in range(n):
            if p // norb == q // norb:
                v = h1[p % norb, q % norb]
                if abs(v) > 1e-12:
                    one[(p, q)] = v
    for p, q, r, s in itertools.product(range(n), repeat=4):
        # a+p a+q a_r a_s : electron 1 goes s -> p, electron 2 goes r -> q
        if p // norb != s // norb or q // norb != r // norb:
            continue
        v = eri[p % norb, s % norb, q % norb, r % norb]
        if abs(v) > 1e-12:
            two[(p, q, r, s)] = v
    return n, one, two


def dense_hamiltonian(n, one, two):
    a = [annihilation(p, n) for p in range(n)]
    ad = [m.conj().T for m in a]
    h = np.zeros((2**n, 2**n), dtype=complex)
    for (p, q), v in one.items():
        h += v * ad[p] @ a[q]
    for (p, q, r, s), v in two.items():
        h += 0.5 * v * ad[p] @ ad[q] @ a[r] @ a[s]
    return h


def reduce_two_qubits(h, n, n_alpha, n_elec):
    """Parity-map and drop qubits (n/2 - 1) and (n - 1)."""
    dim = 2**n
    perm = np.zeros((dim, dim))
    for occ in range(dim):
        par = 0
        acc = 0
        for j in range(n):
            acc ^= (occ >> j) & 1
            par |= acc << j
        perm[par, occ] = 1.0
    hp = perm @ h @ perm.T
    q_alpha, q_total = n // 2 - 1, n - 1
    keep = [
        i
        for i in range(dim)
        if ((i >> q_alpha) & 1) == (n_alpha % 2) and ((i >> q_total) & 1) == (n_elec % 2)
    ]
    return hp[np.ix_(keep, keep)]


def pauli_decompose(m):
    nq = int(round(np.log2(m.shape[0])))
    out = []
    for axes in itertools.product("IXYZ", repeat=nq):
        p = kron_qubits([PAULI[a] for a in axes])
        c = np.trace(p @ m) / m.shape[0]
        assert abs(c.imag) < 1e-12
        if abs(c.real) > 1e-12:
            out.append(("".join(axes), c.real))
    return out


def molecule(atom, charge):
    mol = gto.M(atom=atom, basis="sto-3g", charge=charge, spin=0, unit="Angstrom", verbose=0)
    mf = scf.RHF(mol).run()
    c = mf.mo_coeff
    h1 = c.T @ mf.get_hcore() @ c
    eri = mol.ao2mo(c, compact=False).reshape([c.shape[1]] * 4)
    e_fci = fci.FCI(mf).kernel()[0] - mol.energy_nuc()
    return mol, h1, eri, e_fci


def sector_min(h, n, n_elec):
    idx = [i for i in range(2**n) if bin(i).count("1") == n_elec]
    return np.linalg.eigvalsh(h[np.ix_(idx, idx)])[0]


def emit(path, header, lines):
    with open(path, "w") as f:
        for c in header:
            f.write(f"# {c}\n")
        for line in lines:
            f.write(line + "\n")


def build(name, atom, charge, outdir, label):
    mol, h1, eri, e_fci = molecule(atom, charge)
    n, one, two = spin_orbital_terms(h1, eri)
    h = dense_hamiltonian(n, one, two)
    n_elec = mol.nelectron
    e_sector = sector_min(h, n, n_elec)
    e_global = np.linalg.eigvalsh(h)[0]
    red = reduce_two_qubits(h, n, n_elec // 2, n_elec)
    terms = pauli_decompose(red)
    e_red = np.linalg.eigvalsh(red)[0]
    assert abs(e_red - e_fci) < 1e-8, (e_red, e_fci)
    assert abs(e_sector - e_fci) < 1e-8, (e_sector, e_fci)
    prov = [
        f"{label}, STO-3G, {atom}",
        "PySCF RHF molecular orbitals; electronic energy only (nuclear repulsion excluded)",
        f"E_FCI (electronic) = {e_fci:.10f} Hartree",
    ]
    fermion_lines = ["format: fermion", f"n: {n}"]
    for (p, q), v in sorted(one.items()):
        fermion_lines.append(f"onebody {p} {q} {float(v)!r}")
    for (p, q, r, s), v in sorted(two.items()):
        fermion_lines.append(f"twobody {p} {q} {r} {s} {float(v)!r}")
    emit(
        f"{outdir}/{name}_fermion.txt",
        prov
        + [
            "spin orbitals: alpha block (0..n/2) then beta block",
            "onebody p q v  -> v a+_p a_q ; twobody p q r s v -> 1/2 v a+_p a+_q a_r a_s",
            f"lowest eigenvalue over all particle numbers = {e_global:.10f}",
        ],
        fermion_lines,
    )
    pauli_lines = ["format: pauli", "n: 2"] + [f"{a} {float(c)!r}" for a, c in terms]
    emit(
        f"{outdir}/{name}.txt",
        prov
        + [
            "Jordan-Wigner -> parity basis -> two symmetry qubits fixed "
            f"(N_alpha = {n_elec // 2}, N = {n_elec})",
        ],
        pauli_lines,
    )
    print(name, "E_FCI", e_fci, "global min", e_global, "terms", terms)


if __name__ == "__main__":
    out = sys.argv[1] if len(sys.argv) > 1 else "."
    if len(sys.argv) > 2 and sys.argv[2] == "scan":
        for r in np.arange(0.6, 1.6, 0.05):
            _, _, _, e = molecule(f"He 0 0 0; H 0 0 {r}", 1)
            print(f"HeH+ R={r:.3f} E_elec={e:.6f}")
        sys.exit(0)
    build("h2", "H 0 0 0; H 0 0 0.735", 0, out, "H2 R=0.735 A")
    # R chosen so the electronic FCI energy sits near -3.9223 Hartree
    build("heh_plus", "He 0 0 0; H 0 0 0.9965", 1, out, "HeH+ R=0.9965 A")
