"""Brute-force reference dynamics in the full 2^n Hilbert space.

Independent oracle for the one-excitation reduction: the Hamiltonian is
assembled from explicit spin-1/2 operators on all n sites, states are
evolved in the full 2^n-dimensional space, and the receiver density
matrix is obtained by an actual partial trace.  Everything here is built
from first principles (kron products, dense eigensolve) and shares no
code path with the package's tridiagonal fast path.

Site 1 occupies the most significant qubit; |j> denotes the basis state
with the spin at site j flipped up and all others down.
"""

from __future__ import annotations

import numpy as np

SX = np.array([[0.0, 1.0], [1.0, 0.0]]) / 2.0
SY = np.array([[0.0, -1.0j], [1.0j, 0.0]]) / 2.0


def _site_operator(op: np.ndarray, site: int, n: int) -> np.ndarray:
    """op acting on one site (1-based), identity elsewhere."""
    out = np.array([[1.0]])
    for k in range(1, n + 1):
        out = np.kron(out, op if k == site else np.eye(2))
    return out


def full_hamiltonian(couplings: np.ndarray, n: int) -> np.ndarray:
    """XY Hamiltonian sum_i D_i (Sx_i Sx_{i+1} + Sy_i Sy_{i+1})."""
    dim = 2**n
    h = np.zeros((dim, dim), dtype=complex)
    for i in range(1, n):
        d = couplings[i - 1]
        h += d * (
            _site_operator(SX, i, n) @ _site_operator(SX, i + 1, n)
            + _site_operator(SY, i, n) @ _site_operator(SY, i + 1, n)
        )
    return h


def one_excitation_index(site: int, n: int) -> int:
    """Computational-basis index of |site> (site 1 is the highest bit)."""
    return 1 << (n - site)


def evolve(h: np.ndarray, psi0: np.ndarray, t: float) -> np.ndarray:
    w, v = np.linalg.eigh(h)
    return v @ (np.exp(-1j * w * t) * (v.conj().T @ psi0))


def full_amplitude(couplings: np.ndarray, n: int, k: int, j: int, t: float) -> complex:
    """<k| exp(-iHt) |j> computed entirely in the 2^n space."""
    h = full_hamiltonian(couplings, n)
    psi0 = np.zeros(2**n, dtype=complex)
    psi0[one_excitation_index(j, n)] = 1.0
    psi = evolve(h, psi0, t)
    return complex(psi[one_excitation_index(k, n)])


def evolve_sender(
    couplings: np.ndarray, n: int, a: np.ndarray, t: float
) -> np.ndarray:
    """Evolve the three-site sender state a1|1> + a2|2> + a3|3>."""
    h = full_hamiltonian(couplings, n)
    psi0 = np.zeros(2**n, dtype=complex)
    for j in range(1, 4):
        psi0[one_excitation_index(j, n)] = a[j - 1]
    return evolve(h, psi0, t)


def receiver_density_matrix(psi: np.ndarray, n: int) -> np.ndarray:
    """Partial trace over sites 1..n-2, in the ordered receiver basis
    (no excitation, site n-1 flipped, site n flipped, both flipped)."""
    block = psi.reshape(2 ** (n - 2), 4)
    rho = np.einsum("rm,rn->mn", block, block.conj())
    # minor index is (bit of site n-1)*2 + (bit of site n): reorder so the
    # single-flip states come out as (site n-1, site n)
    perm = [0, 2, 1, 3]
    return rho[np.ix_(perm, perm)]
