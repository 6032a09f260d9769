"""Engineered XY spin-chain model, restricted to the one-excitation sector.

An open chain of N spin-1/2 particles couples nearest neighbours through an
XY exchange interaction with bond-dependent coupling constants D_1 .. D_{N-1}.
A single profile parameter phi in [0, 1/2] interpolates between the uniform
chain (phi = 0, every D_i = 1) and the fully engineered profile
D_i = sqrt(i(N-i)/(N-1)) (phi = 1/2) that transfers a one-spin excitation
from site j to the mirror site N+1-j perfectly at time pi*sqrt(N-1).

The XY Hamiltonian conserves the number of flipped spins, so dynamics that
start with one excitation stay in the N-dimensional sector spanned by the
states |j> with a single flip at site j.  In that sector the Hamiltonian is
the real symmetric tridiagonal matrix with zero diagonal and off-diagonal
entries D_i/2: the spin exchange operators are half Pauli matrices, which is
where the factor 1/2 comes from.  This convention is what produces the
perfect-transfer time pi*sqrt(N-1) for phi = 1/2, and the test suite pins it
against a brute-force 2^N simulation built from explicit spin operators.

Everything downstream (transition amplitudes, receiver states, discord maps)
is driven by the spectral decomposition computed here.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.linalg

from .errors import NumericsError, ParameterError

# Eigenvalue gaps below this are treated as degeneracy, which this coupling
# family never produces; tripping the guard means corrupted input.
_GAP_FLOOR = 1e-10


@dataclass(frozen=True)
class ChainSpec:
    """Chain length and coupling-profile parameter.

    n must be at least 5 so that the three sender sites (1, 2, 3) and the
    two receiver sites (n-1, n) do not overlap.
    """

    n: int
    phi: float

    def __post_init__(self) -> None:
        if not isinstance(self.n, (int, np.integer)) or isinstance(self.n, bool):
            raise ParameterError(f"n must be an integer, got {self.n!r}")
        if self.n < 5:
            raise ParameterError(f"n must be >= 5, got {self.n}")
        if not 0.0 <= self.phi <= 0.5:
            raise ParameterError(f"phi must lie in [0, 0.5], got {self.phi}")


@dataclass(frozen=True)
class CouplingProfile:
    """Coupling constants D_1 .. D_{n-1} for one chain."""

    spec: ChainSpec
    d: np.ndarray


@dataclass(frozen=True)
class SpectralDecomposition:
    """Eigenvalues (ascending) and orthonormal eigenvectors of the
    one-excitation Hamiltonian.  eigenvectors[:, m] is the m-th mode."""

    spec: ChainSpec
    eigenvalues: np.ndarray
    eigenvectors: np.ndarray


@dataclass(frozen=True)
class AmplitudeMatrix:
    """Transition amplitudes p[k, j] = <k| exp(-iHt) |j> at one time.

    Symmetric in (k, j) because H is real symmetric; columns are unit
    vectors because the evolution is unitary.
    """

    spec: ChainSpec
    t: float
    p: np.ndarray


def coupling_profile(spec: ChainSpec) -> CouplingProfile:
    """Build the engineered coupling constants for the given profile.

    D_i = [sqrt(n-1) cos(phi pi) + sin(phi pi) sqrt(i(n-i))]
          / [sqrt(n-1) (cos(phi pi) + sin(phi pi))],  i = 1 .. n-1.

    phi = 0 gives the uniform chain, phi = 1/2 the perfect-transfer
    profile sqrt(i(n-i)/(n-1)).
    """
    n = spec.n
    i = np.arange(1, n, dtype=float)
    root = np.sqrt(float(n - 1))
    c = np.cos(spec.phi * np.pi)
    s = np.sin(spec.phi * np.pi)
    d = (root * c + s * np.sqrt(i * (n - i))) / (root * (c + s))
    if not np.all(d > 0.0):
        raise NumericsError("coupling profile produced a non-positive constant")
    d.setflags(write=False)
    return CouplingProfile(spec=spec, d=d)


def hamiltonian_matrix(profile: CouplingProfile) -> np.ndarray:
    """Dense one-excitation Hamiltonian: tridiagonal, zero diagonal,
    off-diagonal entries D_i/2."""
    n = profile.spec.n
    h = np.zeros((n, n))
    hop = profile.d / 2.0
    idx = np.arange(n - 1)
    h[idx, idx + 1] = hop
    h[idx + 1, idx] = hop
    return h


def _eigh_sorted_signed(offdiag: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Eigensolve the zero-diagonal symmetric tridiagonal matrix with the
    given off-diagonal, in a deterministic gauge.

    Eigenvalues come back ascending; each eigenvector is flipped, if needed,
    so its largest-magnitude entry is positive.  The spectrum of this
    coupling family is simple, so a gap below _GAP_FLOOR is treated as a
    hard failure rather than patched over.
    """
    diag = np.zeros(offdiag.size + 1)
    try:
        w, v = scipy.linalg.eigh_tridiagonal(diag, np.asarray(offdiag, dtype=float))
    except (np.linalg.LinAlgError, scipy.linalg.LinAlgError) as exc:
        raise NumericsError(f"tridiagonal eigensolver failed: {exc}") from exc
    if w.size > 1 and np.min(np.diff(w)) <= _GAP_FLOOR:
        raise NumericsError(
            f"eigenvalue spacing fell below {_GAP_FLOOR:g}; spectrum should be simple"
        )
    lead = np.argmax(np.abs(v), axis=0)
    signs = np.sign(v[lead, np.arange(v.shape[1])])
    v = v * signs
    return w, v


def spectral_decomposition(profile: CouplingProfile) -> SpectralDecomposition:
    """Diagonalize the one-excitation Hamiltonian of the profile."""
    w, v = _eigh_sorted_signed(profile.d / 2.0)
    w.setflags(write=False)
    v.setflags(write=False)
    return SpectralDecomposition(spec=profile.spec, eigenvalues=w, eigenvectors=v)


def amplitudes(decomp: SpectralDecomposition, t: float) -> AmplitudeMatrix:
    """Transition-amplitude matrix exp(-iHt) in the site basis.

    p[k, j] = sum_m V[k, m] exp(-i lambda_m t) V[j, m].  Negative t is
    allowed (time reversal).
    """
    phases = np.exp(-1j * decomp.eigenvalues * float(t))
    p = (decomp.eigenvectors * phases) @ decomp.eigenvectors.T
    p.setflags(write=False)
    return AmplitudeMatrix(spec=decomp.spec, t=float(t), p=p)


def perfect_transfer_time(n: int) -> float:
    """Mirror-transfer time pi*sqrt(n-1) of the phi = 1/2 profile."""
    return np.pi * np.sqrt(float(n - 1))
