"""Sender encoding, receiver state, and the two discord measures.

The sender occupies chain sites 1..3 and is prepared in a pure
one-excitation state whose three amplitudes are parameterized by two angle
parameters alpha1, alpha2 and two phase parameters varphi1, varphi2, all
scaled to [0, 1]:

    a1 = cos(alpha1 pi/2) cos(alpha2 pi/2)
    a2 = cos(alpha2 pi/2) sin(alpha1 pi/2) exp(2 i pi varphi1)
    a3 = sin(alpha2 pi/2)                  exp(2 i pi varphi2)

After evolving for a time t the two receiver sites n-1 and n carry the
amplitudes f_{n-1} and f_n obtained by propagating a1..a3 through the
chain.  Tracing out everything else leaves the receiver pair in a rank-2
X-form state fully determined by those two amplitudes; its bottom corner
(both receiver spins flipped) is exactly zero because only one excitation
exists.

Two discord measures are computed from that state.  q_ext is the binary
entropy of the total received probability R^2 = |f_{n-1}|^2 + |f_n|^2 and
measures the correlation between the receiver pair and the rest of the
chain.  q_r is the internal quantum discord of the pair, for which the
X form admits a closed expression; the measurement-based definition (an
explicit minimization over the projective measurement interpolation
parameter eta on either receiver spin) is also implemented and kept as an
independent cross-check, never folded into the closed form.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .chain import AmplitudeMatrix
from .errors import NumericsError, ParameterError

# Tolerance window for clamping sums of squared magnitudes that rounding
# pushed just past 1, and square-root arguments just past [0, 1].
_CLAMP = 1e-12

# Below this, x log2 x is short-circuited to zero (0 log 0 = 0 limit).
_LOG_FLOOR = 1e-300


@dataclass(frozen=True)
class SenderState:
    """Pure three-site sender state: control parameters plus the
    normalized amplitude vector a = (a1, a2, a3)."""

    alpha1: float
    alpha2: float
    varphi1: float
    varphi2: float
    a: np.ndarray


@dataclass(frozen=True)
class ReceiverState:
    """State of the receiver pair (sites n-1, n), determined by the two
    site amplitudes.

    Magnitudes and squared magnitudes are precomputed; phases are stored
    in turns (f = r * exp(2 i pi phase)).  rsq is clamped to 1 when the
    amplitude sum overshoots by rounding; an overshoot beyond the clamp
    window raises, because it means the amplitudes were not produced by a
    unitary evolution.
    """

    f_nm1: complex
    f_n: complex
    r_nm1: float
    r_n: float
    phase_nm1: float
    phase_n: float
    rsq_nm1: float
    rsq_n: float
    rsq: float

    @classmethod
    def from_amplitudes(cls, f_nm1: complex, f_n: complex) -> "ReceiverState":
        f_nm1 = complex(f_nm1)
        f_n = complex(f_n)
        r_nm1 = abs(f_nm1)
        r_n = abs(f_n)
        rsq_nm1 = r_nm1 * r_nm1
        rsq_n = r_n * r_n
        total = rsq_nm1 + rsq_n
        if total > 1.0 + _CLAMP:
            raise ParameterError(
                f"receiver amplitudes overshoot normalization: R^2 = {total!r}"
            )
        phase_nm1 = (math.atan2(f_nm1.imag, f_nm1.real) / (2.0 * math.pi)) % 1.0
        phase_n = (math.atan2(f_n.imag, f_n.real) / (2.0 * math.pi)) % 1.0
        return cls(
            f_nm1=f_nm1,
            f_n=f_n,
            r_nm1=r_nm1,
            r_n=r_n,
            phase_nm1=phase_nm1,
            phase_n=phase_n,
            rsq_nm1=rsq_nm1,
            rsq_n=rsq_n,
            rsq=min(total, 1.0),
        )

    @classmethod
    def from_populations(cls, rsq_nm1: float, rsq_n: float) -> "ReceiverState":
        """Receiver state with the given squared magnitudes and zero phases.

        The discord measures depend on the amplitudes only through their
        magnitudes, so this is the natural entry point for curve tables.
        """
        if rsq_nm1 < 0.0 or rsq_n < 0.0:
            raise ParameterError("squared magnitudes must be non-negative")
        return cls.from_amplitudes(math.sqrt(rsq_nm1), math.sqrt(rsq_n))

    def density_matrix(self) -> np.ndarray:
        """4x4 receiver density matrix in the ordered basis
        (no excitation, site n-1 flipped, site n flipped, both flipped)."""
        rho = np.zeros((4, 4), dtype=complex)
        rho[0, 0] = 1.0 - self.rsq
        rho[1, 1] = self.rsq_nm1
        rho[2, 2] = self.rsq_n
        rho[1, 2] = self.f_nm1 * np.conj(self.f_n)
        rho[2, 1] = np.conj(rho[1, 2])
        return rho


@dataclass(frozen=True)
class DiscordPair:
    """The two discord coordinates of one receiver state, with the squared
    magnitudes they came from."""

    q_ext: float
    q_r: float
    rsq: float
    rsq_nm1: float
    rsq_n: float


def sender_state(
    alpha1: float, alpha2: float, varphi1: float = 0.0, varphi2: float = 0.0
) -> SenderState:
    """Encode the four control parameters into the three sender amplitudes."""
    for name, value in (
        ("alpha1", alpha1),
        ("alpha2", alpha2),
        ("varphi1", varphi1),
        ("varphi2", varphi2),
    ):
        if not 0.0 <= value <= 1.0:
            raise ParameterError(f"{name} must lie in [0, 1], got {value}")
    half1 = alpha1 * math.pi / 2.0
    half2 = alpha2 * math.pi / 2.0
    a = np.array(
        [
            math.cos(half1) * math.cos(half2),
            math.cos(half2) * math.sin(half1) * np.exp(2j * math.pi * varphi1),
            math.sin(half2) * np.exp(2j * math.pi * varphi2),
        ]
    )
    a.setflags(write=False)
    return SenderState(
        alpha1=alpha1, alpha2=alpha2, varphi1=varphi1, varphi2=varphi2, a=a
    )


def receiver_state(amps: AmplitudeMatrix, sender: SenderState) -> ReceiverState:
    """Propagate the sender amplitudes to the receiver sites.

    f_k = sum_j a_j p[k, j] for k in {n-1, n}; sender sites are rows 0..2
    of the amplitude matrix, receiver sites the last two rows.
    """
    n = amps.spec.n
    f_nm1 = amps.p[n - 2, :3] @ sender.a
    f_n = amps.p[n - 1, :3] @ sender.a
    return ReceiverState.from_amplitudes(f_nm1, f_n)


def _unit_clamp(x: float) -> float:
    """Clamp to [0, 1], tolerating rounding spill up to the clamp window."""
    if x < 0.0:
        return 0.0 if x > -_CLAMP else x
    if x > 1.0:
        return 1.0 if x < 1.0 + _CLAMP else x
    return x


def _xlog2(x: float) -> float:
    # 0 log 0 -> 0; arguments this small only arise from the clamp above.
    if x < _LOG_FLOOR:
        return 0.0
    return x * math.log2(x)


def _binary_entropy(x: float) -> float:
    x = _unit_clamp(x)
    # + 0.0 normalizes the -0.0 that -xlog2(1) produces at the endpoints
    return -_xlog2(x) - _xlog2(1.0 - x) + 0.0


def q_ext_from_rsq(rsq: float) -> float:
    """External discord as a function of the received probability alone."""
    if not 0.0 <= rsq <= 1.0 + _CLAMP:
        raise ParameterError(f"rsq must lie in [0, 1], got {rsq}")
    return _binary_entropy(rsq)


def q_ext(state: ReceiverState) -> float:
    """Discord between the receiver pair and the rest of the chain.

    For the rank-2 receiver state this equals the binary entropy of R^2,
    so it vanishes at R^2 = 0 and R^2 = 1 and peaks (at 1) at R^2 = 1/2.
    """
    return q_ext_from_rsq(state.rsq)


def _sqrt_arg(b: float, c: float) -> float:
    """Argument 1 - 4c(1 - b - c) of the closed-form square root.

    Algebraically equals (1 - 2c)^2 + 4bc >= 0; a value below -_CLAMP
    means the populations were corrupted upstream.
    """
    r2 = min(b + c, 1.0)
    arg = 1.0 - 4.0 * c * (1.0 - r2)
    if arg < -_CLAMP:
        raise NumericsError(f"square-root argument {arg!r} is negative")
    return _unit_clamp(arg)


def _q_side(b: float, c: float) -> float:
    """Discord of the receiver pair for a measurement on the spin whose
    squared magnitude is c, the other spin holding b."""
    r2 = min(b + c, 1.0)
    theta = math.sqrt(_sqrt_arg(b, c))
    return (
        1.0
        + _binary_entropy(b)
        + _xlog2(r2)
        + _xlog2(1.0 - r2)
        - 0.5 * _xlog2(1.0 - theta)
        - 0.5 * _xlog2(1.0 + theta)
    )


def q_r_closed_form(state: ReceiverState) -> float:
    """Internal discord of the receiver pair, closed form.

    The minimum over the two possible measured spins is taken explicitly;
    the per-spin expressions swap the two squared magnitudes.  Depends on
    the amplitudes only through |f_{n-1}|^2 and |f_n|^2.
    """
    return min(
        _q_side(state.rsq_nm1, state.rsq_n),
        _q_side(state.rsq_n, state.rsq_nm1),
    ) + 0.0


def discord_pair(state: ReceiverState) -> DiscordPair:
    """Both discord coordinates of one receiver state."""
    return DiscordPair(
        q_ext=q_ext(state),
        q_r=q_r_closed_form(state),
        rsq=state.rsq,
        rsq_nm1=state.rsq_nm1,
        rsq_n=state.rsq_n,
    )


def _entropy_vec(x: np.ndarray) -> np.ndarray:
    """Vectorized binary entropy with the 0 log 0 convention."""
    x = np.clip(x, 0.0, 1.0)
    out = np.zeros_like(x)
    for part in (x, 1.0 - x):
        mask = part > _LOG_FLOOR
        out[mask] -= part[mask] * np.log2(part[mask])
    return out


def _conditional_entropy(b: float, c: float, eta: np.ndarray) -> np.ndarray:
    """Measured-side conditional entropy p0 S0 + p1 S1 at each eta.

    b and c are the squared magnitudes of the unmeasured and measured
    receiver spin populations as they enter the projective-measurement
    expressions; eta in [0, 1] interpolates the measurement direction.
    """
    eta = np.asarray(eta, dtype=float)
    value = np.zeros_like(eta)
    for i in (0, 1):
        sign = 1.0 if i == 0 else -1.0
        p = 0.5 * (1.0 + sign * eta * (1.0 - 2.0 * b))
        inner = (1.0 - eta * eta) * b * c + 0.25 * (
            1.0 - 2.0 * c + sign * eta * (1.0 - 2.0 * (b + c))
        ) ** 2
        inner = np.clip(inner, 0.0, None)
        live = p > 1e-14
        theta = np.zeros_like(eta)
        theta[live] = np.sqrt(inner[live]) / p[live]
        theta = np.clip(theta, 0.0, 1.0)
        s = _entropy_vec(0.5 * (1.0 - theta))
        value[live] += p[live] * s[live]
    return value


def _min_conditional_entropy(
    b: float, c: float, eta_grid_size: int
) -> tuple[float, float]:
    """Scan eta on a dense grid, then sharpen with three parabolic steps.

    Returns (minimum value, minimizing eta).  The location of the minimum
    is discovered, never assumed.
    """
    grid = np.linspace(0.0, 1.0, eta_grid_size)
    values = _conditional_entropy(b, c, grid)
    # Degenerate states (an unexcited spin) make the profile exactly flat,
    # so near-ties are broken toward the smallest eta; a resolvable interior
    # minimum is never within the tie window of the rest of the grid.
    floor = float(np.min(values))
    k = int(np.flatnonzero(values <= floor + 1e-12)[0])
    best_eta = float(grid[k])
    best_val = float(values[k])

    step = float(grid[1] - grid[0])
    for _ in range(3):
        left = max(best_eta - step, 0.0)
        right = min(best_eta + step, 1.0)
        triple = np.array([left, 0.5 * (left + right), right])
        tv = _conditional_entropy(b, c, triple)
        # Parabola through the three nodes; fall back to the best node when
        # the curvature is flat or inverted.
        denom = (triple[0] - triple[1]) * (triple[0] - triple[2]) * (
            triple[1] - triple[2]
        )
        if abs(denom) > 0.0:
            aa = (
                triple[2] * (tv[1] - tv[0])
                + triple[1] * (tv[0] - tv[2])
                + triple[0] * (tv[2] - tv[1])
            ) / denom
            bb = (
                triple[2] ** 2 * (tv[0] - tv[1])
                + triple[1] ** 2 * (tv[2] - tv[0])
                + triple[0] ** 2 * (tv[1] - tv[2])
            ) / denom
            if aa > 0.0:
                vertex = float(np.clip(-bb / (2.0 * aa), 0.0, 1.0))
                vval = float(_conditional_entropy(b, c, np.array([vertex]))[0])
                # Improvements below the tie window are noise; accepting
                # them would walk the minimizer around flat profiles.
                if vval < best_val - 1e-12:
                    best_val, best_eta = vval, vertex
        j = int(np.argmin(tv))
        if tv[j] < best_val - 1e-12:
            best_val, best_eta = float(tv[j]), float(triple[j])
        step *= 0.5
    return best_val, best_eta


def _q_side_measured(b: float, c: float, eta_grid_size: int) -> tuple[float, float]:
    """Measurement-based discord for the spin with squared magnitude c
    measured: mutual information minus the maximal classical correlation."""
    r2 = min(b + c, 1.0)
    info = _binary_entropy(b) + _binary_entropy(c) - _binary_entropy(r2)
    cond_min, eta_min = _min_conditional_entropy(b, c, eta_grid_size)
    classical = _binary_entropy(c) - cond_min
    return info - classical, eta_min


def q_r_measurement_oracle(state: ReceiverState, eta_grid_size: int = 1001) -> float:
    """Internal discord via the explicit measurement minimization.

    Slow-path cross-check for q_r_closed_form: the conditional entropy is
    minimized numerically over the measurement parameter eta for each of
    the two receiver spins, and the smaller resulting discord is returned.
    """
    if eta_grid_size < 101:
        raise ParameterError(f"eta_grid_size must be >= 101, got {eta_grid_size}")
    q_n, _ = _q_side_measured(state.rsq_nm1, state.rsq_n, eta_grid_size)
    q_nm1, _ = _q_side_measured(state.rsq_n, state.rsq_nm1, eta_grid_size)
    return min(q_n, q_nm1)


CURVE_COLUMNS = ("r_sq", "r_nm1_sq", "q_ext", "q_r")


def discord_curves(
    r_nm1_sq_values: tuple[float, ...] = tuple(k / 10.0 for k in range(11)),
    samples: int = 101,
) -> list[tuple[float, float, float, float]]:
    """Constant-|f_{n-1}|^2 discord curves.

    For each fixed value of |f_{n-1}|^2 the total R^2 sweeps the physical
    interval [|f_{n-1}|^2, 1] in `samples` points and both discords are
    tabulated.  Rows are (r_sq, r_nm1_sq, q_ext, q_r); the family member
    at |f_{n-1}|^2 = 1 degenerates to the single point R^2 = 1.
    """
    if samples < 2:
        raise ParameterError(f"samples must be >= 2, got {samples}")
    rows = []
    for b in r_nm1_sq_values:
        if not 0.0 <= b <= 1.0:
            raise ParameterError(f"r_nm1_sq values must lie in [0, 1], got {b}")
        if b >= 1.0:
            grid = np.array([1.0])
        else:
            grid = np.linspace(b, 1.0, samples)
        for r2 in grid:
            state = ReceiverState.from_populations(b, max(r2 - b, 0.0))
            rows.append((float(r2), float(b), q_ext(state), q_r_closed_form(state)))
    return rows
