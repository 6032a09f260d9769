"""Control-plane sweeps and coverage of the discord plane.

The two sender angles (alpha1, alpha2) range over the unit square.  Four
closed quadrant sub-domains partition it (boundary nodes belong to every
quadrant that touches them); sweeping each quadrant on a fixed grid and
evaluating both discord measures at the registration time turns the
control plane into a point cloud in the (q_r, q_ext) unit square.

Coverage statistics rasterize that square into cells and count, per cell,
how many sub-domains reach it.  The occupied-cell count times the cell
area estimates how much of the discord plane the chain can create, and
the multiplicity histogram shows how redundantly the quadrants cover it.
Grid points are evaluated independently in a fixed lexicographic order,
so sweep output is deterministic row for row.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .chain import ChainSpec, amplitudes, coupling_profile, spectral_decomposition
from .correlations import (
    ReceiverState,
    q_ext,
    q_r_closed_form,
    sender_state,
)
from .errors import ParameterError
from .optimize import TimeOptimum, find_first_maximum

_EDGE_TOL = 1e-9


@dataclass(frozen=True)
class SubDomain:
    """Closed axis-aligned rectangle of sender angles."""

    id: str
    alpha1_range: tuple[float, float]
    alpha2_range: tuple[float, float]


D1 = SubDomain("D1", (0.0, 0.5), (0.0, 0.5))
D2 = SubDomain("D2", (0.5, 1.0), (0.0, 0.5))
D3 = SubDomain("D3", (0.0, 0.5), (0.5, 1.0))
D4 = SubDomain("D4", (0.5, 1.0), (0.5, 1.0))
FULL = SubDomain("FULL", (0.0, 1.0), (0.0, 1.0))

SUBDOMAINS = {d.id: d for d in (D1, D2, D3, D4, FULL)}

QUADRANTS = ("D1", "D2", "D3", "D4")

SWEEP_COLUMNS = ("alpha1", "alpha2", "q_r", "q_ext", "rsq", "rsq_nm1")


def subdomain(domain_id: str) -> SubDomain:
    """Look up a sub-domain by its identifier (D1..D4 or FULL)."""
    try:
        return SUBDOMAINS[domain_id]
    except KeyError:
        raise ParameterError(
            f"unknown domain {domain_id!r}; expected one of {sorted(SUBDOMAINS)}"
        ) from None


@dataclass(frozen=True)
class SweepPoint:
    """Discord coordinates created from one sender grid node."""

    alpha1: float
    alpha2: float
    q_ext: float
    q_r: float
    rsq: float
    rsq_nm1: float


@dataclass(frozen=True)
class CoverageReport:
    """Rasterized occupancy of the (q_r, q_ext) unit square."""

    cell_size: float
    occupied_cells: int
    area_estimate: float
    area_margin: float
    multiplicity_histogram: dict[int, int]


def _axis_nodes(lo: float, hi: float, step: float) -> np.ndarray:
    count = (hi - lo) / step
    if abs(count - round(count)) > _EDGE_TOL:
        raise ParameterError(
            f"step {step} does not divide the domain edge [{lo}, {hi}]"
        )
    return lo + step * np.arange(int(round(count)) + 1)


def sweep(
    decomp,
    t: float,
    domain: SubDomain = FULL,
    step: float = 0.05,
    varphi1: float = 0.0,
    varphi2: float = 0.0,
) -> list[SweepPoint]:
    """Evaluate both discord measures on a sender-angle grid at time t.

    Nodes run lexicographically in (alpha1, alpha2) with spacing `step`,
    which must divide both domain edges.  Control phases default to zero;
    they feed the sender amplitudes but leave the discord coordinates
    unchanged, so panels are conventionally produced at zero phases.
    """
    if step <= 0.0:
        raise ParameterError(f"step must be positive, got {step}")
    amp = amplitudes(decomp, t)
    n = decomp.spec.n
    row_nm1 = amp.p[n - 2, :3]
    row_n = amp.p[n - 1, :3]
    points = []
    for a1 in _axis_nodes(*domain.alpha1_range, step):
        for a2 in _axis_nodes(*domain.alpha2_range, step):
            s = sender_state(float(a1), float(a2), varphi1, varphi2)
            state = ReceiverState.from_amplitudes(row_nm1 @ s.a, row_n @ s.a)
            points.append(
                SweepPoint(
                    alpha1=float(a1),
                    alpha2=float(a2),
                    q_ext=q_ext(state),
                    q_r=q_r_closed_form(state),
                    rsq=state.rsq,
                    rsq_nm1=state.rsq_nm1,
                )
            )
    return points


def coverage(
    points_by_subdomain: dict[str, list[SweepPoint]],
    cell_size: float = 0.02,
) -> CoverageReport:
    """Occupancy statistics of the discord plane across the four quadrants.

    Each point lands in the cell floor(q/cell_size) along both axes, with
    the top edge clamped into the last cell.  cells_per_side is
    floor(1/cell_size), so the area estimate never exceeds 1 even for
    cell sizes that do not tile the unit interval exactly.  A cell's
    multiplicity is the number of distinct quadrants reaching it.
    """
    if not 0.0 < cell_size < 1.0:
        raise ParameterError(f"cell_size must lie in (0, 1), got {cell_size}")
    missing = [q for q in QUADRANTS if q not in points_by_subdomain]
    if missing:
        raise ParameterError(f"missing sub-domains: {missing}")

    cells_per_side = int(1.0 / cell_size + _EDGE_TOL)
    reached: dict[tuple[int, int], set[str]] = {}
    for quad in QUADRANTS:
        for pt in points_by_subdomain[quad]:
            ix = min(int(pt.q_r / cell_size), cells_per_side - 1)
            iy = min(int(pt.q_ext / cell_size), cells_per_side - 1)
            reached.setdefault((ix, iy), set()).add(quad)

    histogram = {1: 0, 2: 0, 3: 0, 4: 0}
    for quads in reached.values():
        histogram[len(quads)] += 1
    occupied = len(reached)

    # One-cell-ring uncertainty: occupied cells bordering unoccupied ones.
    boundary = 0
    for ix, iy in reached:
        for dx, dy in ((1, 0), (-1, 0), (0, 1), (0, -1)):
            jx, jy = ix + dx, iy + dy
            if 0 <= jx < cells_per_side and 0 <= jy < cells_per_side:
                if (jx, jy) not in reached:
                    boundary += 1
                    break
    return CoverageReport(
        cell_size=cell_size,
        occupied_cells=occupied,
        area_estimate=occupied * cell_size * cell_size,
        area_margin=boundary * cell_size * cell_size,
        multiplicity_histogram=histogram,
    )


def run_map_experiment(
    n: int,
    phi: float,
    step: float = 0.05,
    cell_size: float = 0.02,
) -> tuple[TimeOptimum, dict[str, list[SweepPoint]], CoverageReport]:
    """Full discord-map pipeline for one chain.

    Optimizes the registration time for the site-1 excitation, sweeps all
    four quadrant sub-domains at that time, and rasterizes the combined
    coverage.
    """
    decomp = spectral_decomposition(coupling_profile(ChainSpec(n=n, phi=phi)))
    optimum = find_first_maximum(decomp, sender_state(0.0, 0.0))
    sweeps = {q: sweep(decomp, optimum.t0, SUBDOMAINS[q], step) for q in QUADRANTS}
    report = coverage(sweeps, cell_size)
    return optimum, sweeps, report
