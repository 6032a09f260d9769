"""Command-line front end and deterministic table output.

Every experiment in the package is reachable as a subcommand producing a
CSV table or a JSON document on stdout (or at --out).  Numeric CSV fields
are printed with 12 significant digits and a '.' decimal separator, so a
rerun with the same arguments is byte-identical and a parsed table
recovers the values to about 1e-11 relative error.

Exit status: 0 on success, 2 on a usage error (argparse convention), 1 on
a computational failure such as a scan window without a maximum.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass

import numpy as np

from .chain import ChainSpec, coupling_profile, spectral_decomposition
from .correlations import CURVE_COLUMNS, discord_curves, sender_state
from .errors import SpinDiscordError
from .optimize import (
    FitResult,
    fit_exponential,
    find_first_maximum,
    phi_sweep,
    scaling_exponent,
)
from .sweep import QUADRANTS, SWEEP_COLUMNS, run_map_experiment, subdomain, sweep

_DEFAULT_PHI_GRID = tuple(k / 32.0 for k in range(17))
_DEFAULT_N_GRID = (50, 100, 150, 200, 250, 300)


@dataclass(frozen=True)
class RunConfig:
    """Parsed invocation: one command plus its parameters."""

    command: str
    out: str
    n: int | None = None
    phi: float = 0.5
    step: float = 0.05
    t: float | None = None
    domain: str = "FULL"
    samples: int = 101
    phi_grid: tuple[float, ...] | None = None
    n_grid: tuple[int, ...] | None = None
    cell_size: float = 0.02
    coverage_out: str | None = None


def format_value(value) -> str:
    """One CSV field: 12 significant digits for floats, exact integers,
    re+imj for complex values, strings verbatim."""
    if isinstance(value, str):
        return value
    if isinstance(value, bool):
        return str(value)
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    if isinstance(value, (complex, np.complexfloating)):
        return f"{value.real:.12g}{value.imag:+.12g}j"
    return f"{float(value):.12g}"


def emit_csv(columns, rows, path: str) -> None:
    """Write a header row plus formatted data rows to path ('-': stdout)."""
    lines = [",".join(columns)]
    lines.extend(",".join(format_value(v) for v in row) for row in rows)
    text = "\n".join(lines) + "\n"
    _write(text, path)


def emit_json(document, path: str) -> None:
    text = json.dumps(document, indent=2, sort_keys=True) + "\n"
    _write(text, path)


def _write(text: str, path: str) -> None:
    if path == "-":
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)


def _positive_int(text: str) -> int:
    value = int(text)
    if value <= 0:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text}")
    return value


def _chain_length(text: str) -> int:
    value = int(text)
    if value < 5:
        raise argparse.ArgumentTypeError(f"--n must be at least 5, got {text}")
    return value


def _phi_value(text: str) -> float:
    value = float(text)
    if not 0.0 <= value <= 0.5:
        raise argparse.ArgumentTypeError(f"--phi out of [0, 0.5]: {text}")
    return value


def _positive_float(text: str) -> float:
    value = float(text)
    if value <= 0.0:
        raise argparse.ArgumentTypeError(f"expected a positive number, got {text}")
    return value


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="spindiscord",
        description="Discord created at the receiver of an engineered XY chain.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p: argparse.ArgumentParser, n_required: bool = True) -> None:
        if n_required:
            p.add_argument("--n", type=_chain_length, required=True, help="chain length (>= 5)")
        p.add_argument("--phi", type=_phi_value, default=0.5, help="profile parameter in [0, 0.5]")
        p.add_argument("--out", default="-", help="output path, '-' for stdout")

    p = sub.add_parser("profile", help="coupling constants of one chain")
    add_common(p)

    p = sub.add_parser("curves", help="constant-|f_{n-1}|^2 discord curves")
    p.add_argument("--samples", type=_positive_int, default=101, help="points per curve (>= 2)")
    p.add_argument("--out", default="-")

    p = sub.add_parser("optimize", help="first significant maximum of R^2(t)")
    add_common(p)

    p = sub.add_parser("phi-sweep", help="t0 and R^2_max across profiles")
    p.add_argument("--n", type=_chain_length, required=True)
    p.add_argument("--phi-grid", type=_phi_value, nargs="+", default=list(_DEFAULT_PHI_GRID))
    p.add_argument("--out", default="-")

    p = sub.add_parser("scaling", help="arrival-time scaling exponent over chain sizes")
    p.add_argument("--phi", type=_phi_value, default=0.5)
    p.add_argument("--n-grid", type=_chain_length, nargs="+", default=list(_DEFAULT_N_GRID))
    p.add_argument("--out", default="-")

    p = sub.add_parser("fit", help="saturating-exponential fit of R^2_max(phi)")
    p.add_argument("--n", type=_chain_length, required=True)
    p.add_argument("--phi-grid", type=_phi_value, nargs="+", default=list(_DEFAULT_PHI_GRID))
    p.add_argument("--out", default="-")

    p = sub.add_parser("sweep", help="discord map of one sender-angle domain")
    add_common(p)
    p.add_argument("--t", type=float, default=None, help="registration time (default: optimized)")
    p.add_argument("--domain", default="FULL", choices=["D1", "D2", "D3", "D4", "FULL"])
    p.add_argument("--step", type=_positive_float, default=0.05)

    p = sub.add_parser("map", help="all quadrant sweeps at the optimal time, plus coverage")
    add_common(p)
    p.add_argument("--step", type=_positive_float, default=0.05)
    p.add_argument("--cell-size", type=_positive_float, default=0.02)
    p.add_argument("--coverage-out", default=None, help="path for the coverage JSON report")

    return parser


def parse_args(argv) -> RunConfig:
    """Parse an argument vector into a RunConfig (exits 2 on usage errors)."""
    ns = build_parser().parse_args(argv)
    return RunConfig(
        command=ns.command,
        out=getattr(ns, "out", "-"),
        n=getattr(ns, "n", None),
        phi=getattr(ns, "phi", 0.5),
        step=getattr(ns, "step", 0.05),
        t=getattr(ns, "t", None),
        domain=getattr(ns, "domain", "FULL"),
        samples=getattr(ns, "samples", 101),
        phi_grid=tuple(ns.phi_grid) if getattr(ns, "phi_grid", None) else None,
        n_grid=tuple(ns.n_grid) if getattr(ns, "n_grid", None) else None,
        cell_size=getattr(ns, "cell_size", 0.02),
        coverage_out=getattr(ns, "coverage_out", None),
    )


def _decomp(n: int, phi: float):
    return spectral_decomposition(coupling_profile(ChainSpec(n=n, phi=phi)))


def _run(cfg: RunConfig) -> None:
    site1 = sender_state(0.0, 0.0)

    if cfg.command == "profile":
        prof = coupling_profile(ChainSpec(n=cfg.n, phi=cfg.phi))
        rows = [(i + 1, d) for i, d in enumerate(prof.d)]
        emit_csv(("i", "d"), rows, cfg.out)

    elif cfg.command == "curves":
        emit_csv(CURVE_COLUMNS, discord_curves(samples=cfg.samples), cfg.out)

    elif cfg.command == "optimize":
        opt = find_first_maximum(_decomp(cfg.n, cfg.phi), site1)
        emit_csv(("phi", "t0", "r2max"), [(cfg.phi, opt.t0, opt.r2max)], cfg.out)

    elif cfg.command == "phi-sweep":
        optima = phi_sweep(cfg.n, cfg.phi_grid, site1)
        rows = [(o.spec.phi, o.t0, o.r2max) for o in optima]
        emit_csv(("phi", "t0", "r2max"), rows, cfg.out)

    elif cfg.command == "scaling":
        result = scaling_exponent(cfg.phi, cfg.n_grid, site1)
        emit_json(
            {
                "phi": result.phi,
                "gamma": result.gamma,
                "intercept": result.intercept,
                "r_squared_stat": result.r_squared_stat,
                "n": list(result.n_values),
                "t0": list(result.t0_values),
            },
            cfg.out,
        )

    elif cfg.command == "fit":
        optima = phi_sweep(cfg.n, cfg.phi_grid, site1)
        result = fit_exponential(cfg.phi_grid, [o.r2max for o in optima])
        emit_json(_fit_document(result), cfg.out)

    elif cfg.command == "sweep":
        decomp = _decomp(cfg.n, cfg.phi)
        t = cfg.t if cfg.t is not None else find_first_maximum(decomp, site1).t0
        points = sweep(decomp, t, subdomain(cfg.domain), cfg.step)
        rows = [
            (p.alpha1, p.alpha2, p.q_r, p.q_ext, p.rsq, p.rsq_nm1) for p in points
        ]
        emit_csv(SWEEP_COLUMNS, rows, cfg.out)

    elif cfg.command == "map":
        optimum, sweeps, report = run_map_experiment(
            cfg.n, cfg.phi, cfg.step, cfg.cell_size
        )
        rows = [
            (q, p.alpha1, p.alpha2, p.q_r, p.q_ext, p.rsq, p.rsq_nm1)
            for q in QUADRANTS
            for p in sweeps[q]
        ]
        emit_csv(("domain",) + SWEEP_COLUMNS, rows, cfg.out)
        if cfg.coverage_out is not None:
            emit_json(
                {
                    "n": cfg.n,
                    "phi": cfg.phi,
                    "t0": optimum.t0,
                    "r2max": optimum.r2max,
                    "cell_size": report.cell_size,
                    "occupied_cells": report.occupied_cells,
                    "area_estimate": report.area_estimate,
                    "area_margin": report.area_margin,
                    "multiplicity_histogram": {
                        str(k): v for k, v in report.multiplicity_histogram.items()
                    },
                },
                cfg.coverage_out,
            )

    else:  # pragma: no cover - argparse rejects unknown commands first
        raise AssertionError(cfg.command)


def _fit_document(result: FitResult) -> dict:
    return {
        "a": result.a,
        "b": result.b,
        "c": result.c,
        "residual": result.residual,
        "converged": result.converged,
    }


def main(argv=None) -> int:
    cfg = parse_args(sys.argv[1:] if argv is None else argv)
    try:
        _run(cfg)
    except SpinDiscordError as exc:
        print(f"spindiscord: error: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
