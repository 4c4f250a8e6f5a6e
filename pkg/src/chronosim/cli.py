"""Scenario-driven command line front end.

Usage::

    chronosim run <scenario.toml> [--csv PATH] [--svg PATH] [--tol X] [--quiet]

The scenario file selects one of six pipelines (see :mod:`.scenario`); the
flags override the file's output paths and quadrature tolerance.  Results
are written as CSV with fixed headers, LF line endings, and
locale-independent decimals at 12 significant digits, so identical
scenarios produce byte-identical files.  Optional figures are emitted as
standalone SVG.

Exit codes: 0 success, 2 configuration error, 3 domain/physics error
(horizon, superluminal speed, beyond the Hubble radius, zero-norm
conditioning), 1 internal error.  Setting the ``CHRONO_NO_COLOR``
environment variable disables ANSI color in diagnostics.
"""

from __future__ import annotations

import argparse
import math
import os
import sys

from . import svgplot
from .chronometry import (
    DEFAULT_TOL,
    accumulate_tick_rate,
    as_time_function,
    schwarzschild_factor,
    sr_factor,
)
from .clockwork import build_history_state, constraint_residual
from .conditioning import conditional_trajectory, schrodinger_residual
from .entcoh import coherence_curve, three_observer_scenario
from .errors import ConfigError, DomainError
from .qlin import evolve_unitary
from .scenario import (
    CoherenceSweepScenario,
    CosmoScenario,
    DilationScenario,
    HistoryScenario,
    ObserversScenario,
    Scenario,
    UnifiedScenario,
    parse_scenario,
)

EXIT_OK = 0
EXIT_INTERNAL = 1
EXIT_CONFIG = 2
EXIT_DOMAIN = 3


def _num(x: float) -> str:
    """Locale-independent decimal with 12 significant digits."""
    return f"{float(x):.12g}"


def _write_csv(path: str, header: str, rows: list[list[str]]) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(header + "\n")
        for row in rows:
            fh.write(",".join(row) + "\n")


# ---------------------------------------------------------------------------
# Runners: each builds all rows in memory, then writes, so a failure emits
# no partial numeric output.
# ---------------------------------------------------------------------------

def _run_history(payload: HistoryScenario, csv_path: str, svg_path: str | None):
    hist = build_history_state(payload.clock, payload.H_S, payload.psi0)
    traj = conditional_trajectory(hist)
    residual_total = constraint_residual(hist, payload.H_S)
    interior = schrodinger_residual(traj, payload.H_S)
    fidelities = [
        traj.states[n].fidelity(evolve_unitary(payload.H_S, t, payload.psi0))
        for n, t in enumerate(traj.times)
    ]
    N = payload.clock.N
    rows = []
    for n in range(N):
        res = interior[n - 1] if 0 < n < N - 1 else math.nan
        rows.append([str(n), _num(traj.times[n]), _num(traj.norms[n]),
                     _num(fidelities[n]), _num(res), _num(residual_total)])
    _write_csv(csv_path, "n,t,weight,fidelity_vs_oracle,schrodinger_residual,"
                         "constraint_residual_total", rows)
    if svg_path:
        svgplot.line_plot(
            svg_path, traj.times[1:-1], [interior],
            title="Effective Schroedinger residual along the clock grid",
            xlabel="clock reading t", ylabel="central-difference residual",
        )
    return len(rows)


def _run_observers(payload: ObserversScenario, csv_path: str, svg_path: str | None):
    rows_data = three_observer_scenario(payload.profiles, payload.alpha,
                                        payload.beta, payload.t_grid)
    rows = [[r.label, _num(r.E), _num(r.C), _num(r.tick_rate), _num(r.l1), _num(r.purity)]
            for r in rows_data]
    _write_csv(csv_path, "label,E,C,tick_rate,l1_coherence,purity", rows)
    if svg_path:
        lead = payload.profiles[0]
        curve = coherence_curve(payload.sweep_grid, C0=lead.C0, k=lead.k)
        svgplot.line_plot(
            svg_path, curve.E_grid, [curve.C_values],
            title="Local coherence decays with clock-system entanglement",
            xlabel="entanglement E (nats)", ylabel="coherence C(E)",
        )
    return len(rows)


def _run_dilation(payload: DilationScenario, csv_path: str, svg_path: str | None):
    if payload.effect == "sr":
        factors = [sr_factor(float(x), payload.c) for x in payload.xs]
        xlabel = "speed v"
    else:
        factors = [schwarzschild_factor(payload.GM, float(x), payload.c)
                   for x in payload.xs]
        xlabel = "radial coordinate r"
    rows = [[_num(x), _num(f)] for x, f in zip(payload.xs, factors)]
    _write_csv(csv_path, "x,factor", rows)
    if svg_path:
        svgplot.line_plot(
            svg_path, payload.xs, [factors],
            title=f"Tick rate dtau/dt ({payload.effect})",
            xlabel=xlabel, ylabel="dtau/dt",
        )
    return len(rows)


def _run_cosmo(payload: CosmoScenario, csv_path: str, svg_path: str | None, tol: float):
    if payload.preset == "constant":
        a_fn = lambda t: payload.a0
        closed = lambda t: (t - payload.t0) / payload.a0
    elif payload.preset == "exponential":
        H = payload.hubble
        a_fn = lambda t: math.exp(H * t)
        closed = lambda t: (math.exp(-H * payload.t0) - math.exp(-H * t)) / H
    else:
        a_fn = as_time_function(payload.table, "table")
        closed = None

    def rate(t: float) -> float:
        a_t = a_fn(t)
        if a_t <= 0:
            raise DomainError(f"scale factor must be positive, got a({t:.6g}) = {a_t:.6g}")
        return 1.0 / a_t

    series, _ = accumulate_tick_rate(rate, payload.t0, payload.t1, tol,
                                     payload.grid_points)
    rows = []
    for t, tau in zip(series.t_grid, series.tau_values):
        if closed is None:
            rows.append([_num(t), _num(tau), _num(math.nan), _num(math.nan)])
        else:
            ref = closed(float(t))
            rows.append([_num(t), _num(tau), _num(ref), _num(abs(tau - ref))])
    _write_csv(csv_path, "t,tau,closed_form_tau_if_available,abs_diff", rows)
    if svg_path:
        svgplot.line_plot(
            svg_path, series.t_grid, [series.tau_values],
            title="Emergent time under cosmic expansion",
            xlabel="coordinate time t", ylabel="emergent time tau",
        )
    return len(rows)


def _run_unified(payload: UnifiedScenario, csv_path: str, svg_path: str | None, tol: float):
    spec = payload.spec
    series, cum_err = accumulate_tick_rate(spec.tick_rate, spec.t0, spec.t1,
                                           tol, payload.grid_points)
    rows = [[_num(t), _num(tau), _num(spec.radicand(float(t))), _num(err)]
            for t, tau, err in zip(series.t_grid, series.tau_values, cum_err)]
    _write_csv(csv_path, "t,tau,radicand,error_estimate", rows)
    if svg_path:
        svgplot.line_plot(
            svg_path, series.t_grid, [series.tau_values],
            title="Unified emergent time along the worldline",
            xlabel="coordinate time t", ylabel="emergent time tau",
        )
    return len(rows)


def _run_coherence_sweep(payload: CoherenceSweepScenario, csv_path: str,
                         svg_path: str | None):
    curve = coherence_curve(payload.E_grid, C0=payload.C0, k=payload.k)
    rows = [[_num(e), _num(c)] for e, c in zip(curve.E_grid, curve.C_values)]
    _write_csv(csv_path, "E,C", rows)
    if svg_path:
        svgplot.line_plot(
            svg_path, curve.E_grid, [curve.C_values],
            title="Coherence suppression C(E) = C0 exp(-kE)",
            xlabel="entanglement E (nats)", ylabel="coherence C(E)",
        )
    return len(rows)


def run_scenario(scn: Scenario, csv_path: str | None, svg_path: str | None,
                 tol: float | None) -> tuple[str, int]:
    """Dispatch a parsed scenario; returns (csv path, row count)."""
    csv_out = csv_path or scn.csv
    svg_out = svg_path or scn.svg
    if not csv_out:
        raise ConfigError("no CSV output path: set [output].csv or pass --csv")
    effective_tol = tol if tol is not None else (scn.tol or DEFAULT_TOL)
    if effective_tol <= 0:
        raise ConfigError(f"tolerance must be positive, got {effective_tol}")
    if scn.kind == "history":
        n = _run_history(scn.payload, csv_out, svg_out)
    elif scn.kind == "observers":
        n = _run_observers(scn.payload, csv_out, svg_out)
    elif scn.kind == "dilation":
        n = _run_dilation(scn.payload, csv_out, svg_out)
    elif scn.kind == "cosmo":
        n = _run_cosmo(scn.payload, csv_out, svg_out, effective_tol)
    elif scn.kind == "unified":
        n = _run_unified(scn.payload, csv_out, svg_out, effective_tol)
    else:
        n = _run_coherence_sweep(scn.payload, csv_out, svg_out)
    return csv_out, n


# ---------------------------------------------------------------------------
# Entry point
# ---------------------------------------------------------------------------

def _color_enabled() -> bool:
    return "CHRONO_NO_COLOR" not in os.environ and sys.stderr.isatty()


def _fail(message: str, code: int) -> int:
    prefix = "chronosim: error:"
    if _color_enabled():
        prefix = f"\x1b[31m{prefix}\x1b[0m"
    print(f"{prefix} {message}", file=sys.stderr)
    return code


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="chronosim",
        description="Run emergent-time scenarios from TOML files to CSV/SVG.",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    run = sub.add_parser("run", help="run one scenario file")
    run.add_argument("scenario", help="path to a scenario TOML file")
    run.add_argument("--csv", metavar="PATH", help="override the CSV output path")
    run.add_argument("--svg", metavar="PATH", help="override the SVG output path")
    run.add_argument("--tol", metavar="FLOAT", type=float,
                     help="override the quadrature tolerance")
    run.add_argument("--quiet", action="store_true", help="suppress the summary line")
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        scn = parse_scenario(args.scenario)
        csv_out, n = run_scenario(scn, args.csv, args.svg, args.tol)
    except ConfigError as exc:
        return _fail(str(exc), EXIT_CONFIG)
    except DomainError as exc:
        return _fail(str(exc), EXIT_DOMAIN)
    except Exception as exc:  # noqa: BLE001 - map anything else to exit 1
        return _fail(f"internal error: {exc!r}", EXIT_INTERNAL)
    if not args.quiet:
        print(f"wrote {csv_out} ({n} rows)")
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
