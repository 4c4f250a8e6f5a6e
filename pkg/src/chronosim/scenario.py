"""Strict TOML scenario files for the command line front end.

A scenario is a single TOML document whose top-level ``kind`` selects one
of six pipelines: ``history``, ``observers``, ``dilation``, ``cosmo``,
``unified``, ``coherence-sweep``.  Parsing is strict: unknown keys anywhere
are fatal, required keys must be present, and every referenced physical
object is constructed (and therefore re-validated) during parsing.
Misconfigured physics fails loudly before anything runs.

Complex numbers are written as two-element ``[re, im]`` arrays; a bare
number is accepted as a real value.  Tabulated time profiles are arrays of
``[t, value]`` pairs with strictly increasing t.  State amplitudes given in
a scenario are normalized automatically (a zero vector is rejected).

The full schema is documented in the README; the demo scenarios under
``demos/scenarios/`` cover every kind.
"""

from __future__ import annotations

import sys
from dataclasses import dataclass

import numpy as np

if sys.version_info >= (3, 11):
    import tomllib as _toml
else:
    import tomli as _toml

from .chronometry import WorldlineSpec
from .clockwork import ClockModel, build_fourier_clock
from .entcoh import TICK_RATE_FUNCTIONS, ObserverProfile
from .errors import ConfigError, DomainError
from .qlin import Operator, StateVector, hermitian_operator

KINDS = ("history", "observers", "dilation", "cosmo", "unified", "coherence-sweep")
DILATION_EFFECTS = ("sr", "schwarzschild")
COSMO_PRESETS = ("constant", "exponential", "tabulated")


# ---------------------------------------------------------------------------
# Strict section walker
# ---------------------------------------------------------------------------

class _Section:
    """Tracks key consumption within one TOML table; leftovers are fatal."""

    def __init__(self, data: dict, path: str):
        if not isinstance(data, dict):
            raise ConfigError(f"{path}: expected a table")
        self._data = data
        self._path = path
        self._seen: set[str] = set()

    def _label(self, key: str) -> str:
        return f"{self._path}.{key}" if self._path else key

    def get(self, key: str, kind: str, required: bool = True, default=None):
        if key not in self._data:
            if required:
                raise ConfigError(f"missing required key '{self._label(key)}'")
            return default
        self._seen.add(key)
        value = self._data[key]
        label = self._label(key)
        if kind == "float":
            if isinstance(value, bool) or not isinstance(value, (int, float)):
                raise ConfigError(f"{label}: expected a number, got {value!r}")
            return float(value)
        if kind == "int":
            if isinstance(value, bool) or not isinstance(value, int):
                raise ConfigError(f"{label}: expected an integer, got {value!r}")
            return value
        if kind == "bool":
            if not isinstance(value, bool):
                raise ConfigError(f"{label}: expected true/false, got {value!r}")
            return value
        if kind == "str":
            if not isinstance(value, str):
                raise ConfigError(f"{label}: expected a string, got {value!r}")
            return value
        if kind == "list":
            if not isinstance(value, list):
                raise ConfigError(f"{label}: expected an array, got {value!r}")
            return value
        if kind == "raw":
            return value
        raise AssertionError(f"unknown schema kind {kind}")

    def section(self, key: str, required: bool = True) -> "_Section | None":
        if key not in self._data:
            if required:
                raise ConfigError(f"missing required section [{self._label(key)}]")
            return None
        self._seen.add(key)
        return _Section(self._data[key], self._label(key))

    def sections(self, key: str) -> "list[_Section]":
        value = self.get(key, "list")
        out = []
        for i, item in enumerate(value):
            out.append(_Section(item, f"{self._label(key)}[{i}]"))
        return out

    def finish(self):
        unknown = sorted(set(self._data) - self._seen)
        if unknown:
            where = f" in [{self._path}]" if self._path else ""
            raise ConfigError(f"unknown key(s){where}: {', '.join(unknown)}")


def _as_complex(value, label: str) -> complex:
    if isinstance(value, bool):
        raise ConfigError(f"{label}: expected a number or [re, im] pair, got {value!r}")
    if isinstance(value, (int, float)):
        return complex(float(value), 0.0)
    if (isinstance(value, list) and len(value) == 2
            and all(isinstance(x, (int, float)) and not isinstance(x, bool) for x in value)):
        return complex(float(value[0]), float(value[1]))
    raise ConfigError(f"{label}: expected a number or [re, im] pair, got {value!r}")


def _as_profile(value, label: str):
    """A worldline parameter: scalar or table of [t, value] pairs."""
    if isinstance(value, (int, float)) and not isinstance(value, bool):
        return float(value)
    if isinstance(value, list):
        try:
            table = np.asarray(value, dtype=float)
        except (TypeError, ValueError):
            raise ConfigError(f"{label}: tabulated profile must be numeric [t, value] pairs")
        if table.ndim != 2 or table.shape[1] != 2 or table.shape[0] < 2:
            raise ConfigError(f"{label}: tabulated profile needs at least 2 [t, value] pairs")
        if np.any(np.diff(table[:, 0]) <= 0):
            raise ConfigError(f"{label}: tabulated sample times must be strictly increasing")
        return table
    raise ConfigError(f"{label}: expected a number or an array of [t, value] pairs")


def _normalized_state(values, label: str) -> StateVector:
    amps = [_as_complex(v, f"{label}[{i}]") for i, v in enumerate(values)]
    vec = StateVector(np.array(amps, dtype=complex))
    if vec.norm <= 1e-14:
        raise ConfigError(f"{label}: state amplitudes are all zero")
    return vec.normalized()


# ---------------------------------------------------------------------------
# Per-kind payloads
# ---------------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class HistoryScenario:
    clock: ClockModel
    H_S: Operator
    psi0: StateVector


@dataclass(frozen=True, eq=False)
class ObserversScenario:
    profiles: tuple[ObserverProfile, ...]
    alpha: complex
    beta: complex
    t_grid: np.ndarray
    sweep_grid: np.ndarray


@dataclass(frozen=True, eq=False)
class DilationScenario:
    effect: str
    xs: np.ndarray
    GM: float
    c: float


@dataclass(frozen=True, eq=False)
class CosmoScenario:
    preset: str
    t0: float
    t1: float
    grid_points: int
    hubble: float | None
    a0: float
    table: np.ndarray | None


@dataclass(frozen=True, eq=False)
class UnifiedScenario:
    spec: WorldlineSpec
    grid_points: int


@dataclass(frozen=True, eq=False)
class CoherenceSweepScenario:
    C0: float
    k: float
    E_grid: np.ndarray


@dataclass(frozen=True, eq=False)
class Scenario:
    """A parsed scenario: the kind-specific payload plus shared settings."""

    kind: str
    payload: object
    csv: str | None
    svg: str | None
    tol: float | None
    seed: int | None


# ---------------------------------------------------------------------------
# Parsers
# ---------------------------------------------------------------------------

def _sweep_grid(sec: _Section, lo_key: str, hi_key: str,
                default_lo: float, default_hi: float,
                default_points: int) -> np.ndarray:
    lo = sec.get(lo_key, "float", required=False, default=default_lo)
    hi = sec.get(hi_key, "float", required=False, default=default_hi)
    points = sec.get("points", "int", required=False, default=default_points)
    sec.finish()
    if points < 2:
        raise ConfigError(f"sweep needs at least 2 points, got {points}")
    if hi <= lo:
        raise ConfigError(f"sweep range must be increasing, got [{lo}, {hi}]")
    return np.linspace(lo, hi, points)


def _parse_history(top: _Section) -> HistoryScenario:
    clock_sec = top.section("clock")
    levels = clock_sec.get("levels", "int")
    dt = clock_sec.get("dt", "float")
    negate = clock_sec.get("negate_energies", "bool", required=False, default=False)
    clock_sec.finish()
    if levels < 2:
        raise ConfigError(f"clock.levels must be at least 2, got {levels}")
    if dt <= 0:
        raise ConfigError(f"clock.dt must be positive, got {dt}")
    clock = build_fourier_clock(levels, dt, negate_energies=negate)

    sys_sec = top.section("system")
    diagonal = sys_sec.get("diagonal", "list", required=False)
    matrix = sys_sec.get("matrix", "list", required=False)
    initial = sys_sec.get("initial_state", "list")
    sys_sec.finish()
    if (diagonal is None) == (matrix is None):
        raise ConfigError("system: provide exactly one of 'diagonal' or 'matrix'")
    if diagonal is not None:
        if len(diagonal) < 2:
            raise ConfigError("system.diagonal needs at least 2 entries")
        entries = []
        for i, v in enumerate(diagonal):
            if isinstance(v, bool) or not isinstance(v, (int, float)):
                raise ConfigError(f"system.diagonal[{i}]: expected a number, got {v!r}")
            entries.append(float(v))
        H_S = hermitian_operator(np.diag(np.array(entries, dtype=complex)))
    else:
        rows = [[_as_complex(v, f"system.matrix[{i}][{j}]") for j, v in enumerate(row)]
                for i, row in enumerate(matrix)]
        arr = np.array(rows, dtype=complex)
        try:
            H_S = hermitian_operator(arr)
        except ValueError as exc:
            raise ConfigError(f"system.matrix: {exc}")
    psi0 = _normalized_state(initial, "system.initial_state")
    if psi0.dim != H_S.dim:
        raise ConfigError(
            f"system.initial_state has dim {psi0.dim} but the Hamiltonian is {H_S.dim}x{H_S.dim}"
        )
    return HistoryScenario(clock=clock, H_S=H_S, psi0=psi0)


def _parse_observers(top: _Section) -> ObserversScenario:
    sup = top.section("superposition")
    alpha = _as_complex(sup.get("alpha", "raw"), "superposition.alpha")
    beta = _as_complex(sup.get("beta", "raw"), "superposition.beta")
    sup.finish()
    norm = abs(alpha) ** 2 + abs(beta) ** 2
    if norm <= 1e-14:
        raise ConfigError("superposition amplitudes are both zero")
    scale = norm ** -0.5
    alpha *= scale
    beta *= scale

    profile_secs = top.sections("observer")
    if len(profile_secs) != 3:
        raise ConfigError(f"observers scenario needs exactly 3 [[observer]] tables, "
                          f"got {len(profile_secs)}")
    profiles = []
    for sec in profile_secs:
        label = sec.get("label", "str")
        E = sec.get("entanglement", "float")
        k = sec.get("k", "float", required=False, default=1.0)
        C0 = sec.get("c0", "float", required=False, default=1.0)
        tick = sec.get("tick_rate", "str", required=False, default="exp_decay")
        sec.finish()
        if tick not in TICK_RATE_FUNCTIONS:
            known = ", ".join(sorted(TICK_RATE_FUNCTIONS))
            raise ConfigError(f"unknown tick_rate '{tick}' (known: {known})")
        try:
            profiles.append(ObserverProfile(label=label, E=E, k=k, C0=C0, tick_rate_fn=tick))
        except ValueError as exc:
            raise ConfigError(f"observer '{label}': {exc}")
    ents = [p.E for p in profiles]
    if not (ents[0] < ents[1] < ents[2]):
        raise ConfigError(
            f"observer entanglements must be strictly increasing, got {ents}"
        )

    grid_sec = top.section("grid", required=False)
    if grid_sec is None:
        t_grid = np.linspace(0.0, 10.0, 21)
    else:
        t_max = grid_sec.get("t_max", "float", required=False, default=10.0)
        points = grid_sec.get("points", "int", required=False, default=21)
        grid_sec.finish()
        if t_max <= 0 or points < 2:
            raise ConfigError("grid requires t_max > 0 and points >= 2")
        t_grid = np.linspace(0.0, t_max, points)

    sweep_sec = top.section("sweep", required=False)
    if sweep_sec is None:
        sweep_grid = np.linspace(0.0, 5.0, 100)
    else:
        sweep_grid = _sweep_grid(sweep_sec, "e_min", "e_max", 0.0, 5.0, 100)

    return ObserversScenario(profiles=tuple(profiles), alpha=alpha, beta=beta,
                             t_grid=t_grid, sweep_grid=sweep_grid)


def _parse_dilation(top: _Section) -> DilationScenario:
    effect = top.get("effect", "str")
    if effect not in DILATION_EFFECTS:
        raise ConfigError(f"effect must be one of {DILATION_EFFECTS}, got '{effect}'")
    c = top.get("c", "float", required=False, default=1.0)
    if c <= 0:
        raise ConfigError(f"c must be positive, got {c}")
    GM = 0.0
    if effect == "schwarzschild":
        GM = top.get("gm", "float")
        if GM <= 0:
            raise ConfigError(f"gm must be positive for the schwarzschild effect, got {GM}")
    sweep_sec = top.section("sweep")
    if effect == "sr":
        xs = _sweep_grid(sweep_sec, "start", "stop", 0.0, 0.9 * c, 19)
    else:
        xs = _sweep_grid(sweep_sec, "start", "stop", 3.0 * GM / c**2, 20.0 * GM / c**2, 19)
    return DilationScenario(effect=effect, xs=xs, GM=GM, c=c)


def _parse_cosmo(top: _Section) -> CosmoScenario:
    preset = top.get("scale_factor", "str")
    if preset not in COSMO_PRESETS:
        raise ConfigError(f"scale_factor must be one of {COSMO_PRESETS}, got '{preset}'")
    t0 = top.get("t0", "float", required=False, default=0.0)
    t1 = top.get("t1", "float")
    points = top.get("points", "int", required=False, default=65)
    if t1 <= t0:
        raise ConfigError(f"need t1 > t0, got [{t0}, {t1}]")
    if points < 2:
        raise ConfigError(f"points must be at least 2, got {points}")
    hubble = None
    a0 = 1.0
    table = None
    if preset == "exponential":
        hubble = top.get("hubble", "float")
        if hubble <= 0:
            raise ConfigError(f"hubble must be positive, got {hubble}")
    elif preset == "constant":
        a0 = top.get("a0", "float", required=False, default=1.0)
        if a0 <= 0:
            raise DomainError(f"scale factor must be positive, got a0 = {a0}")
    else:
        raw = top.get("table", "list")
        table = _as_profile(raw, "table")
        if not isinstance(table, np.ndarray):
            raise ConfigError("table: expected an array of [t, a] pairs")
    return CosmoScenario(preset=preset, t0=t0, t1=t1, grid_points=points,
                         hubble=hubble, a0=a0, table=table)


def _parse_unified(top: _Section) -> UnifiedScenario:
    wl = top.section("worldline")
    t0 = wl.get("t0", "float", required=False, default=0.0)
    t1 = wl.get("t1", "float")
    v_raw = wl.get("v", "raw", required=False, default=0.0)
    r_raw = wl.get("r", "raw", required=False, default=1.0)
    GM = wl.get("gm", "float", required=False, default=0.0)
    H = wl.get("hubble", "float", required=False, default=0.0)
    c = wl.get("c", "float", required=False, default=1.0)
    wl.finish()
    v = _as_profile(v_raw, "worldline.v")
    r = _as_profile(r_raw, "worldline.r")
    grid_sec = top.section("grid", required=False)
    points = 129
    if grid_sec is not None:
        points = grid_sec.get("points", "int", required=False, default=129)
        grid_sec.finish()
    if points < 2:
        raise ConfigError(f"grid.points must be at least 2, got {points}")
    if t1 <= t0:
        raise ConfigError(f"need t1 > t0, got [{t0}, {t1}]")
    try:
        spec = WorldlineSpec(t0=t0, t1=t1, v=v, r=r, GM=GM, H=H, c=c)
    except DomainError:
        raise
    except ValueError as exc:
        raise ConfigError(f"worldline: {exc}")
    return UnifiedScenario(spec=spec, grid_points=points)


def _parse_coherence_sweep(top: _Section) -> CoherenceSweepScenario:
    C0 = top.get("c0", "float", required=False, default=1.0)
    k = top.get("k", "float", required=False, default=1.0)
    if not 0 < C0 <= 1:
        raise ConfigError(f"c0 must lie in (0, 1], got {C0}")
    if k <= 0:
        raise ConfigError(f"k must be positive, got {k}")
    sweep_sec = top.section("sweep")
    grid = _sweep_grid(sweep_sec, "e_min", "e_max", 0.0, 5.0, 100)
    if grid[0] < 0:
        raise ConfigError(f"entanglement sweep must start at e_min >= 0, got {grid[0]}")
    return CoherenceSweepScenario(C0=C0, k=k, E_grid=grid)


_PARSERS = {
    "history": _parse_history,
    "observers": _parse_observers,
    "dilation": _parse_dilation,
    "cosmo": _parse_cosmo,
    "unified": _parse_unified,
    "coherence-sweep": _parse_coherence_sweep,
}

#: Scenario kinds whose pipelines perform quadrature and honor 'tol'.
QUADRATURE_KINDS = ("cosmo", "unified")


def parse_scenario(path: str) -> Scenario:
    """Load and strictly validate a scenario file.

    Raises :class:`ConfigError` for syntax errors, unknown keys, missing
    keys, or out-of-range values, and :class:`DomainError` when the
    scenario describes physically invalid conditions (the distinction maps
    to different CLI exit codes).
    """
    try:
        with open(path, "rb") as fh:
            data = _toml.load(fh)
    except FileNotFoundError:
        raise ConfigError(f"scenario file not found: {path}")
    except _toml.TOMLDecodeError as exc:
        raise ConfigError(f"{path}: invalid TOML: {exc}")

    top = _Section(data, "")
    kind = top.get("kind", "str")
    if kind not in KINDS:
        raise ConfigError(f"kind must be one of {', '.join(KINDS)}; got '{kind}'")
    seed = top.get("seed", "int", required=False)
    tol = None
    if kind in QUADRATURE_KINDS:
        tol = top.get("tol", "float", required=False)
        if tol is not None and tol <= 0:
            raise ConfigError(f"tol must be positive, got {tol}")

    csv_path = None
    svg_path = None
    out_sec = top.section("output", required=False)
    if out_sec is not None:
        csv_path = out_sec.get("csv", "str", required=False)
        svg_path = out_sec.get("svg", "str", required=False)
        out_sec.finish()

    payload = _PARSERS[kind](top)
    top.finish()
    return Scenario(kind=kind, payload=payload, csv=csv_path, svg=svg_path,
                    tol=tol, seed=seed)
