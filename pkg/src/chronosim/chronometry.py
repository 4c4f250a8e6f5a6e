"""Emergent-time functionals: kinematic, gravitational, and cosmological.

An observer's emergent time advances at a dimensionless rate dtau/dt <= 1
relative to coordinate time.  This module evaluates the standard rates and
their worldline integrals:

    special relativity      dtau/dt = sqrt(1 - v^2/c^2)
    Schwarzschild (static)  dtau/dt = sqrt(1 - 2GM/(r c^2))
    FLRW expansion          tau(T)  = int_0^T dt / a(t)
    general diagonal metric tau(T)  = int sqrt(-g_mm (dx^m/dt)^2) dt
    combined worldline      tau(T)  = int sqrt(1 - 2GM/(r c^2)
                                              - v^2/c^2 - H^2 r^2/c^2) dt

For exponential expansion a(t) = e^{Ht} the FLRW integral has the closed
form (1 - e^{-HT})/H and saturates at 1/H: under accelerated expansion the
emergent time approaches a frozen-time ceiling instead of growing.

Unit regime: every operation takes an explicit speed of light ``c``
(default 1).  The cosmological-horizon term is normalized as H^2 r^2 / c^2
so that the radicand stays dimensionless.

Quadrature is adaptive composite Simpson with interval bisection; panels
are accepted once the Richardson error estimate |S_fine - S_coarse| / 15
fits the panel's share of the tolerance budget (and never before four
bisection levels, where the estimate becomes trustworthy), and the refined
(extrapolated) panel value is accumulated, so reported error estimates
bound the true error comfortably for smooth integrands.  Invalid regions
(negative radicand, nonpositive scale factor) raise :class:`DomainError`
eagerly, naming the dominating term.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np

from .errors import DomainError

DEFAULT_TOL = 1e-8
_VALIDATION_SAMPLES = 1024
_MAX_BISECTIONS = 60
# The Richardson estimate |S2 - S1| / 15 is only trustworthy once panels are
# deep enough to sit in the asymptotic h^4 regime; wide panels over steep
# integrands can under-report by several-fold if accepted early.
_MIN_BISECTIONS = 4


# ---------------------------------------------------------------------------
# Pointwise dilation factors
# ---------------------------------------------------------------------------

def sr_factor(v: float, c: float = 1.0) -> float:
    """Kinematic tick rate sqrt(1 - v^2/c^2) of an observer moving at speed v.

    Valid for 0 <= v < c; the rate decreases monotonically in v and
    vanishes in the light-speed limit, where no proper time accumulates.
    """
    if c <= 0:
        raise ValueError(f"speed of light must be positive, got {c}")
    if v < 0:
        raise DomainError(f"speed must be nonnegative, got {v}")
    if v >= c:
        raise DomainError(
            f"kinematic term: speed v = {v:.6g} must stay below c = {c:.6g} "
            "(proper time vanishes as v -> c)"
        )
    return math.sqrt(1.0 - (v / c) ** 2)


def schwarzschild_factor(GM: float, r: float, c: float = 1.0) -> float:
    """Gravitational tick rate sqrt(1 - 2GM/(r c^2)) of a static observer.

    Valid outside the horizon, r > 2GM/c^2; approaches 1 far from the mass
    and 0 at the horizon.
    """
    if c <= 0:
        raise ValueError(f"speed of light must be positive, got {c}")
    if GM < 0:
        raise ValueError(f"gravitational parameter must be nonnegative, got {GM}")
    if r <= 0:
        raise DomainError(f"radial coordinate must be positive, got {r}")
    if r <= 2.0 * GM / c**2:
        raise DomainError(
            f"gravitational term: r = {r:.6g} is at or inside the horizon "
            f"2GM/c^2 = {2.0 * GM / c**2:.6g}"
        )
    return math.sqrt(1.0 - 2.0 * GM / (r * c**2))


def emergent_time_schwarzschild(GM: float, r_B: float, T: float,
                                M_norm: float = 1.0) -> float:
    """Emergent time of a static observer at radius r_B over coordinate span T.

    Evaluates ``M_norm * sqrt(1 - 2GM/r_B) * T`` in c = 1 units.  M_norm is
    the dimensionless normalization constant converting between the emergent
    variable and proper time; with M_norm = 1 the two coincide.
    """
    if T < 0:
        raise ValueError(f"duration must be nonnegative, got {T}")
    return M_norm * schwarzschild_factor(GM, r_B, 1.0) * T


# ---------------------------------------------------------------------------
# Adaptive Simpson quadrature
# ---------------------------------------------------------------------------

def _adapt(f, a, fa, m, fm, b, fb, whole, tol, depth):
    lm = 0.5 * (a + m)
    rm = 0.5 * (m + b)
    flm = f(lm)
    frm = f(rm)
    left = (m - a) / 6.0 * (fa + 4.0 * flm + fm)
    right = (b - m) / 6.0 * (fm + 4.0 * frm + fb)
    err = (left + right - whole) / 15.0
    if (abs(err) <= tol and depth >= _MIN_BISECTIONS) or depth >= _MAX_BISECTIONS:
        return left + right + err, abs(err)
    vl, el = _adapt(f, a, fa, lm, flm, m, fm, left, 0.5 * tol, depth + 1)
    vr, er = _adapt(f, m, fm, rm, frm, b, fb, right, 0.5 * tol, depth + 1)
    return vl + vr, el + er


def adaptive_simpson(f: Callable[[float], float], a: float, b: float,
                     tol: float = DEFAULT_TOL) -> tuple[float, float]:
    """Integrate f over [a, b] by adaptive Simpson bisection.

    Returns ``(value, error_estimate)``.  The estimate sums the accepted
    per-panel Richardson terms |S2 - S1|/15 (floored at a few ulps of the
    result) and is kept <= tol by construction whenever the recursion
    terminates before the depth limit.
    """
    if tol <= 0:
        raise ValueError(f"tolerance must be positive, got {tol}")
    if b < a:
        raise ValueError(f"integration bounds out of order: [{a}, {b}]")
    if b == a:
        return 0.0, 0.0
    fa, fb = f(a), f(b)
    m = 0.5 * (a + b)
    fm = f(m)
    # First bisection is unconditional; _MIN_BISECTIONS forces the rest.
    lm, rm = 0.5 * (a + m), 0.5 * (m + b)
    flm, frm = f(lm), f(rm)
    left = (m - a) / 6.0 * (fa + 4.0 * flm + fm)
    right = (b - m) / 6.0 * (fm + 4.0 * frm + fb)
    vl, el = _adapt(f, a, fa, lm, flm, m, fm, left, 0.5 * tol, 1)
    vr, er = _adapt(f, m, fm, rm, frm, b, fb, right, 0.5 * tol, 1)
    value = vl + vr
    estimate = max(el + er, 4.0 * np.finfo(float).eps * abs(value))
    return value, estimate


# ---------------------------------------------------------------------------
# Worldline inputs: constants, tables, callables
# ---------------------------------------------------------------------------

TimeProfile = float | Sequence | np.ndarray | Callable[[float], float]


def as_time_function(profile: TimeProfile, name: str) -> Callable[[float], float]:
    """Coerce a worldline parameter to a function of coordinate time.

    Accepts a constant, an (m, 2) table of ``(t, value)`` samples joined by
    linear interpolation, or a callable (passed through).
    """
    if callable(profile):
        return lambda t: float(profile(t))
    if np.isscalar(profile):
        value = float(profile)
        return lambda t: value
    table = np.asarray(profile, dtype=float)
    if table.ndim != 2 or table.shape[1] != 2 or table.shape[0] < 2:
        raise ValueError(
            f"{name}: tabulated profile must be an (m, 2) array of (t, value) "
            f"samples with m >= 2, got shape {table.shape}"
        )
    ts, vals = table[:, 0], table[:, 1]
    if np.any(np.diff(ts) <= 0):
        raise ValueError(f"{name}: tabulated sample times must be strictly increasing")
    return lambda t: float(np.interp(t, ts, vals))


# ---------------------------------------------------------------------------
# Worldline specification and the unified functional
# ---------------------------------------------------------------------------

_TERM_NAMES = ("gravitational", "kinematic", "cosmological")


@dataclass(frozen=True, eq=False)
class WorldlineSpec:
    """Kinematic, gravitational, and cosmological data along a worldline.

    ``v`` and ``r`` may be constants, (t, value) tables, or callables; GM, H
    and c are constants.  Construction eagerly samples the radicand

        1 - 2GM/(r c^2) - v^2/c^2 - H^2 r^2/c^2

    on a 1024-point grid plus endpoints and raises :class:`DomainError`
    naming the dominating term(s) wherever it goes negative, so invalid
    worldlines fail fast rather than during quadrature.
    """

    t0: float
    t1: float
    v: TimeProfile = 0.0
    r: TimeProfile = 1.0
    GM: float = 0.0
    H: float = 0.0
    c: float = 1.0
    _v_fn: Callable[[float], float] = field(init=False, repr=False, compare=False)
    _r_fn: Callable[[float], float] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if self.t1 < self.t0:
            raise ValueError(f"time interval out of order: [{self.t0}, {self.t1}]")
        if self.c <= 0:
            raise ValueError(f"speed of light must be positive, got {self.c}")
        if self.GM < 0:
            raise ValueError(f"gravitational parameter must be nonnegative, got {self.GM}")
        if self.H < 0:
            raise ValueError(f"Hubble rate must be nonnegative, got {self.H}")
        object.__setattr__(self, "_v_fn", as_time_function(self.v, "v"))
        object.__setattr__(self, "_r_fn", as_time_function(self.r, "r"))
        for t in np.linspace(self.t0, self.t1, _VALIDATION_SAMPLES + 2):
            self.radicand(float(t))

    def velocity(self, t: float) -> float:
        """Speed at coordinate time t (interpolated if tabulated)."""
        return self._v_fn(t)

    def radius(self, t: float) -> float:
        """Radial coordinate at coordinate time t (interpolated if tabulated)."""
        return self._r_fn(t)

    def terms(self, t: float) -> tuple[float, float, float]:
        """The three subtracted contributions (gravitational, kinematic,
        cosmological) at coordinate time t."""
        r = self.radius(t)
        v = self.velocity(t)
        if r <= 0:
            raise DomainError(f"radial coordinate must be positive, got r({t:.6g}) = {r:.6g}")
        if v < 0:
            raise DomainError(f"speed must be nonnegative, got v({t:.6g}) = {v:.6g}")
        c2 = self.c**2
        return 2.0 * self.GM / (r * c2), (v**2) / c2, (self.H * r) ** 2 / c2

    def radicand(self, t: float) -> float:
        """1 minus the three dilation terms; must stay nonnegative."""
        grav, kin, cosmo = self.terms(t)
        value = 1.0 - grav - kin - cosmo
        if value < 0:
            biggest = max(grav, kin, cosmo)
            names = [name for name, term in zip(_TERM_NAMES, (grav, kin, cosmo))
                     if term >= biggest * (1.0 - 1e-9)]
            raise DomainError(
                f"radicand {value:.6g} negative at t = {t:.6g}: dominated by the "
                + " and ".join(f"{n} term" for n in names)
                + f" (2GM/(r c^2) = {grav:.6g}, v^2/c^2 = {kin:.6g}, "
                f"H^2 r^2/c^2 = {cosmo:.6g})"
            )
        return value

    def tick_rate(self, t: float) -> float:
        return math.sqrt(self.radicand(t))


@dataclass(frozen=True, eq=False)
class EmergentTimeSeries:
    """Sampled map from coordinate time to accumulated emergent time.

    ``tau_values[0]`` is 0 at the start of the grid and the series is
    monotone nondecreasing; ``quadrature_error_estimate`` bounds the
    accumulated integration error of the final value.
    """

    t_grid: np.ndarray
    tau_values: np.ndarray
    quadrature_error_estimate: float = 0.0

    def __post_init__(self):
        t = np.array(self.t_grid, dtype=float, copy=True)
        tau = np.array(self.tau_values, dtype=float, copy=True)
        if t.ndim != 1 or tau.shape != t.shape or t.size < 1:
            raise ValueError("t_grid and tau_values must be equal-length 1-D arrays")
        if np.any(np.diff(t) <= 0):
            raise ValueError("t_grid must be strictly increasing")
        if abs(tau[0]) > 1e-12:
            raise ValueError(f"emergent time must start at 0, got {tau[0]}")
        if np.any(np.diff(tau) < -1e-12):
            raise ValueError("emergent time must be monotone nondecreasing")
        if self.quadrature_error_estimate < 0:
            raise ValueError("error estimate must be nonnegative")
        t.flags.writeable = False
        tau.flags.writeable = False
        object.__setattr__(self, "t_grid", t)
        object.__setattr__(self, "tau_values", tau)

    @property
    def final_tau(self) -> float:
        return float(self.tau_values[-1])

    def tau_at(self, t) -> np.ndarray | float:
        """Linear interpolation of tau between grid points."""
        return np.interp(t, self.t_grid, self.tau_values)


def accumulate_tick_rate(rate: Callable[[float], float], t0: float, t1: float,
                         tol: float = DEFAULT_TOL,
                         grid_points: int = 129) -> tuple[EmergentTimeSeries, np.ndarray]:
    """Integrate a tick rate dtau/dt cell by cell onto a uniform grid.

    Each grid cell gets an equal share of the tolerance budget, so the
    summed estimate stays below ``tol``.  Returns the series together with
    the running (cumulative) per-grid-point error estimates; the series'
    own estimate is the final cumulative value.
    """
    if grid_points < 2:
        raise ValueError(f"grid needs at least 2 points, got {grid_points}")
    if t1 <= t0:
        raise ValueError(f"time interval must have positive length: [{t0}, {t1}]")
    grid = np.linspace(t0, t1, grid_points)
    taus = np.zeros(grid_points)
    cum_err = np.zeros(grid_points)
    cell_tol = tol / (grid_points - 1)
    for i in range(grid_points - 1):
        value, err = adaptive_simpson(rate, float(grid[i]), float(grid[i + 1]), cell_tol)
        taus[i + 1] = taus[i] + value
        cum_err[i + 1] = cum_err[i] + err
    return EmergentTimeSeries(grid, taus, float(cum_err[-1])), cum_err


def emergent_time_unified(spec: WorldlineSpec, tol: float = DEFAULT_TOL,
                          grid_points: int = 129) -> EmergentTimeSeries:
    """Accumulate the combined emergent-time integral along a worldline.

    Integrates ``sqrt(1 - 2GM/(r c^2) - v^2/c^2 - H^2 r^2/c^2)`` over the
    spec's interval onto a uniform grid of ``grid_points`` samples; the
    radicand is re-checked at every quadrature node.  With any two effects
    switched off the result reduces to the corresponding single-effect
    factor times elapsed coordinate time.
    """
    if spec.t1 == spec.t0:
        return EmergentTimeSeries(np.array([spec.t0]), np.array([0.0]), 0.0)
    series, _ = accumulate_tick_rate(spec.tick_rate, spec.t0, spec.t1, tol, grid_points)
    return series


# ---------------------------------------------------------------------------
# FLRW and general-metric integrals
# ---------------------------------------------------------------------------

def emergent_time_flrw(a: TimeProfile, t0: float, t1: float,
                       tol: float = DEFAULT_TOL) -> tuple[float, float]:
    """Emergent time ``int_{t0}^{t1} dt / a(t)`` of a subsystem entangled
    with the cosmic clock of an expanding universe.

    ``a`` is the scale factor (constant, table, or callable) and must stay
    positive over the interval.  Returns ``(value, error_estimate)``.
    """
    if t1 < t0:
        raise ValueError(f"time interval out of order: [{t0}, {t1}]")
    a_fn = as_time_function(a, "a")

    def integrand(t: float) -> float:
        a_t = a_fn(t)
        if a_t <= 0:
            raise DomainError(f"scale factor must be positive, got a({t:.6g}) = {a_t:.6g}")
        return 1.0 / a_t

    return adaptive_simpson(integrand, t0, t1, tol)


def emergent_time_exponential(H: float, T: float) -> float:
    """Closed form of the FLRW integral for a(t) = e^{Ht}:
    ``(1 - e^{-HT}) / H``, which saturates at 1/H for large HT."""
    if H <= 0:
        raise ValueError(f"expansion rate must be positive, got {H}")
    if T < 0:
        raise ValueError(f"duration must be nonnegative, got {T}")
    return -math.expm1(-H * T) / H


def emergent_time_metric(metric: Sequence[TimeProfile],
                         velocities: Sequence[TimeProfile],
                         t0: float, t1: float,
                         tol: float = DEFAULT_TOL) -> tuple[float, float]:
    """Proper-time integral ``int sqrt(-g_mm (dx^m/dt)^2) dt`` along a
    worldline through a diagonal metric.

    Parameters
    ----------
    metric : sequence of diagonal components g_mm(t), one per coordinate,
        in geometric units (Minkowski is (-1, 1, 1, 1)).
    velocities : matching sequence of coordinate velocities dx^m/dt, with
        the time coordinate's entry equal to 1.

    The radicand must stay positive (timelike worldline); a null or
    spacelike segment raises :class:`DomainError`.  For the Minkowski
    metric at constant speed this reproduces sr_factor(v) * (t1 - t0); for
    a static Schwarzschild observer, schwarzschild_factor * (t1 - t0).
    """
    if t1 < t0:
        raise ValueError(f"time interval out of order: [{t0}, {t1}]")
    if len(metric) != len(velocities) or len(metric) == 0:
        raise ValueError("metric and velocity component lists must match in length")
    g_fns = [as_time_function(g, f"metric[{i}]") for i, g in enumerate(metric)]
    u_fns = [as_time_function(u, f"velocities[{i}]") for i, u in enumerate(velocities)]

    def integrand(t: float) -> float:
        radicand = -sum(g(t) * u(t) ** 2 for g, u in zip(g_fns, u_fns))
        if radicand <= 0:
            raise DomainError(
                f"worldline is not timelike at t = {t:.6g}: "
                f"-g_mm (dx^m/dt)^2 = {radicand:.6g} (null or spacelike segment)"
            )
        return math.sqrt(radicand)

    return adaptive_simpson(integrand, t0, t1, tol)
