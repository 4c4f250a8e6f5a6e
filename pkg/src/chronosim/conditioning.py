"""Conditional dynamics: extracting evolution from a stationary global state.

Projecting a history state onto a definite clock reading t_n yields the
conditional system state

    |psi_S(t_n)>  proportional to  <t_n| Phi>,

and the sequence of conditional states over the reading grid satisfies the
effective Schroedinger equation

    i d/dt |psi_S(t)> = H_S |psi_S(t)>        (hbar = 1)

to second order in the grid spacing.  :func:`schrodinger_residual` measures
this directly with a central difference; halving dt shrinks the residual by
about 4x for smooth trajectories.

Conditional states are defined only up to phase, so before differencing,
each state is put in a fixed gauge: the largest-magnitude amplitude is made
real and positive (:func:`align_phase`).  The residual therefore probes the
gauge-fixed trajectory; the fixed gauge follows the Schroedinger flow
whenever the dominant amplitude belongs to the zero-energy sector, which is
the convention used by all residual checks here.

Gravitational or cosmological modulation enters through a time
reparametrization only: :func:`reparametrized_trajectory` evolves the
system by the exact unitary evaluated at emergent time tau(t) while the
Hamiltonian itself is untouched.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .chronometry import EmergentTimeSeries
from .clockwork import HistoryState
from .errors import UndefinedConditionalStateError
from .qlin import Operator, StateVector, evolve_unitary

ZERO_WEIGHT_TOL = 1e-14


@dataclass(frozen=True, eq=False)
class ConditionalTrajectory:
    """A sequence of normalized conditional states over a time grid.

    ``norms`` records the pre-normalization projection weights; for the
    uniform history-state construction they all equal 1/sqrt(N), and for
    directly generated (unconditioned) trajectories they are 1.
    """

    times: np.ndarray
    states: tuple[StateVector, ...]
    norms: np.ndarray

    def __post_init__(self):
        times = np.array(self.times, dtype=float, copy=True)
        norms = np.array(self.norms, dtype=float, copy=True)
        states = tuple(self.states)
        if times.ndim != 1 or len(states) != times.size or norms.shape != times.shape:
            raise ValueError("times, states, and norms must share one length")
        if times.size == 0:
            raise ValueError("trajectory must contain at least one sample")
        if np.any(norms <= 0):
            raise ValueError("projection weights must all be positive")
        for s in states:
            if not s.is_normalized():
                raise ValueError("every stored state must be normalized within 1e-12")
        times.flags.writeable = False
        norms.flags.writeable = False
        object.__setattr__(self, "times", times)
        object.__setattr__(self, "states", states)
        object.__setattr__(self, "norms", norms)

    def __len__(self) -> int:
        return len(self.states)


def condition_on_clock(hist: HistoryState, n: int) -> tuple[StateVector, float]:
    """Project the history state onto clock reading n and renormalize.

    Returns ``(state, weight)`` with ``weight = ||<t_n|Phi>||``.  A weight
    at or below 1e-14 means the conditional state is undefined (nothing is
    correlated with that reading, the photon-like case) and raises
    :class:`UndefinedConditionalStateError` instead of returning garbage.
    """
    N = hist.clock.N
    if not 0 <= n < N:
        raise ValueError(f"clock index {n} out of range [0, {N})")
    blocks = hist.block_matrix()
    projected = hist.clock.time_states[n].amplitudes.conj() @ blocks
    weight = float(np.linalg.norm(projected))
    if weight <= ZERO_WEIGHT_TOL:
        raise UndefinedConditionalStateError(
            f"undefined conditional state: projection onto clock reading {n} has "
            f"norm {weight:.3e}; no internal time parameter is defined"
        )
    return StateVector(projected / weight), weight


def conditional_trajectory(hist: HistoryState) -> ConditionalTrajectory:
    """Condition on every clock reading in order."""
    states = []
    weights = []
    for n in range(hist.clock.N):
        state, weight = condition_on_clock(hist, n)
        states.append(state)
        weights.append(weight)
    return ConditionalTrajectory(hist.clock.times, tuple(states), np.array(weights))


def align_phase(psi: StateVector) -> StateVector:
    """Fix the global phase so the largest-magnitude amplitude is real positive."""
    amps = psi.amplitudes
    idx = int(np.argmax(np.abs(amps)))
    pivot = amps[idx]
    magnitude = abs(pivot)
    if magnitude <= 1e-14:
        raise ValueError("cannot phase-align a (numerically) zero vector")
    return StateVector(amps * (pivot.conjugate() / magnitude))


def schrodinger_residual(traj: ConditionalTrajectory, H_S: Operator) -> np.ndarray:
    """Central-difference defect of the effective Schroedinger equation.

    For each interior grid point n the residual is

        || (psi(t_{n+1}) - psi(t_{n-1})) / (2 dt) + i H_S psi(t_n) ||

    evaluated on phase-aligned states.  Requires a uniform grid with at
    least 3 points; returns one value per interior point.  The truncation
    error of the central difference is O(dt^2), so halving dt divides the
    residual by about 4 once discretization dominates.
    """
    if len(traj) < 3:
        raise ValueError("residual needs at least 3 trajectory points")
    if not H_S.hermitian:
        raise ValueError("system Hamiltonian must be Hermitian")
    steps = np.diff(traj.times)
    dt = float(steps[0])
    if dt <= 0 or np.max(np.abs(steps - dt)) > 1e-9 * max(dt, 1.0):
        raise ValueError("residual requires a uniform, increasing time grid")
    aligned = np.array([align_phase(s).amplitudes for s in traj.states])
    H = H_S.entries
    residuals = np.empty(len(traj) - 2)
    for i in range(1, len(traj) - 1):
        defect = (aligned[i + 1] - aligned[i - 1]) / (2.0 * dt) + 1j * (H @ aligned[i])
        residuals[i - 1] = np.linalg.norm(defect)
    return residuals


def reparametrized_trajectory(H_S: Operator, psi0: StateVector,
                              tau_series: EmergentTimeSeries) -> ConditionalTrajectory:
    """Evolve in emergent time while sampling on the coordinate grid.

    The state at coordinate time t_n is ``exp(-i H_S tau(t_n)) |psi0>``:
    gravitational or cosmological modulation rescales the temporal argument
    and leaves the Hamiltonian unmodified.  The tau series is monotone
    nondecreasing by construction; a flat stretch simply freezes the state.
    """
    if not psi0.is_normalized():
        raise ValueError("psi0 must be normalized")
    states = tuple(
        evolve_unitary(H_S, float(tau), psi0) for tau in tau_series.tau_values
    )
    return ConditionalTrajectory(
        times=tau_series.t_grid,
        states=states,
        norms=np.ones(len(states)),
    )
