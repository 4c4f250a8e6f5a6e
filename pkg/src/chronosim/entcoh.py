"""Clock-system entanglement and observer-dependent coherence.

Entanglement E is quantified as the von Neumann entropy (in nats) of the
reduced state of either factor of a pure bipartite state; a product state
has E = 0 and a two-level Bell pair has E = ln 2.

Local coherence follows the exponential suppression law

    C(E) = C0 * exp(-k E),        k > 0,

and an observer's qubit superposition alpha|0> + beta|1> dephases into

    rho = [[|alpha|^2,                 alpha conj(beta) e^{-kE}],
           [conj(alpha) beta e^{-kE},  |beta|^2               ]],

whose off-diagonals (and hence purity) shrink monotonically with E while
the populations are untouched.  The phase arguments omega and t are kept in
the dephasing signature for interface fidelity, but a common phase on both
amplitudes cancels in rho, so they do not affect the output.

Each observer also carries a tick rate dtau/dt in [0, 1] as a named
function of E.  The functional form is a model choice, not a derived
result; the default "exp_decay" reuses the coherence kernel e^{-kE}, and
"unity" / "zero" cover the unentangled and photon-like limits.  Whether the
same k should govern coherence and tick rate is likewise a modeling
default (shared k) that callers may override per profile.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from .qlin import DensityMatrix, StateVector

ENTROPY_EIGENVALUE_FLOOR = 1e-14

#: Named tick-rate models mapping (E, k) -> dtau/dt in [0, 1].
TICK_RATE_FUNCTIONS: dict[str, Callable[[float, float], float]] = {
    "exp_decay": lambda E, k: math.exp(-k * E),
    "unity": lambda E, k: 1.0,
    "zero": lambda E, k: 0.0,
}


@dataclass(frozen=True)
class ObserverProfile:
    """One observer's entanglement and coherence parameters.

    E is the clock-system entanglement in nats, k the coherence decay
    constant per nat, C0 the initial coherence, and ``tick_rate_fn`` the
    name of the tick-rate model (a key of :data:`TICK_RATE_FUNCTIONS`).
    """

    label: str
    E: float
    k: float = 1.0
    C0: float = 1.0
    tick_rate_fn: str = "exp_decay"

    def __post_init__(self):
        if self.E < 0:
            raise ValueError(f"entanglement must be nonnegative, got {self.E}")
        if self.k <= 0:
            raise ValueError(f"decay constant must be positive, got {self.k}")
        if not 0 < self.C0 <= 1:
            raise ValueError(f"initial coherence must lie in (0, 1], got {self.C0}")
        if self.tick_rate_fn not in TICK_RATE_FUNCTIONS:
            known = ", ".join(sorted(TICK_RATE_FUNCTIONS))
            raise ValueError(f"unknown tick-rate model '{self.tick_rate_fn}' (known: {known})")

    def tick_rate(self) -> float:
        """dtau/dt of this observer; always in [0, 1]."""
        return TICK_RATE_FUNCTIONS[self.tick_rate_fn](self.E, self.k)

    def coherence(self) -> float:
        return coherence_model(self.E, self.C0, self.k)


@dataclass(frozen=True, eq=False)
class CoherenceCurve:
    """A sampled coherence-vs-entanglement curve.

    The grid must be strictly increasing in E and the values strictly
    decreasing, which any C0 e^{-kE} evaluation with k > 0 satisfies.
    """

    E_grid: np.ndarray
    C_values: np.ndarray

    def __post_init__(self):
        E = np.array(self.E_grid, dtype=float, copy=True)
        C = np.array(self.C_values, dtype=float, copy=True)
        if E.ndim != 1 or C.shape != E.shape or E.size < 2:
            raise ValueError("E_grid and C_values must be equal-length 1-D arrays")
        if np.any(np.diff(E) <= 0):
            raise ValueError("E_grid must be strictly increasing")
        if np.any(np.diff(C) >= 0):
            raise ValueError("coherence must be strictly decreasing along the grid")
        E.flags.writeable = False
        C.flags.writeable = False
        object.__setattr__(self, "E_grid", E)
        object.__setattr__(self, "C_values", C)


def coherence_curve(E_grid, C0: float = 1.0, k: float = 1.0) -> CoherenceCurve:
    """Evaluate C(E) = C0 e^{-kE} on a grid of entanglement values."""
    E = np.asarray(E_grid, dtype=float)
    values = np.array([coherence_model(float(e), C0, k) for e in E])
    return CoherenceCurve(E, values)


def entanglement_entropy(psi: StateVector, dims: tuple[int, int]) -> float:
    """Von Neumann entropy (nats) of either reduced factor of a pure state.

    The reduced density matrix of the smaller factor is diagonalized and
    ``-sum(lambda ln lambda)`` accumulated over eigenvalues above 1e-14;
    both factors give the same value for pure states.
    """
    d1, d2 = int(dims[0]), int(dims[1])
    if d1 < 1 or d2 < 1 or d1 * d2 != psi.dim:
        raise ValueError(f"dims {dims} incompatible with state of dim {psi.dim}")
    if not psi.is_normalized():
        raise ValueError("entanglement entropy requires a normalized state")
    block = psi.amplitudes.reshape(d1, d2)
    # Reduced state of the smaller factor; same spectrum either way.
    if d1 <= d2:
        reduced = block @ block.conj().T
    else:
        reduced = block.T @ block.conj()
    evals = np.linalg.eigvalsh(reduced)
    evals = evals[evals > ENTROPY_EIGENVALUE_FLOOR]
    return float(-np.sum(evals * np.log(evals)))


def coherence_model(E: float, C0: float = 1.0, k: float = 1.0) -> float:
    """Exponential coherence decay C0 e^{-kE} with E >= 0, k > 0, C0 in (0, 1]."""
    if E < 0:
        raise ValueError(f"entanglement must be nonnegative, got {E}")
    if k <= 0:
        raise ValueError(f"decay constant must be positive, got {k}")
    if not 0 < C0 <= 1:
        raise ValueError(f"initial coherence must lie in (0, 1], got {C0}")
    return C0 * math.exp(-k * E)


def dephased_qubit_state(alpha: complex, beta: complex, omega: float, t: float,
                         k: float, E: float) -> DensityMatrix:
    """Entanglement-dephased qubit state of an observer.

    Populations |alpha|^2, |beta|^2 are preserved while the off-diagonal
    coherences are attenuated by e^{-kE}.  omega and t parametrize the
    common phase rotation of both amplitudes, which cancels in the density
    matrix, leaving the output independent of them.
    """
    alpha = complex(alpha)
    beta = complex(beta)
    occ = abs(alpha) ** 2 + abs(beta) ** 2
    if abs(occ - 1.0) > 1e-12:
        raise ValueError(f"(alpha, beta) must be normalized, got |a|^2+|b|^2 = {occ}")
    if k <= 0:
        raise ValueError(f"decay constant must be positive, got {k}")
    if E < 0:
        raise ValueError(f"entanglement must be nonnegative, got {E}")
    damp = math.exp(-k * E)
    off = alpha * beta.conjugate() * damp
    return DensityMatrix(np.array([
        [abs(alpha) ** 2, off],
        [off.conjugate(), abs(beta) ** 2],
    ]))


def l1_coherence(rho: DensityMatrix) -> float:
    """Sum of magnitudes of the off-diagonal entries."""
    magnitudes = np.abs(rho.entries)
    return float(magnitudes.sum() - np.trace(magnitudes))


@dataclass(frozen=True, eq=False)
class ObserverScenarioRow:
    """Per-observer outputs of the multi-observer scenario."""

    label: str
    E: float
    C: float
    tick_rate: float
    local_times: np.ndarray
    rho: DensityMatrix
    l1: float
    purity: float


def three_observer_scenario(profiles: Sequence[ObserverProfile],
                            alpha: complex, beta: complex,
                            t_grid) -> tuple[ObserverScenarioRow, ...]:
    """Run the weak/moderate/strong entanglement comparison.

    For each of three observers with nondecreasing entanglement, computes
    the local time tau_i(t) = f_i(E_i) * t on the grid, the coherence
    C_i = C0 e^{-k E_i}, the dephased qubit state, its l1 coherence, and
    its purity.  Row order follows the input order.  A decrease in E along
    the profiles is rejected; for strictly increasing E the coherences and
    purities are strictly decreasing down the table (with shared k, C0 and
    alpha beta != 0).
    """
    profiles = tuple(profiles)
    if len(profiles) != 3:
        raise ValueError(f"scenario expects exactly 3 observer profiles, got {len(profiles)}")
    ents = [p.E for p in profiles]
    if any(b < a for a, b in zip(ents, ents[1:])):
        raise ValueError(f"entanglements must be ordered weakest to strongest, got {ents}")
    t = np.asarray(t_grid, dtype=float)
    rows = []
    for p in profiles:
        rate = p.tick_rate()
        rho = dephased_qubit_state(alpha, beta, 0.0, 0.0, p.k, p.E)
        rows.append(ObserverScenarioRow(
            label=p.label,
            E=p.E,
            C=p.coherence(),
            tick_rate=rate,
            local_times=rate * t,
            rho=rho,
            l1=l1_coherence(rho),
            purity=rho.purity,
        ))
    return tuple(rows)
