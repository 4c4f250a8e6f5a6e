"""Finite quantum clocks and globally stationary history states.

A finite clock with N levels is realized as the Fourier conjugate pair of a
uniform energy lattice (a Pegg-Barnett style construction): energy
eigenvalues

    E_k = 2 pi k / (N dt),     k = 0 .. N-1,

and time states given by the discrete Fourier transform of the energy basis,

    |t_n> = (1/sqrt N) sum_k exp(-i E_k t_n) |E_k>,    t_n = n dt.

The DFT is unitary, so the N time states are exactly orthonormal and the
clock reads out a uniform grid t_n covering one period T = N dt.

A history state encodes an entire evolution as clock-system correlations:

    |Phi> = (1/sqrt N) sum_n |t_n> (x) U(t_n) |psi0>,   U(t) = exp(-i H_S t).

Conditioning |Phi> on the reading t_n returns U(t_n)|psi0| up to the uniform
weight 1/sqrt N, so the whole Schroedinger trajectory is recoverable from a
single static vector.

Global stationarity is *reported*, not enforced: the residual
``|| (H_C (x) 1 + 1 (x) H_S) Phi ||`` vanishes exactly when the system
eigenvalues mirror clock lattice points with opposite sign.  Passing
``negate_energies=True`` to :func:`build_fourier_clock` flips the clock
lattice sign so that system spectra lying on the *positive* lattice are the
matched ones; both sign conventions are thereby available.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .qlin import Operator, StateVector, eig_hermitian, hermitian_operator

ORTHONORMALITY_TOL = 1e-10


def lattice_frequencies(N: int, dt: float) -> np.ndarray:
    """The clock energy lattice 2 pi k / (N dt) for k = 0 .. N-1."""
    if N < 2:
        raise ValueError(f"clock needs at least 2 levels, got {N}")
    if dt <= 0:
        raise ValueError(f"clock time spacing must be positive, got {dt}")
    return 2.0 * np.pi * np.arange(N) / (N * dt)


@dataclass(frozen=True, eq=False)
class ClockModel:
    """An N-level clock: orthonormal time states plus the clock Hamiltonian.

    The time states are checked to be mutually orthonormal within 1e-10 and
    ``H_C`` must carry a verified Hermitian tag.  ``times`` is the uniform
    reading grid t_n = n dt with period ``N * dt``.
    """

    N: int
    dt: float
    time_states: tuple[StateVector, ...]
    H_C: Operator

    def __post_init__(self):
        if self.N < 2:
            raise ValueError(f"clock needs at least 2 levels, got {self.N}")
        if self.dt <= 0:
            raise ValueError(f"clock time spacing must be positive, got {self.dt}")
        if len(self.time_states) != self.N:
            raise ValueError("number of time states must equal N")
        if not self.H_C.hermitian:
            raise ValueError("clock Hamiltonian must be tagged hermitian")
        if self.H_C.dim != self.N:
            raise ValueError("clock Hamiltonian dimension must equal N")
        object.__setattr__(self, "time_states", tuple(self.time_states))
        mat = self.time_state_matrix()
        gram = mat.conj() @ mat.T
        dev = np.max(np.abs(gram - np.eye(self.N)))
        if dev > ORTHONORMALITY_TOL:
            raise ValueError(f"time states deviate from orthonormality by {dev:.3e}")

    @property
    def times(self) -> np.ndarray:
        return np.arange(self.N) * self.dt

    @property
    def period(self) -> float:
        return self.N * self.dt

    def time_state_matrix(self) -> np.ndarray:
        """(N, N) array with the n-th time state's amplitudes in row n."""
        return np.array([s.amplitudes for s in self.time_states])


def build_fourier_clock(N: int, dt: float, negate_energies: bool = False) -> ClockModel:
    """Construct the finite Fourier-conjugate clock.

    Parameters
    ----------
    N : int
        Number of clock levels (>= 2).
    dt : float
        Spacing between adjacent readings (> 0); the period is N*dt.
    negate_energies : bool
        If True, build ``H_C`` on the negated lattice -E_k.  A system
        Hamiltonian whose eigenvalues lie on the positive lattice then gives
        a vanishing constraint residual; with the default sign the matched
        spectra are the negated ones.
    """
    energies = lattice_frequencies(N, dt)
    if negate_energies:
        energies = -energies
    t_grid = np.arange(N) * dt
    # |t_n> = (1/sqrt N) sum_k e^{-i E_k t_n} |E_k>; rows of a unitary DFT.
    amplitudes = np.exp(-1j * np.outer(t_grid, energies)) / np.sqrt(N)
    time_states = tuple(StateVector(row) for row in amplitudes)
    H_C = hermitian_operator(np.diag(energies.astype(complex)))
    return ClockModel(N=N, dt=float(dt), time_states=time_states, H_C=H_C)


@dataclass(frozen=True, eq=False)
class HistoryState:
    """A normalized global vector on clock (x) system.

    This raw constructor accepts any normalized vector of dimension
    ``N * system_dim``, requiring only consistency and normalization; the
    uniform-weight correlation structure holds for states made by
    :func:`build_history_state` but is not demanded here.
    """

    clock: ClockModel
    system_dim: int
    global_vector: StateVector

    def __post_init__(self):
        if self.system_dim < 1:
            raise ValueError("system dimension must be positive")
        expected = self.clock.N * self.system_dim
        if self.global_vector.dim != expected:
            raise ValueError(
                f"global vector has dim {self.global_vector.dim}, "
                f"expected N * system_dim = {expected}"
            )
        if not self.global_vector.is_normalized():
            raise ValueError("global vector must be normalized within 1e-12")

    def block_matrix(self) -> np.ndarray:
        """Reshape to (N, system_dim): row n is the clock-level-n block."""
        return self.global_vector.amplitudes.reshape(self.clock.N, self.system_dim)


def build_history_state(clock: ClockModel, H_S: Operator, psi0: StateVector) -> HistoryState:
    """Entangle a system trajectory with the clock.

    Builds ``(1/sqrt N) sum_n |t_n> (x) U(t_n)|psi0>`` with
    ``U(t) = exp(-i H_S t)``.  Because each conditional block is unitary
    times psi0 and the time states are orthonormal, the result is normalized
    and every block carries weight 1/sqrt N.
    """
    if not psi0.is_normalized():
        raise ValueError("psi0 must be normalized (zero or unnormalized vector rejected)")
    if not H_S.hermitian:
        raise ValueError("system Hamiltonian must be Hermitian")
    d = H_S.dim
    if psi0.dim != d:
        raise ValueError(f"dimension mismatch: H_S is {d}, psi0 is {psi0.dim}")
    evals, evecs = eig_hermitian(H_S)
    coeffs = evecs.conj().T @ psi0.amplitudes
    N = clock.N
    global_vec = np.zeros(N * d, dtype=complex)
    for n, t_n in enumerate(clock.times):
        psi_n = evecs @ (np.exp(-1j * evals * t_n) * coeffs)
        global_vec += np.kron(clock.time_states[n].amplitudes, psi_n)
    global_vec /= np.sqrt(N)
    return HistoryState(clock=clock, system_dim=d, global_vector=StateVector(global_vec))


def constraint_residual(hist: HistoryState, H_S: Operator) -> float:
    """How far the global state is from total-Hamiltonian stationarity.

    Returns ``|| (H_C (x) 1 + 1 (x) H_S) |Phi> ||`` in energy units.  The
    residual is zero (to rounding) exactly when every system eigenvalue with
    support in psi0 mirrors a clock lattice point with opposite sign; it is
    invariant under a global phase of the initial state.

    The product operators are applied blockwise rather than materialized,
    so the cost is O(N d (N + d)) with negligible memory.
    """
    if not H_S.hermitian:
        raise ValueError("system Hamiltonian must be Hermitian")
    if H_S.dim != hist.system_dim:
        raise ValueError(
            f"dimension mismatch: H_S is {H_S.dim}, history system dim is {hist.system_dim}"
        )
    blocks = hist.block_matrix()
    # (H_C (x) 1) Phi -> H_C acting on the clock index; (1 (x) H_S) Phi -> on columns.
    image = hist.clock.H_C.entries @ blocks + blocks @ H_S.entries.T
    return float(np.linalg.norm(image))
