"""Dense complex linear algebra for finite-dimensional quantum systems.

Provides the value types (state vectors, operators, density matrices) and the
four primitive operations everything else is built from: tensor products,
unitary evolution by a Hermitian generator, partial traces, and Hermitian
eigendecomposition.

Conventions
-----------
* Natural units with ``hbar = 1`` throughout (exposed as :data:`HBAR`).
* Dense storage only; intended for total dimensions up to a few thousand.
* Row-major tensor index convention: for a product space ``A (x) B`` the
  index of the left factor A varies slowest, i.e. the joint amplitude at
  ``(i, j)`` lives at flat index ``i * dim_B + j``.
* ``exp(-i H t)`` is evaluated through the spectral decomposition of H,
  never through a series expansion, so norm preservation is limited only
  by the eigensolver's accuracy.

All values are immutable after construction and all operations are pure
functions, so they can be shared freely across threads.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

#: Reduced Planck constant in the unit system used by all quantum modules.
#: Fixed by convention, not configurable.
HBAR = 1.0

HERMITICITY_TOL = 1e-12
NORMALIZATION_TOL = 1e-12


def _as_complex_vector(values) -> np.ndarray:
    arr = np.array(values, dtype=complex, copy=True).reshape(-1)
    arr.flags.writeable = False
    return arr


def _as_complex_matrix(values, what: str) -> np.ndarray:
    arr = np.array(values, dtype=complex, copy=True)
    if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
        raise ValueError(f"{what} must be a square matrix, got shape {arr.shape}")
    arr.flags.writeable = False
    return arr


# ---------------------------------------------------------------------------
# Value types
# ---------------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class StateVector:
    """A complex amplitude vector over a finite Hilbert space.

    Amplitudes are stored as an immutable 1-D complex array.  Normalization
    is a predicate (:meth:`is_normalized`), not an invariant: intermediate
    vectors such as unnormalized clock projections are representable.
    """

    amplitudes: np.ndarray

    def __post_init__(self):
        arr = _as_complex_vector(self.amplitudes)
        if arr.size == 0:
            raise ValueError("state vector must have at least one amplitude")
        if not np.all(np.isfinite(arr.view(float))):
            raise ValueError("state vector amplitudes must be finite")
        object.__setattr__(self, "amplitudes", arr)

    @property
    def dim(self) -> int:
        return self.amplitudes.size

    @property
    def norm(self) -> float:
        return float(np.linalg.norm(self.amplitudes))

    def is_normalized(self, tol: float = NORMALIZATION_TOL) -> bool:
        return abs(self.norm - 1.0) <= tol

    def normalized(self) -> "StateVector":
        """Return the unit-norm rescaling of this vector."""
        n = self.norm
        if n <= 1e-14:
            raise ValueError("cannot normalize a (numerically) zero vector")
        return StateVector(self.amplitudes / n)

    def overlap(self, other: "StateVector") -> complex:
        """Inner product ``<self|other>``."""
        if other.dim != self.dim:
            raise ValueError(f"dimension mismatch: {self.dim} vs {other.dim}")
        return complex(np.vdot(self.amplitudes, other.amplitudes))

    def fidelity(self, other: "StateVector") -> float:
        """``|<self|other>|`` for unit vectors; phase-insensitive."""
        return abs(self.overlap(other))


@dataclass(frozen=True, eq=False)
class Operator:
    """A dense linear operator with an optional (verified) Hermitian tag.

    Hamiltonians carry ``hermitian=True``; construction then checks
    ``max |A - A^dagger| <= 1e-12`` so downstream spectral routines can rely
    on the tag.
    """

    entries: np.ndarray
    hermitian: bool = False

    def __post_init__(self):
        arr = _as_complex_matrix(self.entries, "operator")
        if self.hermitian:
            dev = np.max(np.abs(arr - arr.conj().T)) if arr.size else 0.0
            if dev > HERMITICITY_TOL:
                raise ValueError(
                    f"operator tagged hermitian deviates from its adjoint by {dev:.3e}"
                )
        object.__setattr__(self, "entries", arr)

    @property
    def dim(self) -> int:
        return self.entries.shape[0]


def hermitian_operator(entries) -> Operator:
    """Shorthand for ``Operator(entries, hermitian=True)``."""
    return Operator(entries, hermitian=True)


@dataclass(frozen=True, eq=False)
class DensityMatrix:
    """A valid quantum state in matrix form.

    Construction enforces Hermiticity (1e-12), unit trace (1e-12) and
    positive semidefiniteness up to an eigenvalue floor of -1e-10.
    """

    entries: np.ndarray

    def __post_init__(self):
        arr = _as_complex_matrix(self.entries, "density matrix")
        dev = np.max(np.abs(arr - arr.conj().T))
        if dev > HERMITICITY_TOL:
            raise ValueError(f"density matrix deviates from Hermiticity by {dev:.3e}")
        tr = complex(np.trace(arr))
        if abs(tr - 1.0) > HERMITICITY_TOL:
            raise ValueError(f"density matrix trace {tr} differs from 1")
        lo = float(np.min(np.linalg.eigvalsh(arr)))
        if lo < -1e-10:
            raise ValueError(f"density matrix has negative eigenvalue {lo:.3e}")
        object.__setattr__(self, "entries", arr)

    @property
    def dim(self) -> int:
        return self.entries.shape[0]

    @property
    def purity(self) -> float:
        """``tr(rho^2)``; 1 exactly for pure states."""
        return float(np.real(np.trace(self.entries @ self.entries)))


def pure_density(psi: StateVector) -> DensityMatrix:
    """The rank-1 projector ``|psi><psi|`` of a normalized state."""
    if not psi.is_normalized():
        raise ValueError("pure_density requires a normalized state")
    return DensityMatrix(np.outer(psi.amplitudes, psi.amplitudes.conj()))


# ---------------------------------------------------------------------------
# Operations
# ---------------------------------------------------------------------------

def tensor_product(a: StateVector, b: StateVector) -> StateVector:
    """Tensor product ``a (x) b`` in the row-major convention.

    The output amplitude at joint index ``(i, j)`` equals ``a_i * b_j`` and
    sits at flat position ``i * dim(b) + j``; the left factor is the
    slower-varying one.
    """
    return StateVector(np.kron(a.amplitudes, b.amplitudes))


def eig_hermitian(H: Operator) -> tuple[np.ndarray, np.ndarray]:
    """Spectral decomposition of a Hermitian operator.

    Returns
    -------
    eigenvalues : (d,) float array, ascending
    eigenvectors : (d, d) complex array, orthonormal columns, with
        ``H @ v_k = lambda_k v_k`` per column.
    """
    if not H.hermitian:
        raise ValueError("eig_hermitian requires an operator tagged hermitian")
    evals, evecs = np.linalg.eigh(H.entries)
    return evals, evecs


def evolve_unitary(H: Operator, t: float, psi: StateVector) -> StateVector:
    """Apply ``exp(-i H t / hbar)`` to ``psi`` (hbar = 1).

    H must be Hermitian; the exponential is evaluated through the spectral
    decomposition, so the result is unitary up to eigensolver rounding and
    the norm of ``psi`` is preserved to ~1e-15.
    """
    if not H.hermitian:
        raise ValueError("evolve_unitary requires a Hermitian generator")
    if H.dim != psi.dim:
        raise ValueError(f"dimension mismatch: H is {H.dim}, psi is {psi.dim}")
    evals, evecs = np.linalg.eigh(H.entries)
    phases = np.exp(-1j * evals * (float(t) / HBAR))
    out = evecs @ (phases * (evecs.conj().T @ psi.amplitudes))
    return StateVector(out)


def partial_trace(rho: DensityMatrix, dims: tuple[int, int], keep: int) -> DensityMatrix:
    """Trace out one factor of a bipartite state.

    Parameters
    ----------
    rho : DensityMatrix
        State on the product space with ``dim = dims[0] * dims[1]``.
    dims : (d1, d2)
        Subsystem dimensions, left factor first (row-major convention).
    keep : int
        Which subsystem to keep: 1 for the d1 factor, 2 for the d2 factor.

    The output trace equals the input trace and Hermiticity is preserved
    exactly by the index contraction.
    """
    d1, d2 = int(dims[0]), int(dims[1])
    if d1 < 1 or d2 < 1 or d1 * d2 != rho.dim:
        raise ValueError(f"dims {dims} incompatible with density matrix of dim {rho.dim}")
    if keep not in (1, 2):
        raise ValueError("keep must be 1 (left factor) or 2 (right factor)")
    four = rho.entries.reshape(d1, d2, d1, d2)
    if keep == 1:
        reduced = np.einsum("ijkj->ik", four)
    else:
        reduced = np.einsum("ijil->jl", four)
    return DensityMatrix(reduced)
