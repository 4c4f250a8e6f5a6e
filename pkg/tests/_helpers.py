"""Shared test utilities: random-state factories, independent oracles, and a
subprocess runner for the CLI.  Oracles here deliberately avoid the library
code paths they are used to check."""

import subprocess
import sys

import numpy as np

from chronosim import Operator, StateVector


def random_state(rng: np.random.Generator, d: int) -> StateVector:
    vec = rng.normal(size=d) + 1j * rng.normal(size=d)
    return StateVector(vec / np.linalg.norm(vec))


def random_hermitian(rng: np.random.Generator, d: int, scale: float = 1.0) -> Operator:
    a = rng.normal(size=(d, d)) + 1j * rng.normal(size=(d, d))
    return Operator(scale * (a + a.conj().T) / 2.0, hermitian=True)


def brute_partial_trace(mat: np.ndarray, d1: int, d2: int, keep: int) -> np.ndarray:
    """Index-by-index contraction oracle, no reshaping tricks."""
    if keep == 1:
        out = np.zeros((d1, d1), dtype=complex)
        for i in range(d1):
            for k in range(d1):
                for j in range(d2):
                    out[i, k] += mat[i * d2 + j, k * d2 + j]
    else:
        out = np.zeros((d2, d2), dtype=complex)
        for j in range(d2):
            for l in range(d2):
                for i in range(d1):
                    out[j, l] += mat[i * d2 + j, i * d2 + l]
    return out


def schmidt_entropy(psi: np.ndarray, d1: int, d2: int) -> float:
    """Entanglement entropy from SVD Schmidt coefficients (independent of
    the library's reduced-density-matrix eigenvalue route)."""
    s = np.linalg.svd(psi.reshape(d1, d2), compute_uv=False)
    probs = s**2
    probs = probs[probs > 1e-14]
    return float(-np.sum(probs * np.log(probs)))


def run_cli(*args: str, env: dict | None = None) -> subprocess.CompletedProcess:
    return subprocess.run(
        [sys.executable, "-m", "chronosim", *args],
        capture_output=True, text=True, env=env,
    )
