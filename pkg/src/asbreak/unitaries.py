"""
Fixed two-qubit gates and a seeded Haar-random unitary sampler.

Random draws are addressed by ``(seed, index)``: each pair maps to its own
``PCG64`` stream through ``numpy.random.SeedSequence(seed, spawn_key=(index,))``,
so scans give the same sample ``i`` regardless of evaluation order.
"""

from __future__ import annotations

import math

import numpy as np

from .errors import DimensionMismatch

RNG_ALGORITHM = "numpy PCG64 via SeedSequence(entropy=seed, spawn_key=(index,))"
UNITARY_TOL = 1e-10


def unitarity_defect(U) -> float:
    U = np.asarray(U)
    return float(np.max(np.abs(U.conj().T @ U - np.eye(U.shape[0]))))


def is_unitary(U, tol: float = UNITARY_TOL) -> bool:
    U = np.asarray(U)
    return U.ndim == 2 and U.shape[0] == U.shape[1] and unitarity_defect(U) < tol


def identity(n: int = 4) -> np.ndarray:
    return np.eye(n, dtype=complex)


def cnot() -> np.ndarray:
    """CNOT with the first qubit as control."""
    return np.array([
        [1, 0, 0, 0],
        [0, 1, 0, 0],
        [0, 0, 0, 1],
        [0, 0, 1, 0],
    ], dtype=complex)


def u_theta(theta: float) -> np.ndarray:
    """
    Real symmetric two-qubit unitary

    ::

        [[c, 0,  0,  s],
         [0, c,  s,  0],
         [0, s, -c,  0],
         [s, 0,  0, -c]]

    with ``c = cos(theta)``, ``s = sin(theta)``. Equals ``Z (x) I`` at 0 and
    ``X (x) X`` at ``pi / 2``.
    """
    c, s = math.cos(theta), math.sin(theta)
    return np.array([
        [c, 0, 0, s],
        [0, c, s, 0],
        [0, s, -c, 0],
        [s, 0, 0, -c],
    ], dtype=complex)


def rng_for(seed: int, index: int = 0) -> np.random.Generator:
    """Independent generator for draw ``index`` under ``seed``."""
    if seed < 0 or index < 0:
        raise ValueError("seed and index must be non-negative")
    ss = np.random.SeedSequence(entropy=int(seed), spawn_key=(int(index),))
    return np.random.Generator(np.random.PCG64(ss))


def haar_from_rng(n: int, rng: np.random.Generator, size: int | None = None) -> np.ndarray:
    """
    Haar-distributed ``n x n`` unitary (or a stack of ``size`` of them).

    QR-decomposes a complex Ginibre matrix and multiplies each column of Q
    by the phase of the matching diagonal entry of R, which makes the
    decomposition unique and the result Haar distributed.
    """
    if n < 2:
        raise DimensionMismatch("Haar sampling needs n >= 2")
    shape = (n, n) if size is None else (size, n, n)
    Z = (rng.standard_normal(shape) + 1j * rng.standard_normal(shape)) / math.sqrt(2)
    Q, R = np.linalg.qr(Z)
    d = np.diagonal(R, axis1=-2, axis2=-1)
    phases = d / np.abs(d)
    return Q * phases[..., None, :]


def haar_random(n: int, seed: int = 0, index: int = 0) -> np.ndarray:
    """Haar-random ``n x n`` unitary, deterministic in ``(seed, index)``."""
    return haar_from_rng(n, rng_for(seed, index))
