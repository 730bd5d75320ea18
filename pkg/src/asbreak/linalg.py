"""
Dense complex-matrix helpers.

Matrices are plain ``numpy`` arrays of dtype ``complex128``. Bipartite
operators use the basis ordering ``|00>, |01>, |10>, |11>, ...`` with
subsystem A as the slow (row-major outer) index.
"""

from __future__ import annotations

from typing import NamedTuple

import numpy as np

from .errors import DimensionMismatch, NotHermitian

HERMITIAN_TOL = 1e-10
RANK_TOL = 1e-9


class BipartiteDims(NamedTuple):
    dA: int
    dB: int

    @property
    def total(self) -> int:
        return self.dA * self.dB


def as_dims(dims, n: int | None = None) -> BipartiteDims:
    """Coerce ``dims`` to :class:`BipartiteDims`; ``None`` means qubit-qudit ``(2, n // 2)``."""
    if dims is None:
        if n is None or n % 2:
            raise DimensionMismatch(f"cannot infer 2 x d split for dimension {n}")
        return BipartiteDims(2, n // 2)
    dA, dB = (int(x) for x in dims)
    if dA < 1 or dB < 1:
        raise DimensionMismatch(f"bad subsystem dimensions {dims}")
    out = BipartiteDims(dA, dB)
    if n is not None and out.total != n:
        raise DimensionMismatch(f"dims {tuple(out)} do not match matrix dimension {n}")
    return out


def as_matrix(A) -> np.ndarray:
    M = np.asarray(A, dtype=complex)
    if M.ndim != 2 or M.shape[0] < 1 or M.shape[1] < 1:
        raise DimensionMismatch(f"expected a 2-d matrix, got shape {M.shape}")
    return M


def _square(A) -> np.ndarray:
    M = as_matrix(A)
    if M.shape[0] != M.shape[1]:
        raise DimensionMismatch(f"expected a square matrix, got shape {M.shape}")
    return M


def kron(A, B) -> np.ndarray:
    """Kronecker product ``A (x) B``."""
    return np.kron(as_matrix(A), as_matrix(B))


def dagger(A) -> np.ndarray:
    """Conjugate transpose."""
    return as_matrix(A).conj().T


def hermiticity_defect(H) -> float:
    H = _square(H)
    return float(np.max(np.abs(H - H.conj().T)))


def hermitize(H, tol: float = HERMITIAN_TOL) -> np.ndarray:
    """Return ``(H + H^dagger) / 2`` after checking that ``H`` is Hermitian to ``tol``."""
    H = _square(H)
    defect = hermiticity_defect(H)
    if defect > tol:
        raise NotHermitian(f"max |H - H^dagger| = {defect:.3e} exceeds {tol:.1e}")
    return 0.5 * (H + H.conj().T)


def eig_hermitian_desc(H, tol: float = HERMITIAN_TOL) -> np.ndarray:
    """
    Eigenvalues of a Hermitian matrix, sorted in non-increasing order.

    Parameters
    ----------
    H : array_like
        Square matrix, Hermitian up to ``tol`` (max absolute entry of
        ``H - H^dagger``).
    tol : float
        Hermiticity tolerance.

    Returns
    -------
    numpy.ndarray
        Real eigenvalues, largest first.

    Raises
    ------
    NotHermitian
        If the Hermiticity defect exceeds ``tol``.
    """
    evals = np.linalg.eigvalsh(hermitize(H, tol))
    return evals[::-1].copy()


def partial_transpose_B(rho, dims=None) -> np.ndarray:
    """
    Transpose on subsystem B.

    Each ``dB x dB`` block ``(i, j)`` of ``rho`` is transposed in place.
    """
    rho = _square(rho)
    dA, dB = as_dims(dims, rho.shape[0])
    blocks = rho.reshape(dA, dB, dA, dB)
    return blocks.transpose(0, 3, 2, 1).reshape(dA * dB, dA * dB)


def rank_with_tol(M, tol: float = RANK_TOL) -> int:
    """Number of eigenvalues of the Hermitian PSD matrix ``M`` above ``tol``."""
    if tol <= 0:
        raise ValueError("rank tolerance must be positive")
    return int(np.count_nonzero(eig_hermitian_desc(M) > tol))
