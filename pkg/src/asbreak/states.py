"""
Constructors for the two-qubit and qubit-qudit state families.

All constructors return ``complex128`` density matrices in the computational
basis ``|00>, |01>, |10>, |11>`` (subsystem A first).
"""

from __future__ import annotations

import math

import numpy as np

from .errors import InvalidProbs, InvalidState, ParamOutOfRange
from .linalg import as_dims

PROB_SLACK = 1e-12

_S = 1 / math.sqrt(2)
PHI_PLUS = np.array([1, 0, 0, 1], dtype=complex) * _S
PHI_MINUS = np.array([1, 0, 0, -1], dtype=complex) * _S
PSI_PLUS = np.array([0, 1, 1, 0], dtype=complex) * _S
PSI_MINUS = np.array([0, 1, -1, 0], dtype=complex) * _S
BELL_BASIS = (PHI_PLUS, PHI_MINUS, PSI_PLUS, PSI_MINUS)

PAULI_X = np.array([[0, 1], [1, 0]], dtype=complex)
PAULI_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
PAULI_Z = np.array([[1, 0], [0, -1]], dtype=complex)
_PAULI_PAIRS = tuple(np.kron(P, P) for P in (PAULI_X, PAULI_Y, PAULI_Z))


def projector(psi) -> np.ndarray:
    psi = np.asarray(psi, dtype=complex).ravel()
    return np.outer(psi, psi.conj())


def boundary_rank3() -> np.ndarray:
    """Equal mixture of ``|00>, |01>, |10>``: a rank-3 state on the AS boundary."""
    return np.diag([1, 1, 1, 0]).astype(complex) / 3


def maximally_mixed(dims=(2, 2)) -> np.ndarray:
    """``I / (dA * dB)``; an int ``dims`` is read as ``dB`` with ``dA = 2``."""
    if isinstance(dims, (int, np.integer)):
        dims = (2, int(dims))
    n = as_dims(dims).total
    return np.eye(n, dtype=complex) / n


def xi_state(gamma: float, phi: float = 0.0) -> np.ndarray:
    """``cos(gamma)|00> + exp(i phi) sin(gamma)|11>``."""
    return np.array([math.cos(gamma), 0, 0, np.exp(1j * phi) * math.sin(gamma)], dtype=complex)


def modified_werner(p: float, gamma: float = math.pi / 4, phi: float = 0.0) -> np.ndarray:
    """
    White noise mixed with the pure state ``xi_state(gamma, phi)``.

    ``rho = p |xi><xi| + (1 - p) I / 4`` with ``0 <= p <= 1``,
    ``0 <= gamma <= pi`` and ``0 <= phi <= 2 pi``.
    """
    if not 0.0 <= p <= 1.0:
        raise ParamOutOfRange(f"p = {p} outside [0, 1]")
    if not 0.0 <= gamma <= math.pi:
        raise ParamOutOfRange(f"gamma = {gamma} outside [0, pi]")
    if not 0.0 <= phi <= 2 * math.pi:
        raise ParamOutOfRange(f"phi = {phi} outside [0, 2 pi]")
    return p * projector(xi_state(gamma, phi)) + (1 - p) / 4 * np.eye(4, dtype=complex)


def _check_probs(probs) -> np.ndarray:
    probs = np.asarray(probs, dtype=float).ravel()
    if probs.shape != (4,):
        raise InvalidProbs(f"expected 4 probabilities, got {probs.size}")
    if not np.all(np.isfinite(probs)) or np.any(probs < -PROB_SLACK):
        raise InvalidProbs(f"negative or non-finite probability in {probs}")
    if abs(probs.sum() - 1) > PROB_SLACK:
        raise InvalidProbs(f"probabilities sum to {probs.sum()!r}, not 1")
    return probs


def bd_from_probs(p1: float, p2: float, p3: float, p4: float) -> np.ndarray:
    """Bell-diagonal state ``p1 phi+ + p2 phi- + p3 psi+ + p4 psi-``."""
    probs = _check_probs((p1, p2, p3, p4))
    rho = np.zeros((4, 4), dtype=complex)
    for w, b in zip(probs, BELL_BASIS):
        rho += w * projector(b)
    return rho


def probs_from_correlations(c1: float, c2: float, c3: float) -> np.ndarray:
    """
    Bell weights ``(phi+, phi-, psi+, psi-)`` of ``(I + sum c_i s_i (x) s_i) / 4``.

    Each weight is ``(1 + <XX> c1 + <YY> c2 + <ZZ> c3) / 4`` using the Bell
    state's own correlations: phi+ (1,-1,1), phi- (-1,1,1), psi+ (1,1,-1),
    psi- (-1,-1,-1).
    """
    return np.array([
        (1 + c1 - c2 + c3) / 4,
        (1 - c1 + c2 + c3) / 4,
        (1 + c1 + c2 - c3) / 4,
        (1 - c1 - c2 - c3) / 4,
    ])


def correlations_from_probs(p1: float, p2: float, p3: float, p4: float) -> np.ndarray:
    """Inverse of :func:`probs_from_correlations`."""
    return np.array([
        p1 - p2 + p3 - p4,
        -p1 + p2 + p3 - p4,
        p1 + p2 - p3 - p4,
    ])


def bd_from_correlations(c1: float, c2: float, c3: float) -> np.ndarray:
    """``(I + c1 XX + c2 YY + c3 ZZ) / 4``; raises ``InvalidState`` if not positive."""
    probs = probs_from_correlations(c1, c2, c3)
    if np.any(probs < -PROB_SLACK):
        raise InvalidState(f"correlations ({c1}, {c2}, {c3}) give Bell weights {probs}")
    rho = np.eye(4, dtype=complex)
    for c, PP in zip((c1, c2, c3), _PAULI_PAIRS):
        rho = rho + c * PP
    return rho / 4


def bd_alpha_family(alpha: float) -> np.ndarray:
    """Bell-diagonal state with weights ``(3a - 1/2, 1/2 - a, 1/2 - a, 1/2 - a)``."""
    if not 1 / 6 - PROB_SLACK <= alpha <= 0.5 + PROB_SLACK:
        raise ParamOutOfRange(f"alpha = {alpha} outside [1/6, 1/2]")
    alpha = min(max(alpha, 1 / 6), 0.5)
    q = 0.5 - alpha
    return bd_from_probs(3 * alpha - 0.5, q, q, q)


def random_density_matrix(n: int, rank: int | None = None, rng=None) -> np.ndarray:
    """Random ``n x n`` state ``G G^dagger / tr`` from a complex Gaussian ``n x rank`` matrix ``G``."""
    rng = np.random.default_rng(rng)
    rank = n if rank is None else rank
    G = rng.standard_normal((n, rank)) + 1j * rng.standard_normal((n, rank))
    rho = G @ G.conj().T
    return rho / np.trace(rho).real
