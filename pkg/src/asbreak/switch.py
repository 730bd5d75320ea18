"""
Quantum switch of two channels, controlled by an ancilla qubit.

The joint system-control space is ``H_sys (x) H_c`` with the control qubit
as the fast (last) tensor factor. Control ``|0>`` applies channel 2 first,
control ``|1>`` applies channel 1 first::

    W_ij = K1_i K2_j (x) |0><0|  +  K2_j K1_i (x) |1><1|

After measuring the control in ``{|+>, |->}`` with ``|+-> = (|0> +- |1>) / sqrt(2)``
and starting from ``|+>``, unitary channels reduce to ``L rho L^dagger``
with ``L = (U1 U2 +- U2 U1) / 2``.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import DimensionMismatch, InvalidChannel, ZeroProbabilityBranch
from .linalg import as_matrix

ZERO_PROB_TOL = 1e-12
KRAUS_TOL = 1e-10
CONTROL_TOL = 1e-12


class Branch(str, enum.Enum):
    PLUS = "plus"
    MINUS = "minus"

    @property
    def sign(self) -> int:
        return 1 if self is Branch.PLUS else -1


_SQ = 1 / math.sqrt(2)
PLUS_CONTROL = np.array([_SQ, _SQ], dtype=complex)


@dataclass(frozen=True)
class KrausChannel:
    """Channel ``rho -> sum_k K_k rho K_k^dagger``; completeness checked on construction."""

    ops: tuple

    def __init__(self, ops: Sequence):
        ops = tuple(as_matrix(K) for K in ops)
        if not ops:
            raise InvalidChannel("a channel needs at least one Kraus operator")
        n = ops[0].shape[0]
        if any(K.shape != (n, n) for K in ops):
            raise InvalidChannel("Kraus operators must share one square shape")
        total = sum(K.conj().T @ K for K in ops)
        defect = float(np.max(np.abs(total - np.eye(n))))
        if defect > KRAUS_TOL:
            raise InvalidChannel(f"sum K^dagger K deviates from identity by {defect:.3e}")
        object.__setattr__(self, "ops", ops)

    @classmethod
    def unitary(cls, U) -> "KrausChannel":
        return cls([U])

    @property
    def dim(self) -> int:
        return self.ops[0].shape[0]

    def apply(self, rho) -> np.ndarray:
        return sum(K @ rho @ K.conj().T for K in self.ops)


@dataclass(frozen=True)
class SwitchOutcome:
    state: np.ndarray
    probability: float
    branch: Branch


def _control_vector(control) -> np.ndarray:
    c = PLUS_CONTROL if control is None else np.asarray(control, dtype=complex).ravel()
    if c.shape != (2,):
        raise DimensionMismatch("control state needs two amplitudes")
    if abs(np.vdot(c, c).real - 1) > CONTROL_TOL:
        raise ValueError(f"control amplitudes {c} are not normalised")
    return c


def switch_joint(ch1, ch2, rho, control=None) -> np.ndarray:
    """
    Joint system (x) control state ``sum_ij W_ij (rho (x) |c><c|) W_ij^dagger``.

    ``ch1`` and ``ch2`` may be :class:`KrausChannel` instances or bare
    Kraus lists. ``control`` holds the pure control amplitudes ``(a, b)``;
    the default is ``|+>``.
    """
    ch1 = ch1 if isinstance(ch1, KrausChannel) else KrausChannel(ch1)
    ch2 = ch2 if isinstance(ch2, KrausChannel) else KrausChannel(ch2)
    rho = as_matrix(rho)
    n = rho.shape[0]
    if rho.shape != (n, n) or ch1.dim != n or ch2.dim != n:
        raise DimensionMismatch(
            f"channel dims ({ch1.dim}, {ch2.dim}) do not match state dim {rho.shape}")
    c = _control_vector(control)
    rho_c = np.outer(c, c.conj())
    P0 = np.diag([1, 0]).astype(complex)
    P1 = np.diag([0, 1]).astype(complex)
    joint_in = np.kron(rho, rho_c)
    out = np.zeros((2 * n, 2 * n), dtype=complex)
    for K1 in ch1.ops:
        for K2 in ch2.ops:
            W = np.kron(K1 @ K2, P0) + np.kron(K2 @ K1, P1)
            out += W @ joint_in @ W.conj().T
    return out


def measure_control(joint, branch=Branch.PLUS) -> SwitchOutcome:
    """Project the control onto ``|+>`` or ``|->`` and renormalise the system state."""
    branch = Branch(branch)
    joint = as_matrix(joint)
    if joint.shape[0] != joint.shape[1] or joint.shape[0] % 2:
        raise DimensionMismatch(f"joint state shape {joint.shape} is not system (x) qubit")
    n = joint.shape[0] // 2
    v = np.array([1, branch.sign], dtype=complex) * _SQ
    blocks = joint.reshape(n, 2, n, 2)
    unnorm = np.einsum("a,iakb,b->ik", v.conj(), blocks, v)
    prob = float(np.trace(unnorm).real)
    if prob < ZERO_PROB_TOL:
        raise ZeroProbabilityBranch(f"{branch.value} branch has probability {prob:.3e}")
    return SwitchOutcome(unnorm / prob, prob, branch)


def switch_operator(u1, u2, branch=Branch.PLUS) -> np.ndarray:
    """``(U1 U2 + U2 U1) / 2`` for the plus branch, ``(U1 U2 - U2 U1) / 2`` for minus."""
    branch = Branch(branch)
    u1, u2 = as_matrix(u1), as_matrix(u2)
    if u1.shape != u2.shape or u1.shape[0] != u1.shape[1]:
        raise DimensionMismatch(f"unitary shapes {u1.shape} and {u2.shape} differ")
    return 0.5 * (u1 @ u2 + branch.sign * (u2 @ u1))


def apply_switch_operator(L, rho, branch=Branch.PLUS) -> SwitchOutcome:
    rho = as_matrix(rho)
    if rho.shape != L.shape:
        raise DimensionMismatch(f"state shape {rho.shape} does not match operator {L.shape}")
    unnorm = L @ rho @ L.conj().T
    prob = float(np.trace(unnorm).real)
    if prob < ZERO_PROB_TOL:
        raise ZeroProbabilityBranch(f"{Branch(branch).value} branch has probability {prob:.3e}")
    return SwitchOutcome(unnorm / prob, prob, Branch(branch))


def switch_unitary_closed(u1, u2, rho, branch=Branch.PLUS) -> SwitchOutcome:
    """
    Switch of two unitary channels with control ``|+>``, post-selected on ``branch``.

    Returns the state ``L rho L^dagger / Tr[L rho L^dagger]`` with
    ``L = switch_operator(u1, u2, branch)`` and the branch probability
    ``Tr[L rho L^dagger]``. Raises ``ZeroProbabilityBranch`` when that
    probability is below ``1e-12``, e.g. anticommuting unitaries on the
    plus branch.
    """
    return apply_switch_operator(switch_operator(u1, u2, branch), rho, branch)
