"""
Absolute separability, PPT and the combined state classification.

In ``2 (x) d`` a state with spectrum ``l_1 >= ... >= l_2d`` is absolutely
separable iff ``l_1 - l_{2d-1} - 2 sqrt(l_{2d-2} l_2d) <= 0``. The left-hand
side is called the violation throughout: positive values certify that the
state lies outside the AS set.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .errors import BadSpectrum
from .linalg import HERMITIAN_TOL, as_dims, eig_hermitian_desc, partial_transpose_B

BOUNDARY_TOL = 1e-9
PPT_TOL = 1e-10
SPECTRUM_TOL = 1e-12
# eigensolver round-off on exact zeros is ~1e-16; sqrt would lift it to ~1e-8
ZERO_SNAP = 1e-13


class Verdict(str, enum.Enum):
    AS_INTERIOR = "AS_interior"
    AS_BOUNDARY = "AS_boundary"
    NOT_AS = "not_AS"

    @property
    def is_as(self) -> bool:
        return self is not Verdict.NOT_AS


class Classification(str, enum.Enum):
    NPT_ENTANGLED = "NPT_entangled"
    PPT_NOT_AS = "PPT_not_AS"
    AS = "AS"
    AS_BOUNDARY = "AS_boundary"
    # dB > 3: PPT no longer certifies separability
    NPT = "NPT"
    PPT_NOT_AS_HIGHER = "PPT, not AS"

    @property
    def is_as(self) -> bool:
        return self in (Classification.AS, Classification.AS_BOUNDARY)


@dataclass(frozen=True)
class SpectrumReport:
    eigenvalues: tuple
    as_lhs: float
    verdict: Verdict


class PPTResult(NamedTuple):
    ppt: bool
    min_eigenvalue: float


def as_lhs(eigs, zero_snap: float = ZERO_SNAP) -> float:
    """
    Violation ``l_1 - l_{2d-1} - 2 sqrt(l_{2d-2} l_2d)`` of a descending spectrum.

    Eigenvalues down to ``-1e-12`` are accepted as round-off. Before the
    square root, negatives are clamped and any ``|l| <= zero_snap`` is set
    to exactly zero.
    """
    lam = np.asarray(eigs, dtype=float).ravel()
    n = lam.size
    if n < 4 or n % 2:
        raise BadSpectrum(f"need an even number >= 4 of eigenvalues, got {n}")
    if not np.all(np.isfinite(lam)):
        raise BadSpectrum("non-finite eigenvalue")
    if np.any(np.diff(lam) > SPECTRUM_TOL):
        raise BadSpectrum("eigenvalues are not in non-increasing order")
    if lam[-1] < -SPECTRUM_TOL:
        raise BadSpectrum(f"negative eigenvalue {lam[-1]:.3e}")
    lam = np.where(lam <= zero_snap, 0.0, lam)
    return float(lam[0] - lam[n - 2] - 2 * math.sqrt(lam[n - 3] * lam[n - 1]))


def verdict_for(lhs: float, tol: float = BOUNDARY_TOL) -> Verdict:
    if abs(lhs) <= tol:
        return Verdict.AS_BOUNDARY
    return Verdict.AS_INTERIOR if lhs < 0 else Verdict.NOT_AS


def spectrum_report(eigs, tol: float = BOUNDARY_TOL) -> SpectrumReport:
    lam = np.asarray(eigs, dtype=float)
    lhs = as_lhs(lam)
    return SpectrumReport(tuple(float(x) for x in lam), lhs, verdict_for(lhs, tol))


def is_absolutely_separable(rho, tol: float = BOUNDARY_TOL,
                            herm_tol: float = HERMITIAN_TOL) -> SpectrumReport:
    """Spectrum, violation and AS verdict of ``rho`` (``tol`` is the boundary band)."""
    return spectrum_report(eig_hermitian_desc(rho, herm_tol), tol)


def is_ppt(rho, dims=None, tol: float = PPT_TOL) -> PPTResult:
    """PPT flag and minimum eigenvalue of the partial transpose on B."""
    pt = partial_transpose_B(rho, dims)
    lo = float(eig_hermitian_desc(pt)[-1])
    return PPTResult(lo >= -tol, lo)


def classify(rho, dims=None, tol: float = BOUNDARY_TOL,
             report: SpectrumReport | None = None) -> Classification:
    """
    Label ``rho`` as AS, AS_boundary, PPT_not_AS or NPT_entangled.

    For ``dB > 3`` the non-AS labels become ``"NPT"`` and ``"PPT, not AS"``
    since PPT is no longer sufficient for separability there. A
    precomputed ``report`` skips the second eigendecomposition.
    """
    rho = np.asarray(rho, dtype=complex)
    dims = as_dims(dims, rho.shape[0])
    if report is None:
        report = is_absolutely_separable(rho, tol)
    if report.verdict is Verdict.AS_INTERIOR:
        return Classification.AS
    if report.verdict is Verdict.AS_BOUNDARY:
        return Classification.AS_BOUNDARY
    small = dims.dA * dims.dB <= 6
    if is_ppt(rho, dims).ppt:
        return Classification.PPT_NOT_AS if small else Classification.PPT_NOT_AS_HIGHER
    return Classification.NPT_ENTANGLED if small else Classification.NPT
