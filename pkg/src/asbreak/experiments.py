"""
Parameter scans behind every reported result and figure.

Each scan returns a list of :class:`ScanRecord` rows ordered by index.
Random scans draw sample ``i`` from ``rng_for(seed, i)``, so a record does
not depend on how many samples precede it. Samples whose plus branch has
zero probability are kept as ``skipped`` rows (with NaN spectra) so that
indices stay aligned with seeds.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from . import states
from .criteria import (
    BOUNDARY_TOL,
    Classification,
    classify,
    is_absolutely_separable,
    is_ppt,
)
from .errors import DimensionMismatch, ParamOutOfRange, ZeroProbabilityBranch
from .linalg import RANK_TOL, as_dims
from .switch import Branch, apply_switch_operator, switch_operator
from .unitaries import cnot, haar_from_rng, rng_for, u_theta

SCATTER_MODES = ("cnot_plus_random", "random_pair")


@dataclass(frozen=True)
class GridSpec:
    start: float
    stop: float
    steps: int

    def __post_init__(self):
        if self.steps < 2:
            raise ValueError("a grid needs at least 2 points")
        if not self.start < self.stop:
            raise ValueError(f"grid start {self.start} must be below stop {self.stop}")

    @classmethod
    def parse(cls, text: str) -> "GridSpec":
        """Parse ``"start:stop:steps"``."""
        parts = text.split(":")
        if len(parts) != 3:
            raise ValueError(f"grid {text!r} is not start:stop:steps")
        return cls(float(parts[0]), float(parts[1]), int(parts[2]))

    def values(self) -> np.ndarray:
        return np.linspace(self.start, self.stop, self.steps)

    def __str__(self) -> str:
        return f"{self.start!r}:{self.stop!r}:{self.steps}"


@dataclass
class ScanRecord:
    experiment: str
    index: int
    params: dict
    eigenvalues: tuple
    as_lhs: float
    classification: str
    rank: int
    prob_plus: float | None
    skipped: bool = False
    extra: dict = field(default_factory=dict)

    @property
    def violating(self) -> bool:
        return not self.skipped and not Classification(self.classification).is_as


DEFAULT_THETA = GridSpec(0.0, math.pi, 181)
DEFAULT_P = GridSpec(0.0, 1.0, 101)
DEFAULT_BD_RESOLUTION = 41


def _rank(eigs, tol: float) -> int:
    return int(np.count_nonzero(np.asarray(eigs) > tol))


def state_record(experiment: str, index: int, params: dict, rho, dims=None,
                 tol_rank: float = RANK_TOL, tol_boundary: float = BOUNDARY_TOL,
                 prob: float | None = None) -> ScanRecord:
    rep = is_absolutely_separable(rho, tol_boundary)
    label = classify(rho, dims, tol_boundary, report=rep)
    return ScanRecord(experiment, index, params, rep.eigenvalues, rep.as_lhs,
                      label.value, _rank(rep.eigenvalues, tol_rank), prob)


def skipped_record(experiment: str, index: int, params: dict, n: int) -> ScanRecord:
    return ScanRecord(experiment, index, params, (math.nan,) * n, math.nan, "skipped", 0, 0.0,
                      skipped=True)


def switched_record(experiment: str, index: int, params: dict, L, rho, dims=None,
                    tol_rank: float = RANK_TOL, tol_boundary: float = BOUNDARY_TOL) -> ScanRecord:
    """Record for the plus-branch output ``L rho L^dagger / p``."""
    try:
        out = apply_switch_operator(L, rho, Branch.PLUS)
    except ZeroProbabilityBranch:
        return skipped_record(experiment, index, params, rho.shape[0])
    return state_record(experiment, index, params, out.state, dims, tol_rank, tol_boundary,
                        out.probability)


def violating_fraction(records) -> float:
    """Fraction of all records (skipped ones included in the denominator) that leave the AS set."""
    records = list(records)
    if not records:
        return 0.0
    return sum(r.violating for r in records) / len(records)


def werner_eigen_scan(p: float, theta_grid: GridSpec = DEFAULT_THETA,
                      gamma: float = math.pi / 4, phi: float = 0.0,
                      tol_rank: float = RANK_TOL,
                      tol_boundary: float = BOUNDARY_TOL) -> list[ScanRecord]:
    """Plus-branch spectra of the modified Werner state under switch(CNOT, U(theta))."""
    rho = states.modified_werner(p, gamma, phi)
    out = []
    for i, theta in enumerate(theta_grid.values()):
        L = switch_operator(cnot(), u_theta(theta))
        params = {"p": p, "gamma": gamma, "phi": phi, "theta": float(theta)}
        out.append(switched_record("werner_eigen_scan", i, params, L, rho, None,
                                   tol_rank, tol_boundary))
    return out


def werner_violation_surface(p_grid: GridSpec = DEFAULT_P, theta_grid: GridSpec = DEFAULT_THETA,
                             gamma: float = math.pi / 4, phi: float = 0.0,
                             tol_rank: float = RANK_TOL,
                             tol_boundary: float = BOUNDARY_TOL) -> list[ScanRecord]:
    """Violation over the ``p x theta`` grid; ``p`` is the slow index."""
    if p_grid.start < 0 or p_grid.stop > 1:
        raise ParamOutOfRange("p grid must lie in [0, 1]")
    ops = [switch_operator(cnot(), u_theta(t)) for t in theta_grid.values()]
    out = []
    idx = 0
    for p in p_grid.values():
        rho = states.modified_werner(float(p), gamma, phi)
        for theta, L in zip(theta_grid.values(), ops):
            params = {"p": float(p), "gamma": gamma, "phi": phi, "theta": float(theta)}
            out.append(switched_record("werner_violation_surface", idx, params, L, rho, None,
                                       tol_rank, tol_boundary))
            idx += 1
    return out


def _draw_pair(mode: str, n: int, seed: int, index: int):
    rng = rng_for(seed, index)
    if mode == "cnot_plus_random":
        if n != 4:
            raise DimensionMismatch("cnot_plus_random mode needs a 2 x 2 state")
        return cnot(), haar_from_rng(4, rng)
    if mode == "random_pair":
        return haar_from_rng(n, rng), haar_from_rng(n, rng)
    raise ValueError(f"unknown scatter mode {mode!r}; expected one of {SCATTER_MODES}")


def random_unitary_scatter(rho, n_samples: int, seed: int = 0, mode: str = "cnot_plus_random",
                           dims=None, experiment: str = "random_unitary_scatter",
                           params: dict | None = None, tol_rank: float = RANK_TOL,
                           tol_boundary: float = BOUNDARY_TOL) -> list[ScanRecord]:
    """
    Switch ``rho`` with randomly drawn unitary pairs and record the violation.

    ``mode="cnot_plus_random"`` pairs CNOT with one Haar unitary (2 x 2
    only); ``mode="random_pair"`` draws both unitaries Haar-uniformly.
    """
    if n_samples < 1:
        raise ValueError("n_samples must be >= 1")
    rho = np.asarray(rho, dtype=complex)
    n = rho.shape[0]
    dims = as_dims(dims, n)
    base = dict(params or {})
    out = []
    for i in range(n_samples):
        u1, u2 = _draw_pair(mode, n, seed, i)
        rec_params = {**base, "seed": seed, "sample": i}
        out.append(switched_record(experiment, i, rec_params, switch_operator(u1, u2), rho, dims,
                                   tol_rank, tol_boundary))
    return out


def bd_grid_points(resolution: int = DEFAULT_BD_RESOLUTION):
    """
    Valid Bell-diagonal correlation triples on a uniform ``[-1, 1]^3`` grid.

    Returns ``(points, n_invalid)`` where ``points`` has shape ``(k, 3)``.
    """
    if resolution < 10:
        raise ValueError("resolution must be >= 10")
    axis = np.linspace(-1.0, 1.0, resolution)
    c1, c2, c3 = np.meshgrid(axis, axis, axis, indexing="ij")
    pts = np.stack([c1.ravel(), c2.ravel(), c3.ravel()], axis=1)
    probs = np.array([states.probs_from_correlations(*c) for c in pts])
    ok = np.all(probs >= -states.PROB_SLACK, axis=1)
    return pts[ok], int(np.count_nonzero(~ok))


def bd_geometry_scan(theta: float, resolution: int = DEFAULT_BD_RESOLUTION,
                     tol_rank: float = RANK_TOL,
                     tol_boundary: float = BOUNDARY_TOL) -> list[ScanRecord]:
    """
    Post-switch AS verdict of every valid Bell-diagonal grid state.

    Rows sit at the initial ``(c1, c2, c3)``; the main fields describe the
    plus-branch output of switch(CNOT, U(theta)) while ``extra`` carries
    the initial violation, classification, PPT flag and octahedron test
    ``|c1| + |c2| + |c3| <= 1``.
    """
    pts, _ = bd_grid_points(resolution)
    L = switch_operator(cnot(), u_theta(theta))
    out = []
    for i, (c1, c2, c3) in enumerate(pts):
        rho = states.bd_from_correlations(c1, c2, c3)
        rep0 = is_absolutely_separable(rho, tol_boundary)
        label0 = classify(rho, None, tol_boundary, report=rep0)
        params = {"c1": float(c1), "c2": float(c2), "c3": float(c3), "theta": float(theta)}
        rec = switched_record("bd_geometry_scan", i, params, L, rho, None, tol_rank, tol_boundary)
        rec.extra = {
            "initial_as_lhs": rep0.as_lhs,
            "initial_classification": label0.value,
            "initial_ppt": is_ppt(rho).ppt,
            "in_octahedron": abs(c1) + abs(c2) + abs(c3) <= 1 + 1e-9,
        }
        out.append(rec)
    return out


def surviving_as_count(records) -> int:
    """Initially AS grid states that are still AS after the switch."""
    return sum(
        1 for r in records
        if Classification(r.extra["initial_classification"]).is_as
        and not r.skipped and Classification(r.classification).is_as
    )


def bd_alpha_scan(alpha_grid: GridSpec, tol_rank: float = RANK_TOL,
                  tol_boundary: float = BOUNDARY_TOL) -> list[ScanRecord]:
    """Violation of the unswitched one-parameter Bell-diagonal family."""
    lo, hi = 1 / 6, 0.5
    if alpha_grid.start < lo - 1e-12 or alpha_grid.stop > hi + 1e-12:
        raise ParamOutOfRange("alpha grid must lie in [1/6, 1/2]")
    return [
        state_record("bd_alpha_scan", i, {"alpha": float(a)}, states.bd_alpha_family(float(a)),
                     None, tol_rank, tol_boundary)
        for i, a in enumerate(alpha_grid.values())
    ]


def bd_alpha_random(alpha: float, n_samples: int, seed: int = 0, tol_rank: float = RANK_TOL,
                    tol_boundary: float = BOUNDARY_TOL) -> list[ScanRecord]:
    """CNOT plus one Haar unitary acting on ``bd_alpha_family(alpha)``."""
    return random_unitary_scatter(states.bd_alpha_family(alpha), n_samples, seed,
                                  "cnot_plus_random", None, "bd_alpha_random",
                                  {"alpha": alpha}, tol_rank, tol_boundary)


def higher_dim_scan(dB: int, n_samples: int, seed: int = 0, tol_rank: float = RANK_TOL,
                    tol_boundary: float = BOUNDARY_TOL) -> list[ScanRecord]:
    """Maximally mixed ``2 x dB`` state switched by two Haar unitaries."""
    if dB < 3:
        raise ParamOutOfRange("higher_dim_scan needs dB >= 3")
    return random_unitary_scatter(states.maximally_mixed((2, dB)), n_samples, seed,
                                  "random_pair", (2, dB), "higher_dim_scan",
                                  {"dB": dB}, tol_rank, tol_boundary)

