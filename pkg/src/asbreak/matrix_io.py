"""
JSON matrix files and CSV record output.

Matrix files look like::

    {"dims": [2, 2], "re": [[...], ...], "im": [[...], ...]}

``re`` and ``im`` hold row-major real and imaginary parts, either nested
or flat; ``im`` may be omitted for real matrices.
"""

from __future__ import annotations

import csv
import json
import math

import numpy as np

from .errors import ASBreakError, DimensionMismatch, InvalidState

INPUT_TOL = 1e-8
FLOAT_FORMAT = ".15g"


def load_matrix_json(path):
    """Return ``(matrix, dims)`` from a matrix JSON file."""
    with open(path, encoding="utf-8") as fh:
        doc = json.load(fh)
    return matrix_from_doc(doc)


def matrix_from_doc(doc: dict):
    try:
        dims = tuple(int(x) for x in doc["dims"])
        re = np.asarray(doc["re"], dtype=float)
    except (KeyError, TypeError, ValueError) as exc:
        raise DimensionMismatch(f"malformed matrix document: {exc}") from None
    im = np.asarray(doc.get("im", np.zeros_like(re)), dtype=float)
    if len(dims) != 2 or re.shape != im.shape:
        raise DimensionMismatch("need dims [dA, dB] and re/im arrays of equal shape")
    n = dims[0] * dims[1]
    if re.size != n * n:
        raise DimensionMismatch(f"dims {dims} need {n * n} entries, got {re.size}")
    return (re + 1j * im).reshape(n, n), dims


def matrix_to_doc(M, dims) -> dict:
    M = np.asarray(M, dtype=complex)
    return {"dims": [int(d) for d in dims], "re": M.real.tolist(), "im": M.imag.tolist()}


def dump_matrix_json(path, M, dims) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(matrix_to_doc(M, dims), fh)


def check_density_matrix(rho, tol: float = INPUT_TOL) -> None:
    """Reject inputs that are not Hermitian, unit trace and PSD to ``tol``."""
    herm = float(np.max(np.abs(rho - rho.conj().T)))
    if herm > tol:
        raise InvalidState(f"matrix is not Hermitian (defect {herm:.3e})")
    tr = np.trace(rho)
    if abs(tr - 1) > tol:
        raise InvalidState(f"trace is {tr.real:.12g}, not 1")
    lo = float(np.linalg.eigvalsh(0.5 * (rho + rho.conj().T))[0])
    if lo < -tol:
        raise InvalidState(f"matrix has negative eigenvalue {lo:.3e}")


def check_unitary(U, tol: float = INPUT_TOL) -> None:
    if U.shape[0] != U.shape[1]:
        raise DimensionMismatch("unitary must be square")
    defect = float(np.max(np.abs(U.conj().T @ U - np.eye(U.shape[0]))))
    if defect > tol:
        raise ASBreakError(f"matrix is not unitary (defect {defect:.3e})")


def fmt(value) -> str:
    """Locale-free cell text; floats get 15 significant digits."""
    if value is None:
        return ""
    if isinstance(value, (bool, np.bool_)):
        return "true" if value else "false"
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    if isinstance(value, (float, np.floating)):
        v = float(value)
        if math.isnan(v):
            return "nan"
        return format(v, FLOAT_FORMAT)
    return str(value)


def record_header(records) -> list[str]:
    first = records[0]
    n = len(first.eigenvalues)
    return (["experiment", "index", *first.params]
            + [f"eig{k}" for k in range(1, n + 1)]
            + ["as_lhs", "classification", "rank", "prob_plus", "skipped", *first.extra])


def record_row(rec) -> list[str]:
    return ([rec.experiment, fmt(rec.index), *(fmt(v) for v in rec.params.values())]
            + [fmt(x) for x in rec.eigenvalues]
            + [fmt(rec.as_lhs), rec.classification, fmt(rec.rank), fmt(rec.prob_plus),
               fmt(rec.skipped), *(fmt(v) for v in rec.extra.values())])


def write_records_csv(fh, records) -> None:
    records = list(records)
    if not records:
        return
    writer = csv.writer(fh, lineterminator="\n")
    writer.writerow(record_header(records))
    for rec in records:
        writer.writerow(record_row(rec))
