"""Quantum-switch tests of absolute separability for qubit-qudit states."""

from .criteria import (
    Classification,
    SpectrumReport,
    Verdict,
    as_lhs,
    classify,
    is_absolutely_separable,
    is_ppt,
)
from .errors import (
    ASBreakError,
    BadSpectrum,
    DimensionMismatch,
    InvalidChannel,
    InvalidProbs,
    InvalidState,
    NotHermitian,
    ParamOutOfRange,
    ZeroProbabilityBranch,
)
from .switch import (
    Branch,
    KrausChannel,
    SwitchOutcome,
    measure_control,
    switch_joint,
    switch_operator,
    switch_unitary_closed,
)

__all__ = [
    "ASBreakError", "BadSpectrum", "Branch", "Classification", "DimensionMismatch",
    "InvalidChannel", "InvalidProbs", "InvalidState", "KrausChannel", "NotHermitian",
    "ParamOutOfRange", "SpectrumReport", "SwitchOutcome", "Verdict", "ZeroProbabilityBranch",
    "as_lhs", "classify", "is_absolutely_separable", "is_ppt", "measure_control",
    "switch_joint", "switch_operator", "switch_unitary_closed",
]
