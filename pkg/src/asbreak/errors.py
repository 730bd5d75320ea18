"""Exception types raised across the package."""


class ASBreakError(ValueError):
    """Base class for every error raised by asbreak."""


class NotHermitian(ASBreakError):
    pass


class DimensionMismatch(ASBreakError):
    pass


class ParamOutOfRange(ASBreakError):
    pass


class InvalidProbs(ASBreakError):
    pass


class InvalidState(ASBreakError):
    pass


class InvalidChannel(ASBreakError):
    pass


class BadSpectrum(ASBreakError):
    pass


class ZeroProbabilityBranch(ASBreakError):
    """The post-selected control outcome has (numerically) zero probability."""
