"""Exception types shared across the package."""

from __future__ import annotations


class ErgocubeError(Exception):
    """Base class for all package-specific errors."""


class ParameterError(ErgocubeError, ValueError):
    """A model parameter or simulation config violates its domain."""


class DivergenceError(ErgocubeError, RuntimeError):
    """A simulation left its admissible state region.

    Attributes:
        step: zero-based step index at which divergence was detected.
    """

    def __init__(self, message: str, step: int):
        super().__init__(message)
        self.step = step


class MomentError(ErgocubeError, ValueError):
    """A moment function could not be evaluated.

    Attributes:
        moment: canonical label of the failing moment, when known.
        series_index: position of the failing series inside an ensemble,
            when the failure occurred during an ensemble computation.
    """

    def __init__(self, message: str, moment: str | None = None,
                 series_index: int | None = None):
        super().__init__(message)
        self.moment = moment
        self.series_index = series_index


class EmptySeriesError(MomentError):
    """The input series has no observations."""


class InsufficientTailError(MomentError):
    """Too few strictly positive observations for the requested tail."""


class DegenerateTailError(MomentError):
    """The tail threshold is zero, so log-ratios are undefined."""


class ZeroVarianceError(MomentError):
    """A transformed series is constant; the statistic is undefined."""


class SetMismatchError(ErgocubeError, ValueError):
    """Two moment vectors do not share the same moment set."""


class MatrixDomainError(ErgocubeError, ValueError):
    """A matrix violates symmetry/PSD requirements beyond tolerance."""


class NoFeasibleCandidateError(ErgocubeError, RuntimeError):
    """Every candidate in a search failed simulation or moment evaluation."""


class ConfigError(ErgocubeError, ValueError):
    """An experiment configuration is malformed; names the offending field."""
