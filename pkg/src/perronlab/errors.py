"""Exception taxonomy.

Every error raised by the library derives from PerronLabError so callers
(and the CLI) can distinguish precondition failures from genuine bugs.
"""

from __future__ import annotations


class PerronLabError(Exception):
    """Base class for all library errors."""


class VertexOutOfRange(PerronLabError):
    """A vertex id is outside [0, n)."""


class EdgeExists(PerronLabError):
    """Attempt to add an edge that is already present."""


class EdgeMissing(PerronLabError):
    """Attempt to use an edge that is not present."""


class BridgeRemoval(PerronLabError):
    """Attempt to remove a bridge, which would disconnect the graph."""


class Disconnected(PerronLabError):
    """The operation requires a connected graph."""


class InvalidSize(PerronLabError):
    """A size parameter is below the minimum for the family."""


class InvalidParameters(PerronLabError):
    """A parameter combination is outside the supported range."""


class ParametersTooSmall(PerronLabError):
    """Parameters fail a quantitative threshold required by a check."""


class GenerationFailed(PerronLabError):
    """Randomized generation exhausted its retry budget."""


class SizeLimit(PerronLabError):
    """The graph exceeds the size cap for a dense computation."""


class NoConvergence(PerronLabError):
    """An iterative method hit its budget before meeting tolerance."""

    def __init__(self, message: str, iterations: int = 0):
        super().__init__(message)
        self.iterations = iterations


class DomainError(PerronLabError):
    """An argument is outside the mathematical domain of the function."""


class NotRegular(PerronLabError):
    """The operation requires a regular graph."""


class NonRegularRequired(PerronLabError):
    """The operation requires a non-regular graph."""


class GapTooSmall(PerronLabError):
    """The spectral gap is below the certification threshold.

    Carries the measured gap, the vertex count, and the smallest ratio
    parameter c for which the threshold would be met, so callers can
    retry with a weaker target.
    """

    def __init__(self, delta: float, n: int, c_min: float):
        if c_min < 1:
            hint = f"smallest usable c is {c_min:.6g}"
        else:
            hint = "no c in (0,1) meets it"
        super().__init__(
            f"additive spectral gap {delta:.6g} is too small for n={n}: "
            f"need delta > (2/c)*sqrt(n) + 2; {hint}"
        )
        self.delta = delta
        self.n = n
        self.c_min = c_min


class NonPositiveCoordinate(PerronLabError):
    """A vector expected to be strictly positive has a coordinate <= 0."""


class DistanceTooLarge(PerronLabError):
    """An edge endpoint pair violates a distance precondition."""


class ParseError(PerronLabError):
    """A family-spec string or config file could not be parsed."""
