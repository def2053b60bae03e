"""Exception taxonomy shared across the package.

All library errors derive from :class:`QuadellError` so callers (and the CLI)
can map them to a single exit path. Preconditions violations carry enough
context to name the offending quantity.
"""

from __future__ import annotations


class QuadellError(Exception):
    """Base class for all errors raised by this package."""


class DomainError(QuadellError):
    """An input lies outside the mathematical domain of an operation."""


class RankError(QuadellError):
    """A matrix does not have the rank required by the operation."""


class IndefiniteInputError(QuadellError):
    """A matrix required to be positive semidefinite has a negative eigenvalue."""


class UnsupportedAlgebraError(QuadellError):
    """The division algebra (beta value) is not supported by this operation.

    Octonion (beta = 8) matrix arithmetic is rejected throughout; only the
    scalar/spectral formula layer accepts beta = 8.
    """


class DegenerateCompositionError(QuadellError):
    """A composed map lost rank (rank(AC) < rank(C)) in a volume-factor computation."""


class RankDeficientWError(QuadellError):
    """The quadratic form cannot have a Lebesgue density because rank(A) < m."""


class NonNormalizableError(QuadellError):
    """The radial integral of a density generator diverges."""


class PoleError(QuadellError):
    """A series coefficient hit a pole (divergent radial moment) before truncation.

    Attributes mirror :class:`TruncationError` so callers can inspect the
    partial sum accumulated before the pole.
    """

    def __init__(self, message: str, partial=None, degree_used: int | None = None):
        super().__init__(message)
        self.partial = partial
        self.degree_used = degree_used


class TruncationError(QuadellError):
    """A series did not converge within the requested degree budget.

    Parameters
    ----------
    partial:
        The partial sum (or partial result object) accumulated so far.
    degree_used:
        Highest degree summed before giving up.
    tail_estimate:
        Magnitude of the last degree layer, a crude tail proxy.
    """

    def __init__(self, message: str, partial=None, degree_used: int | None = None,
                 tail_estimate: float | None = None):
        super().__init__(message)
        self.partial = partial
        self.degree_used = degree_used
        self.tail_estimate = tail_estimate
